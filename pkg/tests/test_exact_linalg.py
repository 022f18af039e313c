import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import exact_linalg as la
from errors import ConfigurationError, InternalConsistencyError
from exact_linalg import CoefficientField

Q = CoefficientField.parse("q")
F3 = CoefficientField.parse("fp:3")

small = st.integers(min_value=-4, max_value=4)
square3 = st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3)


def test_parse_descriptors():
    assert Q.characteristic == 0
    assert F3.characteristic == 3
    assert CoefficientField.parse(" FP:5 ").describe() == "fp:5"


@pytest.mark.parametrize("text", ["fp:4", "fp:x", "zz", "r"])
def test_parse_rejects_bad_descriptors(text):
    with pytest.raises(ConfigurationError):
        CoefficientField.parse(text)


def test_encode_decode():
    half = Q.convert(Fraction(1, 2))
    assert Q.encode(half) == "1/2"
    assert Q.decode("1/2") == half
    assert F3.encode(F3.convert(-1)) == 2
    assert F3.decode(2) == F3.convert(-1)


@given(square3)
def test_rank_nullity(rows):
    A = la.matrix(Q, rows, 3)
    assert la.rank(A) + la.nullspace(A).shape[0] == 3
    kernel = la.left_nullspace(A)
    if kernel.shape[0]:
        assert la.is_zero(la.product(kernel, A))


@given(square3)
def test_inverse_when_invertible(rows):
    A = la.matrix(Q, rows, 3)
    if la.is_invertible(A):
        assert la.product(A, la.inverse(A)) == la.identity(Q, 3)


def test_solve_rows():
    B = la.matrix(Q, [[1, 0, 1], [0, 1, 1]], 3)
    Y = la.matrix(Q, [[2, 3, 5]], 3)
    X = la.solve_rows(B, Y)
    assert la.product(X, B) == Y
    with pytest.raises(InternalConsistencyError):
        la.solve_rows(B, la.matrix(Q, [[0, 0, 1]], 3))


def test_quotient_maps_kill_the_subspace():
    B = la.matrix(F3, [[1, 1, 0]], 3)
    projection, section = la.quotient_maps(B, 3)
    assert projection.shape == (3, 2)
    assert la.is_zero(la.product(B, projection))
    assert la.product(section, projection) == la.identity(F3, 2)


def test_nilpotency_index():
    N = la.matrix(F3, [[0, 1, 0], [0, 0, 1], [0, 0, 0]], 3)
    assert la.nilpotency_index(N) == 3
    assert la.nilpotency_index(la.identity(F3, 2)) is None
    assert la.nilpotency_index(la.zeros(F3, 1, 1)) == 1


def test_fitting_invertible_part():
    A = la.matrix(Q, [[2, 0], [0, 0]], 2)
    V = la.fitting_invertible(A)
    assert V.shape[0] == 1
    assert la.restrict_operator(V, A) == la.matrix(Q, [[2]], 1)


def test_intertwiners_of_a_swap():
    swap = la.matrix(Q, [[0, 1], [1, 0]], 2)
    maps = la.intertwiners(Q, [(swap, swap)], 2, 2)
    assert len(maps) == 2
    line = la.matrix(Q, [[1]], 1)
    assert len(la.intertwiners(Q, [(line, swap)], 1, 2)) == 1


def _diagonals(field, *diagonals):
    return [la.matrix(field, [[d if i == j else 0 for j in range(len(d_row))] for i, d in enumerate(d_row)],
                      len(d_row)) for d_row in diagonals]


def test_invertible_combination_of_singular_members():
    F2 = CoefficientField.parse("fp:2")
    found = la.invertible_combination(F2, _diagonals(F2, (1, 0), (0, 1)))
    assert found is not None and la.is_invertible(found)


def test_nilpotent_span_has_no_invertible_member():
    upper = la.matrix(Q, [[0, 1], [0, 0]], 2)
    assert la.invertible_combination(Q, [upper], random.Random(0), attempts=10) is None


@pytest.mark.parametrize("descriptor, expected", [("fp:2", False), ("fp:3", True), ("q", True)])
def test_determinant_vanishing_on_every_point(descriptor, expected):
    F = CoefficientField.parse(descriptor)
    mats = _diagonals(F, (1, 0, 1), (0, 1, 1))
    assert (la.invertible_combination(F, mats) is not None) is expected


def test_generic_determinant_terms():
    terms = la.generic_determinant(Q, _diagonals(Q, (1, 0, 1), (0, 1, 1)))
    assert {m: Q.to_python(c) for m, c in terms.items()} == {(2, 1): 1, (1, 2): 1}
    F2 = CoefficientField.parse("fp:2")
    assert la.generic_determinant(F2, _diagonals(F2, (1, 0, 1), (0, 1, 1))) == {}
