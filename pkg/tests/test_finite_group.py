import pytest
from hypothesis import given
from hypothesis import strategies as st

from errors import ConfigurationError
from finite_group import FiniteField, Monomial, group_order, parse_group, simple_lift, torus_element


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_field_axioms(q):
    F = FiniteField(q)
    for a in range(q):
        assert F.add(a, F.neg(a)) == 0
        assert F.mul(a, 1) == a
        if a:
            assert F.mul(a, F.inv(a)) == 1
    assert len(F.dlog) == q - 1


def test_gf4_multiplication():
    F = FiniteField(4)
    assert F.mul(2, 2) == 3
    assert F.inv(2) == 3
    assert F.minus_one == 1
    assert F.p == 2


def test_unsupported_field():
    with pytest.raises(ConfigurationError):
        FiniteField(7)


@pytest.mark.parametrize("descriptor, order", [
    ("gl:2:2", 6), ("gl:2:3", 48), ("sl:2:3", 24), ("sl:2:4", 60), ("gl:3:2", 168),
])
def test_group_orders(group, descriptor, order):
    assert group_order(*parse_group(descriptor)) == order
    assert len(group(descriptor).group) == order


@pytest.mark.parametrize("descriptor", ["gl:2", "so:2:3", "gl:x:3"])
def test_bad_descriptor(descriptor):
    with pytest.raises(ConfigurationError):
        parse_group(descriptor)


def test_rank_not_supported(group):
    with pytest.raises(ConfigurationError):
        group("gl:4:2")


def test_monomials_are_torus_times_weyl(group):
    G = group("gl:2:3")
    assert len(G.monomials) == len(G.torus) * len(G.datum.elements) == 8


def test_simple_lift_squares_to_minus_one():
    F = FiniteField(3)
    s = simple_lift(F, 2, 1)
    assert s * s == torus_element(F, (2, 2))


@given(st.sampled_from([(1, 1), (1, 2), (2, 1), (2, 2)]), st.sampled_from([(0, 1), (1, 0)]))
def test_monomial_matrix_round_trip(units, perm):
    F = FiniteField(3)
    m = Monomial(perm, units, F)
    assert Monomial.from_matrix(F, m.matrix()) == m
    assert m * m.inverse() == torus_element(F, (1, 1))


@pytest.mark.parametrize("descriptor", ["gl:2:2", "gl:2:3", "sl:2:3"])
def test_bruhat_relation(group, descriptor):
    assert group(descriptor).verify_bruhat_bsbsb(1)


def test_rank_one_torus_is_coroot_image(group):
    G = group("gl:2:3")
    assert G.rank_one_torus(1) == G.coroot_image(1)


def test_u_double_cosets_cover(group):
    G = group("gl:2:3")
    cells = G.double_cosets("U")
    assert sum(len(c) for c in cells.values()) == 48
    assert len(cells) == len(G.monomials)
