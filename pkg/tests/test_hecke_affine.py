from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from errors import ConfigurationError, DomainError, PreconditionError
from exact_linalg import CoefficientField
from hecke_affine import (
    ProPIwahoriAlgebra, affine_characters, affine_length, brute_force_length, check_associativity, check_eta,
    check_length_oracle, check_matrix_model, check_star_unitriangular, check_theta_compare,
    check_theta_ext_independence, check_theta_products, check_delta_multiplicative, delta_P, eta,
    parse_expression, simple_character, theta, theta_ext, torus_unit, translation,
)
from hecke_core import sign_character, trivial_character
from hecke_modules import are_isomorphic, character_module


def _sample(H):
    F = H.F
    keys = [translation(F, v) for v in ((1, 0), (0, 1), (1, 1), (-1, 0), (2, -1))]
    return keys + [torus_unit(F, (F.generator, 1))] if F.q > 2 else keys


def test_lengths_gl2(affine):
    H = affine("gl2", 3, "fp:3")
    F = H.F
    assert H.length(H.simple_keys["s0"]) == 1
    assert H.length(H.simple_keys["s1"]) == 1
    assert H.length(H.unit_generators["w0"]) == 0
    assert H.length(translation(F, (1, 0))) == 1
    assert H.length(translation(F, (1, 1))) == 0
    assert H.length(translation(F, (2, 0))) == 2


def test_length_sl2_coroot(affine):
    H = affine("sl2", 3, "fp:3")
    assert H.length(translation(H.F, (1, -1))) == 2


@given(st.integers(-3, 3), st.integers(-3, 3), st.sampled_from([(0, 1), (1, 0)]))
def test_length_matches_root_count(affine, a, b, perm):
    H = affine("gl2", 2, "fp:2")
    key = translation(H.F, (a, b))
    if perm != (0, 1):
        key = key * H.simple_keys["s1"]
    assert affine_length(key) == brute_force_length(key, levels=8)


def test_identifiers(affine):
    H = affine("gl2", 3, "fp:3")
    assert H.identifier() == "gl2:3/J=1/fp:3"
    assert H.levi(()).identifier() == "gl2:3/J=-/fp:3"


def test_unit_generators(affine):
    assert set(affine("gl2", 3, "fp:3").unit_generators) == {"t1", "t2", "w0"}
    assert set(affine("gl2", 2, "fp:2").unit_generators) == {"w0"}
    assert set(affine("gl2", 2, "fp:2").levi(()).unit_generators) == {"w0", "w1"}
    assert set(affine("sl2", 3, "fp:3").levi(()).unit_generators) == {"t1", "w0"}
    assert set(affine("sl2", 3, "fp:3").unit_generators) == {"t1"}


@pytest.mark.parametrize("kind, p, J, error", [
    ("gl2", 7, None, ConfigurationError),
    ("so3", 2, None, ConfigurationError),
    ("gl2", 2, {3}, PreconditionError),
])
def test_bad_algebras(kind, p, J, error):
    with pytest.raises(error):
        ProPIwahoriAlgebra(kind, p, CoefficientField.parse("q"), J)


def test_quadratic_data(affine):
    H = affine("gl2", 3, "fp:3")
    for name in ("s0", "s1"):
        q_s, c = H.quadratic(name)
        assert q_s == 3
        assert sorted(c.values()) == [1, 1]


@pytest.mark.parametrize("kind, p", [("gl2", 2), ("sl2", 3)])
def test_matrix_model(affine, kind, p):
    report = check_matrix_model(affine(kind, p, f"fp:{p}"), bound=1)
    assert report["mismatches"] == 0
    assert report["projection_homomorphism"]


@pytest.mark.parametrize("kind, p", [("gl2", 3), ("sl2", 3), ("gl3", 2)])
def test_length_oracle(affine, kind, p):
    report = check_length_oracle(affine(kind, p, f"fp:{p}"), bound=1)
    assert report["mismatches"] == 0
    assert report["unit_independent"]


def test_translation_product(affine):
    H = affine("gl2", 3, "fp:3")
    F = H.F
    assert H.basis(translation(F, (1, 0))) * H.basis(translation(F, (1, 0))) == H.basis(translation(F, (2, 0)))


@pytest.mark.parametrize("kind, p", [("gl2", 2), ("gl2", 3), ("sl2", 3)])
def test_associativity(affine, kind, p):
    assert check_associativity(affine(kind, p, f"fp:{p}"), triples=60, seed=7)["failures"] == 0


def test_inverse_over_q(affine):
    H = affine("gl2", 3, "q")
    s0 = H.simple_keys["s0"]
    assert H.basis(s0) * H.inverse_basis(s0) == H.one()
    assert H.star(s0) * H.inverse_star(s0) == H.one()


def test_star_basis_is_unitriangular(affine):
    H = affine("gl2", 3, "fp:3")
    keys = [k for k in H.relation_keys() if H.length(k) <= 2]
    assert check_star_unitriangular(H, keys)


def test_eta(affine):
    H = affine("gl2", 2, "fp:2")
    assert eta(H.simple("s1")) == -H.star_simple("s1")
    report = check_eta(H)
    assert report["multiplicative"] and report["involution"] and report["triv_sign_swap"]


def test_theta_on_the_monoids(affine):
    H = affine("gl2", 3, "fp:3")
    HT = H.levi(())
    F = H.F
    a, b = translation(F, (1, 0)), translation(F, (0, 1))
    assert theta(H, (), HT.basis(a)) == H.basis(a)
    assert theta(H, (), HT.basis(b), "plain", "-") == H.basis(b)
    with pytest.raises(DomainError):
        theta(H, (), HT.basis(b), "plain", "+")


def test_theta_extension_over_q(affine):
    H = affine("gl2", 3, "q")
    HT = H.levi(())
    F = H.F
    a = translation(F, (1, 0))
    image = theta_ext(H, (), HT.basis(translation(F, (0, 1))), "+", a)
    assert image == H.inverse_basis(a) * H.basis(translation(F, (1, 1)))


def test_theta_extension_needs_p_invertible(affine):
    H = affine("gl2", 3, "fp:3")
    with pytest.raises(PreconditionError):
        theta_ext(H, (), H.levi(()).one(), "+")


def test_delta_p_values(affine):
    H = affine("gl2", 3, "q")
    F = H.F
    to_python = H.field.to_python
    assert to_python(delta_P(H, (), translation(F, (1, 0)))) == Fraction(1, 3)
    assert to_python(delta_P(H, (), translation(F, (0, 1)))) == 3
    assert to_python(delta_P(H, (), translation(F, (1, 1)))) == 1
    assert check_delta_multiplicative(H, (), _sample(H))


@pytest.mark.parametrize("kind, p", [("gl2", 3), ("sl2", 3)])
def test_theta_products(affine, kind, p):
    H = affine(kind, p, f"fp:{p}")
    if kind == "gl2":
        sample = _sample(H)
    else:
        sample = [translation(H.F, v) for v in ((1, -1), (-1, 1), (2, -2))]
    report = check_theta_products(H, (), sample)
    assert all(v for k, v in report.items() if k != "J")


def test_theta_extension_independence(affine):
    H = affine("gl2", 3, "q")
    report = check_theta_ext_independence(H, (), _sample(H))
    assert all(report[mode] for mode in ("+", "-", "*+", "*-"))


def test_theta_compare(affine):
    H = affine("gl2", 3, "q")
    assert check_theta_compare(H, (), _sample(H))["holds"]


def test_characters_include_triv_and_sign(affine):
    H = affine("gl2", 2, "fp:2")
    found = affine_characters(H)
    for chi in (trivial_character(H), sign_character(H)):
        assert any(are_isomorphic(character_module(chi), c) for c in found)


def test_mixed_character_of_sl2(affine):
    H = affine("sl2", 3, "fp:3")
    chi = simple_character(H, {"s0": 0, "s1": -1})
    assert chi.rank == 1


def test_parse_expression(affine):
    H = affine("gl2", 3, "fp:3")
    F = H.F
    assert parse_expression(H, "t[1,0] * t[1,0]") == H.basis(translation(F, (2, 0)))
    assert parse_expression(H, "2*s0") == H.simple("s0").scale(H.field.convert(2))
    with pytest.raises(ConfigurationError):
        parse_expression(H, "s7")
    with pytest.raises(ConfigurationError):
        parse_expression(affine("sl2", 3, "fp:3"), "t[1,0]")
