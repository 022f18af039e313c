import pytest

import exact_linalg as la
from affine_functors import affine_induct, torus_character
from errors import PreconditionError, UnsupportedCaseError
from hecke_affine import simple_character
from hecke_core import sign_character, trivial_character
from hecke_modules import HeckeModule, are_isomorphic, character_module, direct_sum, submodule
from supersingular import (
    StandardTriple, check_round_trip, classify, composition_factors, extend_module, i_h_triple, is_supersingular,
    minimal_submodule, pi_sigma, proper_submodule, same_factors, standard_triples, subsets,
)


def _triv(H):
    return character_module(trivial_character(H))


def _sign(H):
    return character_module(sign_character(H))


def test_subsets():
    assert subsets([2, 1]) == [frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2})]


def test_pi_sigma(affine):
    H = affine("gl2", 3, "fp:3")
    assert pi_sigma(torus_character(H), H) == frozenset({1})
    assert pi_sigma(torus_character(H, {"w0": 2}), H) == frozenset()


def test_triple_outside_p_sigma_is_rejected(affine):
    H = affine("gl2", 3, "fp:3")
    with pytest.raises(PreconditionError):
        StandardTriple(H, frozenset(), torus_character(H, {"w0": 2}), frozenset({1}))


def test_extension_to_the_same_levi_is_identity(affine):
    H = affine("gl2", 2, "fp:2")
    sigma = torus_character(H)
    assert extend_module(sigma, H, ()) is sigma


def test_extension_of_the_trivial_torus_character(affine):
    H = affine("gl2", 2, "fp:2")
    assert are_isomorphic(extend_module(torus_character(H), H, {1}), _triv(H))


@pytest.mark.parametrize("kind, p", [("gl2", 2), ("sl2", 3)])
def test_characters_of_the_group_are_not_supersingular(affine, kind, p):
    H = affine(kind, p, f"fp:{p}")
    assert not is_supersingular(_triv(H)).supersingular
    assert not is_supersingular(_sign(H)).supersingular


def test_mixed_sl2_character_is_supersingular(affine):
    H = affine("sl2", 3, "fp:3")
    report = is_supersingular(simple_character(H, {"s0": 0, "s1": -1}))
    assert report.supersingular
    assert report.to_json()["levis"][0]["J"] == []


def test_supersingularity_needs_char_p(affine):
    H = affine("gl2", 3, "q")
    with pytest.raises(PreconditionError):
        is_supersingular(_triv(H))


def test_induced_module_factors(affine):
    H = affine("gl2", 2, "fp:2")
    induced = affine_induct(torus_character(H), H, ())
    expected = composition_factors(direct_sum([_triv(H), _sign(H)]))
    assert same_factors(composition_factors(induced), expected)


def test_induced_module_factors_over_q(affine):
    H = affine("gl2", 2, "q")
    factors = composition_factors(affine_induct(torus_character(H), H, ()))
    assert [(f.module.rank, f.multiplicity) for f in factors] == [(1, 1), (1, 1)]
    assert any(are_isomorphic(f.module, _triv(H)) for f in factors)
    assert not any(are_isomorphic(f.module, _sign(H)) for f in factors)


def test_induced_from_a_nontrivial_torus_character_is_simple(affine):
    H = affine("gl2", 3, "fp:3")
    factors = composition_factors(affine_induct(torus_character(H, {"w0": 2}), H, ()))
    assert [(f.module.rank, f.multiplicity) for f in factors] == [(2, 1)]


def _torus_module(H, w0_action):
    T = H.levi(())
    rank = w0_action.shape[0]
    gens = {g: w0_action if g == "w0" else la.identity(H.field, rank) for g in T.generator_keys}
    return HeckeModule(T, rank, gens, "rotation")


QUARTER_TURN = [[0, -1], [1, 0]]
THIRD_TURN = [[0, -1], [1, -1]]


def test_minimal_submodule_over_q_is_simple(affine):
    H = affine("gl2", 2, "q")
    F = H.field
    change = la.matrix(F, [[1, 1, 1, 1], [1, 2, 3, 4], [1, -1, 1, -1], [1, 0, 2, 2]], 4)
    blocks = la.block_diagonal(F, [la.matrix(F, QUARTER_TURN, 2), la.matrix(F, THIRD_TURN, 2)])
    module = _torus_module(H, la.product(la.inverse(change), blocks, change))
    basis = minimal_submodule(module)
    assert basis.shape[0] == 2
    assert proper_submodule(submodule(module, basis)) is None
    assert proper_submodule(module).shape[0] == 2


@pytest.mark.parametrize("p, coeff", [(3, "fp:3"), (2, "q")])
def test_factor_splitting_over_a_quadratic_extension(affine, p, coeff):
    H = affine("gl2", p, coeff)
    module = _torus_module(H, la.matrix(H.field, QUARTER_TURN, 2))
    assert proper_submodule(module) is None
    factors = composition_factors(module)
    assert [(f.module.rank, f.multiplicity, f.splitting_degree) for f in factors] == [(2, 1, 2)]
    assert not same_factors(factors, composition_factors(direct_sum([_triv(H), _triv(H)])))


@pytest.mark.parametrize("p, coeff, companion", [
    (3, "fp:3", [[0, 1, 0], [0, 0, 1], [1, 1, 0]]), (2, "q", [[0, 1, 0], [0, 0, 1], [2, 0, 0]]),
])
def test_factor_needing_a_cubic_extension(affine, p, coeff, companion):
    H = affine("gl2", p, coeff)
    module = _torus_module(H, la.matrix(H.field, companion, 3))
    with pytest.raises(UnsupportedCaseError):
        composition_factors(module)


def test_triple_modules(affine):
    H = affine("gl2", 2, "fp:2")
    sigma = torus_character(H)
    whole = i_h_triple(StandardTriple(H, frozenset(), sigma, frozenset({1})))
    torus = i_h_triple(StandardTriple(H, frozenset(), sigma, frozenset()))
    assert are_isomorphic(whole, _triv(H))
    assert are_isomorphic(torus, _sign(H))


def test_classify_characters(affine):
    H = affine("gl2", 2, "fp:2")
    triples = standard_triples(H)
    for module, Q in ((_triv(H), frozenset({1})), (_sign(H), frozenset())):
        found = classify(module, triples)
        assert len(found) == 1
        assert found[0].P == frozenset() and found[0].Q == Q


@pytest.mark.parametrize("kind, p", [("gl2", 2), pytest.param("sl2", 3, marks=pytest.mark.slow)])
def test_round_trip(affine, kind, p):
    assert check_round_trip(affine(kind, p, f"fp:{p}"))["mismatches"] == []


def test_composition_rank_limit(affine):
    H = affine("gl2", 2, "fp:2")
    with pytest.raises(PreconditionError):
        composition_factors(direct_sum([_triv(H)] * 5))
