import pytest

import exact_linalg as la
from coxeter import StandardLevi
from errors import InternalConsistencyError, SchemaError
from hecke_core import levi_algebra, sign_character, torus_characters, trivial_character
from hecke_modules import (
    HeckeModule, ModuleMorphism, are_isomorphic, check_adjunction, check_ind_coind_twist, check_ind_exactness,
    check_twist_coherence, character_module, coinduct, direct_sum, find_isomorphism, hom_dimension, induct,
    module_from_json, quotient, regular_module, restrict, spin,
)


def _levi(H, J):
    return StandardLevi.of(H.bn.datum, J)


def _triv(H, J=None):
    algebra = H if J is None else levi_algebra(H, _levi(H, J))
    return character_module(trivial_character(algebra))


def _sign(H, J=None):
    algebra = H if J is None else levi_algebra(H, _levi(H, J))
    return character_module(sign_character(algebra))


def test_induction_from_torus_has_rank_two(finite_algebra):
    H = finite_algebra("gl:2:3", "fp:3")
    induced = induct(_triv(H, ()), H, _levi(H, ()))
    assert induced.rank == 2
    assert coinduct(_triv(H, ()), H, _levi(H, ())).rank == 2


def test_induction_rank_is_coset_count(finite_algebra):
    H = finite_algebra("gl:3:2", "fp:2")
    assert induct(_triv(H, {1}), H, _levi(H, {1})).rank == 3


def test_induction_from_trivial_torus_is_regular(finite_algebra):
    H = finite_algebra("gl:2:2", "fp:2")
    assert are_isomorphic(induct(_triv(H, ()), H, _levi(H, ())), regular_module(H))


@pytest.mark.parametrize("coeff", ["fp:3", "q"])
@pytest.mark.parametrize("target", [_triv, _sign])
def test_adjunctions(finite_algebra, coeff, target):
    H = finite_algebra("gl:2:3", coeff)
    report = check_adjunction(H, _levi(H, ()), _triv(H, ()), target(H))
    assert report["ind_res"] and report["l_ind"]
    if coeff == "q":
        assert report["frobenius_pair"]


def _torus_modules(H):
    return [character_module(c) for c in torus_characters(levi_algebra(H, _levi(H, ())))]


@pytest.mark.parametrize("coeff", ["fp:3", "q"])
@pytest.mark.parametrize("index", range(4))
def test_ind_coind_twist(finite_algebra, coeff, index):
    H = finite_algebra("gl:2:3", coeff)
    m = _torus_modules(H)[index]
    assert check_ind_coind_twist(H, _levi(H, ()), m)["isomorphism_found"]


@pytest.mark.parametrize("coeff", ["fp:3", "q"])
@pytest.mark.parametrize("index", range(4))
def test_adjunctions_over_torus_characters(finite_algebra, coeff, index):
    H = finite_algebra("gl:2:3", coeff)
    m = _torus_modules(H)[index]
    for n in (_triv(H), _sign(H)):
        report = check_adjunction(H, _levi(H, ()), m, n)
        assert report["ind_res"] and report["l_ind"]


def test_twist_coherence(finite_algebra):
    H = finite_algebra("gl:2:3", "fp:3")
    assert check_twist_coherence(H, _levi(H, ()), _triv(H, ()))


def test_induction_is_exact(finite_algebra):
    H = finite_algebra("gl:2:3", "fp:3")
    m = direct_sum([_triv(H, ()), _sign(H, ())])
    report = check_ind_exactness(H, _levi(H, ()), m, la.unit_vector(H.field, 2, 0))
    assert all(report.values())


def test_restriction_keeps_rank(finite_algebra):
    H = finite_algebra("gl:2:3", "fp:3")
    res = restrict(regular_module(H), levi_algebra(H, _levi(H, ())))
    assert res.rank == 8


def test_quotient_of_a_sum(finite_algebra):
    H = finite_algebra("gl:2:3", "fp:3")
    total = direct_sum([_triv(H), _sign(H)])
    quot = quotient(total, la.unit_vector(H.field, 2, 0))
    assert quot.module.rank == 1
    assert are_isomorphic(quot.module, _sign(H))
    assert not are_isomorphic(quot.module, _triv(H))


@pytest.mark.parametrize("coeff", ["fp:3", "q"])
def test_isomorphism_found_without_random_attempts(finite_algebra, coeff):
    H = finite_algebra("gl:2:3", coeff)
    source = direct_sum([_triv(H), _sign(H)])
    target = direct_sum([_sign(H), _triv(H)])
    iso = find_isomorphism(source, target, attempts=0)
    assert iso is not None and la.is_invertible(iso.matrix)
    assert find_isomorphism(source, direct_sum([_triv(H), _triv(H)]), attempts=0) is None


def test_spin_of_a_line(finite_algebra):
    H = finite_algebra("gl:2:3", "fp:3")
    regular = regular_module(H)
    assert spin(regular, la.unit_vector(H.field, 8, 0)).shape[0] == 8


def test_hom_between_characters(finite_algebra):
    H = finite_algebra("gl:2:3", "fp:3")
    assert hom_dimension(_triv(H), _triv(H)) == 1
    assert hom_dimension(_triv(H), _sign(H)) == 0


def test_non_intertwining_matrix_is_rejected(finite_algebra):
    H = finite_algebra("gl:2:3", "fp:3")
    with pytest.raises(InternalConsistencyError):
        ModuleMorphism(_triv(H), _sign(H), la.identity(H.field, 1))


def test_relation_violation_is_rejected(finite_algebra):
    H = finite_algebra("gl:2:3", "fp:3")
    one = la.identity(H.field, 1)
    with pytest.raises(InternalConsistencyError):
        HeckeModule(H, 1, {"t1": one, "t2": one, "s1": one}, "bad")


def test_module_json_round_trip(finite_algebra):
    H = finite_algebra("gl:2:3", "fp:3")
    m = induct(_triv(H, ()), H, _levi(H, ()))
    back = module_from_json(H, m.to_json())
    assert back.generators == m.generators
    assert back.name == m.name


@pytest.mark.parametrize("mutate, field", [
    (lambda d: d.pop("generators"), "generators"),
    (lambda d: d.update(rank=-1), "rank"),
    (lambda d: d.update(algebra_id="gl:2:3/J=1/q"), "algebra_id"),
    (lambda d: d["generators"].update(s1=[[1]]), "generators.s1"),
])
def test_module_json_schema_errors(finite_algebra, mutate, field):
    H = finite_algebra("gl:2:3", "fp:3")
    document = induct(_triv(H, ()), H, _levi(H, ())).to_json()
    mutate(document)
    with pytest.raises(SchemaError) as excinfo:
        module_from_json(H, document)
    assert excinfo.value.field == field


@pytest.mark.slow
def test_conjugate_levis_differ_in_char_p(finite_algebra):
    for coeff, expected in (("fp:2", False), ("q", True)):
        H = finite_algebra("gl:3:2", coeff)
        first = induct(_triv(H, {1}), H, _levi(H, {1}))
        second = induct(_triv(H, {2}), H, _levi(H, {2}))
        assert are_isomorphic(first, second) is expected
