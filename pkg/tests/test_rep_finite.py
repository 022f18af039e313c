import pytest

import exact_linalg as la
from coxeter import StandardLevi
from exact_linalg import CoefficientField
from hecke_core import levi_algebra, trivial_character
from hecke_modules import character_module, regular_module
from rep_finite import (
    check_contra_ind, check_dagger_commute, check_diag_q1, check_diag_q2, check_group_adjunction, check_left_exact,
    check_q3_char_ne_p, check_tensor_induction, check_universal, contragredient, find_rep_isomorphism,
    parabolic_induce, projectivity_defect, q3_witness, tensor_X, trivial_rep, u_invariants, universal_module,
)


def _torus(G):
    return StandardLevi.of(G.datum, ())


@pytest.mark.parametrize("descriptor, expected", [("gl:2:2", (3, 4)), ("gl:2:3", (16, 24))])
def test_projectivity_defect(group, finite_algebra, descriptor, expected):
    G = group(descriptor)
    coeff = f"fp:{G.p}"
    report = projectivity_defect(G, CoefficientField.parse(coeff), finite_algebra(descriptor, coeff))
    assert (report["dim_X"], report["u_times_dim_XU"]) == expected
    assert report["strict"]


@pytest.mark.slow
def test_projectivity_defect_gl3(group, finite_algebra):
    report = projectivity_defect(group("gl:3:2"), CoefficientField.parse("fp:2"), finite_algebra("gl:3:2", "fp:2"))
    assert (report["dim_X"], report["u_times_dim_XU"]) == (21, 48)


def test_q3_witness_in_char_p(group):
    report = q3_witness(group("gl:2:2"), CoefficientField.parse("fp:2"))
    assert report["image_dim"] == 1
    assert report["target_dim"] == 2
    assert not report["surjective"]


def test_q3_witness_over_q(group):
    assert q3_witness(group("gl:2:2"), CoefficientField.parse("q"))["surjective"]


@pytest.mark.parametrize("descriptor, coeff", [("gl:2:2", "fp:2"), ("gl:2:3", "fp:3"), ("sl:2:3", "q")])
def test_universal_module(group, finite_algebra, descriptor, coeff):
    report = check_universal(group(descriptor), finite_algebra(descriptor, coeff))
    assert report["isomorphism"] and report["actions_commute"]
    assert report["dim_XU"] == report["dim_H"]


def test_tensor_unit(group, finite_algebra):
    H = finite_algebra("gl:2:2", "fp:2")
    X = universal_module(group("gl:2:2"), H.field)
    assert tensor_X(regular_module(H), X).rep.dim == X.dim


@pytest.mark.parametrize("descriptor, coeff", [("gl:2:2", "q"), ("gl:2:2", "fp:2"), ("gl:2:3", "q")])
def test_trivial_tensor_is_a_line(group, finite_algebra, descriptor, coeff):
    H = finite_algebra(descriptor, coeff)
    triv = character_module(trivial_character(H))
    assert tensor_X(triv, universal_module(group(descriptor), H.field)).rep.dim == 1


def test_invariants_of_the_trivial_rep(group, finite_algebra):
    H = finite_algebra("gl:2:3", "fp:3")
    fixed = u_invariants(trivial_rep(group("gl:2:3"), H.field), H)
    assert fixed.module.rank == 1


@pytest.mark.parametrize("coeff", ["fp:3", "q"])
def test_diagram_q1(group, finite_algebra, coeff):
    G = group("gl:2:3")
    H = finite_algebra("gl:2:3", coeff)
    report = check_diag_q1(trivial_rep(G, H.field, _torus(G)), H)
    assert report["equivariant"] and report["bijective"]
    assert report["lhs_rank"] == 2


def test_diagram_q2(group, finite_algebra):
    G = group("gl:2:2")
    H = finite_algebra("gl:2:2", "fp:2")
    report = check_diag_q2(universal_module(G, H.field).rep, _torus(G), H)
    assert report["same_subspace"] and report["same_action"]


def test_diagram_q3_over_q(group, finite_algebra):
    G = group("gl:2:2")
    H = finite_algebra("gl:2:2", "q")
    report = check_q3_char_ne_p(universal_module(G, H.field).rep, _torus(G), H)
    assert report["equivariant"] and report["averaging_inverse"]


def test_group_adjunction(group):
    G = group("gl:2:2")
    F = CoefficientField.parse("fp:2")
    report = check_group_adjunction(trivial_rep(G, F, _torus(G)), universal_module(G, F).rep)
    assert report["invariants_adjunction"] and report["coinvariants_adjunction"]


def test_contragredient_commutes_with_induction(group):
    G = group("gl:2:2")
    F = CoefficientField.parse("fp:2")
    report = check_contra_ind(trivial_rep(G, F, _torus(G)), universal_module(G, F).rep)
    assert report["ind_dual"] and report["coinvariant_dual"]


def test_permutation_module_is_self_dual(group):
    G = group("gl:2:3")
    X = universal_module(G, CoefficientField.parse("fp:3")).rep
    assert find_rep_isomorphism(X, contragredient(X)) is not None


def test_left_exactness(group):
    G = group("gl:2:2")
    F = CoefficientField.parse("fp:2")
    X = universal_module(G, F).rep
    ones = la.matrix(F, [[1] * X.dim], X.dim)
    report = check_left_exact(X, ones)
    assert report["left_exact"]
    assert report["dim_WU"] == 1


def test_dagger_commutes_with_induction(group):
    G = group("gl:2:2")
    assert check_dagger_commute(trivial_rep(G, CoefficientField.parse("fp:2"), _torus(G)))["isomorphic"]


def test_parabolic_induction_dimension(group):
    G = group("gl:2:3")
    induced = parabolic_induce(trivial_rep(G, CoefficientField.parse("fp:3"), _torus(G)))
    assert induced.dim == 4


def test_tensor_induction(finite_algebra):
    H = finite_algebra("gl:2:2", "fp:2")
    levi = _torus(H.group)
    m = character_module(trivial_character(levi_algebra(H, levi)))
    report = check_tensor_induction(m, H, levi)
    assert report["isomorphic"]
    assert report["lhs_dim"] == report["rhs_dim"] == 3
