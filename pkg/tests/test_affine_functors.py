import pytest

import exact_linalg as la
from affine_functors import (
    affine_coinduct, affine_induct, build_ses, check_affine_adjunction, check_ind_coind_twist_affine, check_ses,
    left_adjoint, right_adjoint, split_control, torus_character, twist_to_conjugate,
)
from errors import PreconditionError
from hecke_core import sign_character, trivial_character
from hecke_modules import are_isomorphic, character_module


def _triv(H):
    return character_module(trivial_character(H))


def _sign(H):
    return character_module(sign_character(H))


@pytest.mark.parametrize("kind, p", [("gl2", 2), ("gl2", 3), ("sl2", 3)])
def test_induction_from_the_torus(affine, kind, p):
    H = affine(kind, p, f"fp:{p}")
    assert affine_induct(torus_character(H), H, ()).rank == 2
    assert affine_coinduct(torus_character(H), H, ()).rank == 2


def test_induction_from_the_whole_group_is_identity(affine):
    H = affine("gl2", 3, "fp:3")
    assert are_isomorphic(affine_induct(_sign(H), H, H.J), _sign(H))


@pytest.mark.parametrize("coeff", ["fp:2", "q"])
@pytest.mark.parametrize("target", [_triv, _sign])
def test_adjunctions(affine, coeff, target):
    H = affine("gl2", 2, coeff)
    report = check_affine_adjunction(H, (), torus_character(H), target(H))
    assert report["ind_r"] and report["l_ind"]


def test_adjoints_of_characters_in_char_p(affine):
    H = affine("gl2", 2, "fp:2")
    assert right_adjoint(_triv(H), H, ()).rank == 0
    assert right_adjoint(_sign(H), H, ()).rank == 1
    assert left_adjoint(_sign(H), H, ()).rank == 0
    assert left_adjoint(_triv(H), H, ()).rank == 1


def test_right_adjoint_over_q(affine):
    H = affine("gl2", 3, "q")
    assert right_adjoint(_triv(H), H, ()).rank == 1
    assert right_adjoint(_sign(H), H, ()).rank == 1


@pytest.mark.parametrize("kind, p, coeff", [("gl2", 2, "fp:2"), ("gl2", 3, "q"), ("sl2", 3, "fp:3")])
def test_ind_coind_twist(affine, kind, p, coeff):
    H = affine(kind, p, coeff)
    assert check_ind_coind_twist_affine(H, (), torus_character(H))["isomorphism_found"]


def test_twist_stays_over_the_torus(affine):
    H = affine("gl2", 3, "fp:3")
    twisted = twist_to_conjugate(torus_character(H), H, ())
    assert twisted.algebra.identifier() == H.levi(()).identifier()


@pytest.mark.parametrize("kind, p, coeff", [("gl2", 2, "fp:2"), ("sl2", 3, "fp:3"), ("gl2", 2, "q"), ("gl2", 3, "q")])
def test_sequence_does_not_split(affine, kind, p, coeff):
    report = check_ses(affine(kind, p, coeff))
    assert not report["splits"]
    assert report["rank"] == 2 and report["sub_rank"] == 1


def test_sequence_pieces(affine):
    H = affine("gl2", 2, "fp:2")
    ses = build_ses(H)
    assert are_isomorphic(ses.sub, _triv(H))
    assert are_isomorphic(ses.quotient.module, _sign(H))


def test_sequence_over_q_has_a_different_quotient(affine):
    H = affine("gl2", 2, "q")
    ses = build_ses(H)
    assert are_isomorphic(ses.sub, _triv(H))
    assert not are_isomorphic(ses.quotient.module, _sign(H))
    assert la.to_python_rows(H.field, ses.quotient.module.act(H.central_positive(()))) == [[1]]


def test_sequence_needs_rank_one(affine):
    with pytest.raises(PreconditionError):
        build_ses(affine("gl3", 2, "fp:2"))


@pytest.mark.parametrize("kind, p", [("gl2", 2), ("sl2", 3)])
def test_split_control(affine, kind, p):
    report = split_control(affine(kind, p, f"fp:{p}"))
    assert report["splits"] and report["sections"] >= 1
    assert not report["local_splits"] and report["local_rank"] == 2
