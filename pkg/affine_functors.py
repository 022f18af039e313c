"""Parabolic induction and its adjoints for pro-p Iwahori Hecke algebras.

H_M is not a subalgebra of H; only the positive and negative monoid parts
embed through theta and theta*. Induction is computed in the basis
v tensor tau_{n_d} (d in ^M W) by moving every index into the positive monoid
with the central element mu_J, which is invertible in H_M. Coinduction uses
the coordinates f(tau*_{n_e}) (e in W^M) and the negative monoid. The right
and left adjoints localize a finite-rank module at a central operator, which
is its Fitting-invertible component.
"""

import random
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Optional, Set

import exact_linalg as la
from errors import DomainError, InternalConsistencyError, PreconditionError
from exact_linalg import CoefficientField
from finite_group import build_group
from hecke_affine import ProPIwahoriAlgebra, ProPWeylElement
from hecke_core import HeckeElement, UnipotentHeckeAlgebra, sign_character, trivial_character
from hecke_modules import (HeckeModule, QuotientModule, character_module, find_isomorphism, hom_dimension,
                           hom_space, quotient, regular_module, relabel, submodule)
from settings import HECKELAB_LOCALIZATION_CAP, log

Matrix = la.DomainMatrix


# ----------------------------------------------------------------------
# Coordinates in the free decompositions
# ----------------------------------------------------------------------

def _steps_into(algebra: ProPIwahoriAlgebra, J: FrozenSet[int], key: ProPWeylElement,
                shift: ProPWeylElement, negative: bool) -> int:
    test = algebra.is_negative if negative else algebra.is_positive
    current = key
    for n in range(HECKELAB_LOCALIZATION_CAP + 1):
        if test(current, J):
            return n
        current = current * shift
    raise DomainError(f"{key.label()} does not reach the monoid within {HECKELAB_LOCALIZATION_CAP} steps")


class TensorCoordinates:
    """1 tensor tau_k = sum_d h_d tensor tau_{n_d} in H_M tensor_{H_M^+} H, with h_d in H_M."""

    def __init__(self, algebra: ProPIwahoriAlgebra, J: Iterable[int]) -> None:
        self.algebra = algebra
        self.J = frozenset(J)
        self.levi_algebra = algebra.levi(self.J)
        self.levi = algebra.standard_levi(self.J)
        self.reps = self.levi.min_coset_reps
        self.lifts = [algebra.finite_lift(d) for d in self.reps]
        self.shift = algebra.central_positive(self.J)
        self._memo: Dict[ProPWeylElement, Dict[int, HeckeElement]] = {}
        self._open: Set[ProPWeylElement] = set()

    def __call__(self, key: ProPWeylElement) -> Dict[int, HeckeElement]:
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        if key in self._open:
            raise InternalConsistencyError(f"localization of {key.label()} does not terminate")
        self._open.add(key)
        H, HM = self.algebra, self.levi_algebra
        _, d = self.levi.split_right(key.perm)
        idx = self.reps.index(d)
        m = key * self.lifts[idx].inverse()
        if H.is_positive(m, self.J):
            result = {idx: HM.basis(m)}
        else:
            n = _steps_into(H, self.J, m, self.shift, negative=False)
            power = self.shift ** n
            back = HM.basis(power.inverse())
            result: Dict[int, HeckeElement] = {}
            for k, c in (H.basis(power) * H.basis(key)).terms.items():
                for target, h in self(k).items():
                    result[target] = result.get(target, HM.zero()) + (back * h).scale(c)
        self._open.discard(key)
        self._memo[key] = result
        return result


class HomCoordinates:
    """f(tau*_x) = sum_e f(tau*_{n_e}) Y_e for f in Hom_{H_M^-}(H, m), with Y_e in H_M."""

    def __init__(self, algebra: ProPIwahoriAlgebra, J: Iterable[int]) -> None:
        self.algebra = algebra
        self.J = frozenset(J)
        self.levi_algebra = algebra.levi(self.J)
        self.levi = algebra.standard_levi(self.J)
        self.reps = self.levi.max_side_reps
        self.lifts = [algebra.finite_lift(e) for e in self.reps]
        self.shift = algebra.central_positive(self.J).inverse()
        self._memo: Dict[ProPWeylElement, Dict[int, HeckeElement]] = {}
        self._open: Set[ProPWeylElement] = set()

    def __call__(self, key: ProPWeylElement) -> Dict[int, HeckeElement]:
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        if key in self._open:
            raise InternalConsistencyError(f"localization of {key.label()} does not terminate")
        self._open.add(key)
        H, HM = self.algebra, self.levi_algebra
        e, _ = self.levi.split_left(key.perm)
        idx = self.reps.index(e)
        m = self.lifts[idx].inverse() * key
        if H.is_negative(m, self.J):
            result = {idx: HM.star(m)}
        else:
            n = _steps_into(H, self.J, m, self.shift, negative=True)
            power = self.shift ** n
            back = HM.basis(power.inverse())
            result: Dict[int, HeckeElement] = {}
            for k, c in H.to_star_basis(H.star(key) * H.star(power)).items():
                for source, y in self(k).items():
                    result[source] = result.get(source, HM.zero()) + (y * back).scale(c)
        self._open.discard(key)
        self._memo[key] = result
        return result


def _accumulate(dod: Dict[int, Dict[int, object]], block: Matrix, row_offset: int, col_offset: int,
                coefficient, zero) -> None:
    for i, row in la.rows_of(block).items():
        out = dod.setdefault(row_offset + i, {})
        for j, v in row.items():
            out[col_offset + j] = out.get(col_offset + j, zero) + coefficient * v


# ----------------------------------------------------------------------
# Ind and Coind
# ----------------------------------------------------------------------

def affine_induct(module: HeckeModule, algebra: ProPIwahoriAlgebra, J: Iterable[int]) -> HeckeModule:
    """m tensor_{H_M^+, theta} H with basis v_i tensor tau_{n_d}, index d * rank + i."""
    coordinates = TensorCoordinates(algebra, J)
    r = module.rank
    total = r * len(coordinates.reps)
    zero = algebra.field.zero
    gens = {}
    for g, key in algebra.generator_keys.items():
        dod: Dict[int, Dict[int, object]] = {}
        for d_idx, nd in enumerate(coordinates.lifts):
            for k, c in algebra.mul_basis(nd, key).items():
                for target, h in coordinates(k).items():
                    _accumulate(dod, module.act_element(h), d_idx * r, target * r, c, zero)
        gens[g] = la.from_dod(algebra.field, dod, (total, total))
    log("Affine", f"Ind from J={sorted(coordinates.J)}: rank {r} -> {total}")
    return HeckeModule(algebra, total, gens, f"Ind({module.name})")


def affine_coinduct(module: HeckeModule, algebra: ProPIwahoriAlgebra, J: Iterable[int]) -> HeckeModule:
    """Hom_{H_M^-, theta*}(H, m) with coordinates f(tau*_{n_e}), index e * rank + i; (f h)(x) = f(h x)."""
    coordinates = HomCoordinates(algebra, J)
    r = module.rank
    total = r * len(coordinates.reps)
    zero = algebra.field.zero
    gens = {}
    for g, key in algebra.generator_keys.items():
        dod: Dict[int, Dict[int, object]] = {}
        for e_idx, ne in enumerate(coordinates.lifts):
            for k, c in algebra.to_star_basis(algebra.basis(key) * algebra.star(ne)).items():
                for source, y in coordinates(k).items():
                    _accumulate(dod, module.act_element(y), source * r, e_idx * r, c, zero)
        gens[g] = la.from_dod(algebra.field, dod, (total, total))
    log("Affine", f"Coind from J={sorted(coordinates.J)}: rank {r} -> {total}")
    return HeckeModule(algebra, total, gens, f"Coind({module.name})")


# ----------------------------------------------------------------------
# Adjoints
# ----------------------------------------------------------------------

def _localized(n: HeckeModule, algebra: ProPIwahoriAlgebra, J: FrozenSet[int], star: bool,
               name: str) -> HeckeModule:
    HM = algebra.levi(J)
    mu = algebra.central_positive(J)

    def operator(x: ProPWeylElement) -> Matrix:
        return n.act_element(algebra.star(x)) if star else n.act(x)

    V = la.fitting_invertible(operator(mu))
    shift_inverse = la.inverse(la.restrict_operator(V, operator(mu)))

    def on_index(x: ProPWeylElement) -> Matrix:
        steps = _steps_into(algebra, J, x, mu, negative=False)
        moved = la.restrict_operator(V, operator(mu ** steps * x))
        return la.product(la.power(shift_inverse, steps), moved)

    gens = {}
    for g, key in HM.generator_keys.items():
        if not star:
            gens[g] = on_index(key)
            continue
        terms = [(c, on_index(x)) for x, c in HM.to_star_basis(HM.basis(key)).items()]
        gens[g] = la.linear_combination(algebra.field, terms, (V.shape[0], V.shape[0]))
    return HeckeModule(HM, V.shape[0], gens, name)


def right_adjoint(n: HeckeModule, algebra: ProPIwahoriAlgebra, J: Iterable[int]) -> HeckeModule:
    """R(n) = Hom_{H_M^+, theta}(H_M, n): the part of n on which theta(tau_mu) is invertible."""
    return _localized(n, algebra, frozenset(J), star=False, name=f"R({n.name})")


def left_adjoint(n: HeckeModule, algebra: ProPIwahoriAlgebra, J: Iterable[int]) -> HeckeModule:
    """L(n) = n tensor_{H_M^+, theta*} H_M: the part of n on which theta*(tau*_mu) is invertible."""
    return _localized(n, algebra, frozenset(J), star=True, name=f"L({n.name})")


def twist_to_conjugate(module: HeckeModule, algebra: ProPIwahoriAlgebra, J: Iterable[int]) -> HeckeModule:
    """The H_M'-module m iota_M^-1 iota, transported along conjugation by n_M^-1 n."""
    levi = algebra.standard_levi(J)
    conjugate = levi.conjugate
    n_top = algebra.finite_lift(algebra.datum.longest)
    n_levi = algebra.finite_lift(levi.longest)
    by = n_levi.inverse() * n_top
    by_inverse = by.inverse()
    return relabel(module, algebra.levi(conjugate.J), lambda k: by * k * by_inverse, f"{module.name}^tw")


# ----------------------------------------------------------------------
# Checks
# ----------------------------------------------------------------------

def check_affine_adjunction(algebra: ProPIwahoriAlgebra, J: Iterable[int], m: HeckeModule,
                            n: HeckeModule) -> Dict[str, object]:
    J = frozenset(J)
    ind_m = affine_induct(m, algebra, J)
    report: Dict[str, object] = {
        "J": sorted(J), "m": m.name, "n": n.name,
        "hom_ind_m_n": hom_dimension(ind_m, n),
        "hom_m_r_n": hom_dimension(m, right_adjoint(n, algebra, J)),
        "hom_l_n_m": hom_dimension(left_adjoint(n, algebra, J), m),
        "hom_n_ind_m": hom_dimension(n, ind_m),
    }
    report["ind_r"] = report["hom_ind_m_n"] == report["hom_m_r_n"]
    report["l_ind"] = report["hom_l_n_m"] == report["hom_n_ind_m"]
    return report


def check_ind_coind_twist_affine(algebra: ProPIwahoriAlgebra, J: Iterable[int], m: HeckeModule) -> Dict[str, object]:
    """Ind_{H_M}(m) against Coind_{H_M'}(m iota_M^-1 iota)."""
    J = frozenset(J)
    ind_m = affine_induct(m, algebra, J)
    conjugate = algebra.standard_levi(J).conjugate
    coind = affine_coinduct(twist_to_conjugate(m, algebra, J), algebra, conjugate.J)
    iso = find_isomorphism(ind_m, coind)
    return {"J": sorted(J), "conjugate": sorted(conjugate.J), "module": m.name,
            "rank": ind_m.rank, "isomorphism_found": iso is not None}


# ----------------------------------------------------------------------
# The sequence 0 -> Triv -> Ind(Triv_T) -> Sign -> 0
# ----------------------------------------------------------------------

def torus_character(algebra: ProPIwahoriAlgebra, values: Optional[Dict[str, object]] = None,
                    name: str = "") -> HeckeModule:
    """Character of H_T = group algebra of Lambda(1); unnamed generators act by 1."""
    HT = algebra.levi(())
    F = algebra.field
    values = values or {}
    gens = {g: la.matrix(F, [[F.convert(values.get(g, 1))]], 1) for g in HT.generator_keys}
    return HeckeModule(HT, 1, gens, name or "Triv_T")


@dataclass
class ShortExactSequence:
    middle: HeckeModule
    sub_basis: Matrix
    sub: HeckeModule
    quotient: QuotientModule


def build_ses(algebra: ProPIwahoriAlgebra) -> ShortExactSequence:
    """Triv embedded in Ind_{H_T}(Triv_T), located by solving, for GL2 and SL2.

    In characteristic p the quotient is Sign. Over Q it is the character on which the
    generator of the positive torus monoid acts by 1, and the sequence is still non-split.
    """
    ell = algebra.field.characteristic
    if ell not in (0, algebra.p):
        raise PreconditionError(f"the sequence is built in characteristic 0 or p={algebra.p}, not {ell}")
    if algebra.n != 2:
        raise PreconditionError(f"the sequence is built for rank-one groups, not {algebra.identifier()}")
    middle = affine_induct(torus_character(algebra), algebra, ())
    triv = character_module(trivial_character(algebra))
    maps = hom_space(triv, middle)
    if not maps:
        raise InternalConsistencyError("Triv does not embed in Ind(Triv_T)")
    sub_basis = la.row_basis(maps[0])
    quot = quotient(middle, sub_basis, "Ind(Triv_T)/Triv")
    if ell and find_isomorphism(quot.module, character_module(sign_character(algebra))) is None:
        raise InternalConsistencyError("Ind(Triv_T)/Triv is not Sign")
    log("Affine", f"0 -> Triv -> Ind(Triv_T) -> {quot.module.name} -> 0 over {algebra.identifier()}")
    return ShortExactSequence(middle, sub_basis, submodule(middle, sub_basis, "Triv"), quot)


def check_nonsplit(module: HeckeModule, sub_basis: Matrix, seed: int = 0, attempts: int = 20) -> Dict[str, object]:
    """The sequence sub -> module -> module/sub splits iff some f: quotient -> module has f proj invertible.

    The span of the composites is searched exactly.
    """
    quot = quotient(module, sub_basis)
    projection = quot.projection.matrix
    composites = [la.product(f, projection) for f in hom_space(quot.module, module)]
    section = la.invertible_combination(module.field, composites, random.Random(seed), attempts)
    return {"module": module.name, "rank": module.rank, "sub_rank": sub_basis.shape[0],
            "sections": len(composites), "splits": section is not None}


def _regular_triv_split(family: str, q: int, coeff: str) -> Dict[str, object]:
    A = UnipotentHeckeAlgebra.from_presentation(build_group(family, 2, q), CoefficientField.parse(coeff))
    regular = regular_module(A)
    maps = hom_space(character_module(trivial_character(A)), regular)
    if not maps:
        raise InternalConsistencyError(f"Triv does not embed in the regular module over {coeff}")
    return check_nonsplit(regular, la.row_basis(maps[0]))


def split_control(algebra: ProPIwahoriAlgebra) -> Dict[str, object]:
    """The splitting test on finite Hecke algebras with known answers.

    Over Q the finite Hecke algebra of the same group is semisimple and Triv splits off
    its regular module. Over F_3 the algebra of GL2(F_2) is F_3[T]/(T + 1)^2 and Triv
    inside its regular module does not split.
    """
    semisimple = _regular_triv_split(algebra.family, algebra.p, "q")
    local = _regular_triv_split("GL", 2, "fp:3")
    return {"identifier": algebra.identifier(), "rank": semisimple["rank"], "sections": semisimple["sections"],
            "splits": semisimple["splits"], "local_rank": local["rank"], "local_splits": local["splits"]}


def check_ses(algebra: ProPIwahoriAlgebra) -> Dict[str, object]:
    ses = build_ses(algebra)
    report = check_nonsplit(ses.middle, ses.sub_basis)
    report["identifier"] = algebra.identifier()
    return report

