"""Finite-rank right modules over Hecke algebras and the functors Ind, Coind, Res, L.

Vectors are rows and tau_g acts by v -> v A_g. A module stores one matrix per
algebra generator (simple lifts and unit generators); the action of any other
basis element is assembled along the factorization the presentation engine
returns for its index.
"""

import random
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, List, Optional, Sequence

import exact_linalg as la
from coxeter import StandardLevi
from errors import InternalConsistencyError, PreconditionError, SchemaError
from finite_group import Monomial
from hecke_core import (Character, HeckeElement, PresentedHeckeAlgebra, UnipotentHeckeAlgebra, frobenius,
                        levi_algebra)
from settings import log

Key = Hashable
Matrix = la.DomainMatrix


# ----------------------------------------------------------------------
# Modules and morphisms
# ----------------------------------------------------------------------

class HeckeModule:
    """Right module of finite rank given by generator matrices."""

    def __init__(self, algebra: PresentedHeckeAlgebra, rank: int, generators: Dict[str, Matrix],
                 name: str = "", check: bool = True) -> None:
        self.algebra = algebra
        self.rank = rank
        self.name = name
        missing = set(algebra.generator_keys) - set(generators)
        if missing:
            raise InternalConsistencyError(f"module {name or '?'} lacks generator matrices {sorted(missing)}")
        self.generators = {g: la.sparse(generators[g]) for g in algebra.generator_keys}
        self._cache: Dict[Key, Matrix] = {}
        if check:
            self.check_relations()

    @property
    def field(self):
        return self.algebra.field

    def identity(self) -> Matrix:
        return la.identity(self.field, self.rank)

    def _unit(self, key: Key) -> Matrix:
        result = self.identity()
        for name, exponent in self.algebra.unit_word(key):
            base = self.generators[name] if exponent > 0 else la.inverse(self.generators[name])
            result = la.product(result, la.power(base, abs(exponent)))
        return result

    def act(self, key: Key) -> Matrix:
        """Matrix of tau_key."""
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        unit, word = self.algebra.factor(key)
        result = self._unit(unit)
        for name in word:
            result = la.product(result, self.generators[name])
        self._cache[key] = result
        return result

    def act_element(self, x: HeckeElement) -> Matrix:
        return la.linear_combination(self.field, ((c, self.act(k)) for k, c in x.terms.items()),
                                     (self.rank, self.rank))

    def check_relations(self) -> None:
        """tau_g tau_b acts as A_g A_b for every generator g and every relation key b."""
        A = self.algebra
        for name in A.unit_generators:
            if not la.is_invertible(self.generators[name]):
                raise InternalConsistencyError(f"unit generator {name} acts singularly on {self.name or 'module'}")
        for name, g in A.generator_keys.items():
            for b in A.relation_keys():
                lhs = la.product(self.generators[name], self.act(b))
                rhs = self.act_element(A.basis(g) * A.basis(b))
                if lhs != rhs:
                    raise InternalConsistencyError(
                        f"module {self.name or '?'} violates a relation at {name} * {A.label(b)}")

    def to_json(self) -> dict:
        F = self.field
        return {"kind": "hecke_module", "algebra_id": self.algebra.identifier(), "rank": self.rank,
                "name": self.name,
                "generators": {g: [[F.encode(x) for x in row] for row in m.to_list()]
                               for g, m in self.generators.items()}}

    def __repr__(self) -> str:
        return f"HeckeModule({self.name or '?'}, rank={self.rank}, over {self.algebra.identifier()})"


def module_from_json(algebra: PresentedHeckeAlgebra, document: dict) -> HeckeModule:
    for field_name in ("algebra_id", "rank", "generators"):
        if field_name not in document:
            raise SchemaError(field_name, "missing")
    if document["algebra_id"] != algebra.identifier():
        raise SchemaError("algebra_id", f"expected {algebra.identifier()}, got {document['algebra_id']}")
    rank = document["rank"]
    if not isinstance(rank, int) or rank < 0:
        raise SchemaError("rank", "must be a non-negative integer")
    missing = set(algebra.generator_keys) - set(document["generators"])
    if missing:
        raise SchemaError("generators", f"missing matrices for {sorted(missing)}")
    generators = {}
    for name, rows in document["generators"].items():
        if len(rows) != rank or any(len(r) != rank for r in rows):
            raise SchemaError(f"generators.{name}", f"expected a {rank}x{rank} matrix")
        generators[name] = la.matrix(algebra.field, [[algebra.field.decode(x) for x in r] for r in rows], rank)
    return HeckeModule(algebra, rank, generators, document.get("name", ""))


@dataclass
class ModuleMorphism:
    """Linear map f with f(v tau_g) = f(v) tau_g, stored as a source.rank x target.rank matrix."""

    source: HeckeModule
    target: HeckeModule
    matrix: Matrix

    def __post_init__(self) -> None:
        self.matrix = la.sparse(self.matrix)
        for g in self.source.generators:
            if la.product(self.source.generators[g], self.matrix) != la.product(self.matrix, self.target.generators[g]):
                raise InternalConsistencyError(f"matrix does not intertwine generator {g}")

    def compose(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """self followed by other."""
        return ModuleMorphism(self.source, other.target, la.product(self.matrix, other.matrix))

    @property
    def kernel(self) -> Matrix:
        return la.left_nullspace(self.matrix)

    @property
    def image(self) -> Matrix:
        return la.row_basis(self.matrix)

    @property
    def is_injective(self) -> bool:
        return la.rank(self.matrix) == self.source.rank

    @property
    def is_isomorphism(self) -> bool:
        return self.source.rank == self.target.rank and la.is_invertible(self.matrix)


# ----------------------------------------------------------------------
# Constructions
# ----------------------------------------------------------------------

def character_module(character: Character) -> HeckeModule:
    A = character.algebra
    gens = {g: la.matrix(A.field, [[character.values(k)]], 1) for g, k in A.generator_keys.items()}
    return HeckeModule(A, 1, gens, character.name)


def regular_module(algebra: UnipotentHeckeAlgebra) -> HeckeModule:
    """H acting on itself by right multiplication in the basis tau_n."""
    pos = algebra.position
    dim = algebra.dimension
    gens = {}
    for g, key in algebra.generator_keys.items():
        gens[g] = la.from_dod(algebra.field, {i: {pos[k]: c for k, c in algebra.mul_basis(b, key).items()}
                                               for i, b in enumerate(algebra.basis_keys)}, (dim, dim))
    return HeckeModule(algebra, dim, gens, "regular")


def direct_sum(modules: Sequence[HeckeModule], name: str = "") -> HeckeModule:
    algebra = modules[0].algebra
    gens = {g: la.block_diagonal(algebra.field, [m.generators[g] for m in modules]) for g in algebra.generator_keys}
    return HeckeModule(algebra, sum(m.rank for m in modules), gens,
                       name or " + ".join(m.name or "?" for m in modules), check=False)


def spin(module: HeckeModule, vectors: Matrix) -> Matrix:
    """Row basis of the smallest submodule containing the given rows."""
    return la.span_closure(module.field, vectors, list(module.generators.values()))


def is_submodule(module: HeckeModule, basis: Matrix) -> bool:
    return all(la.rank(la.vstack_like(basis, la.product(basis, a))) == la.rank(basis)
               for a in module.generators.values())


def submodule(module: HeckeModule, basis: Matrix, name: str = "") -> HeckeModule:
    basis = la.row_basis(basis) if basis.shape[0] else basis
    if not is_submodule(module, basis):
        raise InternalConsistencyError("rows do not span a submodule")
    gens = {g: la.restrict_operator(basis, a) for g, a in module.generators.items()}
    return HeckeModule(module.algebra, basis.shape[0], gens, name or f"sub({module.name})", check=False)


def inclusion(module: HeckeModule, sub: HeckeModule, basis: Matrix) -> ModuleMorphism:
    return ModuleMorphism(sub, module, la.row_basis(basis))


def quotient(module: HeckeModule, basis: Matrix, name: str = "") -> "QuotientModule":
    if basis.shape[0] and not is_submodule(module, basis):
        raise InternalConsistencyError("rows do not span a submodule")
    projection, section = la.quotient_maps(basis, module.rank)
    gens = {g: la.product(section, a, projection) for g, a in module.generators.items()}
    quotient_module = HeckeModule(module.algebra, projection.shape[1], gens, name or f"{module.name}/sub", check=False)
    return QuotientModule(quotient_module, ModuleMorphism(module, quotient_module, projection), section)


@dataclass
class QuotientModule:
    module: HeckeModule
    projection: ModuleMorphism
    section: Matrix


def relabel(module: HeckeModule, algebra: PresentedHeckeAlgebra, key_map: Callable[[Key], Key],
            name: str = "") -> HeckeModule:
    """Module over ``algebra`` on the same carrier, tau_k acting as tau_{key_map(k)} did."""
    gens = {g: module.act(key_map(k)) for g, k in algebra.generator_keys.items()}
    return HeckeModule(algebra, module.rank, gens, name or module.name)


# ----------------------------------------------------------------------
# Hom spaces
# ----------------------------------------------------------------------

def hom_space(source: HeckeModule, target: HeckeModule) -> List[Matrix]:
    """Basis of Hom(source, target) by solving A_g X = X B_g for every generator g."""
    if source.algebra is not target.algebra and source.algebra.identifier() != target.algebra.identifier():
        raise PreconditionError("modules over different algebras")
    pairs = [(source.generators[g], target.generators[g]) for g in source.generators]
    return la.intertwiners(source.field, pairs, source.rank, target.rank)


def hom_dimension(source: HeckeModule, target: HeckeModule) -> int:
    return len(hom_space(source, target))


def find_isomorphism(source: HeckeModule, target: HeckeModule, attempts: int = 40,
                     seed: int = 0) -> Optional[ModuleMorphism]:
    """An invertible intertwiner, or None when the modules are not isomorphic.

    Isomorphic modules have dim Hom(M, N) = dim End(M) = dim End(N) = dim Hom(N, M); past
    that test the span of Hom(M, N) is searched exactly for an invertible member.
    """
    if source.rank != target.rank:
        return None
    if source.rank == 0:
        return ModuleMorphism(source, target, la.zeros(source.field, 0, 0))
    basis = hom_space(source, target)
    if not basis:
        return None
    if len(basis) != hom_dimension(source, source) or hom_dimension(target, source) != hom_dimension(target, target):
        return None
    found = la.invertible_combination(source.field, basis, random.Random(seed), attempts)
    return None if found is None else ModuleMorphism(source, target, found)


def are_isomorphic(source: HeckeModule, target: HeckeModule) -> bool:
    return find_isomorphism(source, target) is not None


# ----------------------------------------------------------------------
# Levi functors for finite algebras
# ----------------------------------------------------------------------

def _levi_split_right(algebra: UnipotentHeckeAlgebra, levi: StandardLevi, key: Monomial):
    """key = m n_d with m in N_M and d in ^M W."""
    _, d = levi.split_right(key.perm)
    nd = algebra.bn.weyl_lift(d)
    return key * nd.inverse(), levi.min_coset_reps.index(d)


def _levi_split_left(algebra: UnipotentHeckeAlgebra, levi: StandardLevi, key: Monomial):
    """key = n_e m with e in W^M and m in N_M; returns the index of d = e^-1."""
    e, _ = levi.split_left(key.perm)
    ne = algebra.bn.weyl_lift(e)
    return ne.inverse() * key, levi.max_side_reps.index(e)


def induct(module: HeckeModule, algebra: UnipotentHeckeAlgebra, levi: StandardLevi) -> HeckeModule:
    """m tensor_{H_M} H with basis v_i tensor tau_{n_d}, index d * rank + i."""
    reps = levi.min_coset_reps
    lifts = [algebra.bn.weyl_lift(d) for d in reps]
    r = module.rank
    total = r * len(reps)
    gens = {}
    for g, key in algebra.generator_keys.items():
        dod: Dict[int, Dict[int, object]] = {}
        for d_idx, nd in enumerate(lifts):
            for k, c in algebra.mul_basis(nd, key).items():
                m, target = _levi_split_right(algebra, levi, k)
                block = la.rows_of(module.act(m))
                for i, row in block.items():
                    out = dod.setdefault(d_idx * r + i, {})
                    for j, v in row.items():
                        col = target * r + j
                        out[col] = out.get(col, algebra.field.zero) + c * v
        gens[g] = la.from_dod(algebra.field, dod, (total, total))
    log("Modules", f"Ind from {levi.describe()}: rank {r} -> {total}")
    return HeckeModule(algebra, total, gens, f"Ind({module.name})")


def coinduct(module: HeckeModule, algebra: UnipotentHeckeAlgebra, levi: StandardLevi) -> HeckeModule:
    """Hom_{H_M}(H, m) with coordinates f(tau_{n_{d^-1}}), index d * rank + i; (f h)(x) = f(h x)."""
    reps = levi.max_side_reps
    lifts = [algebra.bn.weyl_lift(e) for e in reps]
    r = module.rank
    total = r * len(reps)
    gens = {}
    for g, key in algebra.generator_keys.items():
        dod: Dict[int, Dict[int, object]] = {}
        for d_idx, ne in enumerate(lifts):
            for k, c in algebra.mul_basis(key, ne).items():
                m, source = _levi_split_left(algebra, levi, k)
                block = la.rows_of(module.act(m))
                for i, row in block.items():
                    out = dod.setdefault(source * r + i, {})
                    for j, v in row.items():
                        col = d_idx * r + j
                        out[col] = out.get(col, algebra.field.zero) + c * v
        gens[g] = la.from_dod(algebra.field, dod, (total, total))
    return HeckeModule(algebra, total, gens, f"Coind({module.name})")


def restrict(module: HeckeModule, algebra_M: UnipotentHeckeAlgebra) -> HeckeModule:
    return relabel(module, algebra_M, lambda k: k, f"Res({module.name})")


def induct_morphism(f: ModuleMorphism, algebra: UnipotentHeckeAlgebra, levi: StandardLevi,
                    source: Optional[HeckeModule] = None, target: Optional[HeckeModule] = None) -> ModuleMorphism:
    """Ind(f) = f tensor id, block diagonal over the coset representatives."""
    source = source or induct(f.source, algebra, levi)
    target = target or induct(f.target, algebra, levi)
    blocks = la.identity(algebra.field, len(levi.min_coset_reps))
    return ModuleMorphism(source, target, la.kron(blocks, f.matrix))


def _conjugation(by: Monomial) -> Callable[[Monomial], Monomial]:
    by_inv = by.inverse()
    return lambda k: by * k * by_inv


def left_adjoint(module: HeckeModule, algebra: UnipotentHeckeAlgebra, levi: StandardLevi) -> HeckeModule:
    """L(n) = Res_{H_M'}(n) twisted by iota^-1 iota_M, an H_M-module."""
    algebra_M = levi_algebra(algebra, levi)
    n_top = frobenius(algebra).lift
    n_levi = frobenius(algebra_M).lift
    to_conjugate = _conjugation(n_top.inverse() * n_levi)
    return relabel(module, algebra_M, to_conjugate, f"L({module.name})")


def twist_to_conjugate(module: HeckeModule, algebra: UnipotentHeckeAlgebra, levi: StandardLevi) -> HeckeModule:
    """The H_M'-module m iota_M^-1 iota for an H_M-module m."""
    conjugate = levi.conjugate
    algebra_conj = levi_algebra(algebra, conjugate)
    n_top = frobenius(algebra).lift
    n_levi = frobenius(levi_algebra(algebra, levi)).lift
    to_levi = _conjugation(n_levi.inverse() * n_top)
    return relabel(module, algebra_conj, to_levi, f"{module.name}^tw")


# ----------------------------------------------------------------------
# Checks
# ----------------------------------------------------------------------

def check_adjunction(algebra: UnipotentHeckeAlgebra, levi: StandardLevi, m: HeckeModule,
                     n: HeckeModule) -> Dict[str, object]:
    algebra_M = levi_algebra(algebra, levi)
    ind_m = induct(m, algebra, levi)
    res_n = restrict(n, algebra_M)
    l_n = left_adjoint(n, algebra, levi)
    report: Dict[str, object] = {
        "levi": levi.describe(), "m": m.name, "n": n.name,
        "hom_ind_m_n": hom_dimension(ind_m, n), "hom_m_res_n": hom_dimension(m, res_n),
        "hom_l_n_m": hom_dimension(l_n, m), "hom_n_ind_m": hom_dimension(n, ind_m),
    }
    report["ind_res"] = report["hom_ind_m_n"] == report["hom_m_res_n"]
    report["l_ind"] = report["hom_l_n_m"] == report["hom_n_ind_m"]
    if algebra.field.characteristic != algebra.bn.field.p:
        report["hom_res_n_m"] = hom_dimension(res_n, m)
        report["frobenius_pair"] = report["hom_res_n_m"] == report["hom_n_ind_m"]
    return report


def check_ind_coind_twist(algebra: UnipotentHeckeAlgebra, levi: StandardLevi, m: HeckeModule) -> Dict[str, object]:
    """Ind_{H_M}(m) against Coind_{H_M'}(m iota_M^-1 iota)."""
    ind_m = induct(m, algebra, levi)
    twisted = twist_to_conjugate(m, algebra, levi)
    coind = coinduct(twisted, algebra, levi.conjugate)
    iso = find_isomorphism(ind_m, coind)
    return {"levi": levi.describe(), "conjugate": levi.conjugate.describe(), "module": m.name,
            "rank": ind_m.rank, "isomorphism_found": iso is not None}


def check_twist_coherence(algebra: UnipotentHeckeAlgebra, levi: StandardLevi, m: HeckeModule) -> bool:
    """Twisting M -> M' -> M returns a module isomorphic to m."""
    there = twist_to_conjugate(m, algebra, levi)
    back = twist_to_conjugate(there, algebra, levi.conjugate)
    return are_isomorphic(back, m)


def check_ind_exactness(algebra: UnipotentHeckeAlgebra, levi: StandardLevi, m: HeckeModule,
                        sub_basis: Matrix) -> Dict[str, object]:
    """Ind applied to 0 -> sub -> m -> m/sub -> 0 stays exact."""
    sub = submodule(m, sub_basis)
    quot = quotient(m, sub_basis)
    ind_sub, ind_m, ind_quot = (induct(x, algebra, levi) for x in (sub, m, quot.module))
    i = induct_morphism(inclusion(m, sub, sub_basis), algebra, levi, ind_sub, ind_m)
    p = induct_morphism(quot.projection, algebra, levi, ind_m, ind_quot)
    composite_zero = la.is_zero(la.product(i.matrix, p.matrix))
    middle_exact = la.rank(i.matrix) + la.rank(p.matrix) == ind_m.rank
    return {"injective": i.is_injective, "surjective": la.rank(p.matrix) == ind_quot.rank,
            "composite_zero": composite_zero, "middle_exact": middle_exact,
            "ranks_add": ind_sub.rank + ind_quot.rank == ind_m.rank}
