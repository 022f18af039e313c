"""Representations of finite reductive groups and their Levi subgroups.

A ``GroupRep`` acts on column vectors: image(g) image(h) = image(gh).
Subspaces are still stored as row bases (one row per vector), matching
exact_linalg. Hecke modules built from representations use the row
convention of hecke_modules, so operators are transposed at that boundary.
"""

import random
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import exact_linalg as la
from coxeter import StandardLevi
from errors import InternalConsistencyError, PreconditionError
from exact_linalg import CoefficientField
from finite_group import BNPair, FiniteMatrixGroup, FiniteReductiveGroup, Matrix, elementary
from hecke_core import UnipotentHeckeAlgebra, levi_algebra
from hecke_modules import HeckeModule, ModuleMorphism, induct, regular_module, restrict
from settings import HECKELAB_SAMPLE_PAIRS, log

Linear = la.DomainMatrix


# ----------------------------------------------------------------------
# Group context
# ----------------------------------------------------------------------

def full_levi(G: FiniteReductiveGroup) -> StandardLevi:
    return StandardLevi.of(G.datum, G.datum.simple)


def rep_group(G: FiniteReductiveGroup, levi: StandardLevi) -> FiniteMatrixGroup:
    return G.group if levi.is_full else G.levi_bn(levi).group


def bn_of(G: FiniteReductiveGroup, levi: StandardLevi) -> BNPair:
    return G.bn if levi.is_full else G.levi_bn(levi)


def root_elements(G: FiniteReductiveGroup, roots: Sequence[Tuple[int, int]]) -> List[Matrix]:
    """Generators x_r(c) of the group spanned by the root subgroups of ``roots``."""
    return [elementary(G.n, i, j, c) for (i, j) in roots for c in G.field.additive_basis]


# ----------------------------------------------------------------------
# Representations
# ----------------------------------------------------------------------

class GroupRep:
    """Representation of M_J (or of G when the Levi is full) on column vectors.

    Either ``formula`` evaluates any element directly, or ``generators``
    gives images of the named generators and other elements are evaluated
    along BFS words. Images are memoized behind a lock.
    """

    def __init__(self, G: FiniteReductiveGroup, levi: StandardLevi, field: CoefficientField, dim: int,
                 formula: Optional[Callable[[Matrix], Linear]] = None,
                 generators: Optional[Dict[str, Linear]] = None, name: str = "", check: bool = True) -> None:
        self.G = G
        self.levi = levi
        self.field = field
        self.dim = dim
        self.name = name
        self.group = rep_group(G, levi)
        self._formula = formula
        self._lock = threading.Lock()
        self._images: Dict[Matrix, Linear] = {}
        if generators is None:
            if formula is None:
                raise PreconditionError("a representation needs a formula or generator images")
            generators = {g_name: formula(g) for g_name, g in self.group.generators.items()}
        self.generators = {g_name: la.sparse(m) for g_name, m in generators.items()}
        if check:
            self.check_homomorphism()

    def _evaluate(self, g: Matrix) -> Linear:
        if self._formula is not None:
            return la.sparse(self._formula(g))
        result = la.identity(self.field, self.dim)
        for name in self.group.word(g):
            result = la.product(result, self.generators[name])
        return result

    def image(self, g: Matrix) -> Linear:
        with self._lock:
            cached = self._images.get(g)
        if cached is not None:
            return cached
        value = self._evaluate(g)
        with self._lock:
            self._images.setdefault(g, value)
        return value

    def sum_of_images(self, elements) -> Linear:
        return la.linear_combination(self.field, ((1, self.image(g)) for g in elements), (self.dim, self.dim))

    def check_homomorphism(self, pairs: int = HECKELAB_SAMPLE_PAIRS, seed: int = 0) -> None:
        elements = self.group.elements
        if self.image(self.group.identity) != la.identity(self.field, self.dim):
            raise InternalConsistencyError(f"{self.name or 'representation'} does not fix the identity")
        rng = random.Random(seed)
        if len(elements) ** 2 <= pairs:
            sample = [(g, h) for g in elements for h in elements]
        else:
            sample = [(rng.choice(elements), rng.choice(elements)) for _ in range(pairs)]
        mul = self.group.mul
        for g, h in sample:
            if la.product(self.image(g), self.image(h)) != self.image(mul(g, h)):
                raise InternalConsistencyError(f"{self.name or 'representation'} is not multiplicative")

    @property
    def unipotent_generators(self) -> List[Matrix]:
        return root_elements(self.G, self.levi.positive_roots)

    def __repr__(self) -> str:
        return f"GroupRep({self.name or '?'}, dim={self.dim}, {self.levi.describe()} of {self.G.name})"


def trivial_rep(G: FiniteReductiveGroup, field: CoefficientField, levi: Optional[StandardLevi] = None) -> GroupRep:
    levi = levi or full_levi(G)
    return GroupRep(G, levi, field, 1, formula=lambda g: la.identity(field, 1), name="Triv")


def permutation_rep(G: FiniteReductiveGroup, levi: StandardLevi, field: CoefficientField, points: Sequence,
                    act: Callable[[Matrix, object], object], name: str) -> GroupRep:
    """e_x -> e_{act(g, x)}."""
    position = {x: i for i, x in enumerate(points)}
    size = len(points)

    def formula(g: Matrix) -> Linear:
        return la.from_dod(field, {position[act(g, x)]: {i: 1} for i, x in enumerate(points)}, (size, size))

    return GroupRep(G, levi, field, size, formula=formula, name=name)


def regular_rep(G: FiniteReductiveGroup, field: CoefficientField, levi: Optional[StandardLevi] = None) -> GroupRep:
    levi = levi or full_levi(G)
    group = rep_group(G, levi)
    return permutation_rep(G, levi, field, group.elements, lambda g, x: group.mul(g, x), "regular")


def direct_sum_rep(reps: Sequence[GroupRep], name: str = "") -> GroupRep:
    first = reps[0]
    return GroupRep(first.G, first.levi, first.field, sum(r.dim for r in reps),
                    formula=lambda g: la.block_diagonal(first.field, [r.image(g) for r in reps]),
                    name=name or " + ".join(r.name for r in reps))


def contragredient(V: GroupRep) -> GroupRep:
    inv = V.group.inv
    return GroupRep(V.G, V.levi, V.field, V.dim, formula=lambda g: V.image(inv(g)).transpose(),
                    name=f"{V.name}^dual")


def invariants_basis(V: GroupRep, elements: Sequence[Matrix]) -> Linear:
    """Row basis of the vectors fixed by every element listed."""
    if not elements:
        return la.identity(V.field, V.dim)
    one = la.identity(V.field, V.dim)
    stacked = la.vstack(V.field, [la.sub(V.image(x), one) for x in elements], V.dim)
    return la.nullspace(stacked)


def subrepresentation(V: GroupRep, basis: Linear, name: str = "") -> GroupRep:
    basis = la.row_basis(basis) if basis.shape[0] else basis
    return GroupRep(V.G, V.levi, V.field, basis.shape[0],
                    formula=lambda g: la.restrict_operator(basis, V.image(g).transpose()).transpose(),
                    name=name or f"sub({V.name})")


def spin_rep(V: GroupRep, vectors: Linear) -> Linear:
    """Row basis of the smallest subrepresentation containing the given vectors."""
    if vectors.shape[0] == 0:
        return vectors
    span = la.row_basis(vectors)
    gens = [m.transpose() for m in V.generators.values()]
    while True:
        grown = la.row_basis(la.vstack(V.field, [span] + [la.product(span, m) for m in gens], V.dim))
        if grown.shape[0] == span.shape[0]:
            return grown
        span = grown


def rep_intertwiners(V: GroupRep, W: GroupRep) -> List[Linear]:
    """Basis of Hom(V, W) as dim W x dim V matrices."""
    pairs = [(W.image(g), V.image(g)) for g in V.group.generators.values()]
    return la.intertwiners(V.field, pairs, W.dim, V.dim)


def find_rep_isomorphism(V: GroupRep, W: GroupRep, attempts: int = 40, seed: int = 0) -> Optional[Linear]:
    if V.dim != W.dim:
        return None
    if V.dim == 0:
        return la.zeros(V.field, 0, 0)
    return la.invertible_combination(V.field, rep_intertwiners(V, W), random.Random(seed), attempts)


# ----------------------------------------------------------------------
# The universal module X = ind_U^G(1)
# ----------------------------------------------------------------------

@dataclass
class UniversalModule:
    """Free module on U backslash G; g e_{Ux} = e_{Uxg^-1}, tau_w e_{Ux} = sum over Uz in UwU of e_{Uzx}."""

    rep: GroupRep
    bn: BNPair
    cosets: List[Matrix]
    position: Dict[Matrix, int]

    @property
    def dim(self) -> int:
        return len(self.cosets)

    def hecke_action(self, key) -> Linear:
        mul = self.bn.group.mul
        rep_of = self.bn.right_coset_rep
        dod: Dict[int, Dict[int, object]] = {}
        for z in self.bn.cosets_in_cell[key]:
            for j, x in enumerate(self.cosets):
                i = self.position[rep_of(mul(z, x))]
                row = dod.setdefault(i, {})
                row[j] = row.get(j, 0) + 1
        return la.from_dod(self.rep.field, dod, (self.dim, self.dim))

    def commutes(self, keys) -> bool:
        return all(la.product(self.hecke_action(k), g) == la.product(g, self.hecke_action(k))
                   for k in keys for g in self.rep.generators.values())


def universal_module(G: FiniteReductiveGroup, field: CoefficientField,
                     levi: Optional[StandardLevi] = None) -> UniversalModule:
    levi = levi or full_levi(G)
    bn = bn_of(G, levi)
    cosets = bn.right_cosets
    mul, inv = bn.group.mul, bn.group.inv
    rep = permutation_rep(G, levi, field, cosets, lambda g, x: bn.right_coset_rep(mul(x, inv(g))), "X")
    log("Rep", f"universal module of {levi.describe()} in {G.name}: dimension {len(cosets)}")
    return UniversalModule(rep, bn, cosets, {x: i for i, x in enumerate(cosets)})


# ----------------------------------------------------------------------
# U-invariants and the tensor functor
# ----------------------------------------------------------------------

@dataclass
class InvariantModule:
    """V^U as a right Hecke module; ``basis`` rows are vectors of V."""

    module: HeckeModule
    basis: Linear


def hecke_operator(V: GroupRep, bn: BNPair, key) -> Linear:
    """S_w = sum over Uy in UwU of image(y^-1); on V^U it is the action of tau_w."""
    inv = bn.group.inv
    return V.sum_of_images(inv(y) for y in bn.cosets_in_cell[key])


def u_invariants(V: GroupRep, algebra: UnipotentHeckeAlgebra) -> InvariantModule:
    basis = invariants_basis(V, V.unipotent_generators)
    gens = {}
    for name, key in algebra.generator_keys.items():
        S = hecke_operator(V, algebra.bn, key)
        gens[name] = la.solve_rows(basis, la.product(basis, S.transpose()))
    module = HeckeModule(algebra, basis.shape[0], gens, f"{V.name}^U")
    return InvariantModule(module, basis)


@dataclass
class TensorRep:
    """m tensor_H X with the quotient maps from m tensor X (index i * dim X + j)."""

    rep: GroupRep
    projection: Linear
    section: Linear


def tensor_X(m: HeckeModule, universal: UniversalModule) -> TensorRep:
    """Cokernel of (v tau_g) x e - v x (tau_g e) over generators g."""
    F = m.field
    r, dx = m.rank, universal.dim
    total = r * dx
    relations: Dict[int, Dict[int, object]] = {}
    count = 0
    for name, key in m.algebra.generator_keys.items():
        C = la.rows_of(m.generators[name])
        T = la.rows_of(universal.hecke_action(key).transpose())
        for i in range(r):
            for j in range(dx):
                row: Dict[int, object] = {}
                for k, c in C.get(i, {}).items():
                    row[k * dx + j] = row.get(k * dx + j, F.zero) + c
                for l, t in T.get(j, {}).items():
                    row[i * dx + l] = row.get(i * dx + l, F.zero) - t
                relations[count] = row
                count += 1
    relation_matrix = la.from_dod(F, relations, (count, total))
    basis = la.row_basis(relation_matrix) if count else relation_matrix
    projection, section = la.quotient_maps(basis, total)
    identity_r = la.identity(F, r)

    def formula(g: Matrix) -> Linear:
        lifted = la.kron(identity_r, universal.rep.image(g).transpose())
        return la.product(section, lifted, projection).transpose()

    rep = GroupRep(universal.rep.G, universal.rep.levi, F, projection.shape[1], formula=formula,
                   name=f"{m.name} (x)_H X")
    return TensorRep(rep, projection, section)


# ----------------------------------------------------------------------
# Parabolic induction and N-(co)invariants
# ----------------------------------------------------------------------

@dataclass
class ParabolicCosets:
    parabolic: frozenset
    reps: List[Matrix]
    rep_of: Dict[Matrix, Matrix]


@lru_cache(maxsize=None)
def parabolic_cosets(G: FiniteReductiveGroup, levi: StandardLevi) -> ParabolicCosets:
    """Representatives of P backslash G, least group index first (the identity represents P)."""
    P = G.parabolic(levi)
    mul = G.group.mul
    index = G.group.index
    rep_of: Dict[Matrix, Matrix] = {}
    for g in G.group.elements:
        if g in rep_of:
            continue
        orbit = [mul(p, g) for p in P]
        rep = min(orbit, key=index.__getitem__)
        for x in orbit:
            rep_of[x] = rep
    reps = sorted(set(rep_of.values()), key=index.__getitem__)
    return ParabolicCosets(P, reps, rep_of)


def parabolic_induce(V: GroupRep) -> GroupRep:
    """Ind_P^G V on functions f(pg) = p f(g); basis f_{y,i} at index y * dim V + i."""
    G, levi = V.G, V.levi
    if levi.is_full:
        return V
    cosets = parabolic_cosets(G, levi)
    position = {y: i for i, y in enumerate(cosets.reps)}
    mul, inv = G.group.mul, G.group.inv
    d = V.dim
    size = d * len(cosets.reps)

    def formula(g: Matrix) -> Linear:
        g_inv = inv(g)
        dod: Dict[int, Dict[int, object]] = {}
        for y_idx, y in enumerate(cosets.reps):
            target = cosets.rep_of[mul(y, g_inv)]
            p = mul(mul(target, g), inv(y))
            block = la.rows_of(V.image(G.levi_part(levi, p)))
            t_idx = position[target]
            for j, row in block.items():
                dod.setdefault(t_idx * d + j, {}).update({y_idx * d + i: v for i, v in row.items()})
        return la.from_dod(V.field, dod, (size, size))

    log("Rep", f"Ind from {levi.describe()}: dimension {d} -> {size}")
    return GroupRep(G, full_levi(G), V.field, size, formula=formula, name=f"Ind({V.name})")


@dataclass
class InvariantRep:
    rep: GroupRep
    basis: Linear


@dataclass
class CoinvariantRep:
    rep: GroupRep
    projection: Linear
    section: Linear


def n_invariants(V: GroupRep, levi: StandardLevi) -> InvariantRep:
    """V^N as a representation of M_J; ``basis`` rows are vectors of V."""
    if not V.levi.is_full:
        raise PreconditionError("N-invariants take a representation of G")
    basis = invariants_basis(V, root_elements(V.G, levi.unipotent_roots))
    rep = GroupRep(V.G, levi, V.field, basis.shape[0],
                   formula=lambda m: la.restrict_operator(basis, V.image(m).transpose()).transpose(),
                   name=f"{V.name}^N")
    return InvariantRep(rep, basis)


def n_coinvariants(V: GroupRep, levi: StandardLevi) -> CoinvariantRep:
    """V_N = V / span{n v - v} as a representation of M_J."""
    if not V.levi.is_full:
        raise PreconditionError("N-coinvariants take a representation of G")
    one = la.identity(V.field, V.dim)
    pieces = [la.sub(V.image(x), one).transpose() for x in root_elements(V.G, levi.unipotent_roots)]
    if pieces:
        stacked = la.vstack(V.field, pieces, V.dim)
        basis = la.row_basis(stacked)
    else:
        basis = la.zeros(V.field, 0, V.dim)
    projection, section = la.quotient_maps(basis, V.dim)
    rep = GroupRep(V.G, levi, V.field, projection.shape[1],
                   formula=lambda m: la.product(section, V.image(m).transpose(), projection).transpose(),
                   name=f"{V.name}_N")
    return CoinvariantRep(rep, projection, section)


def dagger(V: GroupRep) -> Tuple[GroupRep, Linear]:
    """The subrepresentation generated by the U-fixed vectors, with its basis in V."""
    basis = spin_rep(V, invariants_basis(V, V.unipotent_generators))
    return subrepresentation(V, basis, f"{V.name}^dagger"), basis


# ----------------------------------------------------------------------
# Diagram and counterexample checks
# ----------------------------------------------------------------------

def _morphism_or_none(source: HeckeModule, target: HeckeModule, matrix: Linear) -> Optional[ModuleMorphism]:
    try:
        return ModuleMorphism(source, target, matrix)
    except InternalConsistencyError:
        return None


def check_diag_q1(V: GroupRep, algebra: UnipotentHeckeAlgebra) -> Dict[str, object]:
    """V^{U_M} (x)_{H_M} H -> (Ind_P^G V)^U, v (x) tau_{n_d} -> f_{P,v} tau_{n_d}."""
    G, levi = V.G, V.levi
    algebra_M = levi_algebra(algebra, levi)
    small = u_invariants(V, algebra_M)
    lhs = induct(small.module, algebra, levi)
    induced = parabolic_induce(V)
    rhs = u_invariants(induced, algebra)
    rows = []
    for d in levi.min_coset_reps:
        S_t = hecke_operator(induced, G.bn, G.bn.weyl_lift(d)).transpose()
        for i in range(small.basis.shape[0]):
            f = la.from_dod(V.field, {0: dict(la.rows_of(la.row(small.basis, i)).get(0, {}))}, (1, induced.dim))
            rows.append(la.product(f, S_t))
    images = la.vstack(V.field, rows, induced.dim) if rows else la.zeros(V.field, 0, induced.dim)
    phi = la.solve_rows(rhs.basis, images)
    morphism = _morphism_or_none(lhs, rhs.module, phi)
    return {"levi": levi.describe(), "rep": V.name, "lhs_rank": lhs.rank, "rhs_rank": rhs.module.rank,
            "equivariant": morphism is not None,
            "bijective": lhs.rank == rhs.module.rank and la.is_invertible(phi)}


def check_diag_q2(V: GroupRep, levi: StandardLevi, algebra: UnipotentHeckeAlgebra) -> Dict[str, object]:
    """(V^N)^{U_M} and Res(V^U) are the same subspace with the same H_M-action."""
    algebra_M = levi_algebra(algebra, levi)
    inv = n_invariants(V, levi)
    lhs = u_invariants(inv.rep, algebra_M)
    lhs_in_V = la.product(lhs.basis, inv.basis)
    top = u_invariants(V, algebra)
    rhs = restrict(top.module, algebra_M)
    same = la.same_row_space(lhs_in_V, top.basis) if lhs_in_V.shape[0] == top.basis.shape[0] else False
    morphism = None
    if same:
        morphism = _morphism_or_none(lhs.module, rhs, la.solve_rows(top.basis, lhs_in_V))
    return {"levi": levi.describe(), "rep": V.name, "lhs_rank": lhs.module.rank, "rhs_rank": rhs.rank,
            "same_subspace": same, "same_action": morphism is not None}


def check_q3_char_ne_p(V: GroupRep, levi: StandardLevi, algebra: UnipotentHeckeAlgebra) -> Dict[str, object]:
    """Res(V^U) -> (V_N)^{U_M} by projection, with the averaging map as inverse."""
    F = V.field
    if F.characteristic == V.G.p:
        raise PreconditionError("the averaging inverse needs coefficient characteristic different from p")
    algebra_M = levi_algebra(algebra, levi)
    co = n_coinvariants(V, levi)
    target = u_invariants(co.rep, algebra_M)
    top = u_invariants(V, algebra)
    source = restrict(top.module, algebra_M)
    phi = la.solve_rows(target.basis, la.product(top.basis, co.projection))
    average = la.scale(V.sum_of_images(V.G.unipotent).transpose(), F.one / F.convert(len(V.G.unipotent)))
    lifted = la.product(target.basis, co.section, average)
    psi = la.solve_rows(top.basis, lifted)
    k_src, k_tgt = source.rank, target.module.rank
    inverse_ok = (k_src == k_tgt and la.product(phi, psi) == la.identity(F, k_src)
                  and la.product(psi, phi) == la.identity(F, k_tgt))
    morphism = _morphism_or_none(source, target.module, phi)
    return {"levi": levi.describe(), "rep": V.name, "rank": k_src, "equivariant": morphism is not None,
            "averaging_inverse": inverse_ok}


def projectivity_defect(G: FiniteReductiveGroup, field: CoefficientField,
                        algebra: UnipotentHeckeAlgebra) -> Dict[str, object]:
    if field.characteristic != G.p:
        raise PreconditionError("the projectivity defect is measured in characteristic p")
    X = universal_module(G, field)
    fixed = invariants_basis(X.rep, X.rep.unipotent_generators).shape[0]
    bound = len(G.unipotent) * fixed
    return {"dim_X": X.dim, "u_times_dim_XU": bound, "strict": X.dim < bound}


def q3_witness(G: FiniteReductiveGroup, field: CoefficientField) -> Dict[str, object]:
    """Image of R[G]^U -> X^U induced by e_g -> e_{Ug^-1}; orbit sums over Ug map to sums over U g^-1 U."""
    X = universal_module(G, field)
    mul, inv = G.group.mul, G.group.inv
    bn = G.bn
    rows = []
    for g in bn.right_cosets:
        g_inv = inv(g)
        counts: Dict[int, int] = {}
        for u in G.unipotent:
            j = X.position[bn.right_coset_rep(mul(g_inv, u))]
            counts[j] = counts.get(j, 0) + 1
        rows.append(la.from_dod(field, {0: counts}, (1, X.dim)))
    image = la.vstack(field, rows, X.dim)
    fixed = invariants_basis(X.rep, X.rep.unipotent_generators)
    image_dim = la.rank(image)
    unit = la.unit_vector(field, X.dim, X.position[G.group.identity])
    return {"image_dim": image_dim, "target_dim": fixed.shape[0], "surjective": image_dim == fixed.shape[0],
            "unit_in_image": la.in_row_space(la.row_basis(image), unit)}


def check_universal(G: FiniteReductiveGroup, algebra: UnipotentHeckeAlgebra) -> Dict[str, object]:
    """X^U is the regular right H-module through h -> e_U h."""
    X = universal_module(G, algebra.field)
    fixed = u_invariants(X.rep, algebra)
    indicators = []
    for key in algebra.basis_keys:
        indicators.append(la.from_dod(algebra.field, {0: {X.position[x]: 1 for x in G.bn.cosets_in_cell[key]}},
                                      (1, X.dim)))
    phi = la.solve_rows(fixed.basis, la.vstack(algebra.field, indicators, X.dim))
    morphism = _morphism_or_none(regular_module(algebra), fixed.module, phi)
    return {"dim_X": X.dim, "dim_XU": fixed.module.rank, "dim_H": algebra.dimension,
            "isomorphism": morphism is not None and morphism.is_isomorphism,
            "actions_commute": X.commutes(algebra.generator_keys.values())}


def check_contra_ind(V: GroupRep, W: Optional[GroupRep] = None) -> Dict[str, object]:
    """Ind(V^dual) = Ind(V)^dual, and (W_N)^dual = (W^dual)^N for a representation W of G."""
    report: Dict[str, object] = {"rep": V.name, "levi": V.levi.describe()}
    report["ind_dual"] = find_rep_isomorphism(parabolic_induce(contragredient(V)),
                                              contragredient(parabolic_induce(V))) is not None
    if W is not None:
        lhs = contragredient(n_coinvariants(W, V.levi).rep)
        rhs = n_invariants(contragredient(W), V.levi).rep
        report["coinvariant_dual"] = find_rep_isomorphism(lhs, rhs) is not None
    return report


def check_group_adjunction(V: GroupRep, W: GroupRep) -> Dict[str, object]:
    """Hom_G(Ind V, W) = Hom_M(V, W^N) and Hom_G(W, Ind V) = Hom_M(W_N, V)."""
    induced = parabolic_induce(V)
    left = len(rep_intertwiners(induced, W))
    left_m = len(rep_intertwiners(V, n_invariants(W, V.levi).rep))
    right = len(rep_intertwiners(W, induced))
    right_m = len(rep_intertwiners(n_coinvariants(W, V.levi).rep, V))
    return {"hom_ind_w": left, "hom_v_wN": left_m, "hom_w_ind": right, "hom_wN_v": right_m,
            "invariants_adjunction": left == left_m, "coinvariants_adjunction": right == right_m}


def check_left_exact(V: GroupRep, sub_basis: Linear) -> Dict[str, object]:
    """W^U = W cap V^U for the subrepresentation W spanned by ``sub_basis``."""
    basis = la.row_basis(sub_basis)
    W = subrepresentation(V, basis)
    fixed_W = la.product(invariants_basis(W, W.unipotent_generators), basis)
    fixed_V = invariants_basis(V, V.unipotent_generators)
    meet = basis.shape[0] + fixed_V.shape[0] - la.rank(la.vstack_like(basis, fixed_V))
    inside = all(la.in_row_space(fixed_V, la.row(fixed_W, i)) for i in range(fixed_W.shape[0]))
    return {"dim_WU": fixed_W.shape[0], "dim_meet": meet, "left_exact": inside and fixed_W.shape[0] == meet}


def check_dagger_commute(V: GroupRep) -> Dict[str, object]:
    induced_dagger, _ = dagger(parabolic_induce(V))
    inner, _ = dagger(V)
    iso = find_rep_isomorphism(induced_dagger, parabolic_induce(inner))
    return {"rep": V.name, "levi": V.levi.describe(), "dim": induced_dagger.dim, "isomorphic": iso is not None}


def check_tensor_induction(m: HeckeModule, algebra: UnipotentHeckeAlgebra, levi: StandardLevi) -> Dict[str, object]:
    """(m (x)_{H_M} H) (x)_H X against Ind_P^G(m (x)_{H_M} X_M)."""
    G = algebra.group
    lhs = tensor_X(induct(m, algebra, levi), universal_module(G, algebra.field)).rep
    rhs = parabolic_induce(tensor_X(m, universal_module(G, algebra.field, levi)).rep)
    return {"levi": levi.describe(), "module": m.name, "lhs_dim": lhs.dim, "rhs_dim": rhs.dim,
            "isomorphic": find_rep_isomorphism(lhs, rhs) is not None}
