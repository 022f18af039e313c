"""Supersingular modules, standard triples and the modules I_H(P, sigma, Q)."""

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import coxeter
import exact_linalg as la
from affine_functors import affine_induct
from coxeter import RootDatum, StandardLevi
from errors import InternalConsistencyError, PreconditionError, UnsupportedCaseError
from hecke_affine import ProPIwahoriAlgebra, ProPWeylElement, affine_characters, torus_unit, translation
from hecke_modules import HeckeModule, are_isomorphic, hom_dimension, quotient, spin, submodule
from settings import log

MAX_COMPOSITION_RANK = 4
MAX_SPLITTING_DEGREE = 2


def subsets(items: Iterable[int]) -> List[FrozenSet[int]]:
    items = sorted(items)
    return [frozenset(c) for size in range(len(items) + 1) for c in combinations(items, size)]


# ----------------------------------------------------------------------
# Pi_sigma and P(sigma)
# ----------------------------------------------------------------------

def coroot_generators(algebra: ProPIwahoriAlgebra, k: int) -> List[ProPWeylElement]:
    """Generators of the length-zero part of the rank-one group of alpha_k: coroot translation and units."""
    F, n = algebra.F, algebra.n
    vals = [0] * n
    vals[k - 1], vals[k] = 1, -1
    out = [translation(F, vals)]
    if F.q > 2:
        units = [1] * n
        units[k - 1], units[k] = F.generator, F.inv(F.generator)
        out.append(torus_unit(F, units))
    return out


def pi_sigma(sigma: HeckeModule, algebra: ProPIwahoriAlgebra) -> FrozenSet[int]:
    """Simple roots orthogonal to M on whose rank-one length-zero group sigma acts trivially through tau*."""
    HM = sigma.algebra
    J = HM.J
    identity = sigma.identity()
    out = set()
    for k in algebra.J - J:
        root = algebra.datum.simple_root(k)
        if any(coxeter.root_pairing(root, algebra.datum.simple_root(j)) for j in J):
            continue
        if all(sigma.act_element(HM.star(w)) == identity for w in coroot_generators(algebra, k)):
            out.add(k)
    return frozenset(out)


def p_of_sigma(sigma: HeckeModule, algebra: ProPIwahoriAlgebra) -> StandardLevi:
    return algebra.standard_levi(sigma.algebra.J | pi_sigma(sigma, algebra))


@dataclass
class StandardTriple:
    """(P, sigma, Q) with sigma an H_M-module and P contained in Q contained in P(sigma)."""

    algebra: ProPIwahoriAlgebra
    P: FrozenSet[int]
    sigma: HeckeModule
    Q: FrozenSet[int]
    pi: FrozenSet[int] = field(init=False)

    def __post_init__(self) -> None:
        self.P, self.Q = frozenset(self.P), frozenset(self.Q)
        if self.sigma.algebra.identifier() != self.algebra.levi(self.P).identifier():
            raise PreconditionError(f"sigma lives over {self.sigma.algebra.identifier()}, not over J={sorted(self.P)}")
        self.pi = pi_sigma(self.sigma, self.algebra)
        if not self.P <= self.Q <= self.P | self.pi:
            raise PreconditionError(f"Q={sorted(self.Q)} is not between P={sorted(self.P)} "
                                    f"and P(sigma)={sorted(self.P | self.pi)}")

    def describe(self) -> str:
        return f"(P={sorted(self.P)}, sigma={self.sigma.name}, Q={sorted(self.Q)})"


# ----------------------------------------------------------------------
# The e-extension and I_H(P, sigma, Q)
# ----------------------------------------------------------------------

def _derived_part(perm: coxeter.Perm, datum: RootDatum) -> coxeter.Perm:
    """The component of perm in the Weyl group of ``datum``; identity elsewhere."""
    out = list(range(len(perm)))
    for block in datum.blocks:
        if len(block) > 1:
            for i in block:
                out[i] = perm[i]
    return tuple(out)


def extend_module(sigma: HeckeModule, algebra: ProPIwahoriAlgebra, Q: Iterable[int]) -> HeckeModule:
    """e_{H_{M_Q}}(sigma): tau*_w acts as sigma(tau^{M,*}_w) on W_M(1) and trivially on W_{M'}(1)."""
    HM = sigma.algebra
    J, Q = HM.J, frozenset(Q)
    if not J <= Q <= J | pi_sigma(sigma, algebra):
        raise PreconditionError(f"Q={sorted(Q)} is outside [P, P(sigma)] for J={sorted(J)}")
    if Q == J:
        return sigma
    HQ = algebra.levi(Q)
    derived = RootDatum(algebra.n, tuple(sorted(Q - J)))
    gens = {}
    for name, key in HQ.unit_generators.items():
        w = key * algebra.finite_lift(_derived_part(key.perm, derived)).inverse()
        if not HM.contains(w):
            raise InternalConsistencyError(f"{key.label()} does not split along M and M'")
        gens[name] = sigma.act_element(HM.star(w))
    for name, key in HQ.simple_keys.items():
        if HM.contains(key):
            gens[name] = sigma.act(key)
            continue
        _, c = HQ.quadratic(name)
        terms = [(1, sigma.identity())] + [(coeff, sigma.act(z)) for z, coeff in c.items()]
        gens[name] = la.linear_combination(algebra.field, terms, (sigma.rank, sigma.rank))
    return HeckeModule(HQ, sigma.rank, gens, f"e_{''.join(map(str, sorted(Q)))}({sigma.name})")


def i_h_triple(triple: StandardTriple) -> HeckeModule:
    """Ind_{M_Q}(e(sigma)) modulo the images of x tensor 1 -> x tensor sum_d tau_{n_d} for Q < Q1 <= P(sigma)."""
    H = triple.algebra
    extended = extend_module(triple.sigma, H, triple.Q)
    induced = affine_induct(extended, H, triple.Q)
    reps = H.standard_levi(triple.Q).min_coset_reps
    r = extended.rank
    images = []
    for Q1 in subsets(triple.P | triple.pi):
        if not triple.Q < Q1:
            continue
        inner = StandardLevi.of(RootDatum(H.n, tuple(sorted(Q1))), triple.Q).min_coset_reps
        positions = [reps.index(d) for d in inner]
        vectors = la.from_dod(H.field, {i: {p * r + i: 1 for p in positions} for i in range(r)}, (r, induced.rank))
        images.append(spin(induced, vectors))
    if images:
        image = la.vstack(H.field, images, induced.rank)
        if not la.is_zero(image):
            induced = quotient(induced, la.row_basis(image), induced.name).module
    induced.name = f"I{triple.describe()}"
    return induced


# ----------------------------------------------------------------------
# Composition factors
# ----------------------------------------------------------------------

@dataclass
class CompositionFactor:
    """A simple factor over the coefficient field.

    ``splitting_degree`` is the dimension of its endomorphism field: over a splitting
    field the factor breaks into that many conjugate absolutely simple factors.
    """

    module: HeckeModule
    multiplicity: int
    splitting_degree: int = 1


def _candidate_vectors(module: HeckeModule) -> Iterable[la.DomainMatrix]:
    F = module.field
    r = module.rank
    if F.characteristic:
        for coords in product(range(F.characteristic), repeat=r):
            nonzero = [c for c in coords if c]
            if nonzero and nonzero[0] == 1:
                yield la.matrix(F, [list(coords)], r)
        return
    for i in range(r):
        yield la.unit_vector(F, r, i)
    for A in module.generators.values():
        for coefficients, _ in la.charpoly_factors(A):
            if len(coefficients) != 2:
                continue
            eigenvalue = -coefficients[1] / coefficients[0]
            shifted = la.sub(A, la.scale(module.identity(), eigenvalue))
            for _, row in sorted(la.rows_of(la.left_nullspace(shifted)).items()):
                yield la.from_dod(F, {0: row}, (1, r))


def _test_elements(module: HeckeModule, seed: int = 0, extra: int = 12) -> Iterable[la.DomainMatrix]:
    F = module.field
    gens = list(module.generators.values())
    yield from gens
    products = [la.product(a, b) for a in gens for b in gens]
    yield from products
    rng = random.Random(seed)
    for _ in range(extra):
        yield la.add(la.random_combination(F, gens, rng), la.random_combination(F, products, rng))


def proper_submodule(module: HeckeModule, seed: int = 0) -> Optional[la.DomainMatrix]:
    """Row basis of a nonzero proper submodule, or None when the module is simple.

    Uses an element theta of the algebra with an irreducible factor f of its characteristic
    polynomial whose kernel f(theta) has dimension deg f. The module is simple when a vector
    of that kernel spins to the whole module and a vector of the transposed kernel spins to
    the whole dual.
    """
    F, r = module.field, module.rank
    if r <= 1:
        return None
    transposed = [a.transpose() for a in module.generators.values()]
    for theta in _test_elements(module, seed):
        for coefficients, _ in la.charpoly_factors(theta):
            f_theta = la.evaluate_polynomial(theta, coefficients)
            kernel = la.left_nullspace(f_theta)
            if kernel.shape[0] != len(coefficients) - 1:
                continue
            span = spin(module, la.select_rows(kernel, [0]))
            if span.shape[0] < r:
                return span
            dual_kernel = la.nullspace(f_theta)
            dual_span = la.span_closure(F, la.select_rows(dual_kernel, [0]), transposed)
            if dual_span.shape[0] < r:
                return la.nullspace(dual_span)
            return None
    raise UnsupportedCaseError(f"no element with a small characteristic kernel certifies {module.name}")


def minimal_submodule(module: HeckeModule) -> la.DomainMatrix:
    """Row basis of a simple submodule.

    Over F_p every vector is tried and the smallest cyclic submodule is simple. Over Q
    unit vectors and rational eigenvectors of the generators give a first candidate, which
    is cut down until proper_submodule certifies it simple.
    """
    best: Optional[la.DomainMatrix] = None
    for v in _candidate_vectors(module):
        span = spin(module, v)
        if best is None or span.shape[0] < best.shape[0]:
            best = span
            if best.shape[0] == 1:
                break
    if best is None:
        raise InternalConsistencyError("no nonzero vector in a nonzero module")
    if module.field.characteristic:
        return best
    while True:
        smaller = proper_submodule(submodule(module, best))
        if smaller is None:
            return best
        best = la.row_basis(la.product(smaller, best))


def _simple_factors(module: HeckeModule) -> List[Tuple[HeckeModule, int]]:
    if module.rank == 0:
        return []
    basis = minimal_submodule(module)
    sub = submodule(module, basis)
    degree = hom_dimension(sub, sub)
    if degree > MAX_SPLITTING_DEGREE:
        raise UnsupportedCaseError(f"a factor of {module.name} splits only over an extension of degree {degree}")
    rest = quotient(module, basis).module if basis.shape[0] < module.rank else None
    return [(sub, degree)] + (_simple_factors(rest) if rest is not None else [])


def composition_factors(module: HeckeModule) -> List[CompositionFactor]:
    """Simple factors with multiplicities, for modules of rank at most MAX_COMPOSITION_RANK.

    Factors needing an extension of degree above MAX_SPLITTING_DEGREE to split raise
    UnsupportedCaseError.
    """
    if module.rank > MAX_COMPOSITION_RANK:
        raise PreconditionError(f"composition factors are computed up to rank {MAX_COMPOSITION_RANK}")
    out: List[CompositionFactor] = []
    for factor, degree in _simple_factors(module):
        for known in out:
            if are_isomorphic(known.module, factor):
                known.multiplicity += 1
                break
        else:
            out.append(CompositionFactor(factor, 1, degree))
    return out


def same_factors(a: List[CompositionFactor], b: List[CompositionFactor]) -> bool:
    """Equality of the multisets of isomorphism classes."""

    def shape(f: CompositionFactor):
        return f.multiplicity, f.splitting_degree

    if sorted(map(shape, a)) != sorted(map(shape, b)):
        return False
    return all(any(shape(f) == shape(g) and are_isomorphic(f.module, g.module) for g in b) for f in a)


# ----------------------------------------------------------------------
# Supersingularity
# ----------------------------------------------------------------------

@dataclass
class LeviNilpotency:
    J: List[int]
    theta: Optional[int]
    theta_star: Optional[int]

    @property
    def nilpotent(self) -> bool:
        return self.theta is not None and self.theta_star is not None


@dataclass
class SupersingularityReport:
    module: str
    algebra: str
    levis: List[LeviNilpotency]

    @property
    def supersingular(self) -> bool:
        return all(entry.nilpotent for entry in self.levis)

    def to_json(self) -> Dict[str, object]:
        return {"module": self.module, "algebra": self.algebra, "supersingular": self.supersingular,
                "levis": [{"J": e.J, "theta_nilpotency": e.theta, "theta_star_nilpotency": e.theta_star}
                          for e in self.levis]}


def is_supersingular(module: HeckeModule) -> SupersingularityReport:
    """theta(tau_mu) and theta*(tau_mu) are nilpotent on the module for every proper standard Levi."""
    H = module.algebra
    if H.field.characteristic != H.p:
        raise PreconditionError(f"supersingularity is tested in characteristic p={H.p}")
    entries = []
    for J in subsets(H.J):
        if J == H.J:
            continue
        mu = H.central_positive(J)
        entries.append(LeviNilpotency(sorted(J), la.nilpotency_index(module.act(mu)),
                                      la.nilpotency_index(module.act_element(H.star(mu)))))
    return SupersingularityReport(module.name, H.identifier(), entries)


def standard_triples(algebra: ProPIwahoriAlgebra) -> List[StandardTriple]:
    """Triples (P, sigma, Q) over every standard Levi with sigma a supersingular character."""
    out = []
    for J in subsets(algebra.J):
        for sigma in affine_characters(algebra.levi(J)):
            if not is_supersingular(sigma).supersingular:
                continue
            pi = pi_sigma(sigma, algebra)
            for extra in subsets(pi):
                out.append(StandardTriple(algebra, J, sigma, J | extra))
    log("Affine", f"{len(out)} standard triples over {algebra.identifier()}")
    return out


def classify(module: HeckeModule, triples: Optional[List[StandardTriple]] = None) -> List[StandardTriple]:
    """Standard triples whose I_H(P, sigma, Q) is isomorphic to the given module."""
    algebra = module.algebra
    triples = triples if triples is not None else standard_triples(algebra)
    out = []
    for triple in triples:
        candidate = i_h_triple(triple)
        if candidate.rank == module.rank and are_isomorphic(candidate, module):
            out.append(triple)
    return out


def check_round_trip(algebra: ProPIwahoriAlgebra) -> Dict[str, object]:
    """is_supersingular(I_H(P, sigma, Q)) holds exactly when P = Q = G."""
    rows = []
    for triple in standard_triples(algebra):
        module = i_h_triple(triple)
        expected = triple.P == triple.Q == algebra.J
        rows.append({"triple": triple.describe(), "rank": module.rank,
                     "supersingular": is_supersingular(module).supersingular, "expected": expected})
    return {"identifier": algebra.identifier(), "triples": len(rows),
            "mismatches": [r["triple"] for r in rows if r["supersingular"] != r["expected"]]}
