"""Verification suites: configuration, check grids and the concurrent runner."""

import asyncio
import random
from dataclasses import dataclass
from functools import partial
from typing import Callable, Dict, List, Optional, Sequence

import coxeter
import exact_linalg as la
from affine_functors import (affine_induct, check_affine_adjunction, check_ind_coind_twist_affine, check_ses,
                             split_control, torus_character)
from coxeter import RootDatum, StandardLevi, all_levis
from errors import ConfigurationError
from exact_linalg import CoefficientField
from finite_group import FiniteReductiveGroup, build_group, parse_group
from hecke_affine import (AFFINE_TYPES, ProPIwahoriAlgebra, ProPWeylElement, affine_algebra, affine_characters,
                          check_associativity, check_delta_multiplicative, check_eta, check_length_oracle,
                          check_matrix_model, check_star_unitriangular, check_theta_compare,
                          check_theta_ext_independence, check_theta_products)
from hecke_core import (UnipotentHeckeAlgebra, check_bimodule_iso, check_frobenius, check_iwahori_idempotent,
                        compare_lifts, levi_algebra, oracle_mismatches, sign_character, torus_characters,
                        trivial_character)
from hecke_modules import (are_isomorphic, character_module, check_adjunction, check_ind_coind_twist,
                           check_ind_exactness, check_twist_coherence, direct_sum, induct)
from rep_finite import (check_contra_ind, check_dagger_commute, check_diag_q1, check_diag_q2, check_group_adjunction,
                        check_left_exact, check_q3_char_ne_p, check_tensor_induction, check_universal,
                        parabolic_induce, projectivity_defect, q3_witness, regular_rep, tensor_X, trivial_rep,
                        universal_module)
from reports import CheckResult, MetricsSampler, Report, run_check
from settings import HECKELAB_ASSOC_TRIPLES, log
from supersingular import (StandardTriple, check_round_trip, classify, composition_factors, i_h_triple,
                           is_supersingular, same_factors, subsets)

SUITES = ("coxeter", "finite-oracle", "frobenius", "finite-diagrams", "affine-presentation", "affine-functors",
          "supersingular")
AFFINE_SUITES = ("affine-presentation", "affine-functors", "supersingular")


@dataclass
class SuiteConfig:
    suite: str
    group: str = "gl:2:2"
    coeff: Optional[str] = None
    p: Optional[int] = None
    seed: int = 0
    jobs: int = 1
    out: Optional[str] = None
    triples: int = HECKELAB_ASSOC_TRIPLES
    grid_limit: int = 64

    def __post_init__(self) -> None:
        if self.suite not in SUITES + ("all",):
            raise ConfigurationError(f"unknown suite {self.suite!r}; choose one of {', '.join(SUITES + ('all',))}")
        if self.jobs < 1:
            raise ConfigurationError(f"--jobs must be at least 1, got {self.jobs}")
        self.family, self.n, self.q = parse_group(self.group)
        self.field = CoefficientField.parse(self.coeff or f"fp:{self.residue_characteristic}")

    @property
    def residue_characteristic(self) -> int:
        q = self.q
        for d in range(2, q + 1):
            if q % d == 0:
                return d
        raise ConfigurationError(f"q={q} is not a prime power")

    @property
    def affine_kind(self) -> str:
        return f"{self.family.lower()}{self.n}"

    @property
    def affine_p(self) -> int:
        return self.p if self.p is not None else self.residue_characteristic

    def to_json(self) -> dict:
        return {"suite": self.suite, "group": self.group, "coeff": self.field.describe(), "p": self.affine_p,
                "seed": self.seed, "jobs": self.jobs, "triples": self.triples, "grid_limit": self.grid_limit}


@dataclass
class Check:
    name: str
    params: Dict[str, object]
    compute: Callable[[], Dict[str, object]]
    verdict: Callable[[Dict[str, object]], bool]


def _all_true(*keys: str) -> Callable[[Dict[str, object]], bool]:
    return lambda values: all(values.get(k) is True for k in keys)


def _flags(values: Dict[str, object]) -> bool:
    """Every boolean measured value is true."""
    return all(v for v in values.values() if isinstance(v, bool))


def _limited(items: Sequence, limit: int, seed: int) -> List:
    items = list(items)
    if len(items) <= limit:
        return items
    chosen = sorted(random.Random(seed).sample(range(len(items)), limit))
    return [items[i] for i in chosen]


# ----------------------------------------------------------------------
# coxeter
# ----------------------------------------------------------------------

def _weyl_group(datum: RootDatum) -> Dict[str, object]:
    n = datum.n
    factorial = 1
    for k in range(2, n + 1):
        factorial *= k
    return {"n": n, "order": len(datum.elements), "expected_order": factorial,
            "longest_length": coxeter.length(datum.longest), "expected_longest": n * (n - 1) // 2,
            "reduced_words": all(coxeter.from_word(n, coxeter.reduced_word(w)) == w for w in datum.elements)}


def _coset_decomposition(levi: StandardLevi) -> Dict[str, object]:
    right = left = True
    for w in levi.datum.elements:
        m, d = levi.split_right(w)
        right &= coxeter.compose(m, d) == w and coxeter.length(w) == coxeter.length(m) + coxeter.length(d)
        e, m = levi.split_left(w)
        left &= coxeter.compose(e, m) == w and coxeter.length(w) == coxeter.length(e) + coxeter.length(m)
    return {"levi": levi.describe(), "order": len(levi.datum.elements), "levi_order": len(levi.weyl_elements),
            "cosets": len(levi.min_coset_reps), "right": right, "left": left,
            "conjugate": levi.conjugate.describe(), "conjugate_involutive": levi.conjugate.conjugate == levi}


def coxeter_checks(config: SuiteConfig) -> List[Check]:
    datum = RootDatum.gl(config.n)
    checks = [Check("weyl_group", {"n": config.n}, partial(_weyl_group, datum),
                    lambda v: v["order"] == v["expected_order"] and v["longest_length"] == v["expected_longest"]
                    and v["reduced_words"])]
    for levi in all_levis(datum):
        checks.append(Check("coset_decomposition", {"n": config.n, "levi": levi.describe()},
                            partial(_coset_decomposition, levi),
                            lambda v: v["right"] and v["left"] and v["conjugate_involutive"]
                            and v["order"] == v["levi_order"] * v["cosets"]))
    return checks


# ----------------------------------------------------------------------
# Finite unipotent Hecke algebras
# ----------------------------------------------------------------------

class FiniteContext:
    """The group and its presented algebra, built once before checks are scheduled."""

    def __init__(self, config: SuiteConfig) -> None:
        self.group: FiniteReductiveGroup = build_group(config.family, config.n, config.q)
        self.field = config.field
        self.algebra = UnipotentHeckeAlgebra.from_presentation(self.group, self.field)
        self.levis = all_levis(self.group.datum)
        self.proper = [levi for levi in self.levis if not levi.is_full]
        self.params = {"group": self.group.descriptor(), "coeff": self.field.describe()}
        for levi in self.levis:
            levi_algebra(self.algebra, levi)

    @property
    def char_p(self) -> bool:
        return self.field.characteristic == self.group.p

    def with_params(self, **extra) -> Dict[str, object]:
        return {**self.params, **extra}

    def triv_M(self, levi: StandardLevi):
        return character_module(trivial_character(levi_algebra(self.algebra, levi)))

    def sign_M(self, levi: StandardLevi):
        return character_module(sign_character(levi_algebra(self.algebra, levi)))

    def characters_M(self, levi: StandardLevi):
        """Every torus character for the torus, Triv for larger Levis."""
        if levi.J:
            return [self.triv_M(levi)]
        return [character_module(c) for c in torus_characters(levi_algebra(self.algebra, levi))]


def _oracle(ctx: FiniteContext) -> Dict[str, object]:
    mismatches = oracle_mismatches(ctx.group, ctx.field)
    return {"dimension": ctx.algebra.dimension, "mismatches": len(mismatches), "examples": mismatches[:5]}


def _quadratic(ctx: FiniteContext) -> Dict[str, object]:
    out: Dict[str, object] = {}
    ok = True
    for name in ctx.algebra.simple_keys:
        q_s, c = ctx.algebra.quadratic(name)
        total = sum(c.values())
        out[name] = {"q": q_s, "c": {z.label(): v for z, v in c.items()}, "sum": total}
        ok &= q_s == ctx.group.q and total == q_s - 1
    out["consistent"] = ok
    return out


def _trivial_tensor(ctx: FiniteContext) -> Dict[str, object]:
    triv = character_module(trivial_character(ctx.algebra))
    dim = tensor_X(triv, universal_module(ctx.group, ctx.field)).rep.dim
    return {"dim": dim, "is_line": dim == 1}


def finite_oracle_checks(config: SuiteConfig) -> List[Check]:
    ctx = FiniteContext(config)
    G, H = ctx.group, ctx.algebra
    checks = [
        Check("oracle_equivalence", ctx.with_params(), partial(_oracle, ctx), lambda v: v["mismatches"] == 0),
        Check("quadratic_data", ctx.with_params(), partial(_quadratic, ctx), _all_true("consistent")),
        Check("universal_module", ctx.with_params(), partial(check_universal, G, H),
              _all_true("isomorphism", "actions_commute")),
    ]
    if ctx.field.is_unit_integer(len(H.torus_keys)):
        checks.append(Check("iwahori_idempotent", ctx.with_params(), partial(check_iwahori_idempotent, H),
                            lambda v: v["idempotent"] and v["central"] and v["iwahori_quadratic"]
                            and v["dimension"] == v["weyl_order"]))
    if ctx.char_p:
        checks.append(Check("projectivity_defect", ctx.with_params(), partial(projectivity_defect, G, ctx.field, H),
                            _all_true("strict")))
        checks.append(Check("q3_witness", ctx.with_params(), partial(q3_witness, G, ctx.field),
                            lambda v: not v["surjective"]))
    else:
        checks.append(Check("q3_witness", ctx.with_params(), partial(q3_witness, G, ctx.field),
                            _all_true("surjective")))
    if ctx.field.is_unit_integer(G.q + 1):
        checks.append(Check("trivial_tensor", ctx.with_params(), partial(_trivial_tensor, ctx), _all_true("is_line")))
    return checks


def frobenius_checks(config: SuiteConfig) -> List[Check]:
    ctx = FiniteContext(config)
    H = ctx.algebra
    torus = H.bn.torus_generators
    t = torus[0] if torus else H.identity_key
    checks = [
        Check("frobenius_form", ctx.with_params(), partial(check_frobenius, H), _flags),
        Check("alternative_lift", ctx.with_params(lift=t.label()), partial(compare_lifts, H, t), _flags),
    ]
    for levi in ctx.proper:
        checks.append(Check("bimodule_iso", ctx.with_params(levi=levi.describe(), twisted=True),
                            partial(check_bimodule_iso, H, levi, True), _flags))
        if not ctx.char_p:
            checks.append(Check("bimodule_iso", ctx.with_params(levi=levi.describe(), twisted=False),
                                partial(check_bimodule_iso, H, levi, False), _flags))
    return checks


def _conjugate_levis(ctx: FiniteContext, levi: StandardLevi) -> Dict[str, object]:
    H = ctx.algebra
    conj = levi.conjugate
    iso = are_isomorphic(induct(ctx.triv_M(levi), H, levi), induct(ctx.triv_M(conj), H, conj))
    return {"levi": levi.describe(), "conjugate": conj.describe(), "isomorphic": iso}


def _exactness(ctx: FiniteContext, levi: StandardLevi) -> Dict[str, object]:
    m = direct_sum([ctx.triv_M(levi), ctx.sign_M(levi)], "Triv+Sign")
    return check_ind_exactness(ctx.algebra, levi, m, la.unit_vector(ctx.field, 2, 0))


def _twist_coherence(ctx: FiniteContext, levi: StandardLevi) -> Dict[str, object]:
    return {"levi": levi.describe(), "coherent": check_twist_coherence(ctx.algebra, levi, ctx.triv_M(levi))}


def _left_exact(V) -> Dict[str, object]:
    return check_left_exact(V, la.matrix(V.field, [[1] * V.dim], V.dim))


def finite_diagram_checks(config: SuiteConfig) -> List[Check]:
    ctx = FiniteContext(config)
    G, H, F = ctx.group, ctx.algebra, ctx.field
    top = [trivial_rep(G, F)] + [parabolic_induce(trivial_rep(G, F, levi)) for levi in ctx.proper]
    checks: List[Check] = []
    for levi in ctx.proper:
        small = [trivial_rep(G, F, levi), regular_rep(G, F, levi)]
        lp = {"levi": levi.describe()}
        for V in small:
            checks.append(Check("diag_q1", ctx.with_params(rep=V.name, **lp), partial(check_diag_q1, V, H),
                                _all_true("equivariant", "bijective")))
        for W in top:
            checks.append(Check("diag_q2", ctx.with_params(rep=W.name, **lp), partial(check_diag_q2, W, levi, H),
                                _all_true("same_subspace", "same_action")))
            if not ctx.char_p:
                checks.append(Check("diag_q3", ctx.with_params(rep=W.name, **lp),
                                    partial(check_q3_char_ne_p, W, levi, H),
                                    _all_true("equivariant", "averaging_inverse")))
            checks.append(Check("group_adjunction", ctx.with_params(rep=W.name, **lp),
                                partial(check_group_adjunction, small[0], W),
                                _all_true("invariants_adjunction", "coinvariants_adjunction")))
        checks.append(Check("contragredient_induction", ctx.with_params(**lp),
                            partial(check_contra_ind, small[1], top[-1]), _flags))
        checks.append(Check("dagger_commutes", ctx.with_params(**lp), partial(check_dagger_commute, small[0]),
                            _all_true("isomorphic")))
        checks.append(Check("left_exact", ctx.with_params(**lp),
                            partial(_left_exact, parabolic_induce(small[0])), _all_true("left_exact")))
        checks.append(Check("tensor_induction", ctx.with_params(**lp),
                            partial(check_tensor_induction, ctx.triv_M(levi), H, levi), _all_true("isomorphic")))
        for m in ctx.characters_M(levi):
            for n in (character_module(trivial_character(H)), character_module(sign_character(H))):
                checks.append(Check("hecke_adjunction", ctx.with_params(m=m.name, n=n.name, **lp),
                                    partial(check_adjunction, H, levi, m, n), _flags))
            checks.append(Check("ind_coind_twist", ctx.with_params(m=m.name, **lp),
                                partial(check_ind_coind_twist, H, levi, m), _all_true("isomorphism_found")))
        checks.append(Check("twist_coherence", ctx.with_params(**lp), partial(_twist_coherence, ctx, levi),
                            _all_true("coherent")))
        checks.append(Check("ind_exactness", ctx.with_params(**lp), partial(_exactness, ctx, levi), _flags))
        conj = levi.conjugate
        if levi.J and conj != levi and sorted(levi.J) < sorted(conj.J):
            expected = not ctx.char_p
            checks.append(Check("conjugate_levis", ctx.with_params(**lp), partial(_conjugate_levis, ctx, levi),
                                lambda v, expected=expected: v["isomorphic"] is expected))
    return checks


# ----------------------------------------------------------------------
# Pro-p Iwahori Hecke algebras
# ----------------------------------------------------------------------

class AffineContext:
    def __init__(self, config: SuiteConfig) -> None:
        if config.affine_kind not in AFFINE_TYPES:
            raise ConfigurationError(f"no pro-p Iwahori Hecke algebra for {config.group}; "
                                     f"use one of {sorted(AFFINE_TYPES)}")
        self.config = config
        self.field = config.field
        self.algebra: ProPIwahoriAlgebra = affine_algebra(config.affine_kind, config.affine_p, config.field)
        self.proper = [J for J in (frozenset(levi.J) for levi in all_levis(self.algebra.datum))
                       if J != self.algebra.J]
        self.params = {"type": config.affine_kind, "p": config.affine_p, "coeff": self.field.describe()}

    @property
    def char_p(self) -> bool:
        return self.field.characteristic == self.algebra.p

    def with_params(self, **extra) -> Dict[str, object]:
        return {**self.params, **extra}

    def sample(self, J: frozenset, size: int = 5) -> List[ProPWeylElement]:
        """Seeded elements of W_M(1) together with the central element of M and its inverse."""
        HM = self.algebra.levi(J)
        rng = random.Random(self.config.seed)
        mu = self.algebra.central_positive(J)
        keys = [mu, mu.inverse()] + [HM.random_key(rng, 4) for _ in range(size)]
        return list(dict.fromkeys(keys))


def _quadratic_affine(H: ProPIwahoriAlgebra) -> Dict[str, object]:
    out: Dict[str, object] = {}
    ok = True
    for name in H.simple_keys:
        q_s, c = H.quadratic(name)
        total = sum(c.values())
        out[name] = {"q": q_s, "sum": total}
        ok &= q_s == H.q and total == q_s - 1
    out["consistent"] = ok
    return out


def _star(H: ProPIwahoriAlgebra) -> Dict[str, object]:
    keys = H.relation_keys()
    return {"keys": len(keys), "unitriangular": check_star_unitriangular(H, keys)}


def _delta(H: ProPIwahoriAlgebra, J: frozenset, sample: List[ProPWeylElement]) -> Dict[str, object]:
    return {"J": sorted(J), "multiplicative": check_delta_multiplicative(H, J, sample)}


def affine_presentation_checks(config: SuiteConfig) -> List[Check]:
    ctx = AffineContext(config)
    H = ctx.algebra
    bound = 1 if H.n == 3 else 2
    checks = [
        Check("quadratic_data", ctx.with_params(), partial(_quadratic_affine, H), _all_true("consistent")),
        Check("matrix_model", ctx.with_params(bound=bound), partial(check_matrix_model, H, bound),
              lambda v: v["mismatches"] == 0 and v["projection_homomorphism"]),
        Check("length_oracle", ctx.with_params(bound=bound), partial(check_length_oracle, H, bound),
              lambda v: v["mismatches"] == 0 and v["unit_independent"]),
        Check("associativity", ctx.with_params(triples=config.triples, seed=config.seed),
              partial(check_associativity, H, config.triples, config.seed), lambda v: v["failures"] == 0),
        Check("star_basis", ctx.with_params(), partial(_star, H), _all_true("unitriangular")),
        Check("eta", ctx.with_params(), partial(check_eta, H), _flags),
    ]
    for J in ctx.proper:
        sample = ctx.sample(J)
        jp = {"J": sorted(J)}
        checks.append(Check("theta_products", ctx.with_params(**jp), partial(check_theta_products, H, J, sample),
                            _flags))
        checks.append(Check("delta_P", ctx.with_params(**jp), partial(_delta, H, J, sample),
                            _all_true("multiplicative")))
        if not ctx.char_p:
            checks.append(Check("theta_ext_independence", ctx.with_params(**jp),
                                partial(check_theta_ext_independence, H, J, sample), _flags))
            checks.append(Check("theta_compare", ctx.with_params(**jp),
                                partial(check_theta_compare, H, J, sample[:3]), _all_true("holds")))
    return checks


def affine_functor_checks(config: SuiteConfig) -> List[Check]:
    ctx = AffineContext(config)
    H = ctx.algebra
    characters = affine_characters(H)
    checks: List[Check] = []
    for J in ctx.proper:
        jp = {"J": sorted(J)}
        levi_characters = affine_characters(H.levi(J))
        grid = [(m, n) for m in levi_characters for n in characters]
        for m, n in _limited(grid, config.grid_limit, config.seed):
            checks.append(Check("adjunction", ctx.with_params(m=m.name, n=n.name, **jp),
                                partial(check_affine_adjunction, H, J, m, n), _all_true("ind_r", "l_ind")))
        for m in _limited(levi_characters, config.grid_limit, config.seed):
            checks.append(Check("ind_coind_twist", ctx.with_params(m=m.name, **jp),
                                partial(check_ind_coind_twist_affine, H, J, m), _all_true("isomorphism_found")))
    if H.n == 2 and H.field.characteristic in (0, H.p):
        checks.append(Check("ses_nonsplit", ctx.with_params(), partial(check_ses, H), lambda v: not v["splits"]))
    checks.append(Check("split_control", ctx.with_params(), partial(split_control, H),
                        lambda v: v["splits"] and not v["local_splits"]))
    return checks


def _torus_trivial(module) -> bool:
    return all(module.generators[g] == module.identity() for g in module.algebra.unit_generators
               if g.startswith("t"))


def _supersingular_characters(H: ProPIwahoriAlgebra) -> Dict[str, object]:
    """Among characters trivial on the finite torus, the supersingular ones mix the values 0 and -1."""
    F = H.field
    rows = []
    for chi in affine_characters(H):
        report = is_supersingular(chi)
        row = {"character": chi.name, "supersingular": report.supersingular}
        if _torus_trivial(chi):
            values = {la.entry(chi.generators[s], 0, 0) for s in H.simple_keys}
            row["expected"] = values == {F.zero, -F.one}
        rows.append(row)
    return {"characters": rows,
            "agrees": all(r["supersingular"] == r["expected"] for r in rows if "expected" in r)}


def _induced_factors(H: ProPIwahoriAlgebra) -> Dict[str, object]:
    """Ind(Triv_T) has Triv as a factor.

    In characteristic p its factors are Triv and Sign, as are those of the sum of the
    I_H(B, Triv_T, Q).
    """
    induced = affine_induct(torus_character(H), H, ())
    triv = character_module(trivial_character(H))
    factors = composition_factors(induced)
    out: Dict[str, object] = {"rank": induced.rank,
                              "factors": {f.module.name: f.multiplicity for f in factors},
                              "has_triv": any(are_isomorphic(f.module, triv) for f in factors)}
    if H.field.characteristic == H.p:
        expected = composition_factors(direct_sum([triv, character_module(sign_character(H))]))
        out["triv_sign"] = same_factors(factors, expected)
        sigma = torus_character(H)
        pi = StandardTriple(H, frozenset(), sigma, frozenset()).pi
        pieces = [i_h_triple(StandardTriple(H, frozenset(), sigma, Q)) for Q in subsets(pi)]
        out["triple_pieces"] = [p.rank for p in pieces]
        out["triples_match"] = same_factors([f for p in pieces for f in composition_factors(p)], expected)
    return out


def _classify_simple(H: ProPIwahoriAlgebra) -> Dict[str, object]:
    out: Dict[str, object] = {}
    for chi in (trivial_character(H), sign_character(H)):
        found = classify(character_module(chi))
        out[chi.name] = [t.describe() for t in found]
    out["unique"] = all(len(v) == 1 for v in out.values())
    return out


def supersingular_checks(config: SuiteConfig) -> List[Check]:
    ctx = AffineContext(config)
    H = ctx.algebra
    checks = [Check("induced_factors", ctx.with_params(), partial(_induced_factors, H), _flags)]
    if not ctx.char_p:
        log("Suite", f"supersingularity needs characteristic p={H.p}; only composition factors are checked")
        return checks
    checks += [
        Check("supersingular_characters", ctx.with_params(), partial(_supersingular_characters, H),
              _all_true("agrees")),
        Check("round_trip", ctx.with_params(), partial(check_round_trip, H), lambda v: not v["mismatches"]),
        Check("classify_simple", ctx.with_params(), partial(_classify_simple, H), _all_true("unique")),
    ]
    return checks


SUITE_BUILDERS: Dict[str, Callable[[SuiteConfig], List[Check]]] = {
    "coxeter": coxeter_checks,
    "finite-oracle": finite_oracle_checks,
    "frobenius": frobenius_checks,
    "finite-diagrams": finite_diagram_checks,
    "affine-presentation": affine_presentation_checks,
    "affine-functors": affine_functor_checks,
    "supersingular": supersingular_checks,
}


# ----------------------------------------------------------------------
# Runner
# ----------------------------------------------------------------------

def collect_checks(config: SuiteConfig) -> List[Check]:
    names = SUITES if config.suite == "all" else (config.suite,)
    checks: List[Check] = []
    for name in names:
        if config.suite == "all" and name in AFFINE_SUITES and config.affine_kind not in AFFINE_TYPES:
            log("Suite", f"skipping {name}: no pro-p Iwahori Hecke algebra for {config.group}")
            continue
        built = SUITE_BUILDERS[name](config)
        for check in built:
            check.params = {"suite": name, **check.params}
        log("Suite", f"{name}: {len(built)} checks")
        checks += built
    return checks


async def run_suite_async(config: SuiteConfig) -> Report:
    checks = collect_checks(config)
    sampler = MetricsSampler()
    semaphore = asyncio.Semaphore(config.jobs)

    async def worker(check: Check) -> CheckResult:
        async with semaphore:
            result = await asyncio.to_thread(run_check, check.name, check.params, check.compute, check.verdict)
        sampler.sample()
        verdict = "pass" if result.verdict else "FAIL"
        log("Suite", f"{check.name} {check.params}: {verdict} ({result.wall_time:.2f}s)")
        if result.error:
            log("Suite", f"{check.name}: {result.error}")
        return result

    results = await asyncio.gather(*(worker(c) for c in checks))
    report = Report(config.suite, config.to_json(), list(results), sampler.summary())
    summary = report.summary
    log("Suite", f"{config.suite}: {summary['passed']}/{summary['total']} passed")
    return report


def run_suite(config: SuiteConfig) -> Report:
    return asyncio.run(run_suite_async(config))
