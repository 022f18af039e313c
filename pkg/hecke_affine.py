"""Pro-p Iwahori Hecke algebras of GL2, SL2 and GL3 over a p-adic field.

The index group W(1) is realized by monomial matrices whose nonzero entries
are a Teichmuller unit times a power of the uniformizer, taken modulo T^1.
``ProPIwahoriAlgebra`` plugs this group into the presentation engine of
hecke_core; the same class restricted to a subset J of the finite simple
roots is the Hecke algebra H_M of the standard Levi M.
"""

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import sympy

import coxeter
import exact_linalg as la
from coxeter import AffineRoot, AffineWeylElement, Perm, RootDatum, StandardLevi
from errors import ConfigurationError, DomainError, InternalConsistencyError, PreconditionError
from exact_linalg import CoefficientField
from finite_group import FiniteField, Monomial, build_group, simple_lift, weyl_lift
from hecke_core import HeckeElement, PresentedHeckeAlgebra, quadratic_data, sign_character, trivial_character
from hecke_modules import HeckeModule
from settings import HECKELAB_LOCALIZATION_CAP, log

AFFINE_TYPES: Dict[str, Tuple[str, int]] = {"gl2": ("GL", 2), "sl2": ("SL", 2), "gl3": ("GL", 3)}
RESIDUE_PRIMES = (2, 3, 5)

LaurentEntry = Optional[Tuple[int, int]]
LaurentMatrix = Tuple[Tuple[LaurentEntry, ...], ...]


# ----------------------------------------------------------------------
# W(1)
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ProPWeylElement:
    """Monomial matrix with entry units[i] * pi^vals[i] at (perm[i], i), modulo T^1."""

    perm: Perm
    vals: Tuple[int, ...]
    units: Tuple[int, ...]
    field: FiniteField = field(compare=False, hash=False, repr=False)

    def __mul__(self, other: "ProPWeylElement") -> "ProPWeylElement":
        F = self.field
        n = len(self.perm)
        vals = tuple(self.vals[other.perm[j]] + other.vals[j] for j in range(n))
        units = tuple(F.mul(self.units[other.perm[j]], other.units[j]) for j in range(n))
        return ProPWeylElement(coxeter.compose(self.perm, other.perm), vals, units, F)

    def inverse(self) -> "ProPWeylElement":
        F = self.field
        inv = coxeter.invert(self.perm)
        vals = tuple(-self.vals[inv[j]] for j in range(len(inv)))
        units = tuple(F.inv(self.units[inv[j]]) for j in range(len(inv)))
        return ProPWeylElement(inv, vals, units, F)

    def __pow__(self, exponent: int) -> "ProPWeylElement":
        base = self if exponent >= 0 else self.inverse()
        result = identity_element(self.field, len(self.perm))
        for _ in range(abs(exponent)):
            result = result * base
        return result

    @property
    def weyl_part(self) -> AffineWeylElement:
        return AffineWeylElement(self.perm, self.vals)

    @property
    def is_translation(self) -> bool:
        return self.perm == coxeter.identity_perm(len(self.perm))

    @property
    def is_torus(self) -> bool:
        return self.is_translation and not any(self.vals)

    def laurent_matrix(self) -> LaurentMatrix:
        n = len(self.perm)
        rows: List[List[LaurentEntry]] = [[None] * n for _ in range(n)]
        for i in range(n):
            rows[self.perm[i]][i] = (self.units[i], self.vals[i])
        return tuple(tuple(r) for r in rows)

    def label(self) -> str:
        return f"{list(self.perm)}|v={list(self.vals)}|u={list(self.units)}"

    def __str__(self) -> str:
        return self.label()


def identity_element(F: FiniteField, n: int) -> ProPWeylElement:
    return ProPWeylElement(coxeter.identity_perm(n), (0,) * n, (1,) * n, F)


def translation(F: FiniteField, vals: Sequence[int]) -> ProPWeylElement:
    n = len(vals)
    return ProPWeylElement(coxeter.identity_perm(n), tuple(vals), (1,) * n, F)


def torus_unit(F: FiniteField, units: Sequence[int]) -> ProPWeylElement:
    n = len(units)
    return ProPWeylElement(coxeter.identity_perm(n), (0,) * n, tuple(units), F)


def from_monomial(m: Monomial) -> ProPWeylElement:
    """The finite monomial n in N_G(F_q) seen in W(1) through Teichmuller lifts."""
    return ProPWeylElement(m.perm, (0,) * len(m.perm), m.units, m.field)


def finite_lift(F: FiniteField, n: int, w: Perm) -> ProPWeylElement:
    return from_monomial(weyl_lift(F, n, w))


def affine_node_lift(F: FiniteField, n: int, i: int, j: int) -> ProPWeylElement:
    """phi_(i,j) of (0, -pi^-1; pi, 0): pi at (j, i) and -pi^-1 at (i, j)."""
    perm = list(range(n))
    perm[i], perm[j] = j, i
    vals = [0] * n
    units = [1] * n
    vals[i], vals[j] = 1, -1
    units[j] = F.minus_one
    return ProPWeylElement(tuple(perm), tuple(vals), tuple(units), F)


def block_rotation(F: FiniteField, n: int, block: Sequence[int]) -> ProPWeylElement:
    """Length-zero generator of a GL block: b0 -> b_last, b_i -> b_(i-1), pi in column b0."""
    perm = list(range(n))
    for idx, i in enumerate(block):
        perm[i] = block[idx - 1]
    vals = [0] * n
    vals[block[0]] = 1
    return ProPWeylElement(tuple(perm), tuple(vals), (1,) * n, F)


def laurent_product(F: FiniteField, A: LaurentMatrix, B: LaurentMatrix) -> LaurentMatrix:
    """Matrix product over Laurent monomials in pi with Teichmuller unit coefficients."""
    n = len(A)
    out = []
    for i in range(n):
        row: List[LaurentEntry] = []
        for j in range(n):
            terms = [(F.mul(A[i][k][0], B[k][j][0]), A[i][k][1] + B[k][j][1])
                     for k in range(n) if A[i][k] is not None and B[k][j] is not None]
            if len(terms) > 1:
                raise InternalConsistencyError("product of monomial matrices has a non-monomial entry")
            row.append(terms[0] if terms else None)
        out.append(tuple(row))
    return tuple(out)


def from_laurent_matrix(F: FiniteField, A: LaurentMatrix) -> ProPWeylElement:
    n = len(A)
    perm, vals, units = [], [], []
    for i in range(n):
        rows = [r for r in range(n) if A[r][i] is not None]
        if len(rows) != 1:
            raise InternalConsistencyError(f"column {i} is not monomial")
        perm.append(rows[0])
        units.append(A[rows[0]][i][0])
        vals.append(A[rows[0]][i][1])
    return ProPWeylElement(tuple(perm), tuple(vals), tuple(units), F)


# ----------------------------------------------------------------------
# Lengths
# ----------------------------------------------------------------------

def affine_length(w: ProPWeylElement, datum: Optional[RootDatum] = None) -> int:
    """sum over positive roots beta of |<v, beta> - [w(beta) < 0]|."""
    datum = datum or RootDatum.gl(len(w.perm))
    total = 0
    for beta in datum.positive_roots:
        flipped = 0 if coxeter.is_positive_root(coxeter.act_on_root(w.perm, beta)) else 1
        total += abs(coxeter.dot(w.vals, beta) - flipped)
    return total


def brute_force_length(w: ProPWeylElement, datum: Optional[RootDatum] = None, levels: int = 4) -> int:
    """Count positive affine roots (beta, r), |r| <= levels, sent to negative ones."""
    datum = datum or RootDatum.gl(len(w.perm))
    count = 0
    for beta in datum.roots:
        for r in range(-levels, levels + 1):
            a = AffineRoot(beta, r)
            if a.is_positive and not w.weyl_part.act(a).is_positive:
                count += 1
    return count


# ----------------------------------------------------------------------
# The algebra
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def _rank_one_quadratic(family: str, p: int) -> Tuple[int, Dict[Tuple[int, int], int]]:
    """(q, {(a, b): c}) read off the finite convolution oracle of family_2(F_p)."""
    group = build_group(family, 2, p)
    q_s, c = quadratic_data(group.bn)["s1"]
    return q_s, {(z.units[0], z.units[1]): coeff for z, coeff in c.items()}


class ProPIwahoriAlgebra(PresentedHeckeAlgebra):
    """The pro-p Iwahori Hecke algebra of the standard Levi M_J of GL2, SL2 or GL3.

    ``J=None`` gives the algebra of the whole group. Simple generators are the
    finite s_k (k in J) and one affine node ``s0`` per GL block of size > 1;
    unit generators are the torus generators ``t*`` and the length-zero
    elements ``w*`` that generate Omega(1) modulo the torus.
    """

    def __init__(self, kind: str, p: int, field: CoefficientField, J: Optional[Iterable[int]] = None) -> None:
        super().__init__(field)
        if kind not in AFFINE_TYPES:
            raise ConfigurationError(f"unknown affine type {kind!r}; choose one of {sorted(AFFINE_TYPES)}")
        if p not in RESIDUE_PRIMES:
            raise ConfigurationError(f"residue characteristic p={p} not supported; choose one of {RESIDUE_PRIMES}")
        self.kind = kind
        self.family, self.n = AFFINE_TYPES[kind]
        self.p = p
        self.q = p
        self.F = FiniteField(p)
        self.ambient = RootDatum.gl(self.n)
        self.J: FrozenSet[int] = frozenset(self.ambient.simple if J is None else J)
        if not self.J <= set(self.ambient.simple):
            raise PreconditionError(f"J={sorted(self.J)} is not a set of simple indices of {kind}")
        self.datum = RootDatum(self.n, tuple(sorted(self.J)))
        self.identity_key = identity_element(self.F, self.n)
        self.simple_keys = self._simple_lifts()
        self._roots = self._simple_roots()

    def _simple_lifts(self) -> Dict[str, ProPWeylElement]:
        lifts = {f"s{k}": from_monomial(simple_lift(self.F, self.n, k)) for k in self.datum.simple}
        for block in self.datum.blocks:
            if len(block) > 1:
                lifts["s0"] = affine_node_lift(self.F, self.n, block[0], block[-1])
        return lifts

    def _simple_roots(self) -> Dict[str, Tuple[int, int]]:
        roots = {f"s{k}": (k - 1, k) for k in self.datum.simple}
        for block in self.datum.blocks:
            if len(block) > 1:
                roots["s0"] = (block[0], block[-1])
        return roots

    # -- index group ---------------------------------------------------

    def key_mul(self, a: ProPWeylElement, b: ProPWeylElement) -> ProPWeylElement:
        return a * b

    def key_inverse(self, a: ProPWeylElement) -> ProPWeylElement:
        return a.inverse()

    def length(self, key: ProPWeylElement) -> int:
        return affine_length(key, self.datum)

    @cached_property
    def _quadratic(self) -> Dict[str, Tuple[int, Dict[ProPWeylElement, int]]]:
        q_s, base = _rank_one_quadratic(self.family, self.p)
        out = {}
        for name, (i, j) in self._roots.items():
            c = {}
            for (a, b), coeff in base.items():
                units = [1] * self.n
                units[i], units[j] = a, b
                c[torus_unit(self.F, units)] = coeff
            out[name] = (q_s, c)
        return out

    def quadratic(self, name: str) -> Tuple[int, Dict[ProPWeylElement, int]]:
        return self._quadratic[name]

    @cached_property
    def unit_generators(self) -> Dict[str, ProPWeylElement]:
        F, n = self.F, self.n
        gens: Dict[str, ProPWeylElement] = {}
        if F.q > 2:
            g = F.generator
            if self.family == "GL":
                for i in range(n):
                    units = [1] * n
                    units[i] = g
                    gens[f"t{i + 1}"] = torus_unit(F, units)
            else:
                gens["t1"] = torus_unit(F, (g, F.inv(g)))
        if self.family == "GL":
            for block in self.datum.blocks:
                gens[f"w{block[0]}"] = block_rotation(F, n, block)
        elif not self.J:
            gens["w0"] = translation(F, (1, -1))
        return gens

    def _torus_word(self, key: ProPWeylElement) -> List[Tuple[str, int]]:
        F = self.F
        if F.q == 2:
            return []
        if self.family == "GL":
            return [(f"t{i + 1}", F.dlog[u]) for i, u in enumerate(key.units) if F.dlog[u]]
        exponent = F.dlog[key.units[0]]
        return [("t1", exponent)] if exponent else []

    def unit_word(self, key: ProPWeylElement) -> List[Tuple[str, int]]:
        gens = self.unit_generators
        word: List[Tuple[str, int]] = []
        prefix = self.identity_key
        if self.family == "GL":
            for block in self.datum.blocks:
                k = sum(key.vals[i] for i in block)
                if k:
                    name = f"w{block[0]}"
                    word.append((name, k))
                    prefix = prefix * gens[name] ** k
        elif not self.J and key.vals[0]:
            word.append(("w0", key.vals[0]))
            prefix = gens["w0"] ** key.vals[0]
        rest = prefix.inverse() * key
        if not rest.is_torus:
            raise InternalConsistencyError(f"{key.label()} is not a unit of {self.identifier()}")
        return word + self._torus_word(rest)

    @cached_property
    def torus_units(self) -> List[ProPWeylElement]:
        F = self.F
        if self.family == "GL":
            return [torus_unit(F, u) for u in product(F.units, repeat=self.n)]
        return [torus_unit(F, (a, F.inv(a))) for a in F.units]

    @cached_property
    def _relation_keys(self) -> List[ProPWeylElement]:
        units = list(self.unit_generators.values())
        units += [u.inverse() for u in units]
        simples = list(self.simple_keys.values())
        keys = set(self.torus_units) | set(units)
        for s in simples:
            keys.add(s)
            keys.update(s * u for u in units)
            keys.update(s * t for t in simples)
        return sorted(keys, key=self.sort_key)

    def relation_keys(self) -> List[ProPWeylElement]:
        return self._relation_keys

    def identifier(self) -> str:
        levi = "".join(str(k) for k in sorted(self.J))
        return f"{self.kind}:{self.p}/J={levi or '-'}/{self.field.describe()}"

    def sort_key(self, key: ProPWeylElement):
        return (self.length(key), key.perm, key.vals, key.units)

    def label(self, key: ProPWeylElement) -> str:
        return key.label()

    # -- structure -----------------------------------------------------

    def contains(self, key: ProPWeylElement) -> bool:
        if len(key.perm) != self.n or not self.datum.contains(key.perm):
            return False
        if self.family == "SL":
            det = 1
            for u in key.units:
                det = self.F.mul(det, u)
            if coxeter.length(key.perm) % 2:
                det = self.F.neg(det)
            return sum(key.vals) == 0 and det == 1
        return True

    def levi(self, J: Iterable[int]) -> "ProPIwahoriAlgebra":
        J = frozenset(J)
        if not J <= self.J:
            raise PreconditionError(f"J={sorted(J)} is not contained in {sorted(self.J)}")
        return affine_algebra(self.kind, self.p, self.field, J)

    def standard_levi(self, J: Iterable[int]) -> StandardLevi:
        return StandardLevi.of(self.datum, J)

    def is_positive(self, key: ProPWeylElement, J: Iterable[int]) -> bool:
        return coxeter.is_levi_positive(key.vals, key.perm, self.standard_levi(J))

    def is_negative(self, key: ProPWeylElement, J: Iterable[int]) -> bool:
        return coxeter.is_levi_negative(key.vals, key.perm, self.standard_levi(J))

    def central_positive(self, J: Iterable[int]) -> ProPWeylElement:
        """mu_J: sum of the fundamental coweights of the simple roots of this algebra outside J."""
        outside = sorted(self.J - frozenset(J))
        if self.family == "SL":
            return translation(self.F, (1, -1) if outside else (0, 0))
        vals = [0] * self.n
        for k in outside:
            for i in range(k):
                vals[i] += 1
        return translation(self.F, vals)

    def alternative_positive(self, J: Iterable[int]) -> ProPWeylElement:
        """A second strictly positive central element, used to test independence of the choice."""
        mu = self.central_positive(J)
        if self.family == "SL":
            return mu * mu
        return mu * translation(self.F, (1,) * self.n)

    def finite_lift(self, w: Perm) -> ProPWeylElement:
        return finite_lift(self.F, self.n, w)

    def random_key(self, rng: random.Random, max_word: int = 6) -> ProPWeylElement:
        pool = list(self.generator_keys.values()) + [u.inverse() for u in self.unit_generators.values()]
        key = self.identity_key
        for _ in range(rng.randint(0, max_word)):
            key = key * rng.choice(pool)
        return key

    def to_json(self) -> dict:
        return {"kind": "pro_p_iwahori_hecke_algebra", "type": self.kind, "p": self.p,
                "coeff": self.field.describe(), "J": sorted(self.J),
                "simple": {name: k.label() for name, k in self.simple_keys.items()},
                "units": {name: k.label() for name, k in self.unit_generators.items()},
                "q": {name: q for name, (q, _) in self._quadratic.items()},
                "c": {name: {z.label(): v for z, v in c.items()} for name, (_, c) in self._quadratic.items()}}


@lru_cache(maxsize=None)
def affine_algebra(kind: str, p: int, field: CoefficientField,
                   J: Optional[FrozenSet[int]] = None) -> ProPIwahoriAlgebra:
    algebra = ProPIwahoriAlgebra(kind, p, field, J)
    log("Affine", f"pro-p Iwahori Hecke algebra {algebra.identifier()}")
    return algebra


def parse_expression(algebra: ProPIwahoriAlgebra, text: str) -> HeckeElement:
    """Product of factors joined by '*': integers, generator names, t[v...] translations, u[a...] units."""
    result = algebra.one()
    for token in (t.strip() for t in text.split("*")):
        match = re.fullmatch(r"([tu])\[\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\]", token)
        if match:
            numbers = [int(x) for x in match.group(2).split(",")]
            if len(numbers) != algebra.n:
                raise ConfigurationError(f"{token!r} needs {algebra.n} entries")
            if match.group(1) == "t":
                key = translation(algebra.F, numbers)
            else:
                if any(x % algebra.p == 0 for x in numbers):
                    raise ConfigurationError(f"{token!r} has a zero unit entry")
                key = torus_unit(algebra.F, [x % algebra.p for x in numbers])
            if not algebra.contains(key):
                raise ConfigurationError(f"{token!r} is not an element of {algebra.identifier()}")
            result = result * algebra.basis(key)
        elif token in algebra.generator_keys:
            result = result * algebra.basis(algebra.generator_keys[token])
        elif re.fullmatch(r"-?\d+", token):
            result = result.scale(algebra.field.convert(int(token)))
        else:
            raise ConfigurationError(f"cannot parse factor {token!r}")
    return result


# ----------------------------------------------------------------------
# Presentation checks
# ----------------------------------------------------------------------

def valuation_box(algebra: ProPIwahoriAlgebra, bound: int = 2) -> List[ProPWeylElement]:
    """Every element of W(1) with valuations in [-bound, bound]."""
    F, n = algebra.F, algebra.n
    out = []
    for perm in algebra.datum.elements:
        for vals in product(range(-bound, bound + 1), repeat=n):
            for units in product(F.units, repeat=n):
                key = ProPWeylElement(perm, vals, units, F)
                if algebra.contains(key):
                    out.append(key)
    return out


def check_matrix_model(algebra: ProPIwahoriAlgebra, bound: int = 2) -> Dict[str, object]:
    box = valuation_box(algebra, bound)
    F = algebra.F
    mismatches = 0
    for a in box:
        A = a.laurent_matrix()
        for b in box:
            if from_laurent_matrix(F, laurent_product(F, A, b.laurent_matrix())) != a * b:
                mismatches += 1
    projection = all((a * b).weyl_part == a.weyl_part * b.weyl_part for a in box[:50] for b in box[:50])
    return {"elements": len(box), "pairs": len(box) ** 2, "mismatches": mismatches,
            "projection_homomorphism": projection}


def check_length_oracle(algebra: ProPIwahoriAlgebra, bound: int = 2, levels: int = 4) -> Dict[str, object]:
    box = valuation_box(algebra, bound)
    bad = [k.label() for k in box if algebra.length(k) != brute_force_length(k, algebra.datum, levels)]
    unit_free = all(algebra.length(k) == algebra.length(ProPWeylElement(k.perm, k.vals, (1,) * algebra.n, algebra.F))
                    for k in box)
    return {"elements": len(box), "mismatches": len(bad), "examples": bad[:5], "unit_independent": unit_free}


def check_associativity(algebra: ProPIwahoriAlgebra, triples: int, seed: int = 0,
                        max_word: int = 6) -> Dict[str, object]:
    rng = random.Random(seed)
    failures = 0
    for _ in range(triples):
        a, b, c = (algebra.basis(algebra.random_key(rng, max_word)) for _ in range(3))
        if (a * b) * c != a * (b * c):
            failures += 1
    return {"triples": triples, "seed": seed, "failures": failures}


def check_star_unitriangular(algebra: ProPIwahoriAlgebra, keys: Sequence[ProPWeylElement]) -> bool:
    """tau*_w = tau_w + terms of strictly smaller length."""
    for key in keys:
        x = algebra.star(key)
        if x.coefficient(key) != algebra.field.one:
            return False
        if any(algebra.length(k) >= algebra.length(key) for k in x.terms if k != key):
            return False
    return True


# ----------------------------------------------------------------------
# The involution eta
# ----------------------------------------------------------------------

def eta(x: HeckeElement) -> HeckeElement:
    """tau_w -> (-1)^l(w) tau*_w, extended linearly."""
    algebra = x.algebra
    result = algebra.zero()
    for k, c in x.terms.items():
        sign = c if algebra.length(k) % 2 == 0 else -c
        result = result + algebra.star(k).scale(sign)
    return result


def check_eta(algebra: ProPIwahoriAlgebra, keys: Optional[Sequence[ProPWeylElement]] = None) -> Dict[str, object]:
    keys = list(keys) if keys is not None else [k for k in algebra.relation_keys() if algebra.length(k) <= 2]
    multiplicative = all(eta(algebra.basis(a) * algebra.basis(b)) == eta(algebra.basis(a)) * eta(algebra.basis(b))
                         for a in keys for b in keys)
    involution = all(eta(eta(algebra.basis(k))) == algebra.basis(k) for k in keys)
    triv, sign = trivial_character(algebra), sign_character(algebra)
    gens = [algebra.basis(k) for k in algebra.generator_keys.values()]
    swap = all(triv(eta(x)) == sign(x) and sign(eta(x)) == triv(x) for x in gens)
    return {"pairs": len(keys) ** 2, "multiplicative": multiplicative, "involution": involution,
            "triv_sign_swap": swap}


# ----------------------------------------------------------------------
# Levi embeddings theta, theta*
# ----------------------------------------------------------------------

def _levi_pair(algebra: ProPIwahoriAlgebra, J: Iterable[int], x: HeckeElement) -> ProPIwahoriAlgebra:
    levi_algebra = algebra.levi(J)
    if x.algebra.identifier() != levi_algebra.identifier():
        raise PreconditionError(f"element lives in {x.algebra.identifier()}, expected {levi_algebra.identifier()}")
    return levi_algebra


def _in_monoid(algebra: ProPIwahoriAlgebra, J: Iterable[int], key: ProPWeylElement, monoid: str) -> bool:
    return algebra.is_positive(key, J) if monoid == "+" else algebra.is_negative(key, J)


def theta(algebra: ProPIwahoriAlgebra, J: Iterable[int], x: HeckeElement, mode: str = "plain",
          monoid: str = "+") -> HeckeElement:
    """tau^M_m -> tau_m (plain) or tau^{M,*}_m -> tau*_m (star), on the monoid algebra H_{M^+} or H_{M^-}."""
    J = frozenset(J)
    levi_algebra = _levi_pair(algebra, J, x)
    coefficients = dict(x.terms) if mode == "plain" else levi_algebra.to_star_basis(x)
    for key in coefficients:
        if not _in_monoid(algebra, J, key, monoid):
            raise DomainError(f"{key.label()} is not M{monoid} for J={sorted(J)}")
    if mode == "plain":
        return HeckeElement(algebra, coefficients)
    if mode == "star":
        return algebra.from_star_basis(coefficients)
    raise ValueError(f"unknown theta mode {mode!r}")


def _shift_into_monoid(algebra: ProPIwahoriAlgebra, J: FrozenSet[int], key: ProPWeylElement,
                       shift: ProPWeylElement, monoid: str) -> Tuple[ProPWeylElement, int]:
    current = key
    for n in range(HECKELAB_LOCALIZATION_CAP + 1):
        if _in_monoid(algebra, J, current, monoid):
            return current, n
        current = shift * current
    raise DomainError(f"{key.label()} does not reach M{monoid} within {HECKELAB_LOCALIZATION_CAP} steps")


def theta_ext(algebra: ProPIwahoriAlgebra, J: Iterable[int], x: HeckeElement, mode: str,
              a: Optional[ProPWeylElement] = None) -> HeckeElement:
    """The extensions theta^+, theta^-, theta^{*+}, theta^{*-} of H_M into H when p is invertible."""
    if mode not in ("+", "-", "*+", "*-"):
        raise ValueError(f"unknown extension mode {mode!r}")
    if not algebra.field.is_unit_integer(algebra.p):
        raise PreconditionError(f"theta extensions need p={algebra.p} invertible in {algebra.field.describe()}")
    J = frozenset(J)
    levi_algebra = _levi_pair(algebra, J, x)
    a = a or algebra.central_positive(J)
    star = mode.startswith("*")
    monoid = mode[-1]
    shift = a if monoid == "+" else a.inverse()
    coefficients = levi_algebra.to_star_basis(x) if star else dict(x.terms)
    result = algebra.zero()
    for key, c in coefficients.items():
        moved, n = _shift_into_monoid(algebra, J, key, shift, monoid)
        if star:
            correction = algebra.product([algebra.inverse_star(shift)] * n)
            image = correction * algebra.star(moved)
        else:
            image = algebra.power_basis(shift, -n) * algebra.basis(moved)
        result = result + image.scale(c)
    return result


def delta_P_exponent(algebra: ProPIwahoriAlgebra, J: Iterable[int], m: ProPWeylElement) -> int:
    """delta_P(m) = q^e with e = -sum of <v, alpha> over the roots of the unipotent radical."""
    levi = algebra.standard_levi(J)
    if not levi.contains(m.perm):
        raise PreconditionError(f"{m.label()} does not lie in M for J={sorted(levi.J)}")
    return -sum(coxeter.dot(m.vals, alpha) for alpha in levi.unipotent_roots)


def delta_P(algebra: ProPIwahoriAlgebra, J: Iterable[int], m: ProPWeylElement):
    exponent = delta_P_exponent(algebra, J, m)
    F = algebra.field
    q = F.convert(algebra.q)
    if exponent >= 0:
        return q ** exponent
    if not F.is_unit_integer(algebra.q):
        raise PreconditionError(f"delta_P({m.label()}) = q^{exponent} needs q invertible")
    return F.one / q ** (-exponent)


def check_theta_products(algebra: ProPIwahoriAlgebra, J: Iterable[int],
                         sample: Sequence[ProPWeylElement]) -> Dict[str, object]:
    """theta and theta* respect products on the positive and negative monoid algebras."""
    J = frozenset(J)
    HM = algebra.levi(J)
    out: Dict[str, object] = {"J": sorted(J)}
    for mode in ("plain", "star"):
        for monoid in ("+", "-"):
            keys = [k for k in sample if _in_monoid(algebra, J, k, monoid)]
            ok = True
            for a in keys:
                for b in keys:
                    x, y = HM.basis(a), HM.basis(b)
                    lhs = theta(algebra, J, x * y, mode, monoid)
                    ok &= lhs == theta(algebra, J, x, mode, monoid) * theta(algebra, J, y, mode, monoid)
            out[f"{mode}{monoid}"] = ok
    return out


def check_theta_ext_independence(algebra: ProPIwahoriAlgebra, J: Iterable[int],
                                 sample: Sequence[ProPWeylElement]) -> Dict[str, object]:
    J = frozenset(J)
    HM = algebra.levi(J)
    first, second = algebra.central_positive(J), algebra.alternative_positive(J)
    out: Dict[str, object] = {"J": sorted(J), "a": first.label(), "b": second.label()}
    for mode in ("+", "-", "*+", "*-"):
        out[mode] = all(theta_ext(algebra, J, HM.basis(m), mode, first) ==
                        theta_ext(algebra, J, HM.basis(m), mode, second) for m in sample)
    return out


def check_theta_compare(algebra: ProPIwahoriAlgebra, J: Iterable[int],
                        sample: Sequence[ProPWeylElement]) -> Dict[str, object]:
    """Compare theta^{*+}(tau^M_m) with theta^-(tau^M_m) and delta_P(m).

    ``holds`` records theta^{*+}(tau^M_m) delta_P(m) = theta^-(tau^M_m); ``literal``
    records the form with delta_P on the other side.
    """
    J = frozenset(J)
    HM = algebra.levi(J)
    rows = []
    for m in sample:
        x = HM.basis(m)
        star_plus = theta_ext(algebra, J, x, "*+")
        minus = theta_ext(algebra, J, x, "-")
        d = delta_P(algebra, J, m)
        rows.append({"m": m.label(), "delta_P_exponent": delta_P_exponent(algebra, J, m),
                     "holds": star_plus.scale(d) == minus, "literal": star_plus == minus.scale(d)})
    return {"J": sorted(J), "samples": rows, "holds": all(r["holds"] for r in rows)}


def check_delta_multiplicative(algebra: ProPIwahoriAlgebra, J: Iterable[int],
                               sample: Sequence[ProPWeylElement]) -> bool:
    return all(delta_P_exponent(algebra, J, a * b) == delta_P_exponent(algebra, J, a) + delta_P_exponent(algebra, J, b)
               for a in sample for b in sample)


# ----------------------------------------------------------------------
# Characters
# ----------------------------------------------------------------------

def _rational_roots(field: CoefficientField, c, sq) -> list:
    """Roots in the coefficient field of x^2 - c x - sq."""
    if field.characteristic:
        candidates = [field.convert(k) for k in range(field.characteristic)]
        return [x for x in candidates if x * x == c * x + sq]
    x = sympy.Symbol("x")
    c, sq = (sympy.Rational(f.numerator, f.denominator) for f in (Fraction(field.to_python(v)) for v in (c, sq)))
    roots = sympy.Poly(x ** 2 - c * x - sq, x, domain=sympy.QQ).ground_roots()
    return [field.convert(Fraction(int(r.p), int(r.q))) for r in roots]


def affine_characters(algebra: ProPIwahoriAlgebra) -> List[HeckeModule]:
    """All characters with unit generators sent to F_p^x (char p) or to +-1 (Q)."""
    F = algebra.field
    if F.characteristic:
        unit_values = [F.convert(k) for k in range(1, F.characteristic)]
    else:
        unit_values = [F.one, -F.one]
    names = list(algebra.unit_generators)
    out = []
    for choice in product(unit_values, repeat=len(names)):
        assignment = dict(zip(names, choice))

        def on_unit(key: ProPWeylElement):
            value = F.one
            for name, exponent in algebra.unit_word(key):
                value *= assignment[name] ** exponent if exponent > 0 else F.one / assignment[name] ** -exponent
            return value

        simple_names = list(algebra.simple_keys)
        candidates = []
        for name in simple_names:
            q_s, c = algebra.quadratic(name)
            ns = algebra.simple_keys[name]
            c_value = sum((F.convert(coeff) * on_unit(z) for z, coeff in c.items()), F.zero)
            candidates.append(_rational_roots(F, c_value, F.convert(q_s) * on_unit(ns * ns)))
        for values in product(*candidates):
            full = {**assignment, **dict(zip(simple_names, values))}
            label = ",".join(f"{g}={F.encode(v)}" for g, v in full.items())
            gens = {g: la.matrix(F, [[v]], 1) for g, v in full.items()}
            try:
                out.append(HeckeModule(algebra, 1, gens, f"chi[{label}]"))
            except InternalConsistencyError:
                continue
    log("Affine", f"{len(out)} characters of {algebra.identifier()}")
    return out


def simple_character(algebra: ProPIwahoriAlgebra, simple_values: Dict[str, object],
                     unit_values: Optional[Dict[str, object]] = None, name: str = "") -> HeckeModule:
    """Character with given values on the simple generators; unit generators default to 1."""
    F = algebra.field
    unit_values = unit_values or {}
    gens = {g: la.matrix(F, [[F.convert(unit_values.get(g, 1))]], 1) for g in algebra.unit_generators}
    gens.update({g: la.matrix(F, [[F.convert(simple_values[g])]], 1) for g in algebra.simple_keys})
    return HeckeModule(algebra, 1, gens, name or "chi")
