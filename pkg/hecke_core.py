"""Unipotent Hecke algebras of finite reductive groups.

``PresentedHeckeAlgebra`` is the word-rewriting engine shared with the
pro-p Iwahori Hecke algebra in hecke_affine: a basis indexed by a group of
monomial-type keys, a length function, simple generators n_s with their
quadratic data, and a group of length-zero units. Products of basis elements
factor the right-hand index as a unit times a reduced word and apply the
braid and quadratic relations one letter at a time.
"""

import itertools
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

from sympy.ntheory import primitive_root

import coxeter
import exact_linalg as la
from coxeter import StandardLevi
from errors import InternalConsistencyError, PreconditionError
from exact_linalg import CoefficientField
from finite_group import BNPair, FiniteReductiveGroup, Monomial, torus_element
from settings import log

Key = Hashable


# ----------------------------------------------------------------------
# Elements
# ----------------------------------------------------------------------

class HeckeElement:
    """Finite formal sum of basis symbols tau_key with exact coefficients."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "PresentedHeckeAlgebra", terms: Optional[Dict[Key, object]] = None) -> None:
        self.algebra = algebra
        self.terms: Dict[Key, object] = {k: c for k, c in (terms or {}).items() if c}

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return HeckeElement(self.algebra, out)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + other.scale(-self.algebra.field.one)

    def __neg__(self) -> "HeckeElement":
        return self.scale(-self.algebra.field.one)

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return self.algebra.mul(self, other)
        return self.scale(self.algebra.field.convert(other))

    def __rmul__(self, scalar) -> "HeckeElement":
        return self.scale(self.algebra.field.convert(scalar))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HeckeElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def scale(self, c) -> "HeckeElement":
        if not c:
            return HeckeElement(self.algebra, {})
        return HeckeElement(self.algebra, {k: c * v for k, v in self.terms.items()})

    def coefficient(self, key: Key):
        return self.terms.get(key, self.algebra.field.zero)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> List[Key]:
        return sorted(self.terms, key=self.algebra.sort_key)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        field = self.algebra.field
        parts = [f"{field.to_python(self.terms[k])}*T[{self.algebra.label(k)}]" for k in self.support()]
        return " + ".join(parts)


# ----------------------------------------------------------------------
# Presentation engine
# ----------------------------------------------------------------------

class PresentedHeckeAlgebra:
    """Algebra with basis tau_w, braid relations and quadratic relations.

    Subclasses provide the index group (``key_mul``, ``key_inverse``,
    ``length``), the simple lifts ``simple_keys``, the quadratic data
    ``quadratic`` and the unit group generators.
    """

    field: CoefficientField

    def __init__(self, field: CoefficientField) -> None:
        self.field = field
        self._factor_cache: Dict[Key, Tuple[Key, Tuple[str, ...]]] = {}
        self._product_cache: Dict[Tuple[Key, Key], Dict[Key, object]] = {}

    # -- index group interface -----------------------------------------

    identity_key: Key
    simple_keys: Dict[str, Key]

    def key_mul(self, a: Key, b: Key) -> Key:
        raise NotImplementedError

    def key_inverse(self, a: Key) -> Key:
        raise NotImplementedError

    def length(self, key: Key) -> int:
        raise NotImplementedError

    def quadratic(self, name: str) -> Tuple[int, Dict[Key, int]]:
        """(q_s, {z: c_{n_s}(z)}) with tau_{n_s}^2 = q_s tau_{n_s^2} + sum_z c(z) tau_{z n_s}."""
        raise NotImplementedError

    @property
    def unit_generators(self) -> Dict[str, Key]:
        raise NotImplementedError

    def unit_word(self, key: Key) -> List[Tuple[str, int]]:
        """Length-zero key as a product of unit generator powers."""
        raise NotImplementedError

    @property
    def generator_keys(self) -> Dict[str, Key]:
        return {**self.unit_generators, **self.simple_keys}

    def relation_keys(self) -> List[Key]:
        """Keys b on which module actions are checked against tau_g tau_b for every generator g."""
        raise NotImplementedError

    def identifier(self) -> str:
        return type(self).__name__

    def sort_key(self, key: Key):
        return key

    def label(self, key: Key) -> str:
        return str(key)

    # -- derived index helpers -----------------------------------------

    def right_descent(self, key: Key) -> Optional[str]:
        current = self.length(key)
        for name, ns in self.simple_keys.items():
            if self.length(self.key_mul(key, self.key_inverse(ns))) < current:
                return name
        return None

    def factor(self, key: Key) -> Tuple[Key, Tuple[str, ...]]:
        """(u, word) with key = u * n_{word[0]} * ... * n_{word[-1]} and length(u) = 0."""
        cached = self._factor_cache.get(key)
        if cached is not None:
            return cached
        peeled: List[str] = []
        current = key
        while True:
            name = self.right_descent(current)
            if name is None:
                break
            peeled.append(name)
            current = self.key_mul(current, self.key_inverse(self.simple_keys[name]))
        result = (current, tuple(reversed(peeled)))
        self._factor_cache[key] = result
        return result

    # -- elements ------------------------------------------------------

    def element(self, terms: Dict[Key, object]) -> HeckeElement:
        return HeckeElement(self, {k: self.field.convert(c) for k, c in terms.items()})

    def basis(self, key: Key) -> HeckeElement:
        return HeckeElement(self, {key: self.field.one})

    def one(self) -> HeckeElement:
        return self.basis(self.identity_key)

    def zero(self) -> HeckeElement:
        return HeckeElement(self, {})

    def simple(self, name: str) -> HeckeElement:
        return self.basis(self.simple_keys[name])

    def c_element(self, name: str) -> HeckeElement:
        """c_{n_s} = sum_z c(z) tau_z."""
        _, c = self.quadratic(name)
        return self.element({z: coeff for z, coeff in c.items()})

    # -- multiplication ------------------------------------------------

    def _times_simple(self, terms: Dict[Key, object], name: str) -> Dict[Key, object]:
        ns = self.simple_keys[name]
        ns_inv = self.key_inverse(ns)
        q_s, c = self.quadratic(name)
        out: Dict[Key, object] = defaultdict(lambda: self.field.zero)
        for m, coeff in terms.items():
            up = self.key_mul(m, ns)
            if self.length(up) > self.length(m):
                out[up] += coeff
                continue
            low = self.key_mul(m, ns_inv)
            out[up] += coeff * self.field.convert(q_s)
            for z, cz in c.items():
                out[self.key_mul(self.key_mul(low, z), ns)] += coeff * self.field.convert(cz)
        return {k: v for k, v in out.items() if v}

    def mul_basis(self, a: Key, b: Key) -> Dict[Key, object]:
        cached = self._product_cache.get((a, b))
        if cached is not None:
            return cached
        unit, word = self.factor(b)
        terms: Dict[Key, object] = {self.key_mul(a, unit): self.field.one}
        for name in word:
            terms = self._times_simple(terms, name)
        self._product_cache[(a, b)] = terms
        return terms

    def mul(self, x: HeckeElement, y: HeckeElement) -> HeckeElement:
        out: Dict[Key, object] = defaultdict(lambda: self.field.zero)
        for a, ca in x.terms.items():
            for b, cb in y.terms.items():
                c = ca * cb
                for k, v in self.mul_basis(a, b).items():
                    out[k] += c * v
        return HeckeElement(self, dict(out))

    def product(self, factors: Iterable[HeckeElement]) -> HeckeElement:
        result = self.one()
        for f in factors:
            result = result * f
        return result

    # -- tau* basis ----------------------------------------------------

    def star_simple(self, name: str) -> HeckeElement:
        return self.simple(name) - self.c_element(name)

    def star(self, key: Key) -> HeckeElement:
        """tau*_key = tau_u * prod tau*_{n_s} along the factorization of key."""
        unit, word = self.factor(key)
        result = self.basis(unit)
        for name in word:
            result = result * self.star_simple(name)
        return result

    def to_star_basis(self, x: HeckeElement) -> Dict[Key, object]:
        """Coefficients of x in the tau* basis (unitriangular peel from the top length)."""
        remaining = x
        out: Dict[Key, object] = {}
        while not remaining.is_zero:
            top = max(remaining.terms, key=lambda k: (self.length(k), self.sort_key(k)))
            coeff = remaining.terms[top]
            out[top] = coeff
            remaining = remaining - self.star(top).scale(coeff)
        return out

    def from_star_basis(self, coefficients: Dict[Key, object]) -> HeckeElement:
        result = self.zero()
        for k, c in coefficients.items():
            result = result + self.star(k).scale(self.field.convert(c))
        return result

    # -- inverses ------------------------------------------------------

    def _require_q_invertible(self, name: str) -> object:
        q_s, _ = self.quadratic(name)
        if not self.field.is_unit_integer(q_s):
            raise PreconditionError(f"q_s={q_s} is not invertible in {self.field.describe()}")
        return self.field.one / self.field.convert(q_s)

    def inverse_simple(self, name: str) -> HeckeElement:
        """tau_{n_s}^{-1} = q^{-1} tau_{n_s^{-2}} (tau_{n_s} - c_{n_s})."""
        q_inv = self._require_q_invertible(name)
        ns = self.simple_keys[name]
        ns_inv = self.key_inverse(ns)
        return (self.basis(self.key_mul(ns_inv, ns_inv)) * self.star_simple(name)).scale(q_inv)

    def inverse_star_simple(self, name: str) -> HeckeElement:
        """(tau*_{n_s})^{-1} = q^{-1} tau_{n_s^{-1}}."""
        q_inv = self._require_q_invertible(name)
        return self.basis(self.key_inverse(self.simple_keys[name])).scale(q_inv)

    def inverse_basis(self, key: Key) -> HeckeElement:
        unit, word = self.factor(key)
        result = self.one()
        for name in reversed(word):
            result = result * self.inverse_simple(name)
        return result * self.basis(self.key_inverse(unit))

    def inverse_star(self, key: Key) -> HeckeElement:
        unit, word = self.factor(key)
        result = self.one()
        for name in reversed(word):
            result = result * self.inverse_star_simple(name)
        return result * self.basis(self.key_inverse(unit))

    def power_basis(self, key: Key, exponent: int) -> HeckeElement:
        """tau_key^exponent, negative exponents through inverse_basis."""
        base = self.basis(key) if exponent >= 0 else self.inverse_basis(key)
        result = self.one()
        for _ in range(abs(exponent)):
            result = result * base
        return result


# ----------------------------------------------------------------------
# Finite unipotent Hecke algebras
# ----------------------------------------------------------------------

def convolution_product(bn: BNPair, a: Monomial, b: Monomial) -> Dict[Monomial, int]:
    """Integer structure constants of tau_a tau_b by literal double-coset convolution.

    The coefficient of tau_n counts right cosets Ux in UbU with n x^{-1} in UaU.
    """
    mul, inv = bn.group.mul, bn.group.inv
    out: Dict[Monomial, int] = defaultdict(int)
    for x in bn.cosets_in_cell[b]:
        x_inv = inv(x)
        for n in bn.monomials:
            if bn.cell_of(mul(n.matrix(), x_inv)) == a:
                out[n] += 1
    return dict(out)


def convolution_table(bn: BNPair) -> Dict[Tuple[Monomial, Monomial], Dict[Monomial, int]]:
    """All integer structure constants at once, one pass over the cosets of each cell."""
    mul, inv = bn.group.mul, bn.group.inv
    table: Dict[Tuple[Monomial, Monomial], Dict[Monomial, int]] = {
        (a, b): defaultdict(int) for a in bn.monomials for b in bn.monomials}
    matrices = [(n, n.matrix()) for n in bn.monomials]
    for b in bn.monomials:
        for x in bn.cosets_in_cell[b]:
            x_inv = inv(x)
            for n, nm in matrices:
                table[(bn.cell_of(mul(nm, x_inv)), b)][n] += 1
    return {pair: dict(terms) for pair, terms in table.items()}


class UnipotentHeckeAlgebra(PresentedHeckeAlgebra):
    """H = R[U backslash G / U] with basis indexed by the monomial group N_G.

    Built on a BNPair, so the same class serves H and its Levi subalgebras H_M.
    """

    def __init__(self, bn: BNPair, field: CoefficientField, source: str = "presentation",
                 group: Optional[FiniteReductiveGroup] = None) -> None:
        super().__init__(field)
        self.bn = bn
        self.group = group
        self.source = source
        self.basis_keys: List[Monomial] = list(bn.monomials)
        self.position = {k: i for i, k in enumerate(self.basis_keys)}
        self.identity_key = torus_element(bn.field, [1] * bn.n)
        self.simple_keys = {f"s{k}": bn.simple_lift(k) for k in bn.datum.simple}
        log("Hecke", f"building {source} algebra of dimension {len(self.basis_keys)} over {field.describe()}")
        self._levi_cache: Dict[FrozenSet[int], "UnipotentHeckeAlgebra"] = {}
        self.table: Optional[Dict[Tuple[Monomial, Monomial], Dict[Monomial, object]]] = None
        if source == "convolution":
            self.table = {pair: {k: field.convert(v) for k, v in terms.items() if field.convert(v)}
                          for pair, terms in convolution_table(bn).items()}
        elif source == "presentation":
            self.table = {(a, b): PresentedHeckeAlgebra.mul_basis(self, a, b)
                          for a in self.basis_keys for b in self.basis_keys}
        else:
            raise ValueError(f"unknown algebra source {source!r}")

    @classmethod
    def from_convolution(cls, group: FiniteReductiveGroup, field: CoefficientField) -> "UnipotentHeckeAlgebra":
        return cls(group.bn, field, "convolution", group)

    @classmethod
    def from_presentation(cls, group: FiniteReductiveGroup, field: CoefficientField) -> "UnipotentHeckeAlgebra":
        return cls(group.bn, field, "presentation", group)

    # -- index group ---------------------------------------------------

    def key_mul(self, a: Monomial, b: Monomial) -> Monomial:
        return a * b

    def key_inverse(self, a: Monomial) -> Monomial:
        return a.inverse()

    def length(self, key: Monomial) -> int:
        return key.length

    def right_descent(self, key: Monomial) -> Optional[str]:
        for k in coxeter.right_descents(key.perm):
            if k in self.bn.datum.simple:
                return f"s{k}"
        return None

    def sort_key(self, key: Monomial):
        return key.sort_key()

    def label(self, key: Monomial) -> str:
        return key.label()

    def relation_keys(self) -> List[Monomial]:
        return self.basis_keys

    def identifier(self) -> str:
        group = self.group.descriptor() if self.group else "group"
        levi = "".join(str(k) for k in sorted(self.bn.datum.simple))
        return f"{group}/J={levi or '-'}/{self.field.describe()}"

    @cached_property
    def _quadratic(self) -> Dict[str, Tuple[int, Dict[Monomial, int]]]:
        return quadratic_data(self.bn)

    def quadratic(self, name: str) -> Tuple[int, Dict[Monomial, int]]:
        return self._quadratic[name]

    @property
    def unit_generators(self) -> Dict[str, Monomial]:
        return {f"t{i + 1}": t for i, t in enumerate(self.bn.torus_generators)}

    def unit_word(self, key: Monomial) -> List[Tuple[str, int]]:
        exponents = self.bn.torus_exponents(key)
        return [(f"t{i + 1}", e) for i, e in enumerate(exponents) if e]

    def mul_basis(self, a: Monomial, b: Monomial) -> Dict[Monomial, object]:
        if self.table is not None:
            return self.table[(a, b)]
        return super().mul_basis(a, b)

    @property
    def dimension(self) -> int:
        return len(self.basis_keys)

    @property
    def torus_keys(self) -> List[Monomial]:
        return [k for k in self.basis_keys if k.is_torus]

    @cached_property
    def longest_lift(self) -> Monomial:
        return self.bn.weyl_lift(self.bn.datum.longest)

    # -- coordinates ---------------------------------------------------

    def vector(self, x: HeckeElement):
        return la.from_dod(self.field, {0: {self.position[k]: c for k, c in x.terms.items()}}, (1, self.dimension))

    def from_vector(self, v) -> HeckeElement:
        row = la.rows_of(v).get(0, {})
        return HeckeElement(self, {self.basis_keys[j]: c for j, c in row.items()})

    def to_json(self) -> dict:
        F = self.field
        labels = [k.label() for k in self.basis_keys]
        triples = []
        for (a, b), terms in sorted(self.table.items(), key=lambda item: (self.position[item[0][0]],
                                                                           self.position[item[0][1]])):
            for k, v in sorted(terms.items(), key=lambda kv: self.position[kv[0]]):
                triples.append([self.position[a], self.position[b], self.position[k], F.encode(v)])
        qdata = {name: q for name, (q, _) in self._quadratic.items()}
        cdata = {name: {z.label(): v for z, v in c.items()} for name, (_, c) in self._quadratic.items()}
        return {"kind": "unipotent_hecke_algebra", "group": self.group.descriptor() if self.group else None,
                "levi": list(self.bn.datum.simple), "coeff": F.describe(), "source": self.source,
                "basis": labels, "q": qdata, "c": cdata, "table": triples}


def quadratic_data(bn: BNPair) -> Dict[str, Tuple[int, Dict[Monomial, int]]]:
    """q_s and c_{n_s}(z) read off the integer oracle product tau_{n_s} tau_{n_s}."""
    out = {}
    for k in bn.datum.simple:
        ns = bn.simple_lift(k)
        ns_inv = ns.inverse()
        square = ns * ns
        q_s = 0
        c: Dict[Monomial, int] = {}
        for key, coeff in convolution_product(bn, ns, ns).items():
            if key == square:
                q_s = coeff
                continue
            z = key * ns_inv
            if not z.is_torus:
                raise InternalConsistencyError(f"oracle square of n_s{k} has a term at {key.label()}")
            c[z] = coeff
        if sum(c.values()) != q_s - 1:
            raise InternalConsistencyError(f"c-coefficients of s{k} sum to {sum(c.values())}, expected {q_s - 1}")
        out[f"s{k}"] = (q_s, c)
    return out


def structure_constants(algebra: UnipotentHeckeAlgebra) -> Dict[Tuple[int, int], Dict[int, object]]:
    pos = algebra.position
    return {(pos[a], pos[b]): {pos[k]: v for k, v in algebra.mul_basis(a, b).items()}
            for a in algebra.basis_keys for b in algebra.basis_keys}


def oracle_mismatches(group: FiniteReductiveGroup, field: CoefficientField) -> List[Tuple[str, str]]:
    """Basis pairs where the presentation product differs from the convolution oracle."""
    oracle = UnipotentHeckeAlgebra.from_convolution(group, field)
    presented = UnipotentHeckeAlgebra.from_presentation(group, field)
    return [(a.label(), b.label()) for a in oracle.basis_keys for b in oracle.basis_keys
            if oracle.table[(a, b)] != presented.table[(a, b)]]


# ----------------------------------------------------------------------
# Frobenius data
# ----------------------------------------------------------------------

@dataclass
class FrobeniusData:
    """Linear form delta (coefficient of tau_lift) and iota = conjugation by the lift."""

    algebra: UnipotentHeckeAlgebra
    lift: Monomial

    def delta(self, x: HeckeElement):
        return x.coefficient(self.lift)

    def iota(self, x: HeckeElement) -> HeckeElement:
        n, n_inv = self.lift, self.lift.inverse()
        return HeckeElement(self.algebra, {n * k * n_inv: c for k, c in x.terms.items()})

    def iota_inverse(self, x: HeckeElement) -> HeckeElement:
        n, n_inv = self.lift, self.lift.inverse()
        return HeckeElement(self.algebra, {n_inv * k * n: c for k, c in x.terms.items()})

    def gram(self, form: Optional[Callable[[HeckeElement], object]] = None):
        A = self.algebra
        form = form or self.delta
        keys = A.basis_keys
        return la.from_dod(A.field, {i: {j: form(A.basis(a) * A.basis(b)) for j, b in enumerate(keys)}
                                     for i, a in enumerate(keys)}, (len(keys), len(keys)))


def frobenius(algebra: UnipotentHeckeAlgebra, lift: Optional[Monomial] = None) -> FrobeniusData:
    return FrobeniusData(algebra, lift if lift is not None else algebra.longest_lift)


def unit_coefficient(algebra: PresentedHeckeAlgebra) -> Callable[[HeckeElement], object]:
    """delta': the coefficient of tau_1."""
    return lambda x: x.coefficient(algebra.identity_key)


def check_frobenius(algebra: UnipotentHeckeAlgebra) -> Dict[str, object]:
    data = frobenius(algebra)
    A = algebra
    keys = A.basis_keys
    twisted_trace = all(data.delta(A.basis(a) * A.basis(b)) == data.delta(data.iota(A.basis(b)) * A.basis(a))
                        for a in keys for b in keys)
    gram_invertible = la.is_invertible(data.gram())
    report: Dict[str, object] = {
        "pairs": len(keys) ** 2,
        "delta_twisted_trace": twisted_trace,
        "gram_invertible": gram_invertible,
        "delta_of_longest_lift": A.field.to_python(data.delta(A.basis(data.lift))),
        "iota_involution": all(data.iota(data.iota(A.basis(k))) == A.basis(k) for k in keys),
    }
    if A.field.characteristic != A.bn.field.p:
        delta_one = unit_coefficient(A)
        report["unit_form_symmetric"] = all(delta_one(A.basis(a) * A.basis(b)) == delta_one(A.basis(b) * A.basis(a))
                                            for a in keys for b in keys)
        report["unit_form_gram_invertible"] = la.is_invertible(data.gram(delta_one))
    return report


def compare_lifts(algebra: UnipotentHeckeAlgebra, t: Monomial) -> Dict[str, bool]:
    """Frobenius data of the lift t*n against the twist of the default data.

    For n' = t n: iota' = conj(tau_t) o iota and delta'(x) = delta(tau_{t^-1} x).
    """
    A = algebra
    base = frobenius(A)
    alt = frobenius(A, t * base.lift)
    t_inv = t.inverse()
    keys = A.basis_keys
    iota_match = all(alt.iota(A.basis(k)) == A.basis(t) * base.iota(A.basis(k)) * A.basis(t_inv) for k in keys)
    delta_match = all(alt.delta(A.basis(k)) == base.delta(A.basis(t_inv) * A.basis(k)) for k in keys)
    trace = all(alt.delta(A.basis(a) * A.basis(b)) == alt.delta(alt.iota(A.basis(b)) * A.basis(a))
                for a in keys for b in keys)
    return {"iota_twist": iota_match, "delta_twist": delta_match, "twisted_trace": trace}


# ----------------------------------------------------------------------
# Levi subalgebras
# ----------------------------------------------------------------------

@dataclass
class LeviEmbedding:
    """H_M inside H on the common index set N_M."""

    algebra: UnipotentHeckeAlgebra
    levi: StandardLevi
    sub: UnipotentHeckeAlgebra

    def embed(self, x: HeckeElement) -> HeckeElement:
        return HeckeElement(self.algebra, dict(x.terms))

    def respects_products(self) -> bool:
        H, HM = self.algebra, self.sub
        return all(self.embed(HM.basis(a) * HM.basis(b)) == H.basis(a) * H.basis(b)
                   for a in HM.basis_keys for b in HM.basis_keys)

    @cached_property
    def coset_lifts(self) -> List[Monomial]:
        bn = self.algebra.bn
        return [bn.weyl_lift(d) for d in self.levi.min_coset_reps]

    def is_free(self) -> Dict[str, bool]:
        """tau_m tau_{n_d} = tau_{m n_d} and tau_{n_{d^-1}} tau_m = tau_{n_{d^-1} m} enumerate the basis."""
        H, HM = self.algebra, self.sub
        bn = H.bn
        left, right = set(), set()
        left_ok = right_ok = True
        for d, nd in zip(self.levi.min_coset_reps, self.coset_lifts):
            nd_left = bn.weyl_lift(coxeter.invert(d))
            for m in HM.basis_keys:
                left_ok &= H.basis(m) * H.basis(nd) == H.basis(m * nd)
                right_ok &= H.basis(nd_left) * H.basis(m) == H.basis(nd_left * m)
                left.add(m * nd)
                right.add(nd_left * m)
        everything = set(H.basis_keys)
        return {"left_basis": left_ok and left == everything, "right_basis": right_ok and right == everything}

    @property
    def rank(self) -> int:
        return len(self.levi.min_coset_reps)


def levi_algebra(algebra: UnipotentHeckeAlgebra, levi: StandardLevi) -> UnipotentHeckeAlgebra:
    if algebra.group is None:
        raise PreconditionError("Levi subalgebras need the ambient group")
    cache = algebra._levi_cache
    if levi.J not in cache:
        if levi.is_full:
            cache[levi.J] = algebra
        else:
            cache[levi.J] = UnipotentHeckeAlgebra(algebra.group.levi_bn(levi), algebra.field, "presentation",
                                                  algebra.group)
    return cache[levi.J]


def levi_embed(algebra: UnipotentHeckeAlgebra, levi: StandardLevi) -> LeviEmbedding:
    return LeviEmbedding(algebra, levi, levi_algebra(algebra, levi))


# ----------------------------------------------------------------------
# Characters and the Iwahori idempotent
# ----------------------------------------------------------------------

@dataclass
class Character:
    """One-dimensional representation given by its values on basis elements."""

    algebra: PresentedHeckeAlgebra
    name: str
    values: Callable[[Key], object]

    def __call__(self, x: HeckeElement):
        total = self.algebra.field.zero
        for k, c in x.terms.items():
            total += c * self.values(k)
        return total


def trivial_character(algebra: PresentedHeckeAlgebra) -> Character:
    """Triv(tau_w) = q_w, the product of q_s along a reduced word; units go to 1."""
    F = algebra.field

    def value(key):
        _, word = algebra.factor(key)
        result = F.one
        for name in word:
            result *= F.convert(algebra.quadratic(name)[0])
        return result

    return Character(algebra, "Triv", value)


def sign_character(algebra: PresentedHeckeAlgebra) -> Character:
    F = algebra.field
    return Character(algebra, "Sign", lambda key: F.convert((-1) ** algebra.length(key)))


def characters(algebra: PresentedHeckeAlgebra) -> Dict[str, Character]:
    return {"Triv": trivial_character(algebra), "Sign": sign_character(algebra)}


def torus_characters(algebra: UnipotentHeckeAlgebra) -> List[Character]:
    """Every character of the torus algebra K[T] with values in the coefficient field.

    T is the diagonal torus, so a character is a product of characters of F_q^x read off the
    diagonal units. Only orders dividing the number of roots of unity in K occur. Exponent
    vectors giving the same values on T (as on SL) are listed once.
    """
    keys = algebra.basis_keys
    if not all(k.is_torus for k in keys):
        raise PreconditionError("torus characters need the algebra of the diagonal torus")
    Fq, F = algebra.bn.field, algebra.field
    ell = F.characteristic
    order = gcd(Fq.q - 1, 2 if ell == 0 else ell - 1)
    if ell == 0:
        zeta = F.convert(-1 if order == 2 else 1)
    else:
        zeta = F.convert(pow(primitive_root(ell), (ell - 1) // order, ell))
    rank = len(keys[0].units)
    seen, out = set(), []
    for exponents in itertools.product(range(order), repeat=rank):
        def value(key, exponents=exponents):
            return zeta ** (sum(e * Fq.dlog[u] for e, u in zip(exponents, key.units)) % order)

        table = tuple(F.encode(value(k)) for k in keys)
        if table in seen:
            continue
        seen.add(table)
        name = "Triv" if not any(exponents) else "chi" + "".join(map(str, exponents))
        out.append(Character(algebra, name, value))
    log("Hecke", f"{len(out)} torus characters over {F.describe()} for q={Fq.q}")
    return out


def is_multiplicative(character: Character, keys: Sequence[Key]) -> bool:
    A = character.algebra
    return all(character(A.basis(a) * A.basis(b)) == character(A.basis(a)) * character(A.basis(b))
               for a in keys for b in keys)


def iwahori_idempotent(algebra: UnipotentHeckeAlgebra) -> HeckeElement:
    """eps_1 = |T|^{-1} sum_t tau_t."""
    torus = algebra.torus_keys
    if not algebra.field.is_unit_integer(len(torus)):
        raise PreconditionError(f"|T|={len(torus)} is not invertible in {algebra.field.describe()}")
    inv = algebra.field.one / algebra.field.convert(len(torus))
    return algebra.element({t: 1 for t in torus}).scale(inv)


def check_iwahori_idempotent(algebra: UnipotentHeckeAlgebra) -> Dict[str, object]:
    A = algebra
    eps = iwahori_idempotent(A)
    ideal = la.vstack(A.field, [A.vector(eps * A.basis(k)) for k in A.basis_keys], A.dimension)
    quadratic_ok = True
    for name in A.simple_keys:
        q_s, _ = A.quadratic(name)
        T = eps * A.simple(name)
        q = A.field.convert(q_s)
        quadratic_ok &= T * T == eps.scale(q) + T.scale(q - A.field.one)
    return {
        "idempotent": eps * eps == eps,
        "central": all(eps * A.basis(k) == A.basis(k) * eps for k in A.basis_keys),
        "dimension": la.rank(ideal),
        "weyl_order": len(A.bn.datum.elements),
        "iwahori_quadratic": quadratic_ok,
    }


# ----------------------------------------------------------------------
# The bimodule isomorphism Hom_{H_M}(H, H_M) = H iota^-1 iota_M
# ----------------------------------------------------------------------

def left_linear_hom_dimension(algebra: UnipotentHeckeAlgebra, levi: StandardLevi) -> int:
    """dim Hom_{H_M}(H, H_M) for the left multiplication actions, solved from f(m x) = m f(x)."""
    H = algebra
    HM = levi_algebra(H, levi)
    F = H.field
    keys, keys_M = H.basis_keys, HM.basis_keys
    dim_M = len(keys_M)
    products = {(m, k): HM.basis(m) * HM.basis(k) for m in keys_M for k in keys_M}
    equations: Dict[int, Dict[int, object]] = {}
    row = 0
    for m in keys_M:
        for j, x in enumerate(keys):
            mx = H.basis(m) * H.basis(x)
            for t, target in enumerate(keys_M):
                eq = defaultdict(lambda: F.zero)
                for y, c in mx.terms.items():
                    eq[H.position[y] * dim_M + t] += c
                for k in keys_M:
                    c = products[m, k].terms.get(target)
                    if c:
                        eq[j * dim_M + HM.position[k]] -= c
                equations[row] = {i: v for i, v in eq.items() if v}
                row += 1
    system = la.from_dod(F, equations, (row, len(keys) * dim_M))
    return la.nullspace(system).shape[0]


def check_bimodule_iso(algebra: UnipotentHeckeAlgebra, levi: StandardLevi, twisted: bool = True) -> Dict[str, object]:
    """Verify h -> F_h with delta_M(a F_h(x)) = delta(h iota^-1(a x)) is a bimodule isomorphism.

    With ``twisted=False`` (coefficients of characteristic != p) the forms are
    the tau_1-coefficients and both automorphisms are the identity.
    """
    H = algebra
    HM = levi_algebra(H, levi)
    F = H.field
    if twisted:
        data, data_M = frobenius(H), frobenius(HM)
        delta, delta_M = data.delta, data_M.delta
        iota_inv, iota_M = data.iota_inverse, data_M.iota
    else:
        if F.characteristic == H.bn.field.p:
            raise PreconditionError("the untwisted isomorphism needs characteristic different from p")
        delta, delta_M = unit_coefficient(H), unit_coefficient(HM)
        iota_inv = iota_M = lambda x: x
    keys, keys_M = H.basis_keys, HM.basis_keys
    dim, dim_M = len(keys), len(keys_M)
    gram_M = la.from_dod(F, {i: {j: delta_M(HM.basis(a) * HM.basis(b)) for j, b in enumerate(keys_M)}
                             for i, a in enumerate(keys_M)}, (dim_M, dim_M))
    solve = la.inverse(gram_M.transpose())

    def F_h(h: HeckeElement, x: HeckeElement) -> HeckeElement:
        rhs = la.from_dod(F, {0: {i: delta(h * iota_inv(H.basis(m) * x)) for i, m in enumerate(keys_M)}}, (1, dim_M))
        return HM.from_vector(la.product(rhs, solve))

    def embed(y: HeckeElement) -> HeckeElement:
        return HeckeElement(H, dict(y.terms))

    def restrict(y: HeckeElement) -> HeckeElement:
        return HeckeElement(HM, dict(y.terms))

    images = {h: {x: F_h(H.basis(h), H.basis(x)) for x in keys} for h in keys}
    phi = la.from_dod(F, {i: {j * dim_M + HM.position[k]: c
                              for j, x in enumerate(keys) for k, c in images[h][x].terms.items()}
                          for i, h in enumerate(keys)}, (dim, dim * dim_M))
    image_rank = la.rank(phi)
    hom_dim = left_linear_hom_dimension(H, levi)
    left_linear = all(F_h(H.basis(h), H.basis(m) * H.basis(x)) == HM.basis(m) * images[h][x]
                      for h in keys for m in keys_M for x in keys)
    left_equivariant = all(F_h(H.basis(hp) * H.basis(h), H.basis(x)) == F_h(H.basis(h), H.basis(x) * H.basis(hp))
                           for h in keys for hp in keys for x in keys)
    right_equivariant = True
    for h in keys:
        for m in keys_M:
            twist = iota_inv(embed(iota_M(HM.basis(m))))
            for x in keys:
                lhs = F_h(H.basis(h) * twist, H.basis(x))
                rhs = images[h][x] * HM.basis(m)
                right_equivariant &= lhs == rhs
    return {"twisted": twisted, "dimension": dim, "hom_dimension": hom_dim, "image_rank": image_rank,
            "bijective": image_rank == dim == hom_dim and left_linear, "left_equivariant": left_equivariant,
            "right_equivariant": right_equivariant}
