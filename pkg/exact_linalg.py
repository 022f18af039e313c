"""Exact linear algebra over prime fields and the rationals.

Matrices are sympy DomainMatrix objects kept in sparse (SDM) format so that
products never silently switch representation. Vectors are rows: a subspace
is the row space of a matrix and a linear map acts as v -> v A.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import GF, QQ, isprime, symbols
from sympy.polys.matrices import DomainMatrix

from errors import ConfigurationError, InternalConsistencyError


@dataclass(frozen=True)
class CoefficientField:
    """Exact coefficient field: F_p for a prime p, or Q when characteristic is 0."""

    characteristic: int

    def __post_init__(self) -> None:
        if self.characteristic != 0 and not isprime(self.characteristic):
            raise ConfigurationError(f"coefficient characteristic {self.characteristic} is not prime")

    @classmethod
    def parse(cls, text: str) -> "CoefficientField":
        descriptor = text.strip().lower()
        if descriptor in ("q", "qq"):
            return cls(0)
        if descriptor.startswith("fp:"):
            try:
                return cls(int(descriptor[3:]))
            except ValueError:
                pass
        raise ConfigurationError(f"unknown coefficient descriptor {text!r}; expected fp:P or q")

    @cached_property
    def domain(self):
        if self.characteristic == 0:
            return QQ
        return GF(self.characteristic, symmetric=False)

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def describe(self) -> str:
        return "q" if self.characteristic == 0 else f"fp:{self.characteristic}"

    def convert(self, value):
        K = self.domain
        if K.of_type(value):
            return value
        if isinstance(value, Fraction):
            return K(value.numerator) / K(value.denominator)
        return K(int(value))

    def is_unit_integer(self, n: int) -> bool:
        if self.characteristic == 0:
            return n != 0
        return n % self.characteristic != 0

    def to_python(self, a):
        """Plain int (F_p, in 0..p-1) or Fraction (Q) for an element."""
        if self.characteristic == 0:
            fraction = Fraction(int(a.numerator), int(a.denominator))
            return fraction.numerator if fraction.denominator == 1 else fraction
        return int(self.domain.to_int(a)) % self.characteristic

    def encode(self, a):
        value = self.to_python(a)
        return str(value) if isinstance(value, Fraction) else value

    def decode(self, value):
        if isinstance(value, str):
            return self.convert(Fraction(value))
        return self.convert(value)

    def random_element(self, rng: random.Random):
        if self.characteristic == 0:
            return self.convert(rng.randint(-3, 3))
        return self.convert(rng.randrange(self.characteristic))


# ----------------------------------------------------------------------
# Construction
# ----------------------------------------------------------------------

def from_dod(field: CoefficientField, dod: Dict[int, Dict[int, object]], shape: Tuple[int, int]) -> DomainMatrix:
    """Sparse matrix from a dict of row dicts, dropping zero entries."""
    K = field.domain
    clean: Dict[int, Dict[int, object]] = {}
    for i, row in dod.items():
        kept = {}
        for j, value in row.items():
            element = field.convert(value)
            if element:
                kept[j] = element
        if kept:
            clean[i] = kept
    return DomainMatrix(clean, shape, K)


def matrix(field: CoefficientField, rows: Sequence[Sequence], ncols: Optional[int] = None) -> DomainMatrix:
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return from_dod(field, {i: dict(enumerate(row)) for i, row in enumerate(rows)}, (len(rows), ncols))


def zeros(field: CoefficientField, nrows: int, ncols: int) -> DomainMatrix:
    return DomainMatrix({}, (nrows, ncols), field.domain)


def identity(field: CoefficientField, n: int) -> DomainMatrix:
    return DomainMatrix({i: {i: field.one} for i in range(n)}, (n, n), field.domain)


def unit_vector(field: CoefficientField, n: int, index: int) -> DomainMatrix:
    return DomainMatrix({0: {index: field.one}}, (1, n), field.domain)


def sparse(A: DomainMatrix) -> DomainMatrix:
    return A.to_sparse()


# ----------------------------------------------------------------------
# Arithmetic
# ----------------------------------------------------------------------

def product(*mats: DomainMatrix) -> DomainMatrix:
    return reduce(lambda a, b: a.matmul(b), (sparse(m) for m in mats))


def power(A: DomainMatrix, k: int) -> DomainMatrix:
    result = DomainMatrix({i: {i: A.domain.one} for i in range(A.shape[0])}, A.shape, A.domain)
    base = sparse(A)
    while k > 0:
        if k & 1:
            result = result.matmul(base)
        base = base.matmul(base)
        k >>= 1
    return result


def add(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    return sparse(A).add(sparse(B))


def sub(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    return sparse(A).sub(sparse(B))


def scale(A: DomainMatrix, c) -> DomainMatrix:
    return sparse(A).scalarmul(c)


def linear_combination(field: CoefficientField, terms: Iterable[Tuple[object, DomainMatrix]],
                       shape: Tuple[int, int]) -> DomainMatrix:
    total = zeros(field, *shape)
    for coefficient, mat in terms:
        c = field.convert(coefficient)
        if c:
            total = total.add(scale(mat, c))
    return total


def entry(A: DomainMatrix, i: int, j: int):
    return sparse(A).rep.get(i, {}).get(j, A.domain.zero)


def rows_of(A: DomainMatrix) -> Dict[int, Dict[int, object]]:
    """Nonzero rows of a sparse matrix as a dict of dicts (shared, do not mutate)."""
    return sparse(A).rep


def row(A: DomainMatrix, i: int) -> DomainMatrix:
    return sparse(A).extract([i], range(A.shape[1]))


def select_rows(A: DomainMatrix, indices: Sequence[int]) -> DomainMatrix:
    return sparse(A).extract(list(indices), range(A.shape[1]))


def select_columns(A: DomainMatrix, indices: Sequence[int]) -> DomainMatrix:
    return sparse(A).extract(range(A.shape[0]), list(indices))


def vstack(field: CoefficientField, mats: Sequence[DomainMatrix], ncols: int) -> DomainMatrix:
    dod: Dict[int, Dict[int, object]] = {}
    offset = 0
    for m in mats:
        for i, r in rows_of(m).items():
            dod[offset + i] = dict(r)
        offset += m.shape[0]
    return DomainMatrix(dod, (offset, ncols), field.domain)


def block_diagonal(field: CoefficientField, blocks: Sequence[DomainMatrix]) -> DomainMatrix:
    dod: Dict[int, Dict[int, object]] = {}
    r0 = c0 = 0
    for b in blocks:
        for i, r in rows_of(b).items():
            dod[r0 + i] = {c0 + j: v for j, v in r.items()}
        r0 += b.shape[0]
        c0 += b.shape[1]
    return DomainMatrix(dod, (r0, c0), field.domain)


def kron(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    """Kronecker product with index (i, k) -> i * rows(B) + k."""
    (ma, na), (mb, nb) = A.shape, B.shape
    dod: Dict[int, Dict[int, object]] = {}
    for i, ra in rows_of(A).items():
        for k, rb in rows_of(B).items():
            dod[i * mb + k] = {j * nb + l: a * b for j, a in ra.items() for l, b in rb.items()}
    return DomainMatrix(dod, (ma * mb, na * nb), A.domain)


def is_zero(A: DomainMatrix) -> bool:
    return not rows_of(A)


def to_python_rows(field: CoefficientField, A: DomainMatrix) -> List[List[object]]:
    return [[field.to_python(x) for x in r] for r in sparse(A).to_list()]


def random_combination(field: CoefficientField, mats: Sequence[DomainMatrix], rng: random.Random) -> DomainMatrix:
    shape = mats[0].shape
    return linear_combination(field, ((field.random_element(rng), m) for m in mats), shape)


# ----------------------------------------------------------------------
# Row spaces, kernels, solving
# ----------------------------------------------------------------------

def row_reduce(A: DomainMatrix) -> Tuple[DomainMatrix, List[int]]:
    """Nonzero rows of the reduced row echelon form and the pivot columns."""
    R, pivots = sparse(A).rref()
    R = sparse(R)
    return R.extract(range(len(pivots)), range(A.shape[1])), list(pivots)


def row_basis(A: DomainMatrix) -> DomainMatrix:
    return row_reduce(A)[0]


def rank(A: DomainMatrix) -> int:
    if A.shape[0] == 0 or A.shape[1] == 0:
        return 0
    return len(row_reduce(A)[1])


def nullspace(A: DomainMatrix) -> DomainMatrix:
    """Rows x spanning {x : A x^T = 0}."""
    if A.shape[0] == 0:
        return identity_like(A.domain, A.shape[1])
    R, pivots = sparse(A).rref()
    return sparse(sparse(R).nullspace_from_rref(pivots))


def left_nullspace(A: DomainMatrix) -> DomainMatrix:
    """Rows x spanning {x : x A = 0}, the kernel of v -> v A."""
    return nullspace(sparse(A).transpose())


def identity_like(K, n: int) -> DomainMatrix:
    return DomainMatrix({i: {i: K.one} for i in range(n)}, (n, n), K)


def in_row_space(B: DomainMatrix, v: DomainMatrix) -> bool:
    if B.shape[0] == 0:
        return is_zero(v)
    return rank(vstack_like(B, v)) == rank(B)


def vstack_like(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    dod = {i: dict(r) for i, r in rows_of(A).items()}
    for i, r in rows_of(B).items():
        dod[A.shape[0] + i] = dict(r)
    return DomainMatrix(dod, (A.shape[0] + B.shape[0], A.shape[1]), A.domain)


def span_closure(field: CoefficientField, vectors: DomainMatrix, mats: Sequence[DomainMatrix]) -> DomainMatrix:
    """Row basis of the smallest subspace containing ``vectors`` and stable under v -> v A for A in mats."""
    span = row_basis(vectors) if vectors.shape[0] else vectors
    while True:
        pieces = [span] + [product(span, a) for a in mats]
        grown = row_basis(vstack(field, pieces, vectors.shape[1]))
        if grown.shape[0] == span.shape[0]:
            return grown
        span = grown


def same_row_space(A: DomainMatrix, B: DomainMatrix) -> bool:
    ra, rb = rank(A), rank(B)
    return ra == rb and rank(vstack_like(A, B)) == ra


def solve_rows(B: DomainMatrix, Y: DomainMatrix) -> DomainMatrix:
    """X with X B = Y, for B of full row rank and rows of Y inside its row space."""
    k = B.shape[0]
    if k == 0:
        if not is_zero(Y):
            raise InternalConsistencyError("vector outside the zero subspace")
        return DomainMatrix({}, (Y.shape[0], 0), B.domain)
    _, pivots = row_reduce(B)
    if len(pivots) != k:
        raise InternalConsistencyError("basis rows are linearly dependent")
    square = select_columns(B, pivots)
    X = select_columns(Y, pivots).matmul(sparse(square.inv()))
    if X.matmul(sparse(B)) != sparse(Y):
        raise InternalConsistencyError("vector lies outside the row space of the basis")
    return X


def intertwiners(field: CoefficientField, pairs: Sequence[Tuple[DomainMatrix, DomainMatrix]],
                 nrows: int, ncols: int) -> List[DomainMatrix]:
    """Basis of {X (nrows x ncols) : A X = X B for every (A, B) in pairs}."""
    if nrows == 0 or ncols == 0:
        return []
    block = nrows * ncols
    equations: Dict[int, Dict[int, object]] = {}
    for p_idx, (A, B) in enumerate(pairs):
        offset = p_idx * block
        for i, r in rows_of(A).items():
            for k, a in r.items():
                for j in range(ncols):
                    eq = equations.setdefault(offset + i * ncols + j, {})
                    eq[k * ncols + j] = eq.get(k * ncols + j, field.zero) + a
        for k, r in rows_of(B).items():
            for j, b in r.items():
                for i in range(nrows):
                    eq = equations.setdefault(offset + i * ncols + j, {})
                    eq[i * ncols + k] = eq.get(i * ncols + k, field.zero) - b
    system = from_dod(field, equations, (max(1, len(pairs)) * block, block))
    out = []
    for _, vec in sorted(rows_of(nullspace(system)).items()):
        dod: Dict[int, Dict[int, object]] = {}
        for idx, v in vec.items():
            dod.setdefault(idx // ncols, {})[idx % ncols] = v
        out.append(from_dod(field, dod, (nrows, ncols)))
    return out


def is_invertible(A: DomainMatrix) -> bool:
    n, m = A.shape
    return n == m and rank(A) == n


def inverse(A: DomainMatrix) -> DomainMatrix:
    if A.shape[0] == 0:
        return A
    return sparse(sparse(A).inv())


# ----------------------------------------------------------------------
# Invertible members of a span
# ----------------------------------------------------------------------

def generic_determinant(field: CoefficientField, mats: Sequence[DomainMatrix]) -> Dict[Tuple[int, ...], object]:
    """det(sum_i x_i mats[i]) as {exponent vector: coefficient}.

    Over F_p the exponents are reduced with x^p = x, so the result is zero exactly
    when the determinant vanishes at every point of F_p^k.
    """
    n = mats[0].shape[0]
    if n == 0:
        return {(0,) * len(mats): field.one}
    ring = field.domain.poly_ring(*symbols(f"x0:{len(mats)}"))
    dod: Dict[int, Dict[int, object]] = {}
    for idx, M in enumerate(mats):
        gen = ring.gens[idx]
        for i, r in rows_of(M).items():
            row = dod.setdefault(i, {})
            for j, v in r.items():
                row[j] = row.get(j, ring.zero) + ring.ring.ground_new(v) * gen
    det = DomainMatrix(dod, (n, n), ring).to_dense().det()
    ell = field.characteristic
    terms: Dict[Tuple[int, ...], object] = {}
    for monom, c in det.terms():
        if ell:
            monom = tuple((e - 1) % (ell - 1) + 1 if e else 0 for e in monom)
        terms[monom] = terms.get(monom, field.zero) + c
    return {m: c for m, c in terms.items() if c}


def _specialize(field: CoefficientField, terms: Dict[Tuple[int, ...], object], index: int,
                value) -> Dict[Tuple[int, ...], object]:
    out: Dict[Tuple[int, ...], object] = {}
    for monom, c in terms.items():
        key = monom[:index] + (0,) + monom[index + 1:]
        out[key] = out.get(key, field.zero) + c * value ** monom[index]
    return {m: c for m, c in out.items() if c}


def invertible_combination(field: CoefficientField, mats: Sequence[DomainMatrix], rng: Optional[random.Random] = None,
                           attempts: int = 0) -> Optional[DomainMatrix]:
    """An invertible matrix in the span of ``mats``, or None when the whole span is singular.

    The members themselves and ``attempts`` random combinations are tried first. The
    answer is then decided by the generic determinant: a nonvanishing point of it is
    found one coordinate at a time.
    """
    if not mats or mats[0].shape[0] != mats[0].shape[1]:
        return None
    for M in mats:
        if is_invertible(M):
            return M
    for _ in range(attempts if rng is not None else 0):
        candidate = random_combination(field, mats, rng)
        if is_invertible(candidate):
            return candidate
    terms = generic_determinant(field, mats)
    if not terms:
        return None
    ell = field.characteristic
    values = []
    for index in range(len(mats)):
        degree = max(monom[index] for monom in terms)
        for c in range(ell if ell else degree + 1):
            specialized = _specialize(field, terms, index, field.convert(c))
            if specialized:
                break
        terms = specialized
        values.append(c)
    combination = linear_combination(field, zip(values, mats), mats[0].shape)
    if not is_invertible(combination):
        raise InternalConsistencyError("generic determinant does not vanish but the combination is singular")
    return combination


def restrict_operator(B: DomainMatrix, A: DomainMatrix) -> DomainMatrix:
    """Matrix of v -> v A on the invariant subspace spanned by the rows of B."""
    return solve_rows(B, product(B, A))


def quotient_maps(B: DomainMatrix, n: int) -> Tuple[DomainMatrix, DomainMatrix]:
    """Projection (n x n-k) and section (n-k x n) for the quotient by the row space of B.

    Quotient coordinates sit at the non-pivot columns of the reduced basis.
    """
    K = B.domain
    if B.shape[0] == 0:
        return identity_like(K, n), identity_like(K, n)
    R, pivots = row_reduce(B)
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    position = {j: idx for idx, j in enumerate(free)}
    proj: Dict[int, Dict[int, object]] = {}
    for j in free:
        proj[j] = {position[j]: K.one}
    reduced = rows_of(R)
    for i, p in enumerate(pivots):
        r = {position[f]: -v for f, v in reduced.get(i, {}).items() if f in position}
        if r:
            proj[p] = r
    section = {position[j]: {j: K.one} for j in free}
    return (DomainMatrix(proj, (n, len(free)), K),
            DomainMatrix(section, (len(free), n), K))


# ----------------------------------------------------------------------
# Single-operator structure
# ----------------------------------------------------------------------

def fitting_invertible(A: DomainMatrix) -> DomainMatrix:
    """Basis of the Fitting component of v -> v A on which A is invertible."""
    n = A.shape[0]
    if n == 0:
        return A
    return row_basis(power(A, n))


def fitting_nilpotent(A: DomainMatrix) -> DomainMatrix:
    n = A.shape[0]
    if n == 0:
        return A
    return left_nullspace(power(A, n))


def nilpotency_index(A: DomainMatrix) -> Optional[int]:
    """Smallest k with A^k = 0, or None when A is not nilpotent."""
    n = A.shape[0]
    current = identity_like(A.domain, n)
    for k in range(0, n + 1):
        if is_zero(current):
            return k
        current = current.matmul(sparse(A))
    return None


def charpoly_factors(A: DomainMatrix) -> List[Tuple[List[object], int]]:
    """Irreducible factors (dense coefficient lists, leading first) with multiplicities."""
    return list(sparse(A).charpoly_factor_list())


def evaluate_polynomial(A: DomainMatrix, coefficients: Sequence[object]) -> DomainMatrix:
    n = A.shape[0]
    result = DomainMatrix({}, A.shape, A.domain)
    for c in coefficients:
        result = result.matmul(sparse(A)).add(identity_like(A.domain, n).scalarmul(c))
    return result
