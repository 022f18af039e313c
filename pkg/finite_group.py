"""Finite reductive groups GL_n(F_q) and SL_n(F_q) by exhaustive enumeration.

Group elements are n x n matrices stored as tuples of rows of field codes
(integers 0..q-1). Monomial matrices, the index set of the unipotent Hecke
algebra, get their own hashable type ``Monomial``.
"""

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

import coxeter
from coxeter import Perm, RootDatum, StandardLevi
from errors import ConfigurationError, InternalConsistencyError
from settings import HECKELAB_SIZE_LIMIT, log

Matrix = Tuple[Tuple[int, ...], ...]

SUPPORTED_Q = (2, 3, 4, 5)


# ----------------------------------------------------------------------
# Fields
# ----------------------------------------------------------------------

class FiniteField:
    """F_q for q in {2, 3, 4, 5}; F_4 is F_2[x]/(x^2 + x + 1) with x coded as 2."""

    def __init__(self, q: int) -> None:
        if q not in SUPPORTED_Q:
            raise ConfigurationError(f"field size q={q} not supported; choose one of {SUPPORTED_Q}")
        self.q = q
        self.p = 2 if q == 4 else q
        codes = np.arange(q)
        if q == 4:
            self.add_table = np.bitwise_xor.outer(codes, codes)
            self.mul_table = np.array([[self._gf4_mul(a, b) for b in range(4)] for a in range(4)])
        else:
            self.add_table = np.add.outer(codes, codes) % q
            self.mul_table = np.multiply.outer(codes, codes) % q
        # plain lists for scalar lookups in the enumeration loops
        self._add = self.add_table.tolist()
        self._mul = self.mul_table.tolist()
        self._neg = [int(np.flatnonzero(self.add_table[a] == 0)[0]) for a in range(q)]
        self._inv = [0] + [int(np.flatnonzero(self.mul_table[a] == 1)[0]) for a in range(1, q)]
        self.generator = next(g for g in range(1, q) if len(self._powers(g)) == q - 1)
        self.dlog = {value: k for k, value in enumerate(self._powers(self.generator))}

    @staticmethod
    def _gf4_mul(a: int, b: int) -> int:
        result = 0
        for bit in range(2):
            if b >> bit & 1:
                result ^= a << bit
        if result & 4:
            result ^= 0b111
        return result

    def _powers(self, g: int) -> List[int]:
        out = [1]
        while True:
            nxt = self._mul[out[-1]][g]
            if nxt == 1:
                return out
            out.append(nxt)

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        return self._inv[a]

    def power(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k > 0 else 1
        order = self.q - 1
        return self.power_of_generator(self.dlog[a] * k % order)

    def power_of_generator(self, k: int) -> int:
        value = 1
        for _ in range(k % (self.q - 1)):
            value = self._mul[value][self.generator]
        return value

    @property
    def minus_one(self) -> int:
        return self._neg[1]

    @property
    def units(self) -> List[int]:
        return list(range(1, self.q))

    @cached_property
    def additive_basis(self) -> List[int]:
        """F_p-basis of the additive group."""
        return [1, 2] if self.q == 4 else [1]

    def __repr__(self) -> str:
        return f"FiniteField({self.q})"


# ----------------------------------------------------------------------
# Matrices
# ----------------------------------------------------------------------

def mat_mul(F: FiniteField, A: Matrix, B: Matrix) -> Matrix:
    n = len(A)
    add, mul = F._add, F._mul
    out = []
    for i in range(n):
        row = A[i]
        new_row = []
        for j in range(n):
            acc = 0
            for k in range(n):
                a = row[k]
                if a:
                    b = B[k][j]
                    if b:
                        acc = add[acc][mul[a][b]]
            new_row.append(acc)
        out.append(tuple(new_row))
    return tuple(out)


def mat_identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_det(F: FiniteField, A: Matrix) -> int:
    n = len(A)
    total = 0
    for perm in permutations(range(n)):
        term = 1
        for i in range(n):
            term = F.mul(term, A[i][perm[i]])
            if not term:
                break
        if not term:
            continue
        if coxeter.length(perm) % 2:
            term = F.neg(term)
        total = F.add(total, term)
    return total


def mat_inverse(F: FiniteField, A: Matrix) -> Matrix:
    n = len(A)
    aug = [list(A[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[pivot] = aug[pivot], aug[col]
        scale = F.inv(aug[col][col])
        aug[col] = [F.mul(scale, x) for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [F.add(x, F.neg(F.mul(factor, y))) for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def elementary(n: int, i: int, j: int, c: int) -> Matrix:
    """Root subgroup element x_(i,j)(c) = 1 + c E_ij."""
    return tuple(tuple(1 if r == s else (c if (r, s) == (i, j) else 0) for s in range(n)) for r in range(n))


def diagonal(entries: Sequence[int]) -> Matrix:
    n = len(entries)
    return tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n))


# ----------------------------------------------------------------------
# Monomials: the index set N_G
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Monomial:
    """Monomial matrix with entry ``units[i]`` at ``(perm[i], i)``."""

    perm: Perm
    units: Tuple[int, ...]
    field: FiniteField = field(compare=False, hash=False, repr=False)

    def __mul__(self, other: "Monomial") -> "Monomial":
        F = self.field
        units = tuple(F.mul(self.units[other.perm[j]], other.units[j]) for j in range(len(self.perm)))
        return Monomial(coxeter.compose(self.perm, other.perm), units, F)

    def inverse(self) -> "Monomial":
        F = self.field
        inv = coxeter.invert(self.perm)
        return Monomial(inv, tuple(F.inv(self.units[inv[j]]) for j in range(len(inv))), F)

    @property
    def length(self) -> int:
        return coxeter.length(self.perm)

    @property
    def is_torus(self) -> bool:
        return self.perm == coxeter.identity_perm(len(self.perm))

    def matrix(self) -> Matrix:
        n = len(self.perm)
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[self.perm[i]][i] = self.units[i]
        return tuple(tuple(r) for r in rows)

    @classmethod
    def from_matrix(cls, F: FiniteField, A: Matrix) -> Optional["Monomial"]:
        n = len(A)
        perm, units = [], []
        for i in range(n):
            nonzero = [r for r in range(n) if A[r][i]]
            if len(nonzero) != 1:
                return None
            perm.append(nonzero[0])
            units.append(A[nonzero[0]][i])
        if sorted(perm) != list(range(n)):
            return None
        return cls(tuple(perm), tuple(units), F)

    def sort_key(self) -> tuple:
        return (self.length, coxeter.reduced_word(self.perm), self.perm, self.units)

    def label(self) -> str:
        return f"{list(self.perm)}|{list(self.units)}"


def torus_element(F: FiniteField, units: Sequence[int]) -> Monomial:
    return Monomial(coxeter.identity_perm(len(units)), tuple(units), F)


def simple_lift(F: FiniteField, n: int, k: int) -> Monomial:
    """n_{s_k}: entry 1 at (k-1, k) and -1 at (k, k-1)."""
    units = [1] * n
    units[k - 1] = F.minus_one
    return Monomial(coxeter.simple_reflection(n, k), tuple(units), F)


def torus_generators(F: FiniteField, n: int, family: str) -> List[Monomial]:
    """GL: t_i = diag(g at i). SL: h_i = diag(g at i-1, g^-1 at i). Empty over F_2."""
    if F.q == 2:
        return []
    g = F.generator
    gens = []
    if family == "GL":
        for i in range(n):
            units = [1] * n
            units[i] = g
            gens.append(torus_element(F, units))
    else:
        for i in range(1, n):
            units = [1] * n
            units[i - 1] = g
            units[i] = F.inv(g)
            gens.append(torus_element(F, units))
    return gens


def weyl_lift(F: FiniteField, n: int, w: Perm) -> Monomial:
    """n_w as the product of simple lifts along the lexicographically least reduced word."""
    result = torus_element(F, [1] * n)
    for k in coxeter.reduced_word(w):
        result = result * simple_lift(F, n, k)
    return result


# ----------------------------------------------------------------------
# Abstract finite matrix groups
# ----------------------------------------------------------------------

class FiniteMatrixGroup:
    """An enumerated group of matrices with named generators and BFS words."""

    def __init__(self, F: FiniteField, n: int, elements: Iterable[Matrix], generators: Dict[str, Matrix]) -> None:
        self.field = F
        self.n = n
        identity = mat_identity(n)
        rest = sorted(e for e in set(elements) if e != identity)
        self.elements: List[Matrix] = [identity] + rest
        self.index: Dict[Matrix, int] = {e: i for i, e in enumerate(self.elements)}
        self.generators = {name: g for name, g in generators.items() if g != identity}
        self.identity = identity

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: Matrix) -> bool:
        return g in self.index

    def mul(self, a: Matrix, b: Matrix) -> Matrix:
        return mat_mul(self.field, a, b)

    def inv(self, a: Matrix) -> Matrix:
        return mat_inverse(self.field, a)

    @cached_property
    def word_tree(self) -> List[Tuple[int, Optional[str]]]:
        """For each element index: (parent index, generator name) with g = parent * generator."""
        tree: List[Optional[Tuple[int, Optional[str]]]] = [None] * len(self.elements)
        tree[0] = (0, None)
        queue = deque([0])
        names = sorted(self.generators)
        while queue:
            i = queue.popleft()
            g = self.elements[i]
            for name in names:
                h = self.mul(g, self.generators[name])
                j = self.index.get(h)
                if j is None:
                    raise InternalConsistencyError(f"generator {name} leaves the group")
                if tree[j] is None:
                    tree[j] = (i, name)
                    queue.append(j)
        if any(t is None for t in tree):
            raise InternalConsistencyError("named generators do not generate the group")
        return tree  # type: ignore[return-value]

    def word(self, g: Matrix) -> List[str]:
        i = self.index[g]
        out: List[str] = []
        while i != 0:
            parent, name = self.word_tree[i]
            out.append(name)  # type: ignore[arg-type]
            i = parent
        return list(reversed(out))


def closure(F: FiniteField, n: int, gens: Iterable[Matrix]) -> FrozenSet[Matrix]:
    gens = list(gens)
    seen = {mat_identity(n)}
    queue = deque(seen)
    while queue:
        g = queue.popleft()
        for h in gens:
            x = mat_mul(F, g, h)
            if x not in seen:
                seen.add(x)
                queue.append(x)
    return frozenset(seen)


# ----------------------------------------------------------------------
# BN-pair data of a group or of a standard Levi
# ----------------------------------------------------------------------

class BNPair:
    """Unipotent/torus/monomial data of an enumerated reductive group.

    Serves both the full group (simple indices of the root datum) and a
    standard Levi M_J (simple indices J, unipotent part U cap M).
    """

    def __init__(self, group: FiniteMatrixGroup, datum: RootDatum, unipotent: FrozenSet[Matrix],
                 torus: Sequence[Monomial], monomials: Sequence[Monomial], family: str) -> None:
        self.group = group
        self.field = group.field
        self.datum = datum
        self.unipotent = unipotent
        self.torus = list(torus)
        self.monomials = sorted(monomials, key=Monomial.sort_key)
        self.family = family

    @property
    def n(self) -> int:
        return self.group.n

    def simple_lift(self, k: int) -> Monomial:
        return simple_lift(self.field, self.n, k)

    def weyl_lift(self, w: Perm) -> Monomial:
        return weyl_lift(self.field, self.n, w)

    @cached_property
    def torus_generators(self) -> List[Monomial]:
        return torus_generators(self.field, self.n, self.family)

    def torus_exponents(self, t: Monomial) -> List[int]:
        """Exponents of t in the torus generators (GL: dlogs; SL: partial sums)."""
        F = self.field
        logs = [F.dlog[u] for u in t.units]
        if F.q == 2:
            return []
        if self.family == "GL":
            return logs
        out, running = [], 0
        for i in range(self.n - 1):
            running = (running + logs[i]) % (F.q - 1)
            out.append(running)
        return out

    @cached_property
    def _cells(self) -> Dict[Matrix, Monomial]:
        """Element -> monomial n with the element in U n U."""
        mul = self.group.mul
        table: Dict[Matrix, Monomial] = {}
        ulist = list(self.unipotent)
        for m in self.monomials:
            mm = m.matrix()
            for u in ulist:
                left = mul(u, mm)
                for v in ulist:
                    table[mul(left, v)] = m
        if len(table) != len(self.group):
            raise InternalConsistencyError("U-double cosets do not cover the group")
        return table

    def cell_of(self, g: Matrix) -> Monomial:
        return self._cells[g]

    @cached_property
    def _coset_reps(self) -> Dict[Matrix, Matrix]:
        """Element -> canonical representative (least index) of its right coset U g."""
        mul = self.group.mul
        index = self.group.index
        reps: Dict[Matrix, Matrix] = {}
        for g in self.group.elements:
            if g in reps:
                continue
            orbit = [mul(u, g) for u in self.unipotent]
            rep = min(orbit, key=index.__getitem__)
            for x in orbit:
                reps[x] = rep
        return reps

    def right_coset_rep(self, g: Matrix) -> Matrix:
        return self._coset_reps[g]

    @cached_property
    def right_cosets(self) -> List[Matrix]:
        """Canonical representatives of U backslash G, in group order."""
        reps = set(self._coset_reps.values())
        return sorted(reps, key=self.group.index.__getitem__)

    @cached_property
    def cosets_in_cell(self) -> Dict[Monomial, List[Matrix]]:
        out: Dict[Monomial, List[Matrix]] = {m: [] for m in self.monomials}
        for x in self.right_cosets:
            out[self.cell_of(x)].append(x)
        return out

    def double_coset(self, m: Monomial) -> FrozenSet[Matrix]:
        return frozenset(g for g, cell in self._cells.items() if cell == m)


# ----------------------------------------------------------------------
# The reductive group
# ----------------------------------------------------------------------

def group_order(family: str, n: int, q: int) -> int:
    order = 1
    for i in range(n):
        order *= q ** n - q ** i
    return order // (q - 1) if family == "SL" else order


def parse_group(descriptor: str) -> Tuple[str, int, int]:
    try:
        fam, n, q = descriptor.strip().lower().split(":")
        family = {"gl": "GL", "sl": "SL"}[fam]
        return family, int(n), int(q)
    except (ValueError, KeyError):
        raise ConfigurationError(f"bad group descriptor {descriptor!r}; expected gl:N:Q or sl:N:Q") from None


class FiniteReductiveGroup:
    """GL_n(F_q) or SL_n(F_q) with its BN-pair carriers."""

    def __init__(self, family: str, n: int, q: int) -> None:
        if family not in ("GL", "SL"):
            raise ConfigurationError(f"unknown family {family!r}")
        if n not in (2, 3):
            raise ConfigurationError(f"rank n={n} not supported; choose 2 or 3")
        self.family = family
        self.n = n
        self.field = FiniteField(q)
        self.q = q
        self.p = self.field.p
        self.datum = RootDatum.gl(n)
        order = group_order(family, n, q)
        if order > HECKELAB_SIZE_LIMIT:
            raise ConfigurationError(
                f"|{family}_{n}(F_{q})| = {order} exceeds HECKELAB_SIZE_LIMIT={HECKELAB_SIZE_LIMIT}")
        self.order = order

    @property
    def name(self) -> str:
        return f"{self.family}{self.n}(F{self.q})"

    def descriptor(self) -> str:
        return f"{self.family.lower()}:{self.n}:{self.q}"

    # -- carriers -------------------------------------------------------

    @cached_property
    def group(self) -> FiniteMatrixGroup:
        log("Group", f"enumerating {self.name} ({self.order} elements)")
        elements = self._enumerate()
        if len(elements) != self.order:
            raise InternalConsistencyError(f"enumerated {len(elements)} elements, expected {self.order}")
        return FiniteMatrixGroup(self.field, self.n, elements, self.named_generators(self.datum.simple))

    def _enumerate(self) -> List[Matrix]:
        F, n, q = self.field, self.n, self.q
        vectors = list(product(range(q), repeat=n))
        out: List[Matrix] = []

        def combine(s, c, v):
            return tuple(F.add(x, F.mul(c, y)) for x, y in zip(s, v))

        def extend(rows, span):
            if len(rows) == n:
                out.append(tuple(rows))
                return
            for v in vectors:
                if v in span:
                    continue
                extend(rows + [v], {combine(s, c, v) for s in span for c in range(q)})

        extend([], {tuple([0] * n)})
        if self.family == "SL":
            out = [g for g in out if mat_det(F, g) == 1]
        return out

    def named_generators(self, simple: Iterable[int]) -> Dict[str, Matrix]:
        """Root subgroups of the roots spanned by ``simple``, torus generators, simple lifts."""
        F, n = self.field, self.n
        datum = RootDatum(n, tuple(sorted(simple)))
        gens: Dict[str, Matrix] = {}
        for (i, j) in datum.positive_roots:
            for c in F.additive_basis:
                gens[f"x{i}{j}_{c}"] = elementary(n, i, j, c)
        for idx, t in enumerate(torus_generators(F, n, self.family)):
            gens[f"t{idx + 1}"] = t.matrix()
        for k in datum.simple:
            gens[f"s{k}"] = simple_lift(F, n, k).matrix()
        return gens

    @cached_property
    def unipotent(self) -> FrozenSet[Matrix]:
        return self.unipotent_of(self.datum.positive_roots)

    def unipotent_of(self, roots: Sequence[Tuple[int, int]]) -> FrozenSet[Matrix]:
        """All matrices 1 + sum c_r E_r over the given positive roots (closed sets only)."""
        F, n = self.field, self.n
        roots = list(roots)
        out = set()
        for values in product(range(self.q), repeat=len(roots)):
            rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
            for (i, j), c in zip(roots, values):
                rows[i][j] = c
            out.add(tuple(tuple(r) for r in rows))
        return frozenset(out)

    @cached_property
    def torus(self) -> List[Monomial]:
        F, n = self.field, self.n
        out = []
        for units in product(F.units, repeat=n):
            if self.family == "SL" and _unit_product(F, units) != 1:
                continue
            out.append(torus_element(F, units))
        return out

    @cached_property
    def monomials(self) -> List[Monomial]:
        out = []
        for perm in permutations(range(self.n)):
            w = weyl_lift(self.field, self.n, perm)
            out.extend(t * w for t in self.torus)
        return sorted(out, key=Monomial.sort_key)

    @cached_property
    def bn(self) -> BNPair:
        return BNPair(self.group, self.datum, self.unipotent, self.torus, self.monomials, self.family)

    @cached_property
    def borel(self) -> FrozenSet[Matrix]:
        mul = self.group.mul
        return frozenset(mul(t.matrix(), u) for t in self.torus for u in self.unipotent)

    def _block_of(self, levi: StandardLevi) -> List[int]:
        block = [0] * self.n
        for b_idx, b in enumerate(levi.levi_datum.blocks):
            for i in b:
                block[i] = b_idx
        return block

    def parabolic(self, levi: StandardLevi) -> FrozenSet[Matrix]:
        block = self._block_of(levi)
        return frozenset(g for g in self.group.elements
                         if all(not g[r][c] for r in range(self.n) for c in range(self.n) if block[r] > block[c]))

    def levi_elements(self, levi: StandardLevi) -> FrozenSet[Matrix]:
        block = self._block_of(levi)
        return frozenset(g for g in self.group.elements
                         if all(not g[r][c] for r in range(self.n) for c in range(self.n) if block[r] != block[c]))

    def unipotent_radical(self, levi: StandardLevi) -> FrozenSet[Matrix]:
        return self.unipotent_of(levi.unipotent_roots)

    def opposite_radical(self, levi: StandardLevi) -> FrozenSet[Matrix]:
        return frozenset(tuple(zip(*g)) for g in self.unipotent_radical(levi))

    def levi_unipotent(self, levi: StandardLevi) -> FrozenSet[Matrix]:
        return self.unipotent_of(levi.positive_roots)

    def levi_part(self, levi: StandardLevi, g: Matrix) -> Matrix:
        """Block-diagonal part of g, the Levi projection P_J -> M_J."""
        block = self._block_of(levi)
        return tuple(tuple(g[r][c] if block[r] == block[c] else 0 for c in range(self.n)) for r in range(self.n))

    def levi_monomials(self, levi: StandardLevi) -> List[Monomial]:
        return [m for m in self.monomials if levi.contains(m.perm)]

    @cached_property
    def _levi_bn(self) -> Dict[FrozenSet[int], BNPair]:
        return {}

    def levi_bn(self, levi: StandardLevi) -> BNPair:
        """BN-pair data of M_J with unipotent part U cap M_J."""
        if levi.J not in self._levi_bn:
            group = FiniteMatrixGroup(self.field, self.n, self.levi_elements(levi), self.named_generators(levi.J))
            self._levi_bn[levi.J] = BNPair(group, levi.levi_datum, self.levi_unipotent(levi), self.torus,
                                           self.levi_monomials(levi), self.family)
        return self._levi_bn[levi.J]

    def weyl_lifts(self) -> Dict[Perm, Monomial]:
        return {w: weyl_lift(self.field, self.n, w) for w in self.datum.elements}

    # -- decompositions ---------------------------------------------------

    def double_cosets(self, subgroup: str = "U") -> Dict[object, FrozenSet[Matrix]]:
        """Cells U n U keyed by monomials, or B w B keyed by permutations."""
        cells: Dict[object, set] = {}
        for g in self.group.elements:
            m = self.bn.cell_of(g)
            key = m if subgroup == "U" else m.perm
            cells.setdefault(key, set()).add(g)
        return {k: frozenset(v) for k, v in cells.items()}

    def double_coset_table(self, subgroup: str = "U") -> Dict[str, List[int]]:
        index = self.group.index
        cells = self.double_cosets(subgroup)
        keys = sorted(cells, key=(Monomial.sort_key if subgroup == "U" else
                                  (lambda w: (coxeter.length(w), coxeter.reduced_word(w)))))
        return {str(i): sorted(index[g] for g in cells[k]) for i, k in enumerate(keys)}

    def verify_bruhat_bsbsb(self, k: int) -> bool:
        """B n_s B n_s B equals the disjoint union B n_s B and B."""
        mul = self.group.mul
        s = simple_lift(self.field, self.n, k)
        cells = self.double_cosets("B")
        bsb = cells[s.perm]
        identity = coxeter.identity_perm(self.n)
        reached = {self.bn.cell_of(mul(x, s.matrix())).perm for x in bsb}
        union = set().union(*(cells[w] for w in reached))
        return reached == {identity, s.perm} and union == set(bsb) | set(cells[identity]) and not (bsb & cells[identity])

    def parabolic_coset_reps(self, levi: StandardLevi) -> Dict[Perm, Matrix]:
        """Lifts n_d for d in ^M W; checks G = disjoint union of P n_d U."""
        mul = self.group.mul
        P = self.parabolic(levi)
        N = self.unipotent_radical(levi)
        UM = self.levi_unipotent(levi)
        reps: Dict[Perm, Matrix] = {}
        covered: set = set()
        for d in levi.min_coset_reps:
            nd = weyl_lift(self.field, self.n, d).matrix()
            cell = {mul(mul(p, nd), u) for p in P for u in self.unipotent}
            if covered & cell:
                raise InternalConsistencyError(f"P n_d U cells overlap at d={d}")
            covered |= cell
            nd_inv = self.group.inv(nd)
            conj = {mul(mul(nd, u), nd_inv) for u in self.unipotent}
            lhs = {mul(x, v) for x in (P & conj) for v in N}
            rhs = {mul(x, v) for x in UM for v in N}
            if lhs != rhs:
                raise InternalConsistencyError(f"(P cap n_d U n_d^-1) N differs from (U cap M) N at d={d}")
            reps[d] = nd
        if len(covered) != len(self.group):
            raise InternalConsistencyError("P n_d U cells do not cover the group")
        return reps

    def rank_one_torus(self, k: int) -> FrozenSet[Monomial]:
        """Z'_s: the torus part of the group generated by the root subgroups of +-alpha_k."""
        F, n = self.field, self.n
        i, j = k - 1, k
        gens = [elementary(n, i, j, c) for c in F.additive_basis] + [elementary(n, j, i, c) for c in F.additive_basis]
        rank_one = closure(F, n, gens)
        return frozenset(m for g in rank_one if (m := Monomial.from_matrix(F, g)) is not None and m.is_torus)

    def coroot_image(self, k: int) -> FrozenSet[Monomial]:
        F, n = self.field, self.n
        out = set()
        for a in F.units:
            units = [1] * n
            units[k - 1] = a
            units[k] = F.inv(a)
            out.add(torus_element(F, units))
        return frozenset(out)


def _unit_product(F: FiniteField, units: Iterable[int]) -> int:
    value = 1
    for u in units:
        value = F.mul(value, u)
    return value


def build_group(family: str, n: int, q: int) -> FiniteReductiveGroup:
    return FiniteReductiveGroup(family, n, q)
