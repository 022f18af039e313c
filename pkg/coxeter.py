"""Root data and (affine) Weyl group combinatorics for type A.

Weyl elements are permutation tuples with ``w[i]`` the image of ``i``.
The simple reflection ``s_k`` swaps ``k-1`` and ``k``; the root ``(i, j)``
stands for ``e_i - e_j`` and is positive when ``i < j``.
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from errors import ConfigurationError, PreconditionError

Perm = Tuple[int, ...]
Root = Tuple[int, int]

CARTAN_TYPES: Dict[str, Tuple[int, Tuple[int, ...]]] = {
    "A1": (2, (1,)),
    "A2": (3, (1, 2)),
    "A1xA1": (4, (1, 3)),
}


# ----------------------------------------------------------------------
# Permutations
# ----------------------------------------------------------------------

def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(a: Perm, b: Perm) -> Perm:
    """The permutation ``a o b``."""
    return tuple(a[i] for i in b)


def invert(w: Perm) -> Perm:
    inv = [0] * len(w)
    for i, image in enumerate(w):
        inv[image] = i
    return tuple(inv)


def simple_reflection(n: int, k: int) -> Perm:
    w = list(range(n))
    w[k - 1], w[k] = w[k], w[k - 1]
    return tuple(w)


def length(w: Perm) -> int:
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def act_on_root(w: Perm, root: Root) -> Root:
    return (w[root[0]], w[root[1]])


def is_positive_root(root: Root) -> bool:
    return root[0] < root[1]


def negate_root(root: Root) -> Root:
    return (root[1], root[0])


def reduced_word(w: Perm) -> List[int]:
    """Lexicographically smallest reduced word ``[k1, ..., km]`` with ``w = s_k1 ... s_km``."""
    word: List[int] = []
    current = w
    n = len(w)
    while True:
        inv = invert(current)
        descent = next((k for k in range(1, n) if inv[k - 1] > inv[k]), None)
        if descent is None:
            return word
        word.append(descent)
        current = compose(simple_reflection(n, descent), current)


def from_word(n: int, word: Iterable[int]) -> Perm:
    w = identity_perm(n)
    for k in word:
        w = compose(w, simple_reflection(n, k))
    return w


def right_descents(w: Perm) -> List[int]:
    """Indices k with length(w s_k) < length(w)."""
    return [k for k in range(1, len(w)) if w[k - 1] > w[k]]


def root_pairing(a: Root, b: Root) -> int:
    """<a, b^vee> for type A roots, the dot product in the e-basis."""
    va = _root_vector(a, max(a + b) + 1)
    vb = _root_vector(b, max(a + b) + 1)
    return sum(x * y for x, y in zip(va, vb))


def _root_vector(root: Root, n: int) -> List[int]:
    v = [0] * n
    v[root[0]] += 1
    v[root[1]] -= 1
    return v


def dot(vector: Sequence[int], root: Root) -> int:
    return vector[root[0]] - vector[root[1]]


# ----------------------------------------------------------------------
# Root data and Levis
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class RootDatum:
    """Split type-A root datum on the GL_n coordinate lattice.

    ``simple`` lists the indices k of the simple reflections; each maximal run
    of consecutive indices spans one irreducible block.
    """

    n: int
    simple: Tuple[int, ...]

    @classmethod
    def of_type(cls, cartan_type: str) -> "RootDatum":
        key = cartan_type.replace("×", "x")
        if key not in CARTAN_TYPES:
            raise ConfigurationError(f"unsupported Cartan type {cartan_type!r}")
        n, simple = CARTAN_TYPES[key]
        return cls(n, simple)

    @classmethod
    def gl(cls, n: int) -> "RootDatum":
        return cls(n, tuple(range(1, n)))

    @cached_property
    def blocks(self) -> Tuple[Tuple[int, ...], ...]:
        out: List[Tuple[int, ...]] = []
        current = [0]
        for i in range(1, self.n):
            if i in self.simple:
                current.append(i)
            else:
                out.append(tuple(current))
                current = [i]
        out.append(tuple(current))
        return tuple(out)

    @property
    def rank(self) -> int:
        return len(self.simple)

    @cached_property
    def cartan_type(self) -> str:
        parts = [f"A{len(b) - 1}" for b in self.blocks if len(b) > 1]
        return "x".join(parts) if parts else "A0"

    def simple_root(self, k: int) -> Root:
        return (k - 1, k)

    @cached_property
    def simple_roots(self) -> Tuple[Root, ...]:
        return tuple(self.simple_root(k) for k in self.simple)

    @cached_property
    def positive_roots(self) -> Tuple[Root, ...]:
        return tuple((i, j) for b in self.blocks for i in b for j in b if i < j)

    @cached_property
    def roots(self) -> Tuple[Root, ...]:
        return self.positive_roots + tuple(negate_root(r) for r in self.positive_roots)

    @cached_property
    def pairing(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(root_pairing(a, b) for b in self.simple_roots) for a in self.simple_roots)

    @cached_property
    def affine_simple_roots(self) -> Tuple[Tuple[Root, int], ...]:
        """Simple roots at level 0 and, per block, the lowest root at level 1."""
        lowest = tuple(((b[-1], b[0]), 1) for b in self.blocks if len(b) > 1)
        return tuple((r, 0) for r in self.simple_roots) + lowest

    def simple_index_of(self, root: Root) -> int:
        if root[1] == root[0] + 1 and root[1] in self.simple:
            return root[1]
        raise ValueError(f"{root} is not a simple root")

    def contains(self, w: Perm) -> bool:
        return len(w) == self.n and all(set(w[i] for i in b) == set(b) for b in self.blocks)

    @cached_property
    def elements(self) -> Tuple[Perm, ...]:
        blockwise = [list(permutations(b)) for b in self.blocks]
        out = []
        for choice in product(*blockwise):
            w = [0] * self.n
            for b, images in zip(self.blocks, choice):
                for i, image in zip(b, images):
                    w[i] = image
            out.append(tuple(w))
        return tuple(sorted(out, key=lambda w: (length(w), reduced_word(w))))

    @cached_property
    def longest(self) -> Perm:
        w = list(range(self.n))
        for b in self.blocks:
            for i, image in zip(b, reversed(b)):
                w[i] = image
        return tuple(w)

    def to_json(self) -> dict:
        return {"type": self.cartan_type, "rank": self.rank, "n": self.n,
                "simple": list(self.simple), "pairing": [list(r) for r in self.pairing]}


@dataclass(frozen=True)
class StandardLevi:
    """Standard Levi of a root datum, given by a subset J of the simple indices."""

    datum: RootDatum
    J: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not set(self.J) <= set(self.datum.simple):
            raise PreconditionError(f"J={sorted(self.J)} is not a subset of {list(self.datum.simple)}")

    @classmethod
    def of(cls, datum: RootDatum, J: Iterable[int]) -> "StandardLevi":
        return cls(datum, frozenset(J))

    @cached_property
    def levi_datum(self) -> RootDatum:
        return RootDatum(self.datum.n, tuple(sorted(self.J)))

    @property
    def is_full(self) -> bool:
        return set(self.J) == set(self.datum.simple)

    @property
    def is_torus(self) -> bool:
        return not self.J

    @cached_property
    def positive_roots(self) -> Tuple[Root, ...]:
        return self.levi_datum.positive_roots

    @cached_property
    def unipotent_roots(self) -> Tuple[Root, ...]:
        """Sigma^+ minus Sigma_J^+, the roots of the unipotent radical."""
        inside = set(self.positive_roots)
        return tuple(r for r in self.datum.positive_roots if r not in inside)

    def contains(self, w: Perm) -> bool:
        return self.levi_datum.contains(w)

    @cached_property
    def weyl_elements(self) -> Tuple[Perm, ...]:
        return self.levi_datum.elements

    @cached_property
    def longest(self) -> Perm:
        return self.levi_datum.longest

    @cached_property
    def min_coset_reps(self) -> Tuple[Perm, ...]:
        """^M W: the d with d^{-1}(alpha) > 0 for all alpha in J, ordered by (length, word)."""
        out = []
        for d in self.datum.elements:
            inv = invert(d)
            if all(is_positive_root(act_on_root(inv, self.datum.simple_root(k))) for k in self.J):
                out.append(d)
        return tuple(out)

    @cached_property
    def max_side_reps(self) -> Tuple[Perm, ...]:
        """W^M = (^M W)^{-1}, minimal representatives of left cosets w W_J."""
        return tuple(invert(d) for d in self.min_coset_reps)

    def split_right(self, w: Perm) -> Tuple[Perm, Perm]:
        """(m, d) with w = m d, m in W_J and d in ^M W."""
        for d in self.min_coset_reps:
            m = compose(w, invert(d))
            if self.contains(m):
                return m, d
        raise ValueError(f"{w} has no right coset representative")

    def split_left(self, w: Perm) -> Tuple[Perm, Perm]:
        """(e, m) with w = e m, e in W^M and m in W_J."""
        for e in self.max_side_reps:
            m = compose(invert(e), w)
            if self.contains(m):
                return e, m
        raise ValueError(f"{w} has no left coset representative")

    @cached_property
    def conjugate(self) -> "StandardLevi":
        """The Levi M' = w M w^{-1} for the longest element w, given by -w(J)."""
        w0 = self.datum.longest
        image = set()
        for k in self.J:
            root = negate_root(act_on_root(w0, self.datum.simple_root(k)))
            image.add(self.datum.simple_index_of(root))
        return StandardLevi(self.datum, frozenset(image))

    def describe(self) -> str:
        return "{" + ",".join(str(k) for k in sorted(self.J)) + "}"


def all_levis(datum: RootDatum) -> List[StandardLevi]:
    simple = list(datum.simple)
    out = []
    for mask in range(1 << len(simple)):
        out.append(StandardLevi(datum, frozenset(k for i, k in enumerate(simple) if mask >> i & 1)))
    return out


# ----------------------------------------------------------------------
# Affine roots and the extended affine Weyl group
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class AffineRoot:
    root: Root
    level: int

    @property
    def is_positive(self) -> bool:
        return self.level > 0 or (self.level == 0 and is_positive_root(self.root))


@dataclass(frozen=True)
class AffineWeylElement:
    """w0 o t_lambda acting on affine roots; (perm, translation) with integer translation."""

    perm: Perm
    translation: Tuple[int, ...]

    def __mul__(self, other: "AffineWeylElement") -> "AffineWeylElement":
        shifted = tuple(self.translation[other.perm[j]] + other.translation[j] for j in range(len(self.perm)))
        return AffineWeylElement(compose(self.perm, other.perm), shifted)

    def inverse(self) -> "AffineWeylElement":
        inv = invert(self.perm)
        return AffineWeylElement(inv, tuple(-self.translation[inv[j]] for j in range(len(inv))))

    def act(self, a: AffineRoot) -> AffineRoot:
        return affine_action(self.translation, self.perm, a)


def affine_action(translation: Sequence[int], perm: Perm, a: AffineRoot) -> AffineRoot:
    """(alpha, r) -> (w0(alpha), r + <lambda, alpha>)."""
    return AffineRoot(act_on_root(perm, a.root), a.level + dot(translation, a.root))


def is_levi_positive(translation: Sequence[int], perm: Perm, levi: StandardLevi) -> bool:
    if not levi.contains(perm):
        raise PreconditionError(f"finite part {perm} is not in W_J for J={levi.describe()}")
    return all(dot(translation, r) >= 0 for r in levi.unipotent_roots)


def is_levi_negative(translation: Sequence[int], perm: Perm, levi: StandardLevi) -> bool:
    if not levi.contains(perm):
        raise PreconditionError(f"finite part {perm} is not in W_J for J={levi.describe()}")
    return all(dot(translation, r) <= 0 for r in levi.unipotent_roots)
