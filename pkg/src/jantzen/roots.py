"""Root systems, exact weights, and Kostant partition counts.

All arithmetic is exact.  Roots and coroots are integer vectors in the
simple-root and simple-coroot bases; a weight is a vector of rationals in
the pairing basis, ``coords[i] = <lambda, alpha_i^vee>``.  Bourbaki
numbering fixes the Cartan matrices, with the convention
``cartan[i][j] = <alpha_j, alpha_i^vee>``, so ``rho`` is the all-ones
weight and the reflection in ``alpha_i`` subtracts ``coords[i]`` times the
i-th Cartan column.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

_VALID_RANK = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}

_POSITIVE_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


@dataclass(frozen=True)
class LieType:
    series: str
    rank: int

    def __post_init__(self):
        check = _VALID_RANK.get(self.series)
        if check is None or not isinstance(self.rank, int) or not check(self.rank):
            raise ValueError(f"invalid Lie type {self.series}{self.rank}")

    @classmethod
    def parse(cls, text: str) -> "LieType":
        text = text.strip()
        if len(text) < 2:
            raise ValueError(f"cannot parse Lie type {text!r}")
        try:
            return cls(text[0].upper(), int(text[1:]))
        except ValueError as exc:
            raise ValueError(f"cannot parse Lie type {text!r}") from exc

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"


def _cartan_matrix(t: LieType) -> tuple[tuple[int, ...], ...]:
    n = t.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i: int, j: int) -> None:
        a[i][j] = -1
        a[j][i] = -1

    if t.series in ("A", "B", "C"):
        for i in range(n - 1):
            bond(i, i + 1)
        if t.series == "B" and n >= 2:
            a[n - 1][n - 2] = -2  # alpha_n short
        if t.series == "C" and n >= 2:
            a[n - 2][n - 1] = -2  # alpha_n long
    elif t.series == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 3, n - 1)
    elif t.series == "E":
        edges = [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]
        if n >= 7:
            edges.append((5, 6))
        if n == 8:
            edges.append((6, 7))
        for i, j in edges:
            bond(i, j)
    elif t.series == "F":
        for i in range(3):
            bond(i, i + 1)
        a[2][1] = -2  # alpha_3 short
    elif t.series == "G":
        a[0][1] = -3  # alpha_1 short
        a[1][0] = -1
    return tuple(tuple(row) for row in a)


def _close_roots(cartan) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Reflection closure of the simple (root, coroot) pairs."""
    n = len(cartan)
    start = [
        (tuple(1 if k == i else 0 for k in range(n)),) * 2 for i in range(n)
    ]
    seen = {pair[0]: pair[1] for pair in start}
    frontier = [pair[0] for pair in start]
    while frontier:
        new = []
        for root in frontier:
            coroot = seen[root]
            for i in range(n):
                pr = sum(root[k] * cartan[i][k] for k in range(n))
                r2 = tuple(
                    c - (pr if k == i else 0) for k, c in enumerate(root)
                )
                pc = sum(coroot[j] * cartan[j][i] for j in range(n))
                c2 = tuple(
                    c - (pc if k == i else 0) for k, c in enumerate(coroot)
                )
                if r2 not in seen:
                    seen[r2] = c2
                    new.append(r2)
                elif seen[r2] != c2:
                    raise AssertionError("inconsistent coroot closure")
        frontier = new
    # ordering: by height, then leftmost support first, so the simple roots
    # appear as alpha_1..alpha_n in Bourbaki order
    return sorted(
        ((r, c) for r, c in seen.items() if all(x >= 0 for x in r)),
        key=lambda rc: (sum(rc[0]), tuple(-x for x in rc[0])),
    )


class RootSystem:
    """Immutable root-system data for one finite type."""

    def __init__(self, lie_type: LieType):
        self.lie_type = lie_type
        self.cartan = _cartan_matrix(lie_type)
        pairs = _close_roots(self.cartan)
        self.positive_roots = tuple(r for r, _ in pairs)
        self.coroots = tuple(c for _, c in pairs)
        expected = _POSITIVE_COUNT[lie_type.series](lie_type.rank)
        if len(self.positive_roots) != expected:
            raise AssertionError(
                f"{lie_type}: got {len(self.positive_roots)} positive roots, "
                f"expected {expected}"
            )
        self._index = {r: i for i, r in enumerate(self.positive_roots)}
        self.simple_indices = tuple(
            self._index[tuple(1 if k == i else 0 for k in range(self.rank))]
            for i in range(self.rank)
        )
        self._partition_caches: dict = {}
        self._inv_cartan = None

    @property
    def rank(self) -> int:
        return len(self.cartan)

    def __repr__(self):
        return f"RootSystem({self.lie_type})"

    def root_index(self, vec) -> int:
        vec = tuple(vec)
        if vec in self._index:
            return self._index[vec]
        raise ValueError(f"{vec} is not a positive root of {self.lie_type}")

    def is_root(self, vec) -> bool:
        vec = tuple(vec)
        return vec in self._index or tuple(-c for c in vec) in self._index

    def coroot_of(self, vec) -> tuple[int, ...]:
        """Coroot coordinates of a (positive or negative) root."""
        vec = tuple(vec)
        if vec in self._index:
            return self.coroots[self._index[vec]]
        neg = tuple(-c for c in vec)
        if neg in self._index:
            return tuple(-c for c in self.coroots[self._index[neg]])
        raise ValueError(f"{vec} is not a root of {self.lie_type}")

    def root_to_weight_coords(self, vec) -> tuple[int, ...]:
        """Pairings of a root-lattice vector against all simple coroots."""
        n = self.rank
        return tuple(
            sum(self.cartan[i][k] * vec[k] for k in range(n)) for i in range(n)
        )

    def weight_to_root_coords(self, coords) -> tuple[Fraction, ...]:
        """Solve cartan @ x = coords exactly (valid for root-lattice vectors)."""
        if self._inv_cartan is None:
            self._inv_cartan = _invert(self.cartan)
        n = self.rank
        return tuple(
            sum(self._inv_cartan[i][k] * Fraction(coords[k]) for k in range(n))
            for i in range(n)
        )


def _invert(mat):
    n = len(mat)
    aug = [
        [Fraction(mat[i][j]) for j in range(n)]
        + [Fraction(1 if j == i else 0) for j in range(n)]
        for i in range(n)
    ]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


@lru_cache(maxsize=None)
def build_root_system(lie_type: LieType) -> RootSystem:
    return RootSystem(lie_type)


@dataclass(frozen=True)
class Weight:
    """A weight in the pairing basis: coords[i] = <lambda, alpha_i^vee>."""

    coords: tuple[Fraction, ...]

    @classmethod
    def of(cls, *values) -> "Weight":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def parse(cls, text: str) -> "Weight":
        try:
            return cls(tuple(Fraction(p.strip()) for p in text.split(",")))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse weight {text!r}") from exc

    def serialize(self) -> str:
        return ",".join(str(c) for c in self.coords)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def __rmul__(self, scalar) -> "Weight":
        return Weight(tuple(Fraction(scalar) * a for a in self.coords))


def rho(rs: RootSystem) -> Weight:
    return Weight(tuple(Fraction(1) for _ in range(rs.rank)))


def pairing(rs: RootSystem, w: Weight, root) -> Fraction:
    """<w, root^vee> for any root of the system."""
    coroot = rs.coroot_of(root)
    return sum(
        (k * c for k, c in zip(coroot, w.coords)), start=Fraction(0)
    )


def reflect(rs: RootSystem, w: Weight, root) -> Weight:
    """s_root(w) = w - <w, root^vee> root."""
    p = pairing(rs, w, root)
    wc = rs.root_to_weight_coords(tuple(root))
    return Weight(tuple(c - p * x for c, x in zip(w.coords, wc)))


def is_antidominant(rs: RootSystem, w: Weight) -> bool:
    """True iff <w, alpha^vee> is not a positive integer for every alpha > 0.

    The check runs over all positive roots, not only the simple ones; for
    nonintegral weights the two conditions differ.
    """
    for coroot in rs.coroots:
        p = sum(k * c for k, c in zip(coroot, w.coords))
        if p > 0 and Fraction(p).denominator == 1:
            return False
    return True


def partition_count(rs: RootSystem, beta, root_indices=None) -> int:
    """Number of multiset decompositions of beta into the given positive roots."""
    beta = tuple(int(b) for b in beta)
    if len(beta) != rs.rank:
        raise ValueError(f"expected {rs.rank} coordinates, got {len(beta)}")
    if any(b < 0 for b in beta):
        return 0
    if root_indices is None:
        root_indices = tuple(range(len(rs.positive_roots)))
    else:
        root_indices = tuple(sorted(root_indices))
    roots = [rs.positive_roots[i] for i in root_indices]
    memo = rs._partition_caches.setdefault(root_indices, {})

    def count(vec, i):
        if all(v == 0 for v in vec):
            return 1
        if i == len(roots):
            return 0
        key = (vec, i)
        if key in memo:
            return memo[key]
        total = 0
        cur = vec
        while True:
            total += count(cur, i + 1)
            nxt = tuple(a - b for a, b in zip(cur, roots[i]))
            if any(c < 0 for c in nxt):
                break
            cur = nxt
        memo[key] = total
        return total

    return count(beta, 0)


def kostant_partition(rs: RootSystem, beta) -> int:
    """Kostant partition function: Verma weight multiplicity at depth beta."""
    beta = tuple(int(b) for b in beta)
    if any(b < 0 for b in beta):
        raise ValueError(f"beta must be a nonnegative root-lattice vector: {beta}")
    return partition_count(rs, beta)


def height_vectors(rank: int, max_height: int):
    """All nonnegative integer vectors with 1 <= sum <= max_height, sorted."""
    out = []

    def rec(prefix, remaining):
        if len(prefix) == rank:
            if sum(prefix) >= 1:
                out.append(tuple(prefix))
            return
        for v in range(remaining + 1):
            rec(prefix + [v], remaining - v)

    rec([], max_height)
    out.sort(key=lambda v: (sum(v), v))
    return out
