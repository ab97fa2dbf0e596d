"""Weyl group elements as exact integer matrices; lengths, Bruhat order, cosets.

A group element stores two integer action matrices: ``wt`` acts on weight
coordinates, ``rt`` on root coordinates.  Identity is matrix equality, so
braid-equivalent words collapse automatically.  A ``CoxeterSystem`` is a
reflection subsystem of an ambient root system (the full system, or the
integral subsystem of a block) with its own simple roots, length function
(inversion count over the subsystem) and Bruhat order; Kazhdan-Lusztig
combinatorics runs against this interface without caring which case it is.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from jantzen.roots import RootSystem, Weight

MAX_GROUP_ORDER = 1152


class CapExceededError(ValueError):
    """Group enumeration would exceed the supported order cap."""


def _matmul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _matvec(m, v):
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in m)


def _identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


class WeylElem:
    """One Weyl group element; equality and hashing use the weight action."""

    __slots__ = ("wt", "rt")

    def __init__(self, wt, rt):
        self.wt = wt
        self.rt = rt

    def __mul__(self, other: "WeylElem") -> "WeylElem":
        return WeylElem(_matmul(self.wt, other.wt), _matmul(self.rt, other.rt))

    def __eq__(self, other):
        return isinstance(other, WeylElem) and self.wt == other.wt

    def __hash__(self):
        return hash(self.wt)

    def apply(self, w: Weight) -> Weight:
        return Weight(_matvec(self.wt, w.coords))

    def apply_root(self, vec) -> tuple[int, ...]:
        return _matvec(self.rt, tuple(vec))

    def is_identity(self) -> bool:
        return self.wt == _identity_matrix(len(self.wt))

    def inverse(self) -> "WeylElem":
        return WeylElem(_int_inverse(self.wt), _int_inverse(self.rt))

    def __repr__(self):
        return f"WeylElem({self.wt})"


def _int_inverse(mat):
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
    out = []
    for row in aug:
        vals = row[n:]
        if any(v.denominator != 1 for v in vals):
            raise AssertionError("matrix inverse is not integral")
        out.append(tuple(int(v) for v in vals))
    return tuple(out)


def identity_elem(rank: int) -> WeylElem:
    m = _identity_matrix(rank)
    return WeylElem(m, m)


def reflection_elem(rs: RootSystem, root_vec) -> WeylElem:
    """The reflection in a (positive) root, as exact matrices."""
    n = rs.rank
    rc = tuple(root_vec)
    coroot = rs.coroot_of(rc)
    wc = rs.root_to_weight_coords(rc)
    wt = tuple(
        tuple((1 if i == j else 0) - wc[i] * coroot[j] for j in range(n))
        for i in range(n)
    )
    kc = tuple(
        sum(coroot[j] * rs.cartan[j][l] for j in range(n)) for l in range(n)
    )
    rt = tuple(
        tuple((1 if i == j else 0) - rc[i] * kc[j] for j in range(n))
        for i in range(n)
    )
    return WeylElem(wt, rt)


def _first_nonzero(vec):
    for v in vec:
        if v != 0:
            return v
    return 0


@dataclass(frozen=True)
class CosetData:
    """Minimal-length coset representatives for a standard parabolic W_J."""

    J: tuple[int, ...]
    reps: tuple[WeylElem, ...]


class CoxeterSystem:
    """A finite reflection subsystem with Coxeter-group combinatorics.

    ``simple_idx`` and ``pos_idx`` index into the ambient positive-root list.
    Lengths are inversion counts over ``pos_idx``; words are over the local
    generator indices (0-based internally, 1-based in serialized form).
    """

    def __init__(self, rs: RootSystem, simple_idx, pos_idx):
        self.rs = rs
        self.simple_idx = tuple(simple_idx)
        self.pos_idx = tuple(sorted(pos_idx))
        self.simple_roots = tuple(rs.positive_roots[i] for i in self.simple_idx)
        self.gens = tuple(
            reflection_elem(rs, rs.positive_roots[i]) for i in self.simple_idx
        )
        self.identity = identity_elem(rs.rank)
        self._pos_vecs = tuple(rs.positive_roots[i] for i in self.pos_idx)
        self._lengths: dict[WeylElem, int] = {}
        self._info = None  # elem -> (index, length, word, inverse)
        self._order_list = None
        self._downsets = None
        self._coxeter_matrix = None

    # -- basic structure ---------------------------------------------------

    @property
    def num_gens(self) -> int:
        return len(self.gens)

    def length(self, w: WeylElem) -> int:
        got = self._lengths.get(w)
        if got is None:
            got = sum(
                1
                for vec in self._pos_vecs
                if _first_nonzero(w.apply_root(vec)) < 0
            )
            self._lengths[w] = got
        return got

    def right_descent(self, w: WeylElem, i: int) -> bool:
        """True iff l(w s_i) < l(w)."""
        return _first_nonzero(w.apply_root(self.simple_roots[i])) < 0

    def first_right_descent(self, w: WeylElem):
        for i in range(self.num_gens):
            if self.right_descent(w, i):
                return i
        return None

    def element_from_word(self, word) -> WeylElem:
        out = self.identity
        for i in word:
            if not 0 <= i < self.num_gens:
                raise ValueError(f"generator index {i} out of range")
            out = out * self.gens[i]
        return out

    def coxeter_matrix(self) -> tuple[tuple[int, ...], ...]:
        if self._coxeter_matrix is None:
            k = self.num_gens
            mat = [[1] * k for _ in range(k)]
            for i in range(k):
                for j in range(k):
                    if i == j:
                        continue
                    prod = self.gens[i] * self.gens[j]
                    power = prod
                    order = 1
                    while not power.is_identity():
                        power = power * prod
                        order += 1
                        if order > 6:
                            raise AssertionError("generator product order > 6")
                    mat[i][j] = order
            self._coxeter_matrix = tuple(tuple(row) for row in mat)
        return self._coxeter_matrix

    # -- enumeration ---------------------------------------------------------

    def _enumerate(self):
        if self._info is not None:
            return
        info = {self.identity: (0, 0, (), self.identity)}
        order_list = [self.identity]
        frontier = [self.identity]
        while frontier:
            new = []
            for w in frontier:
                w_idx, w_len, w_word, w_inv = info[w]
                for i in range(self.num_gens):
                    u = w * self.gens[i]
                    if u in info:
                        continue
                    u_len = self.length(u)
                    if u_len != w_len + 1:
                        continue
                    if len(info) >= MAX_GROUP_ORDER:
                        raise CapExceededError(
                            f"group order exceeds cap {MAX_GROUP_ORDER}"
                        )
                    info[u] = (
                        len(info),
                        u_len,
                        w_word + (i,),
                        self.gens[i] * w_inv,
                    )
                    order_list.append(u)
                    new.append(u)
            frontier = new
        self._info = info
        self._order_list = order_list

    def elements(self) -> tuple[WeylElem, ...]:
        self._enumerate()
        return tuple(self._order_list)

    def order(self) -> int:
        return len(self.elements())

    def index(self, w: WeylElem) -> int:
        self._enumerate()
        return self._info[w][0]

    def word(self, w: WeylElem) -> tuple[int, ...]:
        """A canonical reduced word (from the deterministic enumeration)."""
        self._enumerate()
        return self._info[w][2]

    def inverse(self, w: WeylElem) -> WeylElem:
        self._enumerate()
        rec = self._info.get(w)
        return rec[3] if rec is not None else w.inverse()

    def contains(self, w: WeylElem) -> bool:
        self._enumerate()
        return w in self._info

    def sort_key(self, w: WeylElem):
        return (self.length(w), self.word(w))

    def reflections(self) -> tuple[WeylElem, ...]:
        return tuple(reflection_elem(self.rs, vec) for vec in self._pos_vecs)

    # -- Bruhat order ----------------------------------------------------------

    def _build_downsets(self):
        if self._downsets is not None:
            return
        self._enumerate()
        refl = self.reflections()
        els = sorted(self._order_list, key=lambda w: self._info[w][1])
        downsets = {}
        for w in els:
            bits = 1 << self._info[w][0]
            lw = self._info[w][1]
            for t in refl:
                u = w * t
                if self.length(u) < lw:
                    bits |= downsets[u]
            downsets[w] = bits
        self._downsets = downsets

    def bruhat_leq(self, x: WeylElem, w: WeylElem) -> bool:
        self._build_downsets()
        return bool(self._downsets[w] >> self._info[x][0] & 1)

    def bruhat_interval_below(self, w: WeylElem) -> list[WeylElem]:
        """All x <= w, sorted by (length, word)."""
        self._build_downsets()
        bits = self._downsets[w]
        out = [
            u
            for u in self._order_list
            if bits >> self._info[u][0] & 1
        ]
        out.sort(key=self.sort_key)
        return out

    # -- cosets ---------------------------------------------------------------

    def min_coset_reps(self, J) -> CosetData:
        """Minimal-length representatives of W / W_J."""
        J = tuple(sorted(J))
        reps = [
            w
            for w in self.elements()
            if not any(self.right_descent(w, j) for j in J)
        ]
        reps.sort(key=self.sort_key)
        return CosetData(J=J, reps=tuple(reps))

    def is_min_coset_rep(self, w: WeylElem, J) -> bool:
        return not any(self.right_descent(w, j) for j in J)

    def decompose_yx(self, w: WeylElem, J) -> tuple[WeylElem, WeylElem]:
        """w = y x with y in W^J, x in W_J, lengths adding."""
        x = self.identity
        v = w
        changed = True
        while changed:
            changed = False
            for j in J:
                if self.right_descent(v, j):
                    v = v * self.gens[j]
                    x = self.gens[j] * x
                    changed = True
                    break
        return v, x

    def subgroup_elements(self, I) -> tuple[WeylElem, ...]:
        """All elements of the standard parabolic subgroup W_I, by length."""
        I = tuple(I)
        seen = {self.identity}
        frontier = [self.identity]
        out = [self.identity]
        while frontier:
            new = []
            for w in frontier:
                for i in I:
                    u = w * self.gens[i]
                    if u not in seen:
                        if len(seen) >= MAX_GROUP_ORDER:
                            raise CapExceededError(
                                f"subgroup order exceeds cap {MAX_GROUP_ORDER}"
                            )
                        seen.add(u)
                        out.append(u)
                        new.append(u)
            frontier = new
        out.sort(key=lambda w: (self.length(w), w.wt))
        return tuple(out)

    def longest_element(self, I=None) -> WeylElem:
        """Longest element of W_I (of the whole group when I is None)."""
        if I is None:
            I = range(self.num_gens)
        I = tuple(I)
        w = self.identity
        changed = True
        while changed:
            changed = False
            for i in I:
                if not self.right_descent(w, i):
                    w = w * self.gens[i]
                    changed = True
        return w

    def upper_coset_membership(self, w: WeylElem, I, J) -> bool:
        """True iff w lies in {}^I W^J: w in W^J and left multiplication by
        each generator in I lengthens w and stays inside W^J."""
        if not self.is_min_coset_rep(w, J):
            return False
        lw = self.length(w)
        for i in I:
            u = self.gens[i] * w
            if self.length(u) != lw + 1:
                return False
            if not self.is_min_coset_rep(u, J):
                return False
        return True


_weyl_groups: dict = {}


def weyl_group(rs: RootSystem) -> CoxeterSystem:
    """The ambient Weyl group as a CoxeterSystem (cached per type)."""
    key = rs.lie_type
    got = _weyl_groups.get(key)
    if got is None:
        got = CoxeterSystem(
            rs, rs.simple_indices, tuple(range(len(rs.positive_roots)))
        )
        _weyl_groups[key] = got
    return got


def format_word(word) -> str:
    """Serialize a word as 1-based space-separated generator indices."""
    return " ".join(str(i + 1) for i in word)


def parse_word(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "e"):
        return ()
    try:
        out = tuple(int(p) - 1 for p in text.split())
    except ValueError as exc:
        raise ValueError(f"cannot parse word {text!r}") from exc
    if any(i < 0 for i in out):
        raise ValueError(f"word indices must be >= 1: {text!r}")
    return out
