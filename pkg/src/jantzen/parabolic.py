"""Parabolic Verma modules: double-coset parameters, layers, character check.

Fix a subset I of the ambient simple roots, all of which must be integral
for the block.  Parabolic Vermas in the block of mu are parametrized by
highest weights w_I w mu with w in {}^I W^J, the set of w in W^J such that
left multiplication by each generator in I lengthens w and stays inside
W^J; this set can be empty.  Simple quotients in the parabolic category
carry the same parameters, so both row and column labels below live in
{}^I W^J.

The graded layer combination is

    n_{z,w}(q) = sum_{u in W_I} (-1)^{l(u)} Q(w_I z, u w_I w)(q)

computed in the integral Weyl group, where Q(x, v) = P(w0 v, w0 x) is
the inverse Kazhdan-Lusztig polynomial (the multiplicity polynomial of
the ordinary radical filtration), with layer j of the module at w
reading the coefficient of q^((l(w) - l(z) - j)/2).  Any negative
coefficient is a hard convention defect.  Two independent validations are
provided: a signed superposition of ordinary layer tables with grading
shifts, and an exact character check (Weyl group alternating sum for the
Levi highest-weight module, convolved with the partition function of the
nilradical complement, against the alternating sum of ordinary Verma
characters).
"""

from __future__ import annotations

from dataclasses import dataclass

from jantzen.blocks import Block, DefectError
from jantzen.filtration import _boxes, layers
from jantzen.kl import KLTable, table_for
from jantzen.poly import Poly
from jantzen.roots import Weight, partition_count
from jantzen.weyl import WeylElem


class ConventionDefectError(DefectError):
    """The graded alternating-sum formula produced a negative multiplicity."""


@dataclass(frozen=True)
class ParabolicBlock:
    """Block data refined by a choice of integral ambient simple roots I."""

    block: Block
    ambient_I: tuple[int, ...]  # 0-based ambient simple indices
    I: tuple[int, ...]  # generator indices in the block system
    wI: WeylElem
    reps: tuple[WeylElem, ...]  # {}^I W^J

    def highest_weight(self, w: WeylElem) -> Weight:
        return (self.wI * w).apply(self.block.mu)


def enumerate_IWJ(block: Block, ambient_I) -> ParabolicBlock:
    """Exact filter for {}^I W^J; validates I against the block's simples."""
    rs = block.rs
    sys = block.system
    ambient_I = tuple(sorted(set(int(i) for i in ambient_I)))
    local = []
    for i in ambient_I:
        if not 0 <= i < rs.rank:
            raise ValueError(f"simple index {i + 1} out of range for {rs.lie_type}")
        alpha = tuple(1 if k == i else 0 for k in range(rs.rank))
        try:
            local.append(sys.simple_roots.index(alpha))
        except ValueError:
            raise ValueError(
                f"alpha_{i + 1} is not integral for this block; "
                "I must consist of ambient simple roots that are also "
                "simple for the block"
            ) from None
    I = tuple(local)
    wI = sys.longest_element(I)
    reps = tuple(
        w for w in block.coset_reps() if sys.upper_coset_membership(w, I, block.J)
    )
    return ParabolicBlock(block=block, ambient_I=ambient_I, I=I, wI=wI, reps=reps)


@dataclass
class ParabolicLayerTable:
    """Radical layers of one parabolic Verma module.

    rows[j] maps z in {}^I W^J to the multiplicity of the simple with
    highest weight w_I z mu in layer j.
    """

    pblock: ParabolicBlock
    w: WeylElem
    columns: tuple[WeylElem, ...]
    rows: tuple[dict, ...]
    n_polys: dict

    @property
    def loewy_length(self) -> int:
        last = max((j for j, row in enumerate(self.rows) if row), default=-1)
        return last + 1

    def mult(self, j: int, z: WeylElem) -> int:
        if 0 <= j < len(self.rows):
            return self.rows[j].get(z, 0)
        return 0

    def validate(self) -> None:
        sys = self.pblock.block.system
        if len(self.rows) != sys.length(self.w) + 1:
            raise DefectError("row count must be l(w) + 1")
        if self.rows[0] != {self.w: 1}:
            raise DefectError("layer 0 must be the module's own parameter")


def parabolic_layers(
    pblock: ParabolicBlock, w: WeylElem, table: KLTable | None = None
) -> ParabolicLayerTable:
    """Layer table of the parabolic Verma with highest weight w_I w mu."""
    block = pblock.block
    sys = block.system
    if w not in pblock.reps:
        raise ValueError("w is not an upper coset representative for (I, J)")
    if table is None:
        table = table_for(sys)
    wI = pblock.wI
    wIw = wI * w
    signs = [
        (u, -1 if sys.length(u) % 2 else 1) for u in sys.subgroup_elements(pblock.I)
    ]
    lw = sys.length(w)
    n_polys = {}
    rows: list[dict] = [dict() for _ in range(lw + 1)]
    for z in sys.elements():
        if sys.length(z) > lw:
            continue
        if not sys.upper_coset_membership(z, pblock.I, ()):
            continue
        wIz = wI * z
        n = Poly()
        for u, sign in signs:
            target = u * wIw
            if sys.bruhat_leq(wIz, target):
                n = n + sign * table.inverse_polynomial(wIz, target)
        if n.is_zero():
            continue
        if z not in pblock.reps:
            continue  # column killed by translation onto the singular weight
        n_polys[z] = n
        base = lw - sys.length(z)
        for k, c in enumerate(n.coeffs):
            if c == 0:
                continue
            if c < 0:
                raise ConventionDefectError(
                    f"negative graded multiplicity {c} at q^{k} for column "
                    f"of length {sys.length(z)} under w of length {lw}"
                )
            j = base - 2 * k
            if j < 0:
                raise ConventionDefectError(
                    "layer index underflow in the graded alternating sum"
                )
            rows[j][z] = rows[j].get(z, 0) + c
    columns = tuple(sorted({z for row in rows for z in row}, key=sys.sort_key))
    return ParabolicLayerTable(
        pblock=pblock, w=w, columns=columns, rows=tuple(rows), n_polys=n_polys
    )


def parabolic_layers_dual_path(
    pblock: ParabolicBlock, w: WeylElem, table: KLTable | None = None
) -> ParabolicLayerTable:
    """Same table assembled from ordinary layer tables with grading shifts.

    The term for u in W_I contributes the layer table of the ordinary Verma
    at u w_I w, placed at radical offset l(u) with sign (-1)^l(u).  The
    superposition must be supported on layers 0..l(w) and on columns w_I z
    with z in {}^I W^J, with everything else cancelling; violations raise,
    which makes this an independent cross-check of parabolic_layers.
    """
    block = pblock.block
    sys = block.system
    if w not in pblock.reps:
        raise ValueError("w is not an upper coset representative for (I, J)")
    wI = pblock.wI
    lw = sys.length(w)
    span = lw + sys.length(wI)
    acc: list[dict] = [dict() for _ in range(span + 1)]
    for u in sys.subgroup_elements(pblock.I):
        sign = -1 if sys.length(u) % 2 else 1
        shift = sys.length(u)
        target = u * wI * w
        if not sys.is_min_coset_rep(target, block.J):
            raise DefectError(
                "composite parameter is not minimal in its coset modulo W_J"
            )
        tab = layers(block, target, table)
        for j2, row in enumerate(tab.rows):
            j = j2 + shift
            for x, c in row.items():
                acc[j][x] = acc[j].get(x, 0) + sign * c
    rows: list[dict] = [dict() for _ in range(lw + 1)]
    for j, row in enumerate(acc):
        for x, c in row.items():
            if c == 0:
                continue
            if j > lw:
                raise ConventionDefectError(
                    "uncancelled contribution beyond the layer range"
                )
            z = wI * x
            if z not in pblock.reps:
                raise ConventionDefectError(
                    "uncancelled multiplicity outside the parabolic column set"
                )
            if c < 0:
                raise ConventionDefectError(
                    "negative multiplicity in the signed superposition"
                )
            rows[j][z] = c
    columns = tuple(sorted({z for row in rows for z in row}, key=sys.sort_key))
    return ParabolicLayerTable(
        pblock=pblock, w=w, columns=columns, rows=tuple(rows), n_polys={}
    )


@dataclass
class CharCheckResult:
    pblock: ParabolicBlock
    w: WeylElem
    depth: int
    passed: bool
    rows: tuple[tuple[tuple[int, ...], int, int], ...]  # (beta, lhs, rhs)


def parabolic_character_check(
    pblock: ParabolicBlock, w: WeylElem, depth: int
) -> CharCheckResult:
    """Compare ch of the parabolic Verma two ways, on offsets of height <= depth.

    Left side: Weyl character of the finite-dimensional Levi module with
    highest weight (w_I w mu) - rho, expanded by the Levi partition
    function, convolved with the partition function over positive roots
    outside the Levi.  Right side: the alternating sum over W_I of full
    Verma characters.  Offsets beta are root coordinates measured down
    from (w_I w mu) - rho.
    """
    block = pblock.block
    rs = block.rs
    sys = block.system
    if w not in pblock.reps:
        raise ValueError("w is not an upper coset representative for (I, J)")
    lam = pblock.highest_weight(w)

    levi_pos = [
        i
        for i, vec in enumerate(rs.positive_roots)
        if all(vec[k] == 0 for k in range(rs.rank) if k not in pblock.ambient_I)
    ]
    nil_pos = [i for i in range(len(rs.positive_roots)) if i not in levi_pos]
    for i in pblock.ambient_I:
        if int(lam.coords[i]) != lam.coords[i] or lam.coords[i] < 1:
            raise DefectError(
                "highest weight is not dominant regular on the Levi simples"
            )

    # rho_I only enters through differences u(x) - x with u in the Levi
    # Weyl group, so coordinates off I are irrelevant; pairing 1 on I.
    rho_I = Weight(
        tuple(1 if k in pblock.ambient_I else 0 for k in range(rs.rank))
    )
    xi = Weight(tuple(c - 1 for c in lam.coords))  # lam - rho
    base = xi + rho_I

    levi_shifts = []
    verma_shifts = []
    for u in sys.subgroup_elements(pblock.I):
        sign = -1 if sys.length(u) % 2 else 1
        for source, out in ((base, levi_shifts), (lam, verma_shifts)):
            diff = source - u.apply(source)
            rc = rs.weight_to_root_coords(diff.coords)
            if any(c.denominator != 1 for c in rc):
                raise DefectError("orbit difference is not in the root lattice")
            out.append((sign, tuple(int(c) for c in rc)))

    def levi_dim(gamma) -> int:
        total = 0
        for sign, d in levi_shifts:
            arg = tuple(g - s for g, s in zip(gamma, d))
            if any(a < 0 for a in arg):
                continue
            total += sign * partition_count(rs, arg, levi_pos)
        return total

    rows = []
    passed = True
    for beta in _boxes(rs.rank, depth):
        lhs = 0
        for gamma in _sub_boxes(beta):
            fdim = levi_dim(gamma)
            if fdim:
                rest = tuple(b - g for b, g in zip(beta, gamma))
                lhs += fdim * partition_count(rs, rest, nil_pos)
        rhs = 0
        for sign, d in verma_shifts:
            arg = tuple(b - s for b, s in zip(beta, d))
            if any(a < 0 for a in arg):
                continue
            rhs += sign * partition_count(rs, arg)
        if lhs != rhs:
            passed = False
        rows.append((beta, lhs, rhs))
    return CharCheckResult(
        pblock=pblock, w=w, depth=depth, passed=passed, rows=tuple(rows)
    )


def _sub_boxes(beta):
    out = [()]
    for b in beta:
        out = [prefix + (v,) for prefix in out for v in range(b + 1)]
    return out
