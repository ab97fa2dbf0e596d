"""Blocks: integral Weyl subsystems, antidominant normal forms, singularity data.

For an antidominant weight mu, the block data is the integral subsystem
Phi_mu = {alpha : <mu, alpha^vee> in Z}, its simple system Delta_mu (the
indecomposable integral positive roots), the singularity set
J = {delta in Delta_mu : <mu, delta^vee> = 0}, and the reflection subgroup
W_mu realized inside the ambient Weyl group.  Every weight nu has a unique
antidominant representative mu = w^{-1} nu with w a minimal-length coset
representative modulo W_J.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from jantzen.roots import RootSystem, Weight, is_antidominant
from jantzen.weyl import CoxeterSystem, WeylElem, reflection_elem


class DefectError(RuntimeError):
    """A structural invariant failed; results would not be trustworthy."""


def _integral_positive_indices(rs: RootSystem, w: Weight) -> tuple[int, ...]:
    out = []
    for i, coroot in enumerate(rs.coroots):
        p = sum(k * c for k, c in zip(coroot, w.coords))
        if Fraction(p).denominator == 1:
            out.append(i)
    return tuple(out)


def _indecomposables(rs: RootSystem, pos_idx) -> tuple[int, ...]:
    vecs = {rs.positive_roots[i] for i in pos_idx}
    simple = []
    for i in pos_idx:
        alpha = rs.positive_roots[i]
        decomposable = False
        for beta in vecs:
            gamma = tuple(a - b for a, b in zip(alpha, beta))
            if gamma != alpha and gamma in vecs:
                decomposable = True
                break
        if not decomposable:
            simple.append(i)
    simple.sort(
        key=lambda i: (
            sum(rs.positive_roots[i]),
            tuple(-x for x in rs.positive_roots[i]),
        )
    )
    return tuple(simple)


def _validate_subsystem(rs: RootSystem, simple_idx, pos_idx) -> None:
    """Root-system axioms for the integral subsystem; defect on failure."""
    simples = [rs.positive_roots[i] for i in simple_idx]
    pos_vecs = [rs.positive_roots[i] for i in pos_idx]
    pos_set = set(pos_vecs)
    # every integral positive root is a nonnegative integer combination of
    # the indecomposables
    for vec in pos_vecs:
        coeffs = _express(simples, vec)
        if coeffs is None or any(
            c.denominator != 1 or c < 0 for c in coeffs
        ):
            raise DefectError(
                f"integral root {vec} is not a nonnegative integer "
                f"combination of the indecomposables {simples}"
            )
    # the simple reflections permute the subsystem
    for srv in simples:
        s = reflection_elem(rs, srv)
        for vec in pos_vecs:
            img = s.apply_root(vec)
            if img not in pos_set and tuple(-c for c in img) not in pos_set:
                raise DefectError(
                    f"reflection in {srv} does not preserve the integral "
                    f"subsystem (moved {vec} to {img})"
                )


def _express(basis_vecs, target):
    """Exact coefficients of target in the given independent vectors, or None."""
    n = len(target)
    cols = len(basis_vecs)
    aug = [
        [Fraction(basis_vecs[j][i]) for j in range(cols)] + [Fraction(target[i])]
        for i in range(n)
    ]
    row = 0
    pivots = []
    for col in range(cols):
        piv = next((r for r in range(row, n) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for r in range(n):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    for r in range(row, n):
        if aug[r][cols] != 0:
            return None
    coeffs = [Fraction(0)] * cols
    for r, col in enumerate(pivots):
        coeffs[col] = aug[r][cols]
    return coeffs


@dataclass(frozen=True)
class Block:
    """An antidominant weight together with its integral Weyl group data."""

    rs: RootSystem
    mu: Weight
    system: CoxeterSystem
    J: tuple[int, ...]

    @property
    def delta_roots(self) -> tuple[tuple[int, ...], ...]:
        return self.system.simple_roots

    def coset_reps(self) -> tuple[WeylElem, ...]:
        return self.system.min_coset_reps(self.J).reps

    def is_rep(self, w: WeylElem) -> bool:
        return self.system.is_min_coset_rep(w, self.J)

    def apply(self, w: WeylElem) -> Weight:
        return w.apply(self.mu)

    def same_block(self, other: "Block") -> bool:
        return self.rs is other.rs and self.mu == other.mu


def integral_block(rs: RootSystem, mu: Weight) -> Block:
    """Block data for an antidominant weight; rejects other weights."""
    if len(mu.coords) != rs.rank:
        raise ValueError(
            f"weight has {len(mu.coords)} coordinates, expected {rs.rank}"
        )
    if not is_antidominant(rs, mu):
        raise ValueError(
            f"{mu.serialize()} is not antidominant; use normalize() to reach "
            "the antidominant representative first"
        )
    pos_idx = _integral_positive_indices(rs, mu)
    simple_idx = _indecomposables(rs, pos_idx)
    _validate_subsystem(rs, simple_idx, pos_idx)
    system = CoxeterSystem(rs, simple_idx, pos_idx)
    J = tuple(
        i
        for i, vec in enumerate(system.simple_roots)
        if sum(k * c for k, c in zip(rs.coroot_of(vec), mu.coords)) == 0
    )
    return Block(rs=rs, mu=mu, system=system, J=J)


def normalize(rs: RootSystem, nu: Weight) -> tuple[Block, WeylElem]:
    """Antidominant representative of nu and the minimal w with w(mu) = nu."""
    if len(nu.coords) != rs.rank:
        raise ValueError(
            f"weight has {len(nu.coords)} coordinates, expected {rs.rank}"
        )
    pos_idx = _integral_positive_indices(rs, nu)
    simple_idx = _indecomposables(rs, pos_idx)
    simples = [rs.positive_roots[i] for i in simple_idx]
    coroots = [rs.coroots[i] for i in simple_idx]
    refls = [reflection_elem(rs, vec) for vec in simples]

    cur = nu
    w = None
    changed = True
    while changed:
        changed = False
        for vec, coroot, s in zip(simples, coroots, refls):
            p = sum(k * c for k, c in zip(coroot, cur.coords))
            if p > 0:
                cur = s.apply(cur)
                w = s if w is None else w * s
                changed = True
                break
    block = integral_block(rs, cur)
    if w is None:
        return block, block.system.identity
    y, _ = block.system.decompose_yx(w, block.J)
    if y.apply(block.mu) != nu:
        raise DefectError("normalization did not reproduce the input weight")
    return block, y


def phi_plus_count(rs: RootSystem, nu: Weight) -> int:
    """|{alpha > 0 : <nu, alpha^vee> is a positive integer}|."""
    count = 0
    for coroot in rs.coroots:
        p = sum(k * c for k, c in zip(coroot, nu.coords))
        if p > 0 and Fraction(p).denominator == 1:
            count += 1
    return count
