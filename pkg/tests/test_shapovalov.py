"""First-principles contravariant-form oracle: Chevalley bases, PBW
straightening, deformed Gram matrices, Smith normal form over Q[t], and the
comparison against the layer-table predictions.

The deformation direction is rho: the Gram entries are polynomials in t
with h_k acting on the highest weight by <nu - rho, alpha_k^vee> + t.
Everything below is exact; no floats anywhere.
"""

from fractions import Fraction

import pytest

from jantzen.poly import Poly
from jantzen.roots import LieType, Weight, build_root_system
from jantzen.shapovalov import (
    DegenerateFormError,
    DepthCapError,
    PBWEngine,
    UnsupportedTypeError,
    chevalley_basis,
    depth_cap,
    gram_matrix,
    jantzen_dims_from_gram,
    oracle_compare,
    smith_normal_form,
    weight_space_basis,
)

T = Poly.x()
ONE = Poly.const(1)


def _rs(name):
    return build_root_system(LieType.parse(name))


def test_depth_caps():
    assert depth_cap(LieType.parse("A1")) == 8
    assert depth_cap(LieType.parse("A2")) == 5
    assert depth_cap(LieType.parse("B2")) == 4
    # everything else uses the default straightening budget
    assert depth_cap(LieType.parse("C3")) == 3
    assert depth_cap(LieType.parse("A3")) == 3


def test_unsupported_types_raise():
    for name in ("G2", "B3", "D4"):
        with pytest.raises(UnsupportedTypeError):
            chevalley_basis(LieType.parse(name))


def test_supported_types_build():
    for name in ("A1", "A2", "A3", "B2", "C3"):
        cb = chevalley_basis(LieType.parse(name))
        assert cb.num_positive == len(cb.rs.positive_roots)
        assert cb.rank == cb.rs.rank


def test_sigma_swaps_raising_and_lowering():
    cb = chevalley_basis(LieType.parse("B2"))
    for b in range(cb.num_positive):
        assert cb.sigma(cb.f(b)) == cb.e(b)
        assert cb.sigma(cb.e(b)) == cb.f(b)
    for k in range(cb.rank):
        assert cb.sigma(cb.h(k)) == cb.h(k)


def test_sl2_structure_constants():
    cb = chevalley_basis(LieType.parse("A1"))
    e, f, h = cb.e(0), cb.f(0), cb.h(0)
    assert cb.bracket(e, f) == {h: 1}
    assert cb.bracket(h, e) == {e: 2}
    assert cb.bracket(h, f) == {f: -2}
    assert cb.bracket(f, e) == {h: -1}


def test_cartan_pairing_of_e_f_is_the_coroot():
    # [e_b, f_b] must expand in the h_k with the simple-coroot coefficients
    # of the b-th positive coroot; this pins the normalization for long
    # and short roots at once.
    for name in ("A1", "A2", "B2", "C3"):
        rs = _rs(name)
        cb = chevalley_basis(LieType.parse(name))
        for b, coroot in enumerate(rs.coroots):
            want = {cb.h(k): c for k, c in enumerate(coroot) if c != 0}
            assert cb.bracket(cb.e(b), cb.f(b)) == want, (name, b)


def test_antisymmetry_of_brackets():
    cb = chevalley_basis(LieType.parse("A2"))
    dim = 2 * cb.num_positive + cb.rank
    for i in range(dim):
        for j in range(dim):
            lhs = cb.bracket(i, j)
            rhs = {g: -c for g, c in cb.bracket(j, i).items()}
            assert lhs == rhs, (i, j)


def test_pbw_normal_form_sl2():
    cb = chevalley_basis(LieType.parse("A1"))
    eng = PBWEngine(cb)
    e, f, h = cb.e(0), cb.f(0), cb.h(0)
    # e f = f e + h
    assert eng.normal_form((e, f)) == {(f, e): 1, (h,): 1}
    # already ordered words are fixed
    assert eng.normal_form((f, h, e)) == {(f, h, e): 1}
    # e h = h e - 2 e
    assert eng.normal_form((e, h)) == {(h, e): 1, (e,): -2}


def test_weight_space_basis_matches_kostant_partitions():
    rs = _rs("A2")
    # beta = alpha1 + alpha2: either the height-two root or alpha1, alpha2
    assert weight_space_basis(rs, (1, 1)) == ((0, 1), (2,))
    # beta = 2 alpha1 + alpha2
    assert weight_space_basis(rs, (2, 1)) == ((0, 0, 1), (0, 2))
    # empty offset has the empty word only
    assert weight_space_basis(rs, (0, 0)) == ((),)


def test_sl2_gram_closed_forms():
    cb = chevalley_basis(LieType.parse("A1"))
    basis, mat = gram_matrix(cb, Weight.of(1), (1,))
    assert basis == ((0,),)
    assert mat == [[T]]
    basis, mat = gram_matrix(cb, Weight.of(1), (2,))
    # (f^2 v, f^2 v) = 2t^2 - 2t at nu = (1): vanishes at t = 0 to order 1
    assert mat == [[Poly((0, -2, 2))]]
    basis, mat = gram_matrix(cb, Weight.of(0), (1,))
    assert mat == [[T - ONE]]


def test_a2_gram_and_dims():
    cb = chevalley_basis(LieType.parse("A2"))
    basis, mat = gram_matrix(cb, Weight.of(1, 1), (1, 1))
    assert basis == ((0, 1), (2,))
    assert mat == [
        [Poly((0, 1, 1)), Poly((0, -1))],
        [Poly((0, -1)), Poly((0, 2))],
    ]
    snf = smith_normal_form(mat)
    assert snf == (T, Poly((0, Fraction(1, 2), 1)))
    # both invariant factors vanish at t = 0 to order exactly 1: the
    # Jantzen filtration has a two-dimensional first slice here and stops
    assert jantzen_dims_from_gram(mat) == (2,)


def test_gram_is_symmetric():
    cb = chevalley_basis(LieType.parse("B2"))
    eng = PBWEngine(cb)
    for beta in ((1, 1), (2, 1), (1, 2), (2, 2)):
        _, mat = gram_matrix(cb, Weight.of(1, 1), beta, eng)
        for i in range(len(mat)):
            for j in range(len(mat)):
                assert mat[i][j] == mat[j][i]


def test_smith_normal_form_examples():
    # 3x3 with nontrivial chain: 1 | t-1 | t^2-1
    m = [
        [T - ONE, ONE, -ONE],
        [Poly(), T, -ONE],
        [Poly(), -ONE, T],
    ]
    assert smith_normal_form(m) == (ONE, T - ONE, Poly((-1, 0, 1)))
    # coprime diagonal collapses to 1 | t(t+1)
    m = [[T, Poly()], [Poly(), T + ONE]]
    assert smith_normal_form(m) == (ONE, Poly((0, 1, 1)))
    # rank-one polynomial matrix: zero factor comes last
    m = [[T, T], [T, T]]
    assert smith_normal_form(m) == (T, Poly())
    # constant matrices only see rank over Q[t]
    rows = ((2, 1, 0, 0), (1, 2, 1, 0), (0, 1, 2, 1), (0, 1, 2, 1))
    m = [[Poly.const(v) for v in row] for row in rows]
    assert smith_normal_form(m) == (ONE, ONE, ONE, Poly())


def test_smith_normal_form_divisibility_chain():
    m = [
        [T * T, T, ONE],
        [T, T * T, T],
        [ONE, T, T * T],
    ]
    factors = smith_normal_form(m)
    for a, b in zip(factors, factors[1:]):
        if a.is_zero():
            assert b.is_zero()
        elif not b.is_zero():
            assert b.divmod(a)[1].is_zero()


def test_jantzen_dims_from_valuations():
    m = [[T, Poly()], [Poly(), T * T * T]]
    # valuations (1, 3): one vector survives past levels 2 and 3
    assert jantzen_dims_from_gram(m) == (2, 1, 1)
    m = [[ONE, Poly()], [Poly(), ONE]]
    assert jantzen_dims_from_gram(m) == ()


def test_degenerate_form_raises():
    with pytest.raises(DegenerateFormError):
        jantzen_dims_from_gram([[Poly(), Poly()], [Poly(), Poly()]])
    with pytest.raises(DegenerateFormError):
        jantzen_dims_from_gram([[T, T], [T, T]])


def test_oracle_small_cases_pass():
    cases = [
        ("A1", ("1",), 4),
        ("A1", ("0",), 4),
        ("A1", ("-1/2",), 4),
        ("A2", ("1", "1"), 2),
        ("B2", ("1", "1"), 2),
    ]
    for name, coords, depth in cases:
        rs = _rs(name)
        nu = Weight(tuple(Fraction(c) for c in coords))
        rep = oracle_compare(rs, nu, depth)
        assert rep.passed, (name, coords, rep.failures)
        assert rep.failures == ()
        assert rep.spaces > 0 and rep.comparisons >= rep.spaces


def test_oracle_depth_cap_enforced():
    rs = _rs("A1")
    with pytest.raises(DepthCapError):
        oracle_compare(rs, Weight.of(1), 99)
    rs = _rs("C3")
    with pytest.raises(DepthCapError):
        oracle_compare(rs, Weight.of(-1, -1, -1), 4)
