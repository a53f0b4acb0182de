"""Analytic factorization in K[[X]][Y] (analytic_factor)."""

from __future__ import annotations

from fractions import Fraction

import pytest

from puiseux.fields import PrimeField, QQ
from puiseux.dynev import TriSet
from puiseux.tpoly import TruncBPoly
from puiseux.anfact import analytic_factor
from puiseux.errors import NotSeparable
from puiseux import upoly as up


def poly(K, dic, prec=64):
    return TruncBPoly.from_dict(TriSet.trivial_over(K), dic, prec)


def items(g, N):
    K = g.J.K
    return {(y, x): c for y, r in enumerate(g.rows)
            for x, c in enumerate(r) if x <= N and c != K.zero}


def reconstructs(F, u, pairs, N):
    J = F.J
    prod = TruncBPoly(J, [list(u)], N + 1)
    for _, g in pairs:
        prod = prod.mul(g if g.prec <= N + 1 else g.truncated(N + 1))
    Fc = F.truncated(N + 1) if F.prec > N + 1 else F
    return prod.sub(Fc).is_zero()


def test_split_known_product():
    K = PrimeField(7)
    F = poly(K, {(2, 0): 1, (0, 1): -1}, 40).mul(
        poly(K, {(1, 0): 1, (0, 0): -1}, 40))
    u, pairs = analytic_factor(F, 8)
    assert u == [K.one]
    got = sorted(sorted(items(g, 8).items()) for _, g in pairs)
    assert got == [sorted({(0, 0): K.from_int(-1), (1, 0): K.one}.items()),
                   sorted({(0, 1): K.from_int(-1), (2, 0): K.one}.items())]
    assert reconstructs(F, u, pairs, 8)


def test_irreducible_single_factor():
    K = PrimeField(7)
    F = poly(K, {(2, 0): 1, (0, 1): -1}, 40)
    u, pairs = analytic_factor(F, 6)
    assert u == [K.one] and len(pairs) == 1
    assert items(pairs[0][1], 6) == {(2, 0): K.one, (0, 1): K.from_int(-1)}
    assert reconstructs(F, u, pairs, 6)


def test_quartic_splits_into_two_quadratics():
    # Y^4 + (Y - X^2)^2 factors as G*H with G(0,Y) = Y^2 + 1 and
    # H(0,Y) = Y^2; the split is invisible in any single Newton polygon
    F = poly(QQ, {(4, 0): 1, (2, 0): 1, (1, 2): -2, (0, 4): 1}, 120)
    u, pairs = analytic_factor(F, 20)
    assert u == [Fraction(1)]
    assert sorted(g.deg_y for _, g in pairs) == [2, 2]
    faces = sorted([r[0] for r in g.rows] for _, g in pairs)
    assert faces == [[Fraction(0), Fraction(0), Fraction(1)],
                     [Fraction(1), Fraction(0), Fraction(1)]]
    assert reconstructs(F, u, pairs, 20)


def test_lift_coherence_under_increasing_precision():
    F = poly(QQ, {(4, 0): 1, (2, 0): 1, (1, 2): -2, (0, 4): 1}, 120)
    _, lo = analytic_factor(F, 10)
    _, hi = analytic_factor(F, 20)
    for (_, a), (_, b) in zip(lo, hi):
        assert a.sub(b.truncated(11)).is_zero()


def test_pole_class_gives_reciprocal_monic_factor():
    # X Y^2 + Y + 1: one finite root and one escaping to Y = infinity;
    # the infinity factor has constant term 1 at X = 0 and the unit series
    # u absorbs the leading-coefficient mismatch
    K = PrimeField(7)
    F = poly(K, {(2, 1): 1, (1, 0): 1, (0, 0): 1}, 40)
    u, pairs = analytic_factor(F, 6)
    assert u[0] == K.one and len(u) > 1
    degs = sorted(g.deg_y for _, g in pairs)
    assert degs == [1, 1]
    shapes = sorted((g.rows[0][0], g.rows[1][0]) for _, g in pairs)
    assert shapes == [(K.one, K.zero), (K.one, K.one)]
    assert reconstructs(F, u, pairs, 6)


def test_x_content_moves_into_u():
    K = PrimeField(7)
    F = poly(K, {(2, 1): 1, (0, 2): -1}, 40)    # X * (Y^2 - X)
    u, pairs = analytic_factor(F, 6)
    assert u == [K.zero, K.one] and len(pairs) == 1
    assert items(pairs[0][1], 6) == {(2, 0): K.one, (0, 1): K.from_int(-1)}
    assert reconstructs(F, u, pairs, 6)


def test_refine_hook_splits_joined_factors():
    # (Y^2 - X)(Y^2 - 4X): the polygon keeps the non-conjugate pair
    # {Y^2 = X, Y^2 = 4X} joined over reducible T^2 - 5T + 4, so the
    # default factorization is F itself; a univariate factorization
    # oracle refines it into the two true quadratics
    K = PrimeField(101)
    F = poly(K, {(4, 0): 1, (2, 1): -5, (0, 2): 4}, 80)
    u, pairs = analytic_factor(F, 8)
    assert len(pairs) == 1 and pairs[0][1].deg_y == 4
    assert pairs[0][0].dp == 2
    assert reconstructs(F, u, pairs, 8)

    def oracle(p):
        # brute-force root search: enough to split any quadratic over F_101
        roots = [a for a in range(101) if up.eval_at(p, K.from_int(a), K) == K.zero]
        assert len(roots) == len(p) - 1, "expected a split quadratic"
        return [[K.from_int(-a), K.one] for a in roots]

    u2, pairs2 = analytic_factor(F, 8, refine=oracle)
    assert [g.deg_y for _, g in pairs2] == [2, 2]
    assert all(J.dp == 1 for J, _ in pairs2)
    got = sorted(sorted(items(g, 8).items()) for _, g in pairs2)
    assert got == [sorted({(2, 0): K.one, (0, 1): K.from_int(-4)}.items()),
                   sorted({(2, 0): K.one, (0, 1): K.from_int(-1)}.items())]
    assert reconstructs(F, u2, pairs2, 8)


def test_not_separable_rejected():
    K = PrimeField(7)
    with pytest.raises(NotSeparable):
        analytic_factor(poly(K, {(2, 0): 1, (1, 1): -2, (0, 2): 1}, 40), 4)
