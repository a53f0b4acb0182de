"""Divide-and-conquer expansion (monic_rnp3) and the general entry (rnp3)."""

from __future__ import annotations

from fractions import Fraction

import pytest

from puiseux.fields import PrimeField, QQ
from puiseux.dynev import TriSet
from puiseux.tpoly import TruncBPoly, eval_param
from puiseux.expand import monic_rnp3, rnp3
from puiseux.errors import PrecisionTooLow


def triv(K):
    return TriSet.trivial_over(K)


def tups(out):
    return sorted((R.e, R.f, R.r, R.v) for _, rs in out for R in rs)


def resid(F, R, N):
    Fc = F if F.J == R.owner else F.cast(R.owner)
    _, cs = eval_param(Fc, R.gamma, R.e, R.gamma_pairs(), N)
    return cs


def test_monic_below_cutoff():
    # degree 3 < cutoff goes straight to the polygon recursion; n = 1
    # already certifies both singular parts
    K = PrimeField(7)
    J = triv(K)
    F = TruncBPoly.from_dict(J, {(2, 0): 1, (0, 1): -1}, 9).mul(
        TruncBPoly.from_dict(J, {(1, 0): 1, (0, 0): -1}, 9))
    out = monic_rnp3(F, [K.zero, K.one], 1)
    assert len(out) == 1 and out[0][0] == (0, 1)
    assert tups(out) == [(1, 1, 0, 0), (2, 1, 1, Fraction(1, 2))]


def test_monic_forced_lift():
    # Y^4 + (Y - X^2)^2: the pair Y = +-i has v = 0, the cluster
    # X^2 +- i X^4 has v = 4 = eta/3, so one Hensel lift is forced and the
    # cluster's v must be corrected through val G(S)
    K = PrimeField(101)
    J = triv(K)
    F = TruncBPoly.from_dict(J, {(4, 0): 1, (2, 0): 1, (1, 2): -2,
                                 (0, 4): 1}, 40)
    st = {}
    out = monic_rnp3(F, [K.zero, K.one], 12, base_cutoff=3, stats=st)
    assert tups(out) == [(1, 2, 0, 0), (1, 2, 4, Fraction(4))]
    assert len(st["lifts"]) >= 1 and st["max_depth"] == 1
    for _, rs in out:
        for R in rs:
            assert R.prec == 12 - R.v
            assert resid(F, R, 12) == []


def test_monic_window_too_small():
    # at n = 3 the cluster (r/e = 4) cannot be certified on either side of
    # the split, so the class count comes up short
    K = PrimeField(101)
    J = triv(K)
    F = TruncBPoly.from_dict(J, {(4, 0): 1, (2, 0): 1, (1, 2): -2,
                                 (0, 4): 1}, 40)
    with pytest.raises(PrecisionTooLow):
        monic_rnp3(F, [K.zero, K.one], 3, base_cutoff=3)


def test_rnp3_poles():
    # 1 + X Y^4 + X^6 Y^5 over Q: all five roots escape to Y = infinity,
    # one as -X^-5 (v = -14) and four as a ramified orbit on X^-1/4
    # (v = 1/4); n = 11 is the least window certifying the pole parts
    J = triv(QQ)
    F = TruncBPoly.from_dict(J, {(0, 0): 1, (4, 1): 1, (5, 6): 1}, 30)
    out = rnp3(F, [QQ.zero, QQ.one], 11)
    assert len(out) == 1 and out[0][0] == (QQ.zero, QQ.one)
    rs = out[0][1]
    assert sorted((R.e, R.f, R.off, R.v) for R in rs) == \
        [(1, 1, -5, Fraction(-14)), (4, 1, -1, Fraction(1, 4))]
    for R in rs:
        if R.e == 1:
            assert R.prec == 0 and R.r == -5
            assert R.gamma_pairs() == [(-5, QQ.from_int(-1))]
        else:
            assert R.prec == Fraction(19, 2) and R.r == -1
            assert resid(F, R, 39) == []


def test_rnp3_pole_window_exhausted():
    J = triv(QQ)
    F = TruncBPoly.from_dict(J, {(0, 0): 1, (4, 1): 1, (5, 6): 1}, 30)
    with pytest.raises(PrecisionTooLow):
        rnp3(F, [QQ.zero, QQ.one], 5)


def test_rnp3_conjugate_critical_points():
    # (Y^2 - X)^2 - 2 over Q above Z^2 - 2: both critical points behave
    # identically, so the computation never splits Q; above each there is
    # a ramified f = 1 class and an unramified f = 2 class
    J = triv(QQ)
    F = TruncBPoly.from_dict(J, {(4, 0): 1, (2, 1): -2, (0, 2): 1,
                                 (0, 0): -2}, 20)
    out = rnp3(F, [QQ.from_int(-2), QQ.zero, QQ.one], 3)
    assert len(out) == 1
    assert out[0][0] == (QQ.from_int(-2), QQ.zero, QQ.one)
    rs = out[0][1]
    assert sorted((R.e, R.f, R.r, R.v) for R in rs) == \
        [(1, 2, 0, 0), (2, 1, 1, Fraction(1, 2))]
    assert all(R.owner.dq == 2 for R in rs)
