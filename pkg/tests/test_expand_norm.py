"""Class norms (parametrization -> monic polynomial) and Laurent inversion."""

from __future__ import annotations

from fractions import Fraction

import pytest

from puiseux.fields import PrimeField
from puiseux.dynev import TriSet
from puiseux.tpoly import TruncBPoly
from puiseux.expand import D5Rpe, half_rnp3, norm_rpe, invert_rpe
from puiseux.errors import PrecisionTooLow


def triv(K):
    return TriSet.trivial_over(K)


def quad_ext(K, c0):
    """K[z2]/(z2^2 - c0) over a trivial level 1."""
    return TriSet(K, (K.zero, K.one),
                  ((K.from_int(-c0),), (K.zero,), (K.one,)))


def test_norm_sqrt_roundtrip():
    K = PrimeField(5)
    J = triv(K)
    F = TruncBPoly.from_dict(J, {(2, 0): 1, (0, 1): -1}, 9)
    rpes = [R for _, rs in half_rnp3(F, J, 3) for R in rs]
    G = norm_rpe(rpes, 2)
    want = TruncBPoly.from_dict(G.J, {(2, 0): 1, (0, 1): -1}, G.prec)
    assert G.sub(want).is_zero()


def test_norm_sees_gamma():
    # x = 2 T^2, y = T  <->  Y^2 - X/2
    K = PrimeField(5)
    J = triv(K)
    R = D5Rpe(J, K.from_int(2), 2, 1, [K.one], 1, 1,
              Fraction(1, 2), Fraction(2))
    G = norm_rpe([R], 2)
    want = TruncBPoly.from_dict(G.J, {(2, 0): 1, (0, 1): -3}, G.prec)
    assert G.sub(want).is_zero()


def test_norm_constant_class():
    # y = c with c^2 = 2: residual degree 2, no ramification
    K = PrimeField(5)
    J2 = quad_ext(K, 2)
    R = D5Rpe(J2, J2.one, 1, 0, [J2.z2()], 0, 2, Fraction(0), Fraction(3))
    G = norm_rpe([R], 2)
    want = TruncBPoly.from_dict(G.J, {(2, 0): 1, (0, 0): -2}, G.prec)
    assert G.sub(want).is_zero()


def test_norm_ramified_with_residual_degree():
    # x = T^2, y = c T + T^3 with c^2 = 2: e = 2 and f = 2, so the norm is
    # ((Y^2 - 2X - X^3)^2 - 8 X^4) computed by hand
    K = PrimeField(5)
    J2 = quad_ext(K, 2)
    R = D5Rpe(J2, J2.one, 2, 1, [J2.z2(), J2.zero, J2.one], 3, 2,
              Fraction(5, 2), Fraction(4))
    G = norm_rpe([R], 4)
    want = TruncBPoly.from_dict(G.J, {(4, 0): 1, (2, 1): 1, (2, 3): 3,
                                      (0, 2): 4, (0, 4): 1, (0, 6): 1},
                                G.prec)
    assert G.sub(want).is_zero()


def test_norm_product_of_classes():
    K = PrimeField(5)
    J = triv(K)
    R1 = D5Rpe(J, K.one, 1, 1, [K.one], 1, 1, Fraction(1), Fraction(3))
    R2 = D5Rpe(J, K.one, 1, 1, [K.from_int(-1)], 1, 1, Fraction(1),
               Fraction(3))
    G = norm_rpe([R1, R2], 2)
    want = TruncBPoly.from_dict(G.J, {(2, 0): 1, (0, 2): -1}, G.prec)
    assert G.sub(want).is_zero()


def test_norm_rejects_short_window():
    K = PrimeField(5)
    J = triv(K)
    R = D5Rpe(J, K.one, 2, 1, [K.one], 1, 1, Fraction(1, 2), Fraction(3, 2))
    with pytest.raises(PrecisionTooLow):
        norm_rpe([R], 2)


def test_invert_simple_pole():
    # 1/(T + T^2) = T^-1 - 1 + T - T^2 + ...
    K = PrimeField(5)
    J = triv(K)
    R = D5Rpe(J, K.one, 1, 1, [K.one, K.one], 4, 1, None, Fraction(5))
    ((Jb, Ri),) = invert_rpe(R)
    assert (Ri.off, Ri.e, Ri.f) == (-1, 1, 1)
    assert Ri.r == 2 and Ri.prec == 3
    assert Ri.gamma_pairs() == [(-1, 1), (0, 4), (1, 1), (2, 4)]


def test_invert_splits_on_pole_order():
    # leading coefficient 1 + xi is a zero divisor mod xi^2 = 1: the pole
    # order differs between the two branches
    K = PrimeField(7)
    J2 = quad_ext(K, 1)
    R = D5Rpe(J2, J2.one, 1, 1, [J2.add(J2.one, J2.z2()), J2.one], 0, 2,
              None, Fraction(5))
    parts = invert_rpe(R)
    assert sorted((Ri.off, Ri.r, Ri.prec) for _, Ri in parts) == \
        [(-2, -2, 1), (-1, -1, 3)]
    assert all(Jb.dp == 1 and Ri.f == 1 for Jb, Ri in parts)
    deep = next(Ri for _, Ri in parts if Ri.off == -1)
    assert deep.gamma_pairs()[0] == (-1, 4)        # 1/2 mod 7


def test_invert_needs_a_nonzero_term():
    K = PrimeField(5)
    J = triv(K)
    R = D5Rpe(J, K.one, 1, 1, [K.zero, K.zero], 0, 1, None, Fraction(3))
    with pytest.raises(PrecisionTooLow):
        invert_rpe(R)
