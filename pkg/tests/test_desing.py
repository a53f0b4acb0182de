"""Critical-point reports (desingularise) and plane-curve genus."""

from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from puiseux.fields import PrimeField, QQ
from puiseux.dynev import TriSet
from puiseux.tpoly import TruncBPoly
from puiseux.desing import desingularise, genus, x_reciprocal, resultant_fy
from puiseux.errors import NotSeparable, PreconditionViolated, NegativeGenus


def poly(K, dic, prec=64):
    return TruncBPoly.from_dict(TriSet.trivial_over(K), dic, prec)


ELLIPTIC = {(2, 0): 1, (0, 3): -1, (0, 1): 1}   # Y^2 - X^3 + X
NODAL = {(2, 0): 1, (0, 3): -1, (0, 2): -1}     # Y^2 - X^2 (X + 1)
FERMAT = {(4, 0): 1, (0, 4): 1, (0, 0): -1}     # Y^4 + X^4 - 1
TWO_PARABOLAS = {(4, 0): 1, (2, 1): -5, (0, 2): 4}  # (Y^2 - X)(Y^2 - 4X)


def shapes(rep):
    return sorted((len(Qa) - 1, nk, sorted((R.e, R.f) for R in rs))
                  for Qa, nk, rs in rep.parts)


def test_elliptic_report_shape():
    # critical X-values are the simple roots of X^3 - X; each carries one
    # place with e = 2, and Y ~ X^{3/2} at infinity adds a third
    # ramification point, so g = 1 - 2 + (3 + 1)/2 = 1
    K = PrimeField(101)
    F = poly(K, ELLIPTIC)
    rep = desingularise(F)
    assert shapes(rep) == [(1, 1, [(2, 1)]), (2, 1, [(2, 1)])]
    for _, _, rs in rep.parts:
        assert sum(R.e * R.f for R in rs) == 2
        for R in rs:
            assert R.v == Fraction(1, 2)
            assert R.prec >= Fraction(R.r, R.e)
    assert sorted((R.e, R.f) for R in rep.infinity_part) == [(2, 1)]
    assert rep.infinity_part[0].gamma_pairs()[0][0] == -3
    assert rep.genus is None
    assert genus(F, report=rep) == 1 and rep.genus == 1


def test_nodal_cubic_genus_zero():
    # the node at X = 0 keeps its two smooth branches joined (e = 1,
    # f = 2) so only X = -1 and infinity ramify: g = 0
    K = PrimeField(101)
    rep = desingularise(poly(K, NODAL))
    assert shapes(rep) == [(1, 1, [(2, 1)]), (1, 2, [(1, 2)])]
    assert sorted((R.e, R.f) for R in rep.infinity_part) == [(2, 1)]
    assert genus(poly(K, NODAL)) == 0


def test_fermat_quartic_genus_three():
    # above each root of X^4 - 1 one fully ramified place (e = 4); the
    # four points at infinity are unramified
    K = PrimeField(101)
    rep = desingularise(poly(K, FERMAT))
    assert shapes(rep) == [(4, 3, [(4, 1)])]
    [R] = rep.parts[0][2]
    assert (R.v, R.prec) == (Fraction(3, 4), Fraction(9, 4))
    assert sum(R.e * R.f for R in rep.infinity_part) == 4
    assert all(R.e == 1 for R in rep.infinity_part)
    assert genus(poly(K, FERMAT)) == 3


def test_no_affine_critical_points():
    # Y + X^2 has constant resultant: no affine parts at all, and the
    # single branch at infinity is the exact pole Y = -X^{-2}
    K = PrimeField(101)
    rep = desingularise(poly(K, {(1, 0): 1, (0, 2): 1}))
    assert rep.parts == []
    [R] = rep.infinity_part
    assert (R.e, R.f) == (1, 1)
    assert R.gamma_pairs() == [(-2, K.from_int(-1))]
    assert genus(poly(K, {(1, 0): 1, (0, 2): 1})) == 0


def test_reducible_input_raises_negative_genus():
    # (Y^2 - X)(Y^2 - 4X) is separable but not irreducible; the formula
    # lands at -1 and says so
    K = PrimeField(101)
    rep = desingularise(poly(K, TWO_PARABOLAS))
    assert shapes(rep) == [(1, 6, [(2, 2)])]
    assert sorted((R.e, R.f) for R in rep.infinity_part) == [(2, 2)]
    with pytest.raises(NegativeGenus):
        genus(poly(K, TWO_PARABOLAS))


def test_not_separable():
    K = PrimeField(101)
    with pytest.raises(NotSeparable):
        desingularise(poly(K, {(2, 0): 1, (1, 1): -2, (0, 2): 1}))


def test_requires_primitive_in_y():
    K = PrimeField(101)
    with pytest.raises(PreconditionViolated):
        desingularise(poly(K, {(1, 1): 1, (0, 1): 1}))


@pytest.mark.parametrize("dic", [ELLIPTIC, NODAL, FERMAT, TWO_PARABOLAS])
def test_resultant_degree_balance(dic):
    # affine multiplicities and the valuation of the reciprocal resultant
    # split deg res_Y(F, F_Y) = d_X (2 d_Y - 1) between them
    K = PrimeField(101)
    F = poly(K, dic)
    d = F.deg_y
    dX = max(len(r) for r in F.rows) - 1
    rep = desingularise(F)
    rres = resultant_fy(x_reciprocal(F, dX))
    val = next(i for i, c in enumerate(rres) if c != K.zero)
    assert sum((len(Qa) - 1) * nk for Qa, nk, _ in rep.parts) + val \
        == dX * (2 * d - 1)
    for _, _, rs in rep.parts:
        assert sum(R.e * R.f for R in rs) == d
    assert sum(R.e * R.f for R in rep.infinity_part) == d


def test_genus_shift_invariance():
    # moving the critical points by X -> X + c must not change the genus
    K = PrimeField(101)
    F = poly(K, ELLIPTIC)
    rng = random.Random(7)
    t0 = time.monotonic()
    for _ in range(5):
        c = K.from_int(rng.randrange(1, 101))
        assert genus(F.shifted_x(c)) == 1
    assert time.monotonic() - t0 < 5.0


def test_genus_over_the_rationals():
    assert genus(poly(QQ, ELLIPTIC, prec=32)) == 1
