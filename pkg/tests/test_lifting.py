"""Hensel lifting, Weierstrass preparation and the monic/infinity split."""

import random
from fractions import Fraction

import pytest

from puiseux.fields import PrimeField, QQ
from puiseux import dynev as dv
from puiseux.tpoly import TruncBPoly
from puiseux import lifting as lf
from puiseux.oracle import kappa_bruteforce
from puiseux.errors import DivisibleByX, KappaExceedsCap, PreconditionViolated

F7 = PrimeField(7)
F101 = PrimeField(101)


def triv(K):
    return dv.TriSet.trivial_over(K)


def bp(J, d, prec):
    return TruncBPoly.from_dict(J, d, prec)


def same(A, B, n):
    return A.sub(B).truncated(n).is_zero()


# -- Weierstrass preparation ------------------------------------------------


def test_wpt_weierstrass_factor():
    J = triv(QQ)
    # (Y^2 - X) (Y + 1)
    G = bp(J, {(3, 0): 1, (2, 0): 1, (1, 1): -1, (0, 1): -1}, 8)
    parts = lf.wpt(G, 3)
    assert len(parts) == 1
    _, Ghat = parts[0]
    assert same(Ghat, bp(J, {(2, 0): 1, (0, 1): -1}, 4), 4)
    assert Ghat.is_monic_y() and Ghat.prec == 4


def test_wpt_fixes_weierstrass_input():
    J = triv(QQ)
    G = bp(J, {(2, 0): 1, (0, 1): -1}, 6)
    [(_, Ghat)] = lf.wpt(G, 5)
    assert same(Ghat, G, 6)


def test_wpt_unit_gives_one():
    J = triv(QQ)
    G = bp(J, {(1, 0): 1, (0, 0): 1, (0, 1): 1}, 5)
    [(_, Ghat)] = lf.wpt(G, 4)
    assert Ghat.deg_y == 0 and J.eq(Ghat.coeff(0, 0), J.one)


def test_wpt_x_divides():
    J = triv(QQ)
    G = bp(J, {(1, 1): 1, (0, 2): 1}, 5)
    with pytest.raises(DivisibleByX):
        lf.wpt(G, 4)


def test_wpt_precision_guard():
    J = triv(QQ)
    G = bp(J, {(1, 0): 1, (0, 1): 1}, 3)
    with pytest.raises(PreconditionViolated):
        lf.wpt(G, 3)


# -- monic / at-infinity splitting -----------------------------------------


def test_monic_split_fixture():
    J = triv(QQ)
    F = bp(J, {(2, 1): 1, (1, 0): 1, (0, 1): 1}, 2)  # X Y^2 + Y + X
    [(_, u, F0, Finf)] = lf.monic_split(F, 1)
    assert u == [Fraction(1)]
    assert same(F0, bp(J, {(1, 0): 1, (0, 1): 1}, 2), 2)
    assert same(Finf, bp(J, {(0, 0): 1, (1, 1): 1}, 2), 2)


def test_monic_split_all_roots_at_infinity():
    J = triv(QQ)
    F = bp(J, {(0, 0): 1, (2, 1): 1, (3, 3): 1}, 6)
    [(_, u, F0, Finf)] = lf.monic_split(F, 4)
    assert u == [Fraction(1)]
    assert F0.deg_y == 0 and J.eq(F0.coeff(0, 0), J.one)
    assert same(Finf, F, 5)


def test_monic_split_random_reconstruction():
    rng = random.Random(5)
    J = triv(F101)
    for _ in range(10):
        d = rng.randrange(2, 5)
        rows = [[rng.randrange(101) for _ in range(4)] for _ in range(d + 1)]
        while all(c == 0 for r in rows for c in r[:1]):
            rows[0][0] = rng.randrange(101)
        F = TruncBPoly(J, rows, 7)
        if F.deg_y < 1:
            continue
        for _, u, F0, Finf in lf.monic_split(F, 6):
            assert F0.is_monic_y() or F0.deg_y == 0
            assert J.eq(Finf.coeff(0, 0), J.one)
            assert F0.deg_y + Finf.deg_y == F.deg_y
            uu = TruncBPoly(J, [list(u)], 7)
            assert same(F0.mul(Finf).mul(uu), F, 7)


# -- kappa and Bezout certificates -----------------------------------------


def test_kappa_fixtures():
    J = triv(QQ)
    G = bp(J, {(1, 0): 1, (0, 1): -1}, 6)   # Y - X
    H = bp(J, {(1, 0): 1, (0, 1): 1}, 6)    # Y + X
    [(_, cert)] = lf.kappa_bezout(G, H, 4)
    assert cert.kappa == 1
    assert cert.U.coeff(0, 0) == Fraction(-1, 2)
    assert cert.V.coeff(0, 0) == Fraction(1, 2)
    bez = cert.U.mul(G).add(cert.V.mul(H))
    assert same(bez, bp(J, {(0, 1): 1}, 2), 2)

    H2 = bp(J, {(1, 0): 1, (0, 0): 1, (0, 1): 1}, 6)  # Y + 1 + X
    [(_, cert)] = lf.kappa_bezout(G, H2, 4)
    assert cert.kappa == 0

    H3 = bp(J, {(1, 0): 1, (0, 1): -1, (0, 3): 1}, 6)  # Y - X + X^3
    [(_, cert)] = lf.kappa_bezout(G, H3, 4)
    assert cert.kappa == 3


def test_kappa_exceeds_cap():
    J = triv(QQ)
    G = bp(J, {(1, 0): 1, (0, 1): -1}, 6)
    H = bp(J, {(1, 0): 1, (0, 1): -1, (0, 3): 1}, 6)
    with pytest.raises(KappaExceedsCap):
        lf.kappa_bezout(G, H, 2)


def test_kappa_matches_bruteforce():
    K = PrimeField(13)
    J = triv(K)
    rng = random.Random(11)
    for _ in range(30):
        dG, dH = rng.randrange(1, 4), rng.randrange(1, 4)
        G = TruncBPoly(J, [[rng.randrange(13) for _ in range(4)]
                           for _ in range(dG)] + [[1]], 8)
        H = TruncBPoly(J, [[rng.randrange(13) for _ in range(4)]
                           for _ in range(dH)] + [[1]], 8)
        want = kappa_bruteforce(G.rows, H.rows, 6, K)
        try:
            [(_, cert)] = lf.kappa_bezout(G, H, 6)
            assert cert.kappa == want
            xk = bp(J, {(0, cert.kappa): 1}, cert.kappa + 1)
            assert same(cert.U.mul(G).add(cert.V.mul(H)), xk, cert.kappa + 1)
            assert cert.U.deg_y < max(H.deg_y, 1)
            assert cert.V.deg_y < max(G.deg_y, 1)
        except KappaExceedsCap:
            assert want is None


def test_kappa_d5_split():
    K = PrimeField(5)
    J = dv.TriSet.over_q(K, [4, 0, 1])  # Z^2 = 1
    z = J.z1()
    G = TruncBPoly(J, [[J.zero, J.neg(z)], [J.one]], 8)       # Y - z X
    H = bp(J, {(1, 0): 1, (0, 1): 1, (0, 3): 1}, 8)           # Y + X + X^3
    parts = lf.kappa_bezout(G, H, 5)
    got = {tuple(Jb.Q): cert.kappa for Jb, cert in parts}
    assert got == {(4, 1): 1, (1, 1): 3}


# -- a single Newton step ---------------------------------------------------


def test_hensel_step_fixture():
    J = triv(QQ)
    F = bp(J, {(2, 0): 1, (0, 0): -1, (0, 1): -2, (0, 2): -1}, 4)
    G = bp(J, {(1, 0): 1, (0, 0): -1}, 4)
    H = bp(J, {(1, 0): 1, (0, 0): 1}, 4)
    U = TruncBPoly(J, [[Fraction(-1, 2)]], 1)
    V = TruncBPoly(J, [[Fraction(1, 2)]], 1)
    Gt, Ht, Ut, Vt = lf.hensel_step(F, G, H, U, V, 1, 0)
    assert same(Gt, bp(J, {(1, 0): 1, (0, 0): -1, (0, 1): -1}, 2), 2)
    assert same(Ht, bp(J, {(1, 0): 1, (0, 0): 1, (0, 1): 1}, 2), 2)
    assert same(F, Gt.mul(Ht), 2)


def test_hensel_step_preconditions():
    J = triv(QQ)
    F = bp(J, {(2, 0): 1, (0, 0): -1}, 6)
    G = bp(J, {(1, 0): 1, (0, 0): -1}, 6)
    H = bp(J, {(1, 0): 1, (0, 0): 1}, 6)
    U = TruncBPoly(J, [[Fraction(-1, 2)]], 1)
    V = TruncBPoly(J, [[Fraction(1, 2)]], 1)
    with pytest.raises(PreconditionViolated):
        lf.hensel_step(F, G, H.smul(J.from_int(2)), U, V, 1, 0)
    with pytest.raises(PreconditionViolated):
        lf.hensel_step(bp(J, {(2, 0): 1, (0, 0): 5}, 6), G, H, U, V, 1, 0)
    with pytest.raises(PreconditionViolated):
        lf.hensel_step(F, G, H, H, V, 1, 0)  # deg_Y U too big
    with pytest.raises(PreconditionViolated):
        lf.hensel_step(F, G, H, U, V, 2, 1)  # n0 <= 2 kappa


def test_hensel_step_random_congruences():
    rng = random.Random(3)
    J = triv(F101)
    for _ in range(20):
        dG, dH = rng.randrange(1, 4), rng.randrange(1, 4)
        G = TruncBPoly(J, [[rng.randrange(101) for _ in range(3)]
                           for _ in range(dG)] + [[1]], 30)
        H = TruncBPoly(J, [[rng.randrange(101) for _ in range(3)]
                           for _ in range(dH)] + [[1]], 30)
        try:
            [(_, cert)] = lf.kappa_bezout(G, H, 6)
        except KappaExceedsCap:
            continue
        k = cert.kappa
        n0 = 2 * k + 1
        E = TruncBPoly(J, [[0] * n0 + [rng.randrange(101) for _ in range(3)]
                           for _ in range(dG + dH)], 30)
        F = G.mul(H).add(E)
        Gt, Ht, Ut, Vt = lf.hensel_step(F, G, H, cert.U, cert.V, n0, k)
        p2 = 2 * (n0 - k)
        assert same(F, Gt.mul(Ht), p2)
        assert same(Gt, G, n0 - k) and same(Ht, H, n0 - k)
        xk = bp(J, {(0, k): 1}, 2 * n0 - 3 * k)
        assert same(Ut.mul(Gt).add(Vt.mul(Ht)), xk, 2 * n0 - 3 * k)
        assert Ht.is_monic_y()
        assert Ut.deg_y < max(Ht.deg_y, 1) and Vt.deg_y < max(Gt.deg_y, 1)


# -- the lifting driver -----------------------------------------------------


def test_hensel_lift_corrects_seed_noise():
    J = triv(QQ)
    Gs = bp(J, {(1, 0): 1, (0, 1): -1, (0, 4): -1}, 25)
    Hs = bp(J, {(1, 0): 1, (0, 1): -1, (0, 3): 1, (0, 4): 1}, 25)
    F = Gs.mul(Hs)
    G0 = Gs.add(bp(J, {(0, 7): 3}, 25))  # noise above X^(2 kappa)
    [(_, Gt, Ht)] = lf.hensel_lift(F, G0, Hs, 10)
    assert same(F, Gt.mul(Ht), 16)       # n + 2 kappa with kappa = 3
    assert same(Gt, Gs, 10) and same(Ht, Hs, 10)


def test_hensel_lift_uniqueness_negative():
    J = triv(QQ)
    Gs = bp(J, {(1, 0): 1, (0, 1): -1, (0, 4): -1}, 25)
    Hs = bp(J, {(1, 0): 1, (0, 1): -1, (0, 3): 1, (0, 4): 1}, 25)
    F = Gs.mul(Hs)
    [(_, Gt, Ht)] = lf.hensel_lift(F, Gs, Hs, 10)
    bad = Gt.add(bp(J, {(0, 9): 1}, Gt.prec))
    assert not same(F, bad.mul(Ht), 16)


def test_hensel_lift_kappa_zero():
    J = triv(F7)
    Gs = bp(J, {(1, 0): 1, (0, 0): -1, (0, 1): -1}, 12)
    Hs = bp(J, {(1, 0): 1, (0, 0): 1, (0, 1): 1}, 12)
    F = Gs.mul(Hs)
    [(_, Gt, Ht)] = lf.hensel_lift(F, bp(J, {(1, 0): 1, (0, 0): -1}, 12),
                                   bp(J, {(1, 0): 1, (0, 0): 1}, 12), 8)
    assert same(Gt, Gs, 8) and same(Ht, Hs, 8)


def test_hensel_lift_d5_split():
    K = PrimeField(5)
    J = dv.TriSet.over_q(K, [4, 0, 1])
    z = J.z1()
    G = TruncBPoly(J, [[J.zero, J.neg(z)], [J.one]], 40)
    H = bp(J, {(1, 0): 1, (0, 1): 1, (0, 3): 1}, 40)
    F = G.mul(H)
    parts = lf.hensel_lift(F, G, H, 8)
    assert len(parts) == 2
    for Jb, Gt, Ht in parts:
        assert same(F.cast(Jb), Gt.mul(Ht), 8)


# -- several factors at once ------------------------------------------------


def test_multifactor_linear_fixture():
    J = triv(F7)
    exact = [bp(J, {(1, 0): 1, (0, 0): -1, (0, 1): -1}, 30),
             bp(J, {(1, 0): 1, (0, 0): 1, (0, 1): 1}, 30),
             bp(J, {(1, 0): 1, (0, 0): -2}, 30)]
    F = exact[0].mul(exact[1]).mul(exact[2])
    seeds = [g.truncated(1) for g in exact]
    [(_, u, lifted)] = lf.multifactor_lift(F, seeds, [J.one], 1, 6)
    assert u == [J.one]
    for g, got in zip(exact, lifted):
        assert same(got, g, 7)


def test_multifactor_no_op_at_given_precision():
    J = triv(F7)
    exact = [bp(J, {(1, 0): 1, (0, 0): -1, (0, 1): -1}, 30),
             bp(J, {(1, 0): 1, (0, 0): 1, (0, 1): 1}, 30)]
    F = exact[0].mul(exact[1])
    seeds = [g.truncated(1) for g in exact]
    [(_, u, lifted)] = lf.multifactor_lift(F, seeds, [J.one], 1, 0)
    for s, got in zip(seeds, lifted):
        assert same(got, s, 1)


def test_multifactor_with_infinity_factor():
    J = triv(QQ)
    F0 = bp(J, {(1, 0): 1, (0, 1): 1}, 40)       # Y + X
    Fi = bp(J, {(0, 0): 1, (1, 1): 1}, 40)       # 1 + X Y
    F = F0.mul(Fi)
    [(_, u, lifted)] = lf.multifactor_lift(
        F, [F0.truncated(2), Fi.truncated(2)], [Fraction(1)], 2, 8)
    assert u == [Fraction(1)]
    assert same(lifted[0], F0, 9)
    assert same(lifted[1], Fi, 9)


def test_multifactor_random_products():
    rng = random.Random(17)
    J = triv(F101)
    for _ in range(8):
        k = rng.randrange(2, 4)
        exact = []
        roots = rng.sample(range(1, 100), k)
        for i in range(k):
            d = rng.randrange(1, 3)
            rows = [[rng.randrange(101) for _ in range(5)] for _ in range(d)]
            rows[0][0] = roots[i]  # distinct residues keep tree kappas zero
            exact.append(TruncBPoly(J, rows + [[1]], 60))
        uexact = [1, rng.randrange(101)]
        F = exact[0]
        for g in exact[1:]:
            F = F.mul(g)
        F = TruncBPoly(J, [[(r[j] if j < len(r) else 0) for j in range(60)]
                           for r in F.rows], 60)
        uu = TruncBPoly(J, [uexact], 60)
        F = F.mul(uu)
        seeds = [g.truncated(2) for g in exact]
        [(_, u, lifted)] = lf.multifactor_lift(F, seeds, uexact[:2], 2, 12)
        P = TruncBPoly(J, [list(u)], 60)
        for g in lifted:
            P = P.mul(g)
        assert same(P, F, 13)
        for g, got in zip(exact, lifted):
            assert same(got, g, 13)
