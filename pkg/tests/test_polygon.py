from __future__ import annotations

import random
from fractions import Fraction

from puiseux.fields import PrimeField, QQ
from puiseux.dynev import TriSet
from puiseux.tpoly import TruncBPoly
from puiseux.polygon import (newton_polygon, truncated_polygon, char_poly,
                             polygon_data, bezout_uv, polygon_svg)


def triv(K):
    return TriSet.trivial_over(K)


def F0(J):
    # Y^6 + XY^5 + 5X^3Y^4 - 2XY^4 + 4X^2Y^2 + X^5 - 3X^4
    return TruncBPoly.from_dict(J, {(6, 0): 1, (5, 1): 1, (4, 3): 5, (4, 1): -2,
                                    (2, 2): 4, (0, 5): 1, (0, 4): -3}, 20)


def F2(J):
    # Y^10 + XY^6 + X^2Y^4 + X^3Y^3 + X^5Y^2 + X^8
    return TruncBPoly.from_dict(J, {(10, 0): 1, (6, 1): 1, (4, 2): 1,
                                    (3, 3): 1, (2, 5): 1, (0, 8): 1}, 20)


def test_bezout_uv():
    for m, q in [(0, 1), (1, 1), (1, 2), (1, 4), (3, 5), (5, 3), (7, 2)]:
        u, v = bezout_uv(m, q)
        assert u * q - m * v == 1 and 0 <= v < q


def test_newton_polygon_f0():
    poly = newton_polygon(F0(triv(QQ)))
    assert poly.vertices == [(0, 4), (2, 2), (6, 0)]
    assert [e.key() for e in poly.edges] == [(1, 2, 6), (1, 1, 4)]
    e = poly.edges[0]
    assert e.points == [(2, 2), (4, 1), (6, 0)]


def test_char_poly_f0():
    H = F0(triv(QQ))
    poly = newton_polygon(H)
    phi = char_poly(H, poly.edges[0])
    assert phi == [Fraction(4), Fraction(-2), Fraction(1)]  # T^2 - 2T + 4


def test_newton_polygon_f2_and_truncation():
    H = F2(triv(QQ))
    poly = newton_polygon(H)
    assert poly.vertices == [(0, 8), (3, 3), (4, 2), (6, 1), (10, 0)]
    assert [e.key() for e in poly.edges] == [(1, 4, 10), (1, 2, 8), (1, 1, 6),
                                             (5, 3, 24)]
    kept = truncated_polygon(H, 7)
    assert [e.key() for e in kept.edges] == [(1, 4, 10), (1, 2, 8), (1, 1, 6)]
    # the spurious hull edge of the truncated support is (3,3)-(2,5), l=9
    raw = newton_polygon(H, jmax=7)
    dropped = [e for e in raw.edges if e.key() not in [k.key() for k in kept.edges]]
    assert len(dropped) == 1
    assert (dropped[0].i0, dropped[0].j0, dropped[0].i1, dropped[0].j1) == (2, 5, 3, 3)
    assert dropped[0].l == 9


def test_monomial_has_no_edges():
    J = triv(PrimeField(7))
    H = TruncBPoly.from_dict(J, {(4, 0): 1}, 5)
    assert newton_polygon(H).edges == []
    assert truncated_polygon(H, 3).edges == []


def test_char_poly_simple_edges():
    J = triv(QQ)
    H = TruncBPoly.from_dict(J, {(2, 0): 1, (0, 1): -1}, 5)  # Y^2 - X
    e = newton_polygon(H).edges[0]
    assert (e.m, e.q, e.l) == (1, 2, 2)
    assert char_poly(H, e) == [Fraction(-1), Fraction(1)]    # T - 1
    G = TruncBPoly.from_dict(J, {(2, 0): 1, (1, 1): -2, (0, 2): 1}, 5)  # (Y-X)^2
    e = newton_polygon(G).edges[0]
    assert char_poly(G, e) == [Fraction(1), Fraction(-2), Fraction(1)]  # (T-1)^2


def test_truncation_certification_random():
    K = PrimeField(101)
    J = triv(K)
    rng = random.Random(17)
    for _ in range(200):
        d = {}
        for _k in range(rng.randrange(3, 10)):
            d[(rng.randrange(0, 8), rng.randrange(0, 10))] = rng.randrange(1, 101)
        H = TruncBPoly.from_dict(J, d, 30)
        exact = {e.key() for e in newton_polygon(H).edges}
        for n in range(0, 12):
            for e in truncated_polygon(H, n).edges:
                assert e.key() in exact
                assert (e.i1 - e.i0) % e.q == 0
                assert len(char_poly(H, e)) - 1 == (e.i1 - e.i0) // e.q


def test_edge_degree_balance_random():
    K = PrimeField(101)
    J = triv(K)
    rng = random.Random(23)
    for _ in range(50):
        d = {(rng.randrange(0, 8), rng.randrange(0, 8)): rng.randrange(1, 101)
             for _ in range(6)}
        H = TruncBPoly.from_dict(J, d, 30)
        poly = newton_polygon(H)
        pts = sorted(i for i, _ in d.items()) if False else None
        imin = min(i for i, _j in d)
        imax = max(i for i, _j in d)
        assert sum(e.q * ((e.i1 - e.i0) // e.q) for e in poly.edges) == imax - imin


def test_polygon_data_single_branch():
    J = triv(QQ)
    H = F2(J)
    rows = polygon_data(H, J, 7)
    assert len(rows) == 3
    assert all(M == 1 for _, _, _, _, M in rows)
    assert [e.key() for _, _, e, _, _ in rows] == [(1, 4, 10), (1, 2, 8), (1, 1, 6)]
    for _, _, _, phi, _ in rows:
        assert phi[-1] == 1  # monic


def test_polygon_data_zero_divisor_branches():
    I = TriSet.over_q(QQ, [0, -1, 1])  # z^2 - z
    z = I.z1()
    # H = Y^2 - zY + (z-1)X: support depends on the branch
    H = TruncBPoly(I, [[I.zero, I.sub(z, I.one)], [I.neg(z)], [I.one]], 8)
    rows = polygon_data(H, I, 4)
    assert len(rows) == 2
    byq = {J.Q: (e, phi, M) for J, HJ, e, phi, M in rows}
    e0, phi0, M0 = byq[(Fraction(0), Fraction(1))]   # z = 0: Y^2 - X
    assert e0.key() == (1, 2, 2) and M0 == 1
    assert phi0 == [-1, 1]
    e1, phi1, M1 = byq[(Fraction(-1), Fraction(1))]  # z = 1: Y^2 - Y
    assert e1.key() == (0, 1, 0) and M1 == 1
    assert phi1 == [-1, 1]


def test_polygon_svg_smoke():
    H = F2(triv(QQ))
    svg = polygon_svg(H)
    assert svg.startswith("<svg") and svg.endswith("</svg>")
    assert svg.count("<circle") == 6
    assert "polyline" in svg and "(0,8)" in svg
