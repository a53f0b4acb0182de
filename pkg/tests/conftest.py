"""Shared construction helpers for the test suite."""

from __future__ import annotations

from puiseux import upoly as up


def uni(K, cs):
    """Univariate coefficient list (lowest first) from ints/fractions."""
    return up.strip([K.from_int(c) if isinstance(c, int) else c for c in cs], K)


def biv(K, d):
    """Bivariate Y-major list-of-lists from a dict {(ydeg, xdeg): int}."""
    dy = max((y for y, _ in d), default=0)
    F = []
    for y in range(dy + 1):
        dx = max((x for (yy, x) in d if yy == y), default=-1)
        row = [K.zero] * (dx + 1)
        for (yy, x), c in d.items():
            if yy == y:
                row[x] = K.from_int(c)
        F.append(up.strip(row, K))
    return up.b_strip(F, K)
