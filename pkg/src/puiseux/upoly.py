"""Dense univariate (and light bivariate) polynomial kernels over a base field.

Polynomials are plain lists of field elements, lowest degree first, with no
trailing zeros; the zero polynomial is the empty list.  The field context K
(fields.PrimeField or fields.RationalField) is passed as the last argument,
so these kernels stay free of any global state.
"""

import numpy as np

from .fields import PrimeField

KARATSUBA_CUTOFF = 32


def strip(f, K):
    """Remove trailing zero coefficients."""
    n = len(f)
    while n and K.is_zero(f[n - 1]):
        n -= 1
    return f[:n] if n != len(f) else f


def deg(f):
    return len(f) - 1


def is_zero(f):
    return not f


def lc(f):
    """Leading coefficient (f must be nonzero)."""
    return f[-1]


def const(c, K):
    return [] if K.is_zero(c) else [c]


def add(f, g, K):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = K.add(out[i], c)
    return strip(out, K)


def sub(f, g, K):
    out = list(f) + [K.zero] * (len(g) - len(f))
    for i, c in enumerate(g):
        out[i] = K.sub(out[i], c)
    return strip(out, K)


def neg(f, K):
    return [K.neg(c) for c in f]


def smul(f, c, K):
    if K.is_zero(c):
        return []
    return strip([K.mul(a, c) for a in f], K)


def _mul_school(f, g, K):
    out = [K.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if K.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = K.add(out[i + j], K.mul(a, b))
    return out


def _padded_sum(f, g, K):
    n = max(len(f), len(g))
    return [K.add(f[i] if i < len(f) else K.zero, g[i] if i < len(g) else K.zero)
            for i in range(n)]


def _mul_karatsuba(f, g, K):
    n = min(len(f), len(g))
    if n <= KARATSUBA_CUTOFF:
        return _mul_school(f, g, K)
    h = n // 2
    f0, f1 = f[:h], f[h:]
    g0, g1 = g[:h], g[h:]
    p0 = _mul_karatsuba(f0, g0, K)
    p2 = _mul_karatsuba(f1, g1, K)
    p1 = _mul_karatsuba(_padded_sum(f0, f1, K), _padded_sum(g0, g1, K), K)
    out = [K.zero] * (len(f) + len(g) - 1)
    for i, c in enumerate(p0):
        out[i] = K.add(out[i], c)
    for i, c in enumerate(p2):
        out[i + 2 * h] = K.add(out[i + 2 * h], c)
    for i, c in enumerate(p1):
        out[i + h] = K.add(out[i + h], c)
    for i, c in enumerate(p0):
        out[i + h] = K.sub(out[i + h], c)
    for i, c in enumerate(p2):
        out[i + h] = K.sub(out[i + h], c)
    return out


def mul(f, g, K):
    if not f or not g:
        return []
    if isinstance(K, PrimeField) and K.p * K.p * min(len(f), len(g)) < 2**62:
        out = np.convolve(np.array(f, dtype=np.int64), np.array(g, dtype=np.int64)) % K.p
        return strip([int(c) for c in out], K)
    if min(len(f), len(g)) > KARATSUBA_CUTOFF:
        return strip(_mul_karatsuba(f, g, K), K)
    return strip(_mul_school(f, g, K), K)


def quo_rem(f, g, K):
    """Euclidean division; g nonzero with invertible leading coefficient."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if len(f) < len(g):
        return [], f
    ilc = K.inv(g[-1])
    r = list(f)
    q = [K.zero] * (len(f) - len(g) + 1)
    for k in range(len(f) - len(g), -1, -1):
        c = K.mul(r[k + len(g) - 1], ilc)
        if K.is_zero(c):
            continue
        q[k] = c
        for j, b in enumerate(g):
            r[k + j] = K.sub(r[k + j], K.mul(c, b))
    return strip(q, K), strip(r[: len(g) - 1], K)


def rem(f, g, K):
    return quo_rem(f, g, K)[1]


def exact_div(f, g, K):
    q, r = quo_rem(f, g, K)
    if r:
        raise ArithmeticError("division was not exact")
    return q


def monic(f, K):
    if not f or K.eq(f[-1], K.one):
        return f
    return smul(f, K.inv(f[-1]), K)


def diff(f, K):
    return strip([K.mul(K.from_int(i), c) for i, c in enumerate(f)][1:], K)


def eval_at(f, x, K):
    acc = K.zero
    for c in reversed(f):
        acc = K.add(K.mul(acc, x), c)
    return acc


def taylor(f, c, K):
    """f(Y + c), by Horner."""
    out = []
    for a in reversed(f):
        out = add(mul(out, [c, K.one], K), const(a, K), K)
    return out


def xgcd(f, g, K):
    """Extended Euclid: returns monic gcd h and u, v with u*f + v*g = h."""
    r0, r1 = strip(list(f), K), strip(list(g), K)
    s0, s1 = [K.one], []
    t0, t1 = [], [K.one]
    while r1:
        q, r = quo_rem(r0, r1, K)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, K), K)
        t0, t1 = t1, sub(t0, mul(q, t1, K), K)
    if not r0:
        return [], [], []
    c = K.inv(r0[-1])
    return smul(r0, c, K), smul(s0, c, K), smul(t0, c, K)


def gcd(f, g, K):
    a, b = f, g
    while b:
        a, b = b, rem(a, b, K)
    return monic(a, K)


def squarefree_decompose(f, K):
    """Yun's algorithm on monic f; returns [(factor, multiplicity), ...]."""
    K.check_char(deg(f))
    u = gcd(f, diff(f, K), K)
    if deg(u) == 0:
        return [(monic(f, K), 1)]
    v = exact_div(f, u, K)
    w = exact_div(diff(f, K), u, K)
    out = []
    i = 1
    while deg(v) > 0:
        t = sub(w, diff(v, K), K)
        h = gcd(v, t, K)
        if deg(h) > 0:
            out.append((h, i))
        v = exact_div(v, h, K)
        w = exact_div(t, h, K)
        i += 1
    return out


def pow_(f, e, K):
    out = [K.one]
    b = f
    while e:
        if e & 1:
            out = mul(out, b, K)
        b = mul(b, b, K)
        e >>= 1
    return out


# ---------------------------------------------------------------------------
# Bivariate helpers over the base field: F is a Y-major list (lowest Y-degree
# first) whose entries are X-coefficient lists.

def b_strip(F, K):
    n = len(F)
    while n and not strip(F[n - 1], K):
        n -= 1
    return [strip(c, K) for c in F[:n]]


def b_deg_y(F):
    return len(F) - 1


def b_deg_x(F):
    return max((len(c) - 1 for c in F if c), default=-1)


def b_diff_y(F, K):
    return b_strip([smul(c, K.from_int(i), K) for i, c in enumerate(F)][1:], K)


def b_shift_x(F, c, K):
    """F(X + c, Y)."""
    return b_strip([taylor(co, c, K) for co in F], K)


def b_reciprocal_x(F, K):
    """X^{d_X} * F(1/X, Y)."""
    dx = b_deg_x(F)
    out = []
    for co in F:
        r = list(co) + [K.zero] * (dx + 1 - len(co))
        r.reverse()
        out.append(strip(r, K))
    return b_strip(out, K)


def b_eval_x0(F, K):
    """F(0, Y) as a univariate list."""
    return strip([c[0] if c else K.zero for c in F], K)


def resultant_y(F, G, K):
    """res_Y(F, G) in K[X]: Bareiss fraction-free elimination of the
    Sylvester matrix (F-rows first); exact, sign included."""
    F, G = b_strip(F, K), b_strip(G, K)
    m, n = b_deg_y(F), b_deg_y(G)
    if m < 0 or n < 0:
        return []
    if m == 0 and n == 0:
        return [K.one]
    if n == 0:
        return pow_(G[0], m, K)
    if m == 0:
        return pow_(F[0], n, K)
    N = m + n
    M = [[[] for _ in range(N)] for _ in range(N)]
    for r in range(n):
        for i, co in enumerate(reversed(F)):
            M[r][r + i] = list(co)
    for r in range(m):
        for i, co in enumerate(reversed(G)):
            M[n + r][r + i] = list(co)
    sign = 1
    prev = [K.one]
    for k in range(N - 1):
        if not M[k][k]:
            piv = next((i for i in range(k + 1, N) if M[i][k]), None)
            if piv is None:
                return []
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, N):
            for j in range(k + 1, N):
                t = sub(mul(M[i][j], M[k][k], K), mul(M[i][k], M[k][j], K), K)
                M[i][j] = exact_div(t, prev, K) if t else []
            M[i][k] = []
        prev = M[k][k]
    det = M[N - 1][N - 1]
    return det if sign == 1 else neg(det, K)
