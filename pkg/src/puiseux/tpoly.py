"""Truncated bivariate polynomials over a triangular-set coefficient ring.

A TruncBPoly stores H(X, Y) = sum_i c_i(X) Y^i with each c_i a power
series over K_I known mod X^prec, as a Y-major list of coefficient lists
(lowest X-degree first).  All operations truncate at the smaller precision
of their operands.  Zero divisors met inside these routines raise
dynev.Split; callers drive branching via dynev.with_splits.
"""

from . import upoly as up


# ---------------------------------------------------------------------------
# series kernels over a TriSet J (plain lists of elements, lowest first)

def s_trunc(f, n):
    return f[:max(n, 0)]


def s_strip(f, J):
    n = len(f)
    while n and J.is_zero(f[n - 1]):
        n -= 1
    return f[:n]


def s_add(f, g, J):
    n = max(len(f), len(g))
    return [J.add(f[i] if i < len(f) else J.zero,
                  g[i] if i < len(g) else J.zero) for i in range(n)]


def s_sub(f, g, J):
    n = max(len(f), len(g))
    return [J.sub(f[i] if i < len(f) else J.zero,
                  g[i] if i < len(g) else J.zero) for i in range(n)]


def s_neg(f, J):
    return [J.neg(c) for c in f]


def s_smul(f, c, J):
    return [J.mul(a, c) for a in f]


def s_is_zero(f, J):
    return all(J.is_zero(c) for c in f)


def s_val(f, J):
    """X-adic valuation, or None for the (truncated) zero series."""
    for i, c in enumerate(f):
        if not J.is_zero(c):
            return i
    return None


def s_mul(f, g, n, J):
    """Product truncated mod X^n."""
    if not f or not g or n <= 0:
        return []
    if J.trivial:
        return up.mul(list(f), list(g), J.K)[:n]
    out = [J.zero] * min(len(f) + len(g) - 1, n)
    for i, a in enumerate(f):
        if i >= n:
            break
        if J.is_zero(a):
            continue
        top = min(len(g), n - i)
        for j in range(top):
            b = g[j]
            if J.is_zero(b):
                continue
            out[i + j] = J.add(out[i + j], J.mul(a, b))
    return out


def s_inv(f, n, J):
    """Series inverse mod X^n; f[0] must be invertible (may Split)."""
    c0 = J.inv(f[0])
    out = [c0]
    for k in range(1, n):
        acc = J.zero
        for j in range(1, min(k, len(f) - 1) + 1):
            acc = J.add(acc, J.mul(f[j], out[k - j]))
        out.append(J.neg(J.mul(c0, acc)))
    return out


def s_shift(f, z, J):
    """f(X + z) for a polynomial segment f (Horner in X + z)."""
    out = []
    for c in reversed(f):
        # out := out*(X+z) + c
        nxt = [J.zero] * (len(out) + 1)
        for i, a in enumerate(out):
            nxt[i + 1] = J.add(nxt[i + 1], a)
            nxt[i] = J.add(nxt[i], J.mul(a, z))
        nxt[0] = J.add(nxt[0], c)
        out = nxt
    return out


def rp_taylor(f, c, J):
    """f(Y + c) for a dense element list f (lowest first)."""
    out = []
    for a in reversed(f):
        nxt = [J.zero] * (len(out) + 1)
        for i, b in enumerate(out):
            nxt[i + 1] = J.add(nxt[i + 1], b)
            nxt[i] = J.add(nxt[i], J.mul(b, c))
        nxt[0] = J.add(nxt[0], a)
        out = nxt
    return out


# ---------------------------------------------------------------------------

class TruncBPoly:
    """H(X, Y) over K_I[[X]]/(X^prec), Y-major dense rows."""

    __slots__ = ("J", "rows", "prec")

    def __init__(self, J, rows, prec):
        self.J = J
        self.prec = prec
        rs = [s_trunc(list(r), prec) for r in rows]
        while rs and s_is_zero(rs[-1], J):
            rs.pop()
        self.rows = rs

    @classmethod
    def from_dict(cls, J, d, prec):
        """Build from {(ydeg, xdeg): int}."""
        if not d:
            return cls(J, [], prec)
        dy = max(k[0] for k in d)
        dx = max(k[1] for k in d)
        rows = [[J.zero] * (dx + 1) for _ in range(dy + 1)]
        for (i, j), c in d.items():
            rows[i][j] = J.from_int(c)
        return cls(J, rows, prec)

    @property
    def deg_y(self):
        return len(self.rows) - 1

    def is_zero(self):
        return not self.rows

    def coeff(self, i, j):
        if i < 0 or j < 0 or i >= len(self.rows) or j >= len(self.rows[i]):
            return self.J.zero
        return self.rows[i][j]

    def val_x(self):
        """min X-valuation over rows; None if zero."""
        vals = [v for v in (s_val(r, self.J) for r in self.rows) if v is not None]
        return min(vals) if vals else None

    def val_y(self):
        """Index of the lowest nonzero row (Y-adic valuation), or None."""
        for i, r in enumerate(self.rows):
            if not s_is_zero(r, self.J):
                return i
        return None

    def add(self, other):
        J = self.J
        p = min(self.prec, other.prec)
        n = max(len(self.rows), len(other.rows))
        rows = []
        for i in range(n):
            a = self.rows[i] if i < len(self.rows) else []
            b = other.rows[i] if i < len(other.rows) else []
            rows.append(s_add(a, b, J))
        return TruncBPoly(J, rows, p)

    def sub(self, other):
        J = self.J
        p = min(self.prec, other.prec)
        n = max(len(self.rows), len(other.rows))
        rows = []
        for i in range(n):
            a = self.rows[i] if i < len(self.rows) else []
            b = other.rows[i] if i < len(other.rows) else []
            rows.append(s_sub(a, b, J))
        return TruncBPoly(J, rows, p)

    def neg(self):
        return TruncBPoly(self.J, [s_neg(r, self.J) for r in self.rows], self.prec)

    def smul(self, c):
        return TruncBPoly(self.J, [s_smul(r, c, self.J) for r in self.rows], self.prec)

    def mul(self, other):
        J = self.J
        p = min(self.prec, other.prec)
        if self.is_zero() or other.is_zero():
            return TruncBPoly(J, [], p)
        rows = [[] for _ in range(len(self.rows) + len(other.rows) - 1)]
        for i, a in enumerate(self.rows):
            if s_is_zero(a, J):
                continue
            for j, b in enumerate(other.rows):
                if s_is_zero(b, J):
                    continue
                rows[i + j] = s_add(rows[i + j], s_mul(a, b, p, J), J)
        return TruncBPoly(J, rows, p)

    def truncated(self, n):
        return TruncBPoly(self.J, self.rows, min(self.prec, n))

    def shifted_y(self, c):
        """H(X, Y + c) for an element c."""
        J = self.J
        out = []
        for r in reversed(self.rows):
            nxt = [[] for _ in range(len(out) + 1)]
            for i, s in enumerate(out):
                nxt[i + 1] = s_add(nxt[i + 1], s, J)
                nxt[i] = s_add(nxt[i], s_smul(s, c, J), J)
            nxt[0] = s_add(nxt[0], r, J)
            out = nxt
        return TruncBPoly(J, out, self.prec)

    def shifted_y_series(self, B):
        """H(X, Y + B(X)) for a series B."""
        J = self.J
        p = self.prec
        out = []
        for r in reversed(self.rows):
            nxt = [[] for _ in range(len(out) + 1)]
            for i, s in enumerate(out):
                nxt[i + 1] = s_add(nxt[i + 1], s, J)
                nxt[i] = s_add(nxt[i], s_mul(s, B, p, J), J)
            nxt[0] = s_add(nxt[0], r, J)
            out = nxt
        return TruncBPoly(J, out, p)

    def shifted_x(self, z):
        """H(X + z, Y)."""
        return TruncBPoly(self.J, [s_shift(r, z, self.J) for r in self.rows],
                          self.prec)

    def is_monic_y(self):
        if self.is_zero():
            return False
        top = self.rows[-1]
        return (len(s_strip(top, self.J)) == 1 and self.J.eq(top[0], self.J.one))

    def cast(self, Jnew):
        """Image over a refined coefficient set."""
        Jold = self.J
        return TruncBPoly(Jnew, [[Jnew.cast(Jold, c) for c in r] for r in self.rows],
                          self.prec)

    def flat(self):
        """Coefficients as a flat list (for with_splits transport)."""
        return [c for r in self.rows for c in r]

    def shape(self):
        return [len(r) for r in self.rows]

    @classmethod
    def unflat(cls, J, flat, shape, prec):
        rows, k = [], 0
        for ln in shape:
            rows.append(flat[k:k + ln])
            k += ln
        return cls(J, rows, prec)

    def __repr__(self):
        return "TruncBPoly(deg_y=%d, prec=%d)" % (self.deg_y, self.prec)


# ---------------------------------------------------------------------------
# named operations on TruncBPoly

def quo_rem_y(H, G):
    """Division by G monic in Y: H = q*G + r with deg_y r < deg_y G."""
    J = H.J
    p = min(H.prec, G.prec)
    assert G.is_monic_y(), "divisor must be monic in Y"
    dg = G.deg_y
    r = [list(row) for row in H.rows]
    qrows = [[] for _ in range(max(len(r) - dg, 0))]
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if s_is_zero(c, J):
            continue
        qrows[k - dg] = s_trunc(c, p)
        for j in range(dg):
            r[k - dg + j] = s_sub(r[k - dg + j], s_mul(c, G.rows[j], p, J), J)
        r[k] = []
    return (TruncBPoly(J, qrows, p), TruncBPoly(J, r[:dg], p))


def reciprocal_y(H, dy):
    """Y^dy * H(X, 1/Y), rows reversed up to degree dy."""
    rows = [H.rows[dy - i] if dy - i < len(H.rows) else [] for i in range(dy + 1)]
    return TruncBPoly(H.J, rows, H.prec)


def abhyankar(H):
    """Tschirnhaus shift: returns (H(X, Y - B), B) with B = A_{d-1}/d,
    so the result has no Y^{d-1} term.  Needs d invertible in K."""
    J = H.J
    d = H.deg_y
    assert d >= 1
    dinv = J.K.inv(J.K.from_int(d))
    B = s_strip(s_trunc([J.mul_base(c, dinv) for c in H.rows[d - 1]], H.prec), J)
    if s_is_zero(B, J):
        return H, []
    H2 = H.shifted_y_series(s_neg(B, J))
    return H2, B


def puiseux_transform(H, q, m, l, u, v, xi, n1):
    """[H(xi^v X^q, X^m (Y + xi^u)) / X^l] mod X^{n1}.

    Every support point (i, j) of H must satisfy q*j + m*i >= l (it lies on
    or above the edge line); the output collects X-slices and applies the
    Y-shift by xi^u per slice."""
    J = H.J
    d = H.deg_y
    if n1 <= 0 or H.is_zero():
        return TruncBPoly(J, [], max(n1, 0))
    xiv = J.pow(xi, v)
    xiu = J.pow(xi, u)
    # slices[t][i] = coefficient of X^t W^i after substitution
    slices = [None] * n1
    xivj = J.one
    for j in range(len_max_row(H)):
        for i, r in enumerate(H.rows):
            if j >= len(r):
                continue
            c = r[j]
            if J.is_zero(c):
                continue
            t = q * j + m * i - l
            assert t >= 0, "support point below the edge line"
            if t >= n1:
                continue
            if slices[t] is None:
                slices[t] = [J.zero] * (d + 1)
            slices[t][i] = J.add(slices[t][i], J.mul(c, xivj))
        xivj = J.mul(xivj, xiv)
    rows = [[J.zero] * n1 for _ in range(d + 1)]
    for t, sl in enumerate(slices):
        if sl is None:
            continue
        sh = rp_taylor(sl, xiu, J)
        for i, a in enumerate(sh):
            rows[i][t] = a
    return TruncBPoly(J, rows, n1)


def len_max_row(H):
    return max((len(r) for r in H.rows), default=0)


# ---------------------------------------------------------------------------
# evaluation along a parametrization (for verification and tests)

def eval_param(H, gamma, e, pairs, N):
    """H(gamma*T^e, Gamma(T)) mod T^N for Gamma given as sparse
    [(exponent, coeff)] with possibly negative exponents.

    Returns (off, coeffs): the series sum_k coeffs[k] T^{off+k}, exact up to
    but excluding T^N."""
    J = H.J
    if H.is_zero():
        return 0, []
    dmin = min((k for k, _ in pairs), default=0)
    goff = min(dmin, 0)
    # Gamma as a dense Laurent block
    ln = max((k for k, _ in pairs), default=0) - goff + 1
    gden = [J.zero] * ln
    for k, c in pairs:
        gden[k - goff] = J.add(gden[k - goff], c)
    # Y^i term-by-term with Laurent bookkeeping
    out_off, out = 0, []
    ypow_off, ypow = 0, [J.one]
    for i, row in enumerate(H.rows):
        if i > 0:
            ypow_off, ypow = _l_mul(ypow_off, ypow, goff, gden, N, J)
        if s_is_zero(row, J):
            continue
        # row(gamma T^e): X^j -> gamma^j T^{e j}
        rowt = [J.zero] * ((len(row) - 1) * e + 1) if row else []
        gj = J.one
        for j, c in enumerate(row):
            if not J.is_zero(c):
                rowt[e * j] = J.mul(c, gj)
            gj = J.mul(gj, gamma)
        t_off, term = _l_mul(0, rowt, ypow_off, ypow, N, J)
        out_off, out = _l_add(out_off, out, t_off, term, J)
    # trim below N
    out = [c for k, c in enumerate(out) if out_off + k < N]
    # strip leading/trailing zeros
    while out and J.is_zero(out[0]):
        out.pop(0)
        out_off += 1
    while out and J.is_zero(out[-1]):
        out.pop()
    if not out:
        return 0, []
    return out_off, out


def _l_mul(fo, f, go, g, N, J):
    """Laurent product truncated at T^N (exclusive)."""
    if not f or not g:
        return 0, []
    off = fo + go
    top = min(len(f) + len(g) - 1, N - off)
    if top <= 0:
        return 0, []
    out = [J.zero] * top
    for i, a in enumerate(f):
        if J.is_zero(a) or i >= top:
            continue
        for j in range(min(len(g), top - i)):
            b = g[j]
            if J.is_zero(b):
                continue
            out[i + j] = J.add(out[i + j], J.mul(a, b))
    return off, out


def _l_add(fo, f, go, g, J):
    if not f:
        return go, list(g)
    if not g:
        return fo, list(f)
    off = min(fo, go)
    ln = max(fo + len(f), go + len(g)) - off
    out = [J.zero] * ln
    for i, a in enumerate(f):
        out[fo - off + i] = J.add(out[fo - off + i], a)
    for j, b in enumerate(g):
        out[go - off + j] = J.add(out[go - off + j], b)
    return off, out


def quo(F, G, n):
    """Quotient of F by G monic in Y, coefficient-wise mod X^{n+1}.

    When G divides F over K_I[[X]]/(X^{n+1}) the result H satisfies
    F = G*H mod X^{n+1} with deg_y H = deg_y F - deg_y G."""
    q, _ = quo_rem_y(F.truncated(n + 1), G.truncated(n + 1))
    return q


# ---------------------------------------------------------------------------
# partial parametrizations

class ParamFrame:
    """A partial parametrization pi = (gamma*X^e, Gamma(X) + alpha*X^tau*Y).

    The x-part is the monomial gamma*X^e; the y-part is a finite polynomial
    Gamma plus an open slot alpha*X^tau*Y for the still-unknown tail.  The
    expansion recursion refines frames: a Tschirnhaus shift folds terms into
    Gamma, an edge substitution rescales everything, and closing the frame
    (substituting a series or 0 for Y) produces a finished parametrization.

    Invariants: gamma and alpha are regular and nonzero, e >= 1, tau >= 0.
    terms maps exponent -> coefficient for Gamma (exponents >= 0)."""

    __slots__ = ("J", "gamma", "e", "tau", "alpha", "terms")

    def __init__(self, J, gamma, e, tau, alpha, terms):
        self.J = J
        self.gamma = gamma
        self.e = e
        self.tau = tau
        self.alpha = alpha
        self.terms = terms

    @classmethod
    def identity(cls, J):
        return cls(J, J.one, 1, 0, J.one, {})

    def cast(self, Jnew):
        cv = lambda c: Jnew.cast(self.J, c)
        return ParamFrame(Jnew, cv(self.gamma), self.e, self.tau,
                          cv(self.alpha),
                          {k: cv(c) for k, c in self.terms.items()})

    def shift_y(self, B):
        """Record the substitution Y -> Y - B(X) (B a series segment)."""
        J = self.J
        terms = dict(self.terms)
        for k, c in enumerate(B):
            if J.is_zero(c):
                continue
            t = self.tau + k
            terms[t] = J.sub(terms.get(t, J.zero), J.mul(self.alpha, c))
        return ParamFrame(J, self.gamma, self.e, self.tau, self.alpha, terms)

    def apply_edge(self, q, m, xi, u, v):
        """Record X -> xi^v X^q, Y -> X^m (Y + xi^u)."""
        J = self.J
        xiv = J.pow(xi, v)
        terms = {}
        xp = {}
        for k, c in self.terms.items():
            if k not in xp:
                xp[k] = J.pow(xiv, k)
            terms[q * k] = J.mul(c, xp[k])
        xivt = J.pow(xiv, self.tau)
        t = q * self.tau + m
        new = J.mul(self.alpha, J.mul(xivt, J.pow(xi, u)))
        terms[t] = J.add(terms.get(t, J.zero), new)
        gamma = J.mul(self.gamma, J.pow(xiv, self.e))
        return ParamFrame(J, gamma, q * self.e, t, J.mul(self.alpha, xivt),
                          terms)

    def close(self, tail):
        """Substitute Y = -tail(X); returns the finished Gamma as a dict."""
        J = self.J
        terms = dict(self.terms)
        for k, c in enumerate(tail):
            if J.is_zero(c):
                continue
            t = self.tau + k
            terms[t] = J.sub(terms.get(t, J.zero), J.mul(self.alpha, c))
        return terms


def eval_at_param(F, R, t_prec):
    """F evaluated along a parametrization, mod T^{t_prec}.

    R may be a finished parametrization record (attributes gamma, e and a
    Laurent series for the y-part) or a ParamFrame (whose open Y-slot is
    taken as 0).  Requires t_prec <= e * prec(F); raises PrecisionExhausted
    beyond that.  Returns (off, coeffs) as in eval_param."""
    from .errors import PrecisionExhausted
    if isinstance(R, ParamFrame):
        gamma, e = R.gamma, R.e
        pairs = sorted(R.terms.items())
    else:
        gamma, e = R.gamma, R.e
        pairs = R.gamma_pairs()
    if t_prec > e * F.prec:
        raise PrecisionExhausted(
            "need %d T-terms but F is only known mod X^%d" % (t_prec, F.prec))
    return eval_param(F, gamma, e, pairs, t_prec)
