"""Hensel lifting of bivariate factorizations to arbitrary X-adic precision.

Factorizations F = G*H in K_I[[X]][Y] are lifted by a quadratic Newton
iteration.  When G and H share a root modulo X the classical Bezout identity
U*G + V*H = 1 has no solution; the obstruction is measured by the smallest
kappa with X^kappa in the ideal (G, H), and every update carries the extra
X^kappa along.  Weierstrass preparation and the monic/at-infinity splitting
are the kappa = 0 special cases of the same iteration, seeded by a univariate
xgcd at X = 0.

Precision discipline: a TruncBPoly argument named F below is only trusted up
to its declared prec, so the drivers check up front that it carries enough
X-adic data for the requested output; the G/H/U/V iterates are representatives
we own and may be zero-extended freely.
"""

from .errors import DivisibleByX, KappaExceedsCap, PreconditionViolated
from . import dynev as dv
from .tpoly import TruncBPoly, quo_rem_y, reciprocal_y, s_inv, s_mul, s_strip


class BezoutCert:
    """Certificate U*G + V*H = X^kappa mod X^(kappa+1), with deg_Y U < deg_Y H
    and deg_Y V < deg_Y G."""

    __slots__ = ("U", "V", "kappa")

    def __init__(self, U, V, kappa):
        self.U = U
        self.V = V
        self.kappa = kappa


def _padded(H, prec):
    """Re-declare H (a representative we own) at precision >= its own."""
    if H.prec >= prec:
        return H
    return TruncBPoly(H.J, [r[:] for r in H.rows], prec)


def _x_div(H, k):
    """Exact division of H by X^k (every row must vanish mod X^k)."""
    if k == 0:
        return H
    J = H.J
    rows = []
    for row in H.rows:
        assert all(J.is_zero(c) for c in row[:k]), "not divisible by X^k"
        rows.append(row[k:])
    return TruncBPoly(J, rows, H.prec - k)


def _congruent_mod(A, B, n):
    return A.sub(B).truncated(n).is_zero()


def _xpow_poly(J, k, prec):
    return TruncBPoly(J, [[J.zero] * k + [J.one]], prec)


def _series_scale(H, u):
    """Multiply H by the Y-free series u (a coefficient list)."""
    J = H.J
    return TruncBPoly(J, [s_mul(row, u, H.prec, J) for row in H.rows], H.prec)


# ---------------------------------------------------------------------------
# kappa and the Bezout certificate


def _kappa_raise(J, G, H, kappa_max):
    """Smallest kappa with U*G + V*H = X^kappa mod X^(kappa+1); may Split.

    Returns a BezoutCert.  For each candidate k the congruence is a square
    K_I-linear system in the coefficients of U and V; the first solvable k is
    minimal, because solvability at k implies solvability at k+1 (multiply
    the identity by X), so the upward scan cannot skip the true value."""
    dG, dH = G.deg_y, H.deg_y
    if dG <= 0 or dH <= 0:
        # constant factor: the other cofactor is zero and kappa is the
        # X-valuation of the constant
        low = G if dG <= 0 else H
        row = low.rows[0] if low.rows else []
        k = next((i for i, c in enumerate(row) if not J.is_zero(c)), None)
        if k is None or k > kappa_max:
            raise KappaExceedsCap(kappa_max)
        J.regular_check(row[k])
        U = TruncBPoly(J, [[J.inv(row[k])]], k + 1)
        Z = TruncBPoly(J, [], k + 1)
        return BezoutCert(U, Z, k) if dG <= 0 else BezoutCert(Z, U, k)
    for k in range(kappa_max + 1):
        w = k + 1
        nunk = (dH + dG) * w
        rows, rhs = [], []
        for ypow in range(dG + dH):
            for xpow in range(w):
                row = [J.zero] * nunk
                for y in range(dH):
                    for x in range(xpow + 1):
                        row[y * w + x] = G.coeff(ypow - y, xpow - x)
                for y in range(dG):
                    for x in range(xpow + 1):
                        row[dH * w + y * w + x] = H.coeff(ypow - y, xpow - x)
                rows.append(row)
                rhs.append(J.one if (ypow, xpow) == (0, k) else J.zero)
        sol = dv.gauss_solve(rows, rhs, J)
        if sol is None:
            continue
        U = TruncBPoly(J, [sol[y * w:(y + 1) * w] for y in range(dH)], w)
        V = TruncBPoly(J, [sol[(dH + y) * w:(dH + y + 1) * w]
                           for y in range(dG)], w)
        return BezoutCert(U, V, k)
    raise KappaExceedsCap(kappa_max)


def kappa_bezout(G, H, kappa_max):
    """Certified minimal kappa for the pair (G, H) over each D5 branch.

    Returns [(TriSet, BezoutCert)]; raises KappaExceedsCap past the cap."""
    shG, pG = G.shape(), G.prec
    shH, pH = H.shape(), H.prec
    nG = sum(shG)

    def fn(J, polys):
        flat = polys[0]
        Gk = TruncBPoly.unflat(J, flat[:nG], shG, pG)
        Hk = TruncBPoly.unflat(J, flat[nG:], shH, pH)
        return _kappa_raise(J, Gk, Hk, kappa_max)

    return dv.with_splits(G.J, [G.flat() + H.flat()], fn)


# ---------------------------------------------------------------------------
# one quadratic step


def hensel_step(F, G, H, U, V, n0, kappa):
    """One Newton step: refines F = G*H from mod X^n0 to mod X^(2*(n0-kappa)).

    Preconditions (PreconditionViolated): F = G*H mod X^n0 with n0 > 2*kappa,
    U*G + V*H = X^kappa mod X^(n0-kappa), deg_Y U < deg_Y H, deg_Y V < deg_Y G,
    H monic in Y.  When F carries less than 2*(n0-kappa) + kappa of X-adic
    data the step tops out at F.prec - kappa instead of doubling.  Returns
    (G~, H~, U~, V~) with the same shape one level up; H~ stays monic and no
    inversions occur, so this never splits."""
    J = F.J
    if n0 <= 2 * kappa:
        raise PreconditionViolated("need n0 > 2*kappa")
    if F.prec < n0:
        raise PreconditionViolated("F precision below n0")
    p2 = min(2 * (n0 - kappa), F.prec - kappa)
    if not H.is_monic_y():
        raise PreconditionViolated("H not monic in Y")
    if U.deg_y >= max(H.deg_y, 1) or V.deg_y >= max(G.deg_y, 1):
        raise PreconditionViolated("Bezout cofactor degree bound violated")
    G, H = _padded(G, p2 + kappa), _padded(H, p2 + kappa)
    U, V = _padded(U, p2 + kappa), _padded(V, p2 + kappa)
    if not _congruent_mod(F, G.mul(H), n0):
        raise PreconditionViolated("F != G*H mod X^n0")
    bez = U.mul(G).add(V.mul(H)).sub(_xpow_poly(J, kappa, p2 + kappa))
    if not bez.truncated(n0 - kappa).is_zero():
        raise PreconditionViolated("U*G + V*H != X^kappa mod X^(n0-kappa)")

    alpha = _x_div(F.truncated(p2 + kappa).sub(G.mul(H)), kappa).truncated(p2)
    Q, R = quo_rem_y(U.mul(alpha), H)
    Gt = G.add(alpha.mul(V)).add(Q.mul(G)).truncated(p2)
    Ht = H.add(R).truncated(p2)

    pb = p2 - kappa  # = 2*n0 - 3*kappa
    Gp, Hp = _padded(Gt, pb + kappa), _padded(Ht, pb + kappa)
    beta = _x_div(U.mul(Gp).add(V.mul(Hp)), kappa)
    beta = beta.sub(TruncBPoly(J, [[J.one]], beta.prec)).truncated(pb)
    S, T = quo_rem_y(U.truncated(pb).mul(beta), Hp.truncated(pb))
    Ut = U.truncated(pb).sub(T)
    Vt = V.truncated(pb).sub(beta.mul(V.truncated(pb))).sub(
        S.mul(Gp.truncated(pb)))
    return Gt, Ht, Ut, Vt


def _lift_raise(J, F, G, H, U, V, kappa, T):
    """Drive hensel_step from F = G*H mod X^(2*kappa+1) up to mod X^T.

    F must carry precision >= T + kappa.  Returns (G, H) at precision T."""
    if F.prec < T + kappa:
        raise PreconditionViolated("F precision below T + kappa")
    Fw = F.truncated(T + kappa)
    n0 = 2 * kappa + 1
    while n0 < T:
        G, H, U, V = hensel_step(Fw, G, H, U, V, n0, kappa)
        n0 = min(2 * (n0 - kappa), T)
    return G.truncated(T), H.truncated(T)


def hensel_lift(F, G, H, n, kappa_max=None):
    """Lift F = G*H mod X^(2*kappa+1) to mod X^(n + 2*kappa), H monic in Y.

    kappa is computed internally from (G, H), capped at kappa_max (default n).
    F must carry precision >= n + 3*kappa.  Returns [(TriSet, G~, H~)] with
    G~ = G mod X^(kappa+1); the output is the unique such lift."""
    if kappa_max is None:
        kappa_max = n
    shF, shG, shH = F.shape(), G.shape(), H.shape()
    pF, pG, pH = F.prec, G.prec, H.prec
    nF, nG = sum(shF), sum(shG)

    def fn(K, polys):
        flat = polys[0]
        Fk = TruncBPoly.unflat(K, flat[:nF], shF, pF)
        Gk = TruncBPoly.unflat(K, flat[nF:nF + nG], shG, pG)
        Hk = TruncBPoly.unflat(K, flat[nF + nG:], shH, pH)
        cert = _kappa_raise(K, Gk, Hk, kappa_max)
        k = cert.kappa
        if not _congruent_mod(Fk, _padded(Gk, 2 * k + 1).mul(
                _padded(Hk, 2 * k + 1)), 2 * k + 1):
            raise PreconditionViolated("F != G*H mod X^(2*kappa+1)")
        return _lift_raise(K, Fk, Gk, Hk, cert.U, cert.V, k, n + 2 * k)

    parts = dv.with_splits(F.J, [F.flat() + G.flat() + H.flat()], fn)
    return [(K, GH[0], GH[1]) for K, GH in parts]


# ---------------------------------------------------------------------------
# Weierstrass preparation and the monic / at-infinity splitting


def _wpt_seed(J, G):
    """Split G(0,Y) = Y^M * unit; returns (M, E0, u, v) with E0 the unit
    cofactor at X = 0 and u*E0 + v*Y^M = 1, deg u < M, deg v < deg E0."""
    for row in G.rows:
        for c in row:
            if not J.is_zero(c):
                J.regular_check(c)
    g0 = [row[0] if row else J.zero for row in G.rows]
    M = next((i for i, c in enumerate(g0) if not J.is_zero(c)), None)
    if M is None:
        raise DivisibleByX("X divides G")
    E0 = dv.rp_strip(g0[M:], J)
    g, u, v = dv._xgcd_raise(J, E0, [J.zero] * M + [J.one])
    assert len(g) == 1 and J.is_zero(J.sub(g[0], J.one))
    return M, E0, dv.rp_strip(u, J), dv.rp_strip(v, J)


def _wpt_parts(G, n):
    """Shared engine behind wpt and monic_split: per D5 branch the pair
    (unit_cofactor, weierstrass_factor) of G mod X^(n+1)."""
    if G.prec < n + 1:
        raise PreconditionViolated("G precision below n+1")
    sh, p = G.shape(), G.prec
    T = n + 1

    def fn(K, polys):
        Gk = TruncBPoly.unflat(K, polys[0], sh, p)
        M, E0, u, v = _wpt_seed(K, Gk)
        if M == 0:
            return Gk.truncated(T), TruncBPoly(K, [[K.one]], T)
        H0 = TruncBPoly(K, [[K.zero]] * M + [[K.one]], T)
        E = TruncBPoly(K, [[c] for c in E0], T)
        U = TruncBPoly(K, [[c] for c in u], 1)
        V = TruncBPoly(K, [[c] for c in v], 1)
        return _lift_raise(K, Gk.truncated(T), E, H0, U, V, 0, T)

    return dv.with_splits(G.J, [G.flat()], fn)


def wpt(G, n):
    """Weierstrass preparation: the monic factor of G of degree
    val_Y G(0, Y), mod X^(n+1), over each D5 branch.

    Returns [(TriSet, G_hat)].  Raises DivisibleByX when X | G."""
    return [(J, EG[1]) for J, EG in _wpt_parts(G, n)]


def monic_split(F, n):
    """Split F = u * F0 * F_inf mod X^(n+1): u a unit power series in X,
    F0 monic in Y (the finite roots), F_inf with F_inf(0, Y) = 1 (the roots
    escaping to infinity X-adically).  Returns [(TriSet, u, F0, F_inf)]
    with u a coefficient list."""
    d = F.deg_y
    T = n + 1
    out = []
    for J, (E, Ghat) in _wpt_parts(reciprocal_y(F, d), n):
        minf = Ghat.deg_y
        Finf = reciprocal_y(Ghat, minf)
        RE = reciprocal_y(E, d - minf)
        u = (E.rows[0][:] if E.rows else [J.one])
        u = u + [J.zero] * (T - len(u))
        F0 = _series_scale(RE, s_inv(u, T, J))
        assert F0.is_monic_y()
        prod = _series_scale(F0.mul(Finf), u)
        assert _congruent_mod(F.cast(J), prod, T), "split does not multiply back"
        out.append((J, s_strip(u, J), F0, Finf))
    return out


# ---------------------------------------------------------------------------
# several factors at once


def multifactor_lift(F, factors, u, n, N):
    """Lift F = u * prod(factors) mod X^n to mod X^(N+1).

    Each factor must be monic in Y or of at-infinity shape (constant term 1
    at X = 0); u is a unit power series in X (coefficient list).  Lifting
    runs over a balanced subproduct tree, so only the kappas of tree nodes
    matter, each capped at (n-1)//2.  F must carry enough precision for the
    tree (about N + kappa_cap * log2(len(factors))); pass exact polynomials
    with generous prec.  Returns [(TriSet, u_lifted, factors_lifted)] with
    factors in the input order."""
    J = F.J
    cap = max((n - 1) // 2, 0)
    T = N + 1
    need = T + cap * (2 + max(len(factors) - 1, 0).bit_length())
    if F.prec < need:
        raise PreconditionViolated(
            "F precision %d below %d needed for N=%d" % (F.prec, need, N))
    shF, pF = F.shape(), F.prec
    nf = sum(shF)
    fshapes = [(g.shape(), g.prec) for g in factors]
    ulen = len(u)

    def fn(K, polys):
        flat = polys[0]
        Fk = TruncBPoly.unflat(K, flat[:nf], shF, pF)
        pos = nf
        fs = []
        for sh, p in fshapes:
            ln = sum(sh)
            fs.append(TruncBPoly.unflat(K, flat[pos:pos + ln], sh, p))
            pos += ln
        uk = list(flat[pos:pos + ulen])
        return _multifactor_raise(K, Fk, fs, uk, n, T, cap)

    parts = dv.with_splits(J, [F.flat() + [c for g in factors for c in g.flat()]
                           + list(u)], fn)
    return [(K, s_strip(us, K), lifted) for K, (us, lifted) in parts]


def _tree_lift(J, target, group, n, T, cap):
    """Balanced subproduct lifting of target = prod(group) mod X^n, all
    factors monic in Y.  Returns each factor mod X^T; target must carry
    precision >= T + cap * ceil(log2(len(group)))."""
    if len(group) == 1:
        return [target.truncated(T)]
    half = len(group) // 2
    A, B = group[:half], group[half:]
    GA = _product(J, A, n)
    GB = _product(J, B, n)
    cert = _kappa_raise(J, GA, GB, cap)
    k = cert.kappa
    if n <= 2 * k:
        raise PreconditionViolated("n too small for tree-node kappa")
    hA = max(len(A) - 1, 0).bit_length()
    hB = max(len(B) - 1, 0).bit_length()
    Tnode = T + cap * max(hA, hB)
    GAl, GBl = _lift_raise(J, target, GA, GB, cert.U, cert.V, k, Tnode)
    return (_tree_lift(J, GAl, A, n - k, T, cap) +
            _tree_lift(J, GBl, B, n - k, T, cap))


def _product(J, polys, prec):
    acc = TruncBPoly(J, [[J.one]], prec)
    for g in polys:
        acc = acc.mul(_padded(g, prec).truncated(prec))
    return acc


def _multifactor_raise(J, F, factors, u, n, T, cap):
    """No-split core of multifactor_lift: returns (u_series, lifted)."""
    monic_ix = [i for i, g in enumerate(factors) if g.is_monic_y()]
    unit_ix = [i for i in range(len(factors)) if i not in monic_ix]
    for i in unit_ix:
        g = factors[i]
        ok = (not g.is_zero() and J.eq(g.coeff(0, 0), J.one) and
              all(J.is_zero(row[0]) if row else True for row in g.rows[1:]))
        if not ok:
            raise PreconditionViolated(
                "factor neither monic nor of at-infinity shape")
    lifted = [None] * len(factors)
    mgroup = [factors[i] for i in monic_ix]
    ugroup = [factors[i] for i in unit_ix]
    h_m = max(len(mgroup) - 1, 0).bit_length()
    h_u = max(len(ugroup) - 1, 0).bit_length()

    if not unit_ix:
        # fold the unit into F and run the tree directly
        Ttop = T + cap * h_m
        uinv = s_inv(u + [J.zero] * (Ttop + cap - len(u)), Ttop + cap, J)
        Fm = _series_scale(F.truncated(Ttop + cap), uinv)
        for i, g in zip(monic_ix, _tree_lift(J, Fm, mgroup, n, T, cap)):
            lifted[i] = g
        return _unit_of(J, F, lifted, T), lifted

    # split the monic group from u * (product of at-infinity factors)
    n2 = n
    if monic_ix:
        C = _series_scale(_product(J, ugroup, n), u + [J.zero] * (n - len(u)))
        Mprod = _product(J, mgroup, n)
        cert = _kappa_raise(J, C, Mprod, cap)
        if n <= 2 * cert.kappa:
            raise PreconditionViolated("n too small for tree-node kappa")
        Ttop = T + cap * max(h_m, h_u)
        Cl, Ml = _lift_raise(J, F, C, Mprod, cert.U, cert.V, cert.kappa, Ttop)
        n2 = n - cert.kappa
        for i, g in zip(monic_ix, _tree_lift(J, Ml, mgroup, n2, T, cap)):
            lifted[i] = g
    else:
        Cl = F.truncated(T + cap * h_u)
    # the at-infinity group in reciprocal Y-coordinates is a monic problem
    D = sum(g.deg_y for g in ugroup)
    Crec = reciprocal_y(Cl, D)
    recs = []
    for g in ugroup:
        r = reciprocal_y(_padded(g, Crec.prec), g.deg_y)
        top = r.rows[-1][:] + [J.zero] * (r.prec - len(r.rows[-1]))
        recs.append(_series_scale(r, s_inv(top, r.prec, J)))
    utop = (Crec.rows[-1][:] if Crec.rows else [J.one])
    utop = utop + [J.zero] * (Crec.prec - len(utop))
    Cm = _series_scale(Crec, s_inv(utop, Crec.prec, J))
    for i, r in zip(unit_ix, _tree_lift(J, Cm, recs, n2, T, cap)):
        back = reciprocal_y(r, r.deg_y)
        c0 = [back.coeff(0, j) for j in range(T)]
        lifted[i] = _series_scale(back, s_inv(c0, T, J))
    return _unit_of(J, F, lifted, T), lifted


def _unit_of(J, F, lifted, T):
    """Solve F = u * prod(lifted) for the Y-free unit series u mod X^T."""
    P = _product(J, lifted, T)
    t = next(i for i in range(P.deg_y, -1, -1) if not J.is_zero(P.coeff(i, 0)))
    prow = [P.coeff(t, j) for j in range(T)]
    frow = [F.coeff(t, j) for j in range(T)]
    ustar = s_mul(frow, s_inv(prow, T, J), T, J)
    assert F.truncated(T).sub(_series_scale(P, ustar)).is_zero(), \
        "unit recovery failed"
    return ustar
