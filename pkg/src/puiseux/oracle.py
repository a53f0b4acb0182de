"""Independent brute-force verifiers backing the test suite and --verify.

Nothing here shares code with the production paths it certifies: the
resultant valuation goes through numeric Sylvester determinants at sample
points plus interpolation, and the lifting order through a dense linear
solve per candidate k.
"""

import random
from fractions import Fraction

from . import upoly as up
from .fields import PrimeField, _is_prime


def _sylvester_det_at(F, G, x, zero, one, add, sub, mul, div, is_zero):
    """Determinant of the Sylvester matrix of F,G (Y-major, X-lists) at X=x,
    by plain Gaussian elimination over a field."""
    def ev(c):
        acc = zero
        for a in reversed(c):
            acc = add(mul(acc, x), a)
        return acc
    m, n = len(F) - 1, len(G) - 1
    if m <= 0 and n <= 0:
        return one
    N = m + n
    M = [[zero] * N for _ in range(N)]
    for r in range(n):
        for i, co in enumerate(reversed(F)):
            M[r][r + i] = ev(co)
    for r in range(m):
        for i, co in enumerate(reversed(G)):
            M[n + r][r + i] = ev(co)
    det = one
    for k in range(N):
        piv = next((i for i in range(k, N) if not is_zero(M[i][k])), None)
        if piv is None:
            return zero
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            det = sub(zero, det)
        det = mul(det, M[k][k])
        for i in range(k + 1, N):
            if is_zero(M[i][k]):
                continue
            c = div(M[i][k], M[k][k])
            M[i] = [sub(a, mul(c, b)) for a, b in zip(M[i], M[k])]
    return det


def _dets_over_q(Fz, Gz, npts):
    q_ops = (Fraction(0), Fraction(1),
             lambda a, b: a + b, lambda a, b: a - b,
             lambda a, b: a * b, lambda a, b: a / b,
             lambda a: a == 0)
    return [_sylvester_det_at(Fz, Gz, Fraction(x), *q_ops) for x in range(npts)]


def _newton_coeffs_exact(ys):
    """Exact coefficients (lowest first) of the polynomial through
    (0,ys[0]), (1,ys[1]), ... over Q."""
    n = len(ys)
    dd = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / j
    coeffs = [Fraction(0)] * n
    basis = [Fraction(1)]
    for j in range(n):
        for i, c in enumerate(basis):
            coeffs[i] += dd[j] * c
        new = [Fraction(0)] * (len(basis) + 1)
        for i, c in enumerate(basis):
            new[i] -= j * c
            new[i + 1] += c
        basis = new
    return coeffs


def _newton_coeffs_mod(xs, ys, p):
    """Coefficients (lowest first) of the interpolating polynomial mod p."""
    n = len(xs)
    dd = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            num = (dd[i] - dd[i - 1]) % p
            den = (xs[i] - xs[i - j]) % p
            dd[i] = num * pow(den, p - 2, p) % p
    coeffs = [0] * n
    basis = [1]
    for j in range(n):
        for i, c in enumerate(basis):
            coeffs[i] = (coeffs[i] + dd[j] * c) % p
        new = [0] * (len(basis) + 1)
        for i, c in enumerate(basis):
            new[i] = (new[i] - xs[j] * c) % p
            new[i + 1] = (new[i + 1] + c) % p
        basis = new
    return coeffs


def _val_mod_prime(Fz, Gz, p, npts):
    """Valuation of res_Y(Fz,Gz) mod p, by evaluation/interpolation."""
    Fp = [[c % p for c in co] for co in Fz]
    Gp = [[c % p for c in co] for co in Gz]
    ops = (0, 1,
           lambda a, b: (a + b) % p, lambda a, b: (a - b) % p,
           lambda a, b: (a * b) % p, lambda a, b: a * pow(b, p - 2, p) % p,
           lambda a: a % p == 0)
    ys = [_sylvester_det_at(Fp, Gp, x, *ops) for x in range(npts)]
    coeffs = _newton_coeffs_mod(list(range(npts)), ys, p)
    return next((i for i, c in enumerate(coeffs) if c), None)


def _rand_prime_above(n, rng):
    c = n + rng.randrange(1, 1000)
    while not _is_prime(c):
        c += 1
    return c


def resultant_valuation(F, K, seed=0):
    """X-valuation of res_Y(F, F_Y), or None when the resultant vanishes.

    F is a Y-major list of X-coefficient lists over K.  Exact over F_p and
    over small Q instances (integer determinants plus exact interpolation);
    large Q instances take the min over three seeded word-size primes,
    which fails only if all three divide the trailing coefficient."""
    G = up.b_diff_y(F, K)
    if not F or not G:
        return None
    dx = max(up.b_deg_x(F), 0)
    dy = up.b_deg_y(F)
    npts = dx * (2 * dy - 1) + 2
    if isinstance(K, PrimeField):
        Fz = [[int(c) for c in co] for co in F]
        Gz = [[int(c) for c in co] for co in G]
        ys = _dets_over_q(Fz, Gz, npts)
        coeffs = _newton_coeffs_exact(ys)
        return next((i for i, c in enumerate(coeffs) if int(c) % K.p), None)
    den = 1
    for co in F:
        for c in co:
            den = den * c.denominator // _gcd(den, c.denominator)
    Fz = [[int(c * den) for c in co] for co in F]
    Gz = [[int(c * den) for c in co] for co in G]
    if (dy + 1) * (dx + 1) <= 80:
        ys = _dets_over_q(Fz, Gz, npts)
        coeffs = _newton_coeffs_exact(ys)
        return next((i for i, c in enumerate(coeffs) if c), None)
    rng = random.Random(seed)
    vals = []
    for _ in range(3):
        p = _rand_prime_above(max(npts + 1, 1 << 30), rng)
        vals.append(_val_mod_prime(Fz, Gz, p, npts))
    vals = [v for v in vals if v is not None]
    return min(vals) if vals else None


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def kappa_bruteforce(G, H, k_max, K):
    """Least k <= k_max with X^k in (G,H) mod X^{k+1}, by dense linear solve.

    G, H are Y-major lists of X-coefficient lists over the base field K,
    with the Bezout degree bounds deg_Y U < deg_Y H, deg_Y V < deg_Y G
    imposed on the unknowns.  Returns None when no k qualifies."""
    dG, dH = len(G) - 1, len(H) - 1
    if dG < 0 or dH < 0:
        return None
    if dG == 0 and dH == 0:
        vg = next((i for i, c in enumerate(G[0]) if not K.is_zero(c)), None)
        vh = next((i for i, c in enumerate(H[0]) if not K.is_zero(c)), None)
        v = min([x for x in (vg, vh) if x is not None], default=None)
        return v if v is not None and v <= k_max else None
    for k in range(k_max + 1):
        ncols = (dH + dG) * (k + 1)
        nrows = (dG + dH) * (k + 1)
        M = [[K.zero] * ncols for _ in range(nrows)]
        rhs = [K.zero] * nrows
        rhs[0 * (k + 1) + k] = K.one

        def put(col, ypow, xpow, c):
            if ypow < dG + dH and xpow <= k and not K.is_zero(c):
                row = ypow * (k + 1) + xpow
                M[row][col] = K.add(M[row][col], c)

        col = 0
        for uy in range(dH):
            for ux in range(k + 1):
                for gy, co in enumerate(G):
                    for gx, c in enumerate(co):
                        put(col, uy + gy, ux + gx, c)
                col += 1
        for vy in range(dG):
            for vx in range(k + 1):
                for hy, co in enumerate(H):
                    for hx, c in enumerate(co):
                        put(col, vy + hy, vx + hx, c)
                col += 1
        if _solvable(M, rhs, K):
            return k
    return None


def _solvable(M, rhs, K):
    """Consistency of M x = rhs over the field K, by Gaussian elimination."""
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    A = [list(r) + [b] for r, b in zip(M, rhs)]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if not K.is_zero(A[i][c])), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = K.inv(A[r][c])
        A[r] = [K.mul(inv, a) for a in A[r]]
        for i in range(nrows):
            if i != r and not K.is_zero(A[i][c]):
                f = A[i][c]
                A[i] = [K.sub(a, K.mul(f, b)) for a, b in zip(A[i], A[r])]
        r += 1
        if r == nrows:
            break
    return all(K.is_zero(A[i][ncols]) for i in range(r, nrows))


# ---------------------------------------------------------------------------
# whole-system verification


class VerifyReport:
    """Outcome of verify_rpe_system: truthy iff every check passed;
    failures is a list of (check name, detail), first entry first."""

    __slots__ = ("failures",)

    def __init__(self, failures):
        self.failures = failures

    @property
    def ok(self):
        return not self.failures

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "VerifyReport(ok)"
        return "VerifyReport(failed %s: %s)" % self.failures[0]


def _ser_add(a, b, O):
    offa, ca = a
    offb, cb = b
    if not ca:
        return b
    if not cb:
        return a
    off = min(offa, offb)
    n = max(offa + len(ca), offb + len(cb)) - off
    out = [O.zero] * n
    for k, c in enumerate(ca):
        out[offa - off + k] = c
    for k, c in enumerate(cb):
        out[offb - off + k] = O.add(out[offb - off + k], c)
    return (off, out)


def _ser_mul(a, b, O, M):
    offa, ca = a
    offb, cb = b
    if not ca or not cb:
        return (0, [])
    off = offa + offb
    n = min(len(ca) + len(cb) - 1, M - off)
    if n <= 0:
        return (0, [])
    out = [O.zero] * n
    for i, ci in enumerate(ca):
        if O.is_zero(ci) or i >= n:
            continue
        for j, cj in enumerate(cb):
            if i + j >= n:
                break
            out[i + j] = O.add(out[i + j], O.mul(ci, cj))
    return (off, out)


def _subst_order(F, R, M):
    """Least T-exponent below M where F(z1 + gamma T^e, Gamma(T)) is
    nonzero, or None when it vanishes mod T^M.  Plain Horner over the
    owner's arithmetic; Gamma may be a Laurent series (pole classes).
    Intermediates keep a margin of deg_y * |off| extra exponents: a term
    above M re-enters below M after enough multiplications by a series
    of negative valuation, so truncating at M alone would be unsound."""
    O = R.owner
    W = M + (len(F.rows) - 1) * max(0, -R.off)
    xs = (0, [O.z1()] + [O.zero] * (R.e - 1) + [R.gamma])
    ys = (R.off, [c for c in R.coeffs])
    acc = (0, [])
    for row in reversed(F.rows):
        rv = (0, [])
        for c in reversed(list(row)):
            rv = _ser_mul(rv, xs, O, W)
            rv = _ser_add(rv, (0, [O.from_base(c)]), O)
        acc = _ser_mul(acc, ys, O, W)
        acc = _ser_add(acc, rv, O)
    off, cs = acc
    for k, c in enumerate(cs):
        if off + k >= M:
            break
        if not O.is_zero(c):
            return off + k
    return None


def _p_squarefree_over_q(O, K):
    """P squarefree over K[z]/Q, via res_T(P, P') coprime to Q."""
    rows = [list(v) for v in O.P]
    drows = [[K.mul(K.from_int(i), c) for c in rows[i]]
             for i in range(1, len(rows))]
    res = up.strip(up.resultant_y(rows, drows, K), K)
    if up.is_zero(res):
        return False
    return up.deg(up.gcd(res, list(O.Q), K)) == 0


def _iroot(n, e):
    """Floor of the e-th root of a nonnegative integer, by bisection."""
    if n < 2:
        return n
    lo, hi = 1, 1 << (n.bit_length() // e + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** e <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _unit_roots(K, e, ratio):
    """K-rational solutions a of a^e = ratio (exhaustive for small prime
    fields; exact integer-root search over Q; {1, -1} otherwise)."""
    if isinstance(K, PrimeField):
        if K.p <= 4096:
            return [a for a in range(1, K.p)
                    if pow(a, e, K.p) == ratio % K.p]
        return [a for a in (1, K.p - 1) if pow(a, e, K.p) == ratio % K.p]
    out = []
    for s in ([1, -1] if e % 2 else [1]):
        cand = Fraction(s) * Fraction(_iroot(abs(ratio.numerator), e),
                                      _iroot(ratio.denominator, e))
        if cand != 0 and cand ** e == ratio:
            out.append(cand)
    return out


def verify_rpe_system(F, system):
    """Post-hoc verification of a list of RPE classes against F.

    F is the exact polynomial the system was computed from (over the base
    field); system is the class list above one critical point (the shift
    to the point is reconstructed from each owner's level-1 set).  Checks,
    in order: owner bookkeeping (monic squarefree triangular levels,
    f = dp, prec >= r/e), minimality of each ramification index e (no
    common divisor with all certified exponents), sum(e*f) = d_Y,
    vanishing of the substituted parametrization to the certified order,
    and pairwise separation of
    certified data below the regularity indices (exhaustive over rational
    reparametrization charts; conjugate charts through proper extensions
    are not enumerated).  Returns a VerifyReport; its first failure names
    the earliest violated check."""
    K = F.J.K
    failures = []
    d = len(F.rows) - 1

    for i, R in enumerate(system):
        O = R.owner
        if R.e < 1 or R.f != O.dp:
            failures.append(("owners", "class %d: e=%d f=%d vs dp=%d"
                             % (i, R.e, R.f, O.dp)))
        if list(O.Q) != list(system[0].owner.Q):
            failures.append(("owners", "class %d has a different Q" % i))
        if Fraction(R.prec) < Fraction(R.r, R.e):
            failures.append(("owners", "class %d: prec %s below r/e %s"
                             % (i, R.prec, Fraction(R.r, R.e))))
    qs = list(system[0].owner.Q) if system else []
    if qs and (qs[-1] != K.one
               or up.deg(up.gcd(qs, up.diff(qs, K), K)) != 0):
        failures.append(("radical", "level-1 polynomial not monic squarefree"))
    for i, R in enumerate(system):
        O = R.owner
        if O.dp > 1:
            if list(O.P[-1]) != list(O._q_one()):
                failures.append(("radical", "class %d: P not monic" % i))
            elif not _p_squarefree_over_q(O, K):
                failures.append(("radical", "class %d: P not squarefree" % i))

    for i, R in enumerate(system):
        if R.e <= 1:
            continue
        w = [R.off + k for k, c in enumerate(R.coeffs)
             if not R.owner.is_zero(c)]
        for g in range(2, R.e + 1):
            if w and R.e % g == 0 and all(k % g == 0 for k in w):
                failures.append(("e-minimal",
                                 "class %d: e=%d but every certified "
                                 "exponent is divisible by %d" % (i, R.e, g)))
                break

    tot = sum(R.e * R.f for R in system)
    if tot != d:
        failures.append(("count", "sum(e*f) = %d but deg_Y F = %d" % (tot, d)))

    for i, R in enumerate(system):
        m = Fraction(R.e) * min(Fraction(R.prec) + Fraction(R.v),
                                2 * Fraction(R.prec))
        M = int(m) if m == int(m) else int(m) + (1 if m > 0 else 0)
        if M <= 0:
            continue
        bad = _subst_order(F, R, M)
        if bad is not None:
            failures.append(("substitution",
                             "class %d: residual nonzero at T^%d < T^%d"
                             % (i, bad, M)))

    for i in range(len(system)):
        for j in range(i + 1, len(system)):
            Ri, Rj = system[i], system[j]
            if Ri.e != Rj.e:
                continue
            O = Ri.owner
            if not (O.trivial and Rj.owner.trivial):
                # proper extensions: only exact duplication is detectable
                if (O == Rj.owner and O.eq(Ri.gamma, Rj.gamma)
                        and Ri.off == Rj.off
                        and len(Ri.coeffs) == len(Rj.coeffs)
                        and all(O.eq(a, b) for a, b in
                                zip(Ri.coeffs, Rj.coeffs))):
                    failures.append(("separation",
                                     "classes %d and %d carry identical data"
                                     % (i, j)))
                continue
            if K.is_zero(Ri.gamma):
                continue
            ratio = K.mul(Rj.gamma, K.inv(Ri.gamma))
            rmin = min(Fraction(Ri.r), Fraction(Rj.r))
            for z in _unit_roots(K, Ri.e, ratio):
                zk = {}
                same = True
                lo = min(Ri.off, Rj.off)
                hi = rmin
                k = lo
                while k <= hi:
                    ci = Ri.coeffs[k - Ri.off] \
                        if 0 <= k - Ri.off < len(Ri.coeffs) else K.zero
                    cj = Rj.coeffs[k - Rj.off] \
                        if 0 <= k - Rj.off < len(Rj.coeffs) else K.zero
                    zz = zk.setdefault(k, K.from_int(pow(z, k, K.p))
                                       if isinstance(K, PrimeField)
                                       else Fraction(z) ** k)
                    if not K.is_zero(K.sub(cj, K.mul(zz, ci))):
                        same = False
                        break
                    k += 1
                if same:
                    failures.append(("separation",
                                     "classes %d and %d agree below r=%s "
                                     "under T -> %s T" % (i, j, rmin, z)))
                    break
    return VerifyReport(failures)
