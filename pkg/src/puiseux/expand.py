"""Singular parts of rational Puiseux expansions above critical points.

The central object is the D5Rpe: one conjugacy class of Puiseux series of
F, presented as a parametrization (gamma*T^e, Gamma(T)) over a triangular
coefficient set, together with its ramification index e, residual degree f,
regularity index r (the T-order after which the class is separated from
every other series of F), the derivative valuation v = val_X F_Y(S), and
the certified precision of Gamma.

half_rnp3 is the Newton polygon recursion: Tschirnhaus shift, truncated
polygon, one substitution per edge root, Weierstrass preparation, recurse.
Univariate factorization is replaced throughout by dynamic evaluation:
every root decision runs over a triangular set and may branch.

monic_rnp3 wraps the recursion in a divide-and-conquer loop: expand at
reduced precision eta = min(n, 6n/d), keep the classes with small v (their
singular parts are already complete), recombine them into a monic factor G
via norms, divide, lift the complement back to full precision by Hensel's
lemma and recurse on it.  rnp3 adds the shift to a critical point given by
Q, the split into finite and at-infinity parts, and Laurent inversion of
the part whose roots escape to Y = infinity."""

from fractions import Fraction
import random

from . import dynev as dv
from . import tpoly as tp
from . import lifting as lf
from . import upoly as up
from .dynev import TriSet
from .tpoly import TruncBPoly, ParamFrame, s_trunc, s_val
from .polygon import newton_polygon, polygon_data
from .errors import NotSeparable, PrecisionTooLow, PreconditionViolated


def _ceil(fr):
    return -((-fr.numerator) // fr.denominator)


# ---------------------------------------------------------------------------
# the expansion record

class D5Rpe:
    """One conjugacy class of rational Puiseux expansions.

    x = gamma * T^e,  y = sum_k coeffs[k] * T^(off+k), complete for
    T-exponents below e*prec (prec is X-adic).  f counts the conjugates
    sharing this record (the level-2 degree of the owner set); negative
    off occurs only for classes centered at Y = infinity."""

    __slots__ = ("owner", "gamma", "e", "off", "coeffs", "r", "f", "v", "prec")

    def __init__(self, owner, gamma, e, off, coeffs, r, f, v, prec):
        self.owner = owner
        self.gamma = gamma
        self.e = e
        self.off = off
        self.coeffs = coeffs
        self.r = r
        self.f = f
        self.v = v
        self.prec = prec

    def gamma_pairs(self):
        J = self.owner
        return [(self.off + k, c) for k, c in enumerate(self.coeffs)
                if not J.is_zero(c)]

    @property
    def t_prec(self):
        tw = self.prec * self.e
        assert tw.denominator == 1
        return tw.numerator

    def cast(self, Jnew):
        J = self.owner
        return D5Rpe(Jnew, Jnew.cast(J, self.gamma), self.e, self.off,
                     [Jnew.cast(J, c) for c in self.coeffs], self.r,
                     Jnew.dp, self.v, self.prec)

    def __repr__(self):
        return "D5Rpe(e=%d, f=%d, r=%d, v=%s, prec=%s)" % (
            self.e, self.f, self.r, self.v, self.prec)


def diff_y(F):
    """Partial derivative in Y."""
    J = F.J
    rows = [[J.mul_base(c, J.K.from_int(i)) for c in F.rows[i]]
            for i in range(1, len(F.rows))]
    return TruncBPoly(J, rows, F.prec)


# ---------------------------------------------------------------------------
# the polygon recursion

def half_rnp3(H, I, n, seed=0, stats=None):
    """Singular parts of the RPEs of H above x = 0, certified window n.

    H must be monic in Y with separable series roots, over I, known mod
    X^{n+1} at least (certified edges reach coefficients at X^n itself).
    Returns [(TriSet, [D5Rpe])] holding exactly the classes whose window
    reaches their singular part (n - v >= r/e, equivalently prec >= r/e)."""
    assert H.J == I
    I.K.check_char(max(H.deg_y, 1))
    assert H.is_monic_y()
    assert H.prec >= n + 1 and n >= 1
    rng = random.Random(seed)
    out = []
    _half(H.truncated(n + 1) if H.prec > n + 1 else H, n,
          ParamFrame.identity(I), Fraction(0), Fraction(0), rng, out, stats)
    groups = {}
    for J, R in out:
        if R.prec >= Fraction(R.r, R.e):
            groups.setdefault(J, []).append(R)
    return list(groups.items())


def _half(H, n, frame, sep, N, rng, out, stats=None):
    """One node of the recursion; emits finished classes into out."""
    d = H.deg_y
    assert d >= 1
    if d == 1:
        tail = s_trunc(H.rows[0] if H.rows else [], n)
        _emit(H.J, frame, frame.close(tail), sep,
              N - Fraction(frame.tau, frame.e),
              Fraction(frame.tau + n, frame.e), out)
        return
    H2, B = tp.abhyankar(H)
    _node(H2, n, frame.shift_y(B), sep, N, rng, out, stats)


def _event(stats, rec):
    if stats is not None:
        stats.setdefault("events", []).append(rec)


def _node(H, n, frame, sep, N, rng, out, stats=None):
    """Post-shift node: zero root, polygon edges, descend."""
    e, tau = frame.e, frame.tau
    egs = list(_edge_groups(H, n))
    if len(egs) > 1:
        _event(stats, {"event": "split", "where": "edge-groups",
                       "children": len(egs)})
    for J2, HJ, groupings in egs:
        fr2 = frame if J2 == frame.J else frame.cast(J2)
        # every genuine slope of the visible support counts for separation
        # bookkeeping, including edges too steep for this window
        slopes = set(s for s, _ in groupings)
        for edge in newton_polygon(HJ).edges:
            if edge.m >= 0:
                slopes.add(edge.slope)
        zero_present = (s_val(HJ.rows[0], J2) is None) if HJ.rows else True
        if zero_present and slopes:
            v1 = s_val(HJ.rows[1], J2) if len(HJ.rows) > 1 else None
            if v1 is not None and v1 < n:
                sep_z = max(sep, Fraction(tau, e) + max(slopes) / e)
                _emit(J2, fr2, dict(fr2.terms), sep_z,
                      N + Fraction(v1, e),
                      Fraction(tau + (n - v1), e), out)
        for slope, rows in groupings:
            sqtot = sum(len(phi) - 1 for _, phi, _ in rows)
            q = rows[0][0].q
            steeper = any(s > slope for s in slopes)
            others = [s for s in slopes if s != slope]
            if q > 1 or sqtot >= 2 or zero_present or steeper:
                contrib = Fraction(tau, e) + slope / e
            elif others:
                contrib = Fraction(tau, e) + max(others) / e
            else:
                contrib = None
            sep2 = max(sep, contrib) if contrib is not None else sep
            for edge, phi, M in rows:
                _event(stats, {"event": "edge", "slope": edge.slope,
                               "q": edge.q, "m": edge.m,
                               "phi_degree": len(phi) - 1})
                _descend(HJ, n, fr2, sep2, N, edge, phi, M, rng, out, stats)


def _edge_groups(H, n):
    """polygon_data regrouped per D5 branch:
    [(J2, H over J2, [(slope, [(edge, phi, M), ...])])], slopes ascending."""
    per = {}
    order = []
    for J2, HJ, edge, phi, M in polygon_data(H, H.J, n):
        key = (J2, id(HJ))
        if key not in per:
            per[key] = (J2, HJ, {})
            order.append(key)
        per[key][2].setdefault(edge.slope, []).append((edge, phi, M))
    return [(per[k][0], per[k][1], sorted(per[k][2].items())) for k in order]


def _descend(H, n, frame, sep, N, edge, phi, M, rng, out, stats=None):
    q, m, l = edge.q, edge.m, edge.l
    n1 = q * n - l
    if n1 < 0:
        return
    branches = 0
    for Jn, iso in dv.primitive_element(H.J, phi, rng):
        branches += 1
        xi = iso.g3
        fr = frame if Jn == frame.J else _frame_iso(frame, iso)
        fre = fr.apply_edge(q, m, xi, edge.u, edge.v)
        N2 = N + Fraction(l, fre.e)
        if n1 == 0:
            # the edge coefficient itself is the last certified term (it
            # sits at X^n exactly) and deeper corrections lie strictly
            # above it; only a simple root finishes at this boundary
            if M == 1:
                _emit(Jn, fre, dict(fre.terms), sep,
                      N2 - Fraction(fre.tau, fre.e),
                      Fraction(fre.tau + 1, fre.e), out)
            continue
        Hn = H if Jn == H.J else TruncBPoly(
            Jn, [[iso.cast_elem(c) for c in row] for row in H.rows], H.prec)
        H2 = tp.puiseux_transform(Hn, q, m, l, edge.u, edge.v, xi, n1 + 1)
        for Jw, Ghat in lf.wpt(H2, n1):
            assert Ghat.deg_y == M
            _half(Ghat, n1, fre.cast(Jw), sep, N2, rng, out, stats)
    _event(stats, {"event": "phi", "degree": len(phi) - 1,
                   "branches": branches})
    if branches > 1:
        _event(stats, {"event": "split", "where": "primitive-element",
                       "children": branches})


def _frame_iso(frame, iso):
    cv = iso.cast_elem
    return ParamFrame(iso.new, cv(frame.gamma), frame.e, frame.tau,
                      cv(frame.alpha),
                      {k: cv(c) for k, c in frame.terms.items()})


def _emit(J, frame, terms, sep, v, prec, out):
    """Close a leaf; may split while trimming zero-divisor coefficients.

    Terms at or past the certified window are dropped: a Tschirnhaus shift
    can fold trace coefficients into Gamma beyond the exponent where the
    expansion stops being complete."""
    r = _ceil(frame.e * sep)
    if prec < Fraction(r, frame.e):
        # the window does not reach the singular part; the caller's filter
        # would drop it anyway
        return
    exps = sorted(k for k in terms if k < prec * frame.e)
    lo = exps[0] if exps else 0
    full = [J.zero] * ((exps[-1] - lo + 1) if exps else 0)
    for k in exps:
        full[k - lo] = terms[k]

    for Jb, ps in dv.reduce_pol([[frame.gamma] + full], J):
        row = ps[0]
        gam, cs = row[0], list(row[1:])
        off = lo
        while cs and Jb.is_zero(cs[0]):
            cs.pop(0)
            off += 1
        while cs and Jb.is_zero(cs[-1]):
            cs.pop()
        if not cs:
            off = 0
        assert not cs or off + len(cs) - 1 < prec * frame.e
        out.append((Jb, D5Rpe(Jb, gam, frame.e, off, cs, r, Jb.dp, v, prec)))


# ---------------------------------------------------------------------------
# norms: from one class back to a monic polynomial over K_Q

def _series_ops(J, P):
    return ([], [J.one],
            lambda f, g: tp.s_add(f, g, J),
            lambda f, g: tp.s_sub(f, g, J),
            lambda f, g: tp.s_mul(f, g, P, J))


def _jq_of(J):
    """The level-1-only set over the same Q."""
    return TriSet.over_q(J.K, list(J.Q))


def _jq_elem(Jq, qvec):
    if Jq.trivial:
        return qvec[0]
    return (Jq._q_pad(tuple(qvec)),)


def _class_norm(R, P):
    """Monic A over K_Q with the series of R among its roots, mod X^P.

    First the characteristic polynomial of multiplication by Gamma on
    K_J[T]/(T^e - X/gamma) (degree e over K_J), then the norm from K_J
    down to K_Q as a determinant (degree e*f over K_Q)."""
    J, e = R.owner, R.e
    assert R.off >= 0, "norms need a class not centered at infinity"
    ginv = J.inv(R.gamma)
    M = [[[] for _ in range(e)] for _ in range(e)]
    for k, c in R.gamma_pairs():
        for b in range(e):
            a, pw = (k + b) % e, (k + b) // e
            if pw >= P:
                continue
            ent = M[a][b]
            while len(ent) <= pw:
                ent.append(J.zero)
            ent[pw] = J.add(ent[pw], J.mul(c, J.pow(ginv, pw)))
    chi = dv.berkowitz(M, _series_ops(J, P))          # highest degree first
    A = TruncBPoly(J, [list(chi[e - t]) for t in range(e + 1)], P)

    Jq = _jq_of(J)
    dp = J.dp
    if dp == 1:
        if J.trivial:
            G = TruncBPoly(Jq, A.rows, P)
        else:
            G = TruncBPoly(Jq, [[_jq_elem(Jq, c[0]) for c in row]
                                for row in A.rows], P)
    else:
        # norm down to K_Q: determinant of multiplication by A on the
        # z2-power basis, with entries in K_Q[[X]][Y]
        zpows = [J.pow(J.z2(), s) for s in range(dp)]
        ent = [[[[Jq.zero] * P for _ in range(A.deg_y + 1)]
                for _ in range(dp)] for _ in range(dp)]
        for t, row in enumerate(A.rows):
            for x, c in enumerate(row):
                if x >= P or J.is_zero(c):
                    continue
                for s in range(dp):
                    w = J.mul(c, zpows[s])
                    for rr in range(dp):
                        ent[rr][s][t][x] = Jq.add(ent[rr][s][t][x],
                                                  _jq_elem(Jq, w[rr]))
        B = [[TruncBPoly(Jq, ent[rr][s], P) for s in range(dp)]
             for rr in range(dp)]
        zero = TruncBPoly(Jq, [], P)
        one = TruncBPoly(Jq, [[Jq.one]], P)
        chi2 = dv.berkowitz(B, (zero, one, lambda a, b: a.add(b),
                                lambda a, b: a.sub(b), lambda a, b: a.mul(b)))
        G = chi2[-1]
        if dp % 2:
            G = G.neg()
    assert G.deg_y == e * R.f and G.is_monic_y()
    return G


def norm_rpe(rpes, n):
    """The monic polynomial over K_Q whose series roots to X-precision n
    are exactly the given classes (all owners over the same Q).  Correct
    mod X^{n + max(v) + 1}."""
    assert rpes
    Q = rpes[0].owner.Q
    assert all(R.owner.Q == Q for R in rpes)
    for R in rpes:
        if R.prec < n:
            raise PrecisionTooLow(
                "class known to %s < requested %d" % (R.prec, n))
    nu = max(R.v for R in rpes)
    P = n + max(_ceil(nu), 0) + 1
    Jq = _jq_of(rpes[0].owner)
    G = TruncBPoly(Jq, [[Jq.one]], P)
    for R in rpes:
        G = G.mul(_class_norm(R, P))
    assert G.is_monic_y() and G.deg_y == sum(R.e * R.f for R in rpes)
    return G


# ---------------------------------------------------------------------------
# Laurent inversion (classes at Y = infinity)

def invert_rpe(R):
    """Replace the y-part by its reciprocal: (gamma T^e, 1/Gamma(T)).

    Used after expanding the Y-reciprocal of the part of F whose roots
    escape to infinity.  Returns [(TriSet, D5Rpe)] (regularizing the
    leading coefficient may split).  Precision drops by twice the
    T-valuation s of Gamma; the regularity index becomes max(-s, r - 2s);
    v is left to the caller."""
    J = R.owner
    pT = R.t_prec

    def fn(Jb, ps):
        cs = ps[0]
        s0 = next((k for k, c in enumerate(cs) if not Jb.is_zero(c)), None)
        if s0 is None:
            raise PrecisionTooLow("pole order exceeds the certified window")
        Jb.regular_check(cs[s0])
        return s0, cs[s0:]

    out = []
    for Jb, (s0, U) in dv.with_splits(J, [list(R.coeffs)], fn):
        s = R.off + s0
        assert s >= 1
        inv = tp.s_inv(U, pT - s, Jb)
        out.append((Jb, D5Rpe(Jb, Jb.cast(J, R.gamma), R.e, -s, inv,
                              max(-s, R.r - 2 * s), Jb.dp, None,
                              Fraction(pT - 2 * s, R.e))))
    return out


# ---------------------------------------------------------------------------
# regrouping branches by their critical-point factor

def _q_atoms(K, qlist):
    """Pairwise-coprime refinement of a set of monic polynomials over K."""
    atoms = [list(q) for q in qlist]
    changed = True
    while changed:
        changed = False
        for i in range(len(atoms)):
            for j in range(i + 1, len(atoms)):
                g = up.gcd(atoms[i], atoms[j], K)
                if up.deg(g) == 0:
                    continue
                if up.deg(g) < up.deg(atoms[i]) or \
                        up.deg(g) < up.deg(atoms[j]):
                    parts = [g]
                    for a in (atoms[i], atoms[j]):
                        co = up.monic(up.exact_div(a, g, K), K)
                        if up.deg(co) > 0:
                            parts.append(co)
                    atoms = [a for k, a in enumerate(atoms)
                             if k not in (i, j)] + parts
                    changed = True
                elif atoms[i] != atoms[j]:
                    atoms[j] = list(g)
                    changed = True
            if changed:
                break
    seen, outs = set(), []
    for a in atoms:
        t = tuple(a)
        if t not in seen:
            seen.add(t)
            outs.append(a)
    return outs


def regroup_by_q(parts):
    """[(atom Q tuple, [(TriSet, [D5Rpe])])]: restrict every branch to the
    common coprime refinement of the level-1 factors."""
    if not parts:
        return []
    K = parts[0][0].K
    atoms = _q_atoms(K, sorted({J.Q for J, _ in parts}))
    out = {}
    for J, rpes in parts:
        for a in atoms:
            if up.deg(up.gcd(list(J.Q), a, K)) != up.deg(a):
                continue
            t = tuple(a)
            if tuple(J.Q) == t:
                out.setdefault(t, []).append((J, rpes))
            else:
                Ja = J._with_q(list(t))
                out.setdefault(t, []).append(
                    (Ja, [R.cast(Ja) for R in rpes]))
    return sorted(out.items(), key=lambda kv: (len(kv[0]), repr(kv[0])))


def _merge_parts(parts):
    """Non-critical refinement and merge of [(TriSet, [D5Rpe])]."""
    if not parts:
        return []
    owners = [J for J, _ in parts]
    merged = []
    for Jc, origins in dv.remove_critical_pairs(owners):
        rs = []
        for i in origins:
            Ji, rpes = parts[i]
            rs.extend(rpes if Jc == Ji else [R.cast(Jc) for R in rpes])
        merged.append((Jc, rs))
    return merged


# ---------------------------------------------------------------------------
# cross-class regularity refinement

def _laurent_eval_rows(Gi, R, TP):
    """Coefficients of Gi(gamma*T^e, Y + Gamma(T)) as Laurent T-series mod
    T^TP, lowest Y-power first.  Gi lives over K_Q; R's owner refines it."""
    J = R.owner
    rows = [[J.cast(Gi.J, c) for c in row] for row in Gi.rows]
    D = len(rows) - 1
    pairs = R.gamma_pairs()
    goff = min((k for k, _ in pairs), default=0)
    gden = [J.zero] * ((max((k for k, _ in pairs), default=0) - goff + 1)
                       if pairs else 0)
    for k, c in pairs:
        gden[k - goff] = c
    gp = [(0, [J.one])]
    for _ in range(D):
        gp.append(tp._l_mul(gp[-1][0], gp[-1][1], goff, gden, TP, J))
    rowT = []
    for row in rows:
        rt = [J.zero] * min((len(row) - 1) * R.e + 1 if row else 0, TP)
        gj = J.one
        for x, c in enumerate(row):
            if R.e * x < TP and not J.is_zero(c):
                rt[R.e * x] = J.mul(c, gj)
            gj = J.mul(gj, R.gamma)
        rowT.append(rt)
    binom = [[1]]
    for t in range(1, D + 1):
        prev = binom[-1]
        binom.append([1] + [prev[k - 1] + (prev[k] if k < len(prev) else 0)
                            for k in range(1, t)] + [1])
    outs = []
    for k in range(D + 1):
        acc = (0, [])
        for t in range(k, D + 1):
            c = J.from_int(binom[t][k])
            po, pc = gp[t - k]
            term = tp._l_mul(0, rowT[t], po,
                             [J.mul(a, c) for a in pc], TP, J)
            acc = tp._l_add(acc[0], acc[1], term[0], term[1], J)
        outs.append(acc)
    return outs


def _laurent_val(off_cs, J, TP):
    off, cs = off_cs
    for k, c in enumerate(cs):
        if off + k >= TP:
            return None
        if not J.is_zero(c):
            return off + k
    return None


def refine_regularity(groups):
    """Recompute r across a full same-Q system of finite classes.

    The recursion's tracked r only sees separations inside one expansion
    call; after divide-and-conquer splits, classes from different factors
    never saw each other.  Shifting every class norm to a class's own
    parametrization recovers all separation orders: the candidates are
    (val c_a - val c_b)/(b - a) over the Y-coefficients c of the shifted
    norm, with a = 0 against other classes and a = 1 against the class's
    own norm.  When every comparison is certified within the window, r is
    replaced; otherwise the tracked value is kept."""
    flat = [R for _, rs in groups for R in rs]
    if not flat:
        return
    assert len({R.owner.Q for R in flat}) == 1
    Pn = max(_ceil(R.prec) for R in flat) + 2
    norms = [_class_norm(R, Pn) for R in flat]
    for R in flat:
        TP = R.t_prec
        J = R.owner
        best = Fraction(0)
        complete = True
        for S, Gi in zip(flat, norms):
            a = 1 if S is R else 0
            if S is R and S.e * S.f == 1:
                continue                     # no conjugates to separate from
            vals = [_laurent_val(oc, J, TP)
                    for oc in _laurent_eval_rows(Gi, R, TP)]
            if vals[a] is None:
                complete = False
                continue
            cands = [Fraction(vals[a] - vals[b], b - a)
                     for b in range(a + 1, len(vals)) if vals[b] is not None]
            if not cands:
                complete = False
                continue
            best = max(best, max(cands))
        if complete:
            R.r = max(_ceil(best), 0)


# ---------------------------------------------------------------------------
# divide and conquer at one critical-point factor

def _prec_need(n, d, cutoff):
    """X-precision an exact degree-d input must carry so every nested
    Hensel lift down the worst-case recursion chain has enough data (the
    polygon recursion itself reads one coefficient past its window)."""
    need = n + 1
    for k in range(max(cutoff, 2), d + 1):
        eta_k = min(Fraction(n), Fraction(6 * n, k))
        nG_k = int(2 * eta_k / 3)
        cap_k = max(1, min((2 * n) // k, (nG_k - 1) // 2))
        need += 3 * cap_k
    return need


def _as_exact(F, P):
    """Re-declare an exact polynomial at precision P."""
    if F.prec >= P:
        return F
    if F.prec < tp.len_max_row(F):
        raise PreconditionViolated(
            "input must be an exact polynomial (or carry X-precision %d)" % P)
    return TruncBPoly(F.J, F.rows, P)


def _mrnp(F, I, n, cutoff, rng, stats, depth=0):
    """Worker: flat [(TriSet, [D5Rpe])] for monic separable F over I,
    every v exact with respect to this F."""
    d = F.deg_y
    if stats is not None:
        stats["max_depth"] = max(stats.get("max_depth", 0), depth)
    if d == 0:
        return []
    if d < cutoff:
        return half_rnp3(F, I, n, seed=rng.randrange(1 << 30), stats=stats)
    eta = min(Fraction(n), Fraction(6 * n, d))
    neta = int(eta)
    if neta < 1:
        raise PrecisionTooLow("window collapses at degree %d" % d)
    parts = half_rnp3(F, I, neta, seed=rng.randrange(1 << 30), stats=stats)
    results = []
    for Qa, group in regroup_by_q(_merge_parts(parts)):
        Ia = I if tuple(I.Q) == Qa else I._with_q(list(Qa))
        Fa = F if Ia == I else F.cast(Ia)
        kept_parts = []
        for Jb, rs in group:
            kk = [R for R in rs if R.v < eta / 3]
            if kk:
                kept_parts.append((Jb, kk))
        kept = [R for _, rs in kept_parts for R in rs]
        dk = sum(R.e * R.f for R in kept)
        if dk == d:
            results.extend(kept_parts)
            continue
        if dk == 0:
            raise PrecisionTooLow(
                "no class with v < %s at degree %d" % (eta / 3, d))
        nG = int(2 * eta / 3)
        if nG < 1:
            raise PrecisionTooLow("norm window collapses at degree %d" % d)
        G = norm_rpe(kept, nG)
        Gq = G if G.J == Ia else G.cast(Ia)
        Ht = tp.quo(Fa, Gq, nG - 1)
        cap = max(1, min((2 * n) // d, (nG - 1) // 2))
        n_arg = _prec_need(n, d - dk, cutoff)
        if Fa.prec < n_arg + 3 * cap:
            raise PrecisionTooLow(
                "input carries X-precision %d of the %d needed to lift"
                % (Fa.prec, n_arg + 3 * cap))
        if stats is not None:
            stats.setdefault("lifts", []).append((Gq.deg_y, Ht.deg_y, n))
            _event(stats, {"event": "lift", "known_degree": Gq.deg_y,
                           "cofactor_degree": Ht.deg_y, "window": n})
        Gpad = TruncBPoly(Gq.J, Gq.rows, n_arg + 3 * cap)  # G is a polynomial
        for Jb, Gl, Hl in lf.hensel_lift(Fa, Gpad, Ht, n_arg, kappa_max=cap):
            for Jc, rs in _mrnp(Hl, Jb, n, cutoff, rng, stats, depth + 1):
                fixed = []
                for R in rs:
                    # v was tracked against the cofactor; as a class of F
                    # it picks up the extra factor val G(S)
                    Gc = TruncBPoly(R.owner,
                                    [[R.owner.cast(Gq.J, c) for c in row]
                                     for row in Gq.rows],
                                    max(Gq.prec, R.t_prec))
                    off, cs = tp.eval_param(Gc, R.gamma, R.e,
                                            R.gamma_pairs(), R.t_prec)
                    if not cs:
                        # val G(S) at or past the window: this class ends
                        # at n - v <= 0 and can never pass the filter
                        continue
                    R.v += Fraction(off, R.e)
                    R.prec = Fraction(n) - R.v
                    fixed.append(R)
                if fixed:
                    results.append((Jc, fixed))
        results.extend(kept_parts)
    return results


def monic_rnp3(F, Q, n, base_cutoff=6, seed=0, stats=None):
    """Singular parts of all RPEs of F above the roots of Q.

    F monic in Y and separable, an exact polynomial over K_Q (or over the
    base field); requires n >= val_X res_Y(F, F_Y) at the roots of Q.
    Returns [(Q_k, [D5Rpe])] over the atoms Q_k of Q the computation
    distinguishes; within each atom sum(e*f) = deg_Y F, and a class
    appears iff n - v >= r/e."""
    K = F.J.K
    d = F.deg_y
    K.check_char(max(d, 1))
    Qm = up.monic(list(Q), K)
    I = TriSet.over_q(K, Qm)
    if F.J.trivial and not I.trivial:
        F = TruncBPoly(I, [[I.from_base(c) for c in r] for r in F.rows],
                       F.prec)
    else:
        assert F.J == I or (F.J.Q == I.Q and F.J.dp == 1), \
            "F must live over K_Q"
    assert F.is_monic_y()
    F = _as_exact(F, _prec_need(n, d, base_cutoff))
    rng = random.Random(seed)
    parts = _mrnp(F, I, n, base_cutoff, rng, stats)
    out = []
    for Qa, group in regroup_by_q(_merge_parts(parts)):
        refine_regularity(group)
        kept = [(Jb, [R for R in rs
                      if Fraction(n) - R.v >= Fraction(R.r, R.e)])
                for Jb, rs in group]
        kept = [(Jb, rs) for Jb, rs in kept if rs]
        tot = sum(R.e * R.f for _, rs in kept for R in rs)
        if tot != d:
            raise PrecisionTooLow(
                "classes cover %d of %d above a factor of Q; raise n"
                % (tot, d))
        out.append((Qa, [R for _, rs in kept for R in rs]))
    return out


# ---------------------------------------------------------------------------
# the general case: shift to the critical point, split off Y = infinity

def rnp3(F, Q, n, base_cutoff=6, seed=0, stats=None):
    """RPEs of F above the roots of Q, including classes at Y = infinity.

    F is an exact polynomial over the base field, any Y-degree shape; Q is
    a squarefree polynomial in X over the base.  Returns [(Q_k, [D5Rpe])]
    with negative Gamma exponents marking poles; pole classes carry the
    precision left after inversion rather than n - v."""
    assert F.J.trivial, "rnp3 expects F over the base field"
    K = F.J.K
    d = F.deg_y
    K.check_char(max(d, 1))
    dy = diff_y(F)
    res = up.resultant_y([list(r) for r in F.rows],
                         [list(r) for r in dy.rows], K)
    if up.is_zero(up.strip(res, K)):
        raise NotSeparable("res_Y(F, F_Y) = 0")
    Qm = up.monic(list(Q), K)
    I = TriSet.over_q(K, Qm)
    PB = _prec_need(n, d, base_cutoff) + 1
    Fi = _as_exact(TruncBPoly(I, [[I.from_base(c) for c in r]
                                  for r in F.rows], F.prec), PB)
    Fsh = Fi.shifted_x(I.z1())
    rng = random.Random(seed)
    parts = []
    for Jb, u, F0, Finf in lf.monic_split(Fsh, PB - 1):
        d0, dinf = F0.deg_y, Finf.deg_y
        if d0 >= 1:
            # u and Finf are units along finite classes, so v transfers
            parts.extend(_mrnp(F0, Jb, n, base_cutoff, rng, stats))
        if dinf >= 1:
            Grec = tp.reciprocal_y(Finf, dinf)
            assert Grec.is_monic_y()
            rec = _mrnp(Grec, Jb, n, base_cutoff, rng, stats)
            for Qa, grp in regroup_by_q(_merge_parts(rec)):
                refine_regularity(grp)
                for Jr, rs in grp:
                    for R in rs:
                        for Jv, Ri in invert_rpe(R):
                            # chain rule through Y -> 1/Y: F_Y(S) equals
                            # -u * F0(S) * S^(d0+dinf-2) * Grec_Z(1/S)
                            Ri.v = R.v + (d0 + dinf - 2) * \
                                Fraction(Ri.off, Ri.e)
                            parts.append((Jv, [Ri]))
    out = []
    for Qa, group in regroup_by_q(_merge_parts(parts)):
        refine_regularity([(Jb, [R for R in rs if R.off >= 0])
                           for Jb, rs in group])
        kept = [(Jb, [R for R in rs
                      if Fraction(n) - R.v >= Fraction(R.r, R.e)])
                for Jb, rs in group]
        kept = [(Jb, rs) for Jb, rs in kept if rs]
        tot = sum(R.e * R.f for _, rs in kept for R in rs)
        if tot != d:
            raise PrecisionTooLow(
                "classes cover %d of %d above a factor of Q; raise n"
                % (tot, d))
        out.append((Qa, [R for _, rs in kept for R in rs]))
    return out
