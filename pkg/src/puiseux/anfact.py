"""Analytic factorization of F in K[[X]][Y] to arbitrary X-precision.

A second driver of the expansion engine in expand.py: the conjugacy
classes of series roots of F above x = 0 are computed at the small window
forced by the local discriminant valuation, each class is folded into its
minimal polynomial over K[[X]] by a norm, and the resulting coarse
factorization F = u * prod(factors) is raised to the requested precision
by a multifactor Hensel lift.  Finite classes give Weierstrass factors
(monic, W(0, Y) = Y^(e*f)); classes at Y = infinity give reciprocal-monic
factors (V(0, Y) = 1).  Coefficients stay over the product rings dynamic
evaluation produced; each factor is irreducible over the true fields of
its class's triangular set, and the optional refine hook accepts a
univariate factorization oracle to split those products beforehand."""

import random

from . import dynev as dv
from . import tpoly as tp
from . import lifting as lf
from . import upoly as up
from .tpoly import TruncBPoly
from .expand import _as_exact, _class_norm, _mrnp, _prec_need
from .desing import resultant_fy
from .errors import NotSeparable, PrecisionTooLow


def _strip_x_content(F):
    """(k, F / X^k) for the largest power X^k dividing F."""
    J = F.J
    vals = [next((j for j, c in enumerate(r) if not J.is_zero(c)), None)
            for r in F.rows]
    vals = [v for v in vals if v is not None]
    assert vals, "F must be nonzero"
    k = min(vals)
    if k == 0:
        return 0, F
    return k, TruncBPoly(J, [list(r)[k:] for r in F.rows], F.prec - k)


def _refine_class(R, oracle):
    """Split a joined class along oracle(P), a list of the monic
    irreducible factors of its level-2 polynomial over the base field."""
    J = R.owner
    if J.dp == 1 or J.dq != 1:
        return [R]
    K = J.K
    facs = [up.strip(list(g), K) for g in oracle([v[0] for v in J.P])]
    if len(facs) <= 1:
        return [R]
    assert sum(len(g) - 1 for g in facs) == J.dp and \
        all(g[-1] == K.one for g in facs), \
        "refine oracle must return monic factors multiplying to P"
    out, cur = [], R
    for g in facs[:-1]:
        kids = cur.owner.split_children(
            dv.Split(2, tuple((c,) for c in g)))
        out.append(cur.cast(kids[0]))
        cur = cur.cast(kids[1])
    out.append(cur)
    return out


def analytic_factor(F, N, base_cutoff=6, seed=0, refine=None, stats=None):
    """Factor F in K[[X]][Y] into class-minimal polynomials mod X^(N+1).

    F must be an exact polynomial over the base field, separable in Y with
    d_Y >= 1.  Returns (u, pairs): u is the coefficient list of an
    X-series and pairs is a sequence of (TriSet, factor) with
    u * prod(factors) = F mod X^(N+1).  Each factor is the minimal
    polynomial over K[[X]] of one class of series roots; the TriSet is the
    class's coefficient set, and the factor is irreducible over each of
    its true fields.  refine, if given, maps a squarefree monic univariate
    coefficient list over K to its monic irreducible factors and is used
    to split joined classes before recombination."""
    assert F.J.trivial, "analytic_factor expects F over the base field"
    J = F.J
    K = J.K
    d = F.deg_y
    assert d >= 1 and N >= 0
    K.check_char(max(d, 1))
    xc, F1 = _strip_x_content(F)
    res = resultant_fy(F1)
    if up.is_zero(res):
        raise NotSeparable("res_Y(F, F_Y) = 0")
    vloc = next(i for i, c in enumerate(res) if c != K.zero)
    eta = max(2 * vloc, 1)
    cap = vloc
    PB = _prec_need(eta, d, base_cutoff) + 1
    need = max(PB, N + 1 + cap * (2 + max(d - 1, 0).bit_length()))
    Fx = _as_exact(F1, need)
    rng = random.Random(seed)

    # over a field base dynamic evaluation never splits, so exactly one
    # branch comes back from the unit/finite/infinity split
    [(Jb, ub, F0, Finf)] = lf.monic_split(Fx, PB - 1)
    assert Jb == J
    classes = []                          # (D5Rpe, at_infinity)
    if F0.deg_y >= 1:
        for _, rs in _mrnp(F0, J, eta, base_cutoff, rng, stats):
            classes.extend((R, False) for R in rs)
    if Finf.deg_y >= 1:
        Grec = tp.reciprocal_y(Finf, Finf.deg_y)
        assert Grec.is_monic_y()
        for _, rs in _mrnp(Grec, J, eta, base_cutoff, rng, stats):
            classes.extend((R, True) for R in rs)
    if sum(R.e * R.f for R, _ in classes) != d:
        raise PrecisionTooLow(
            "classes cover %d of %d series roots; internal window too small"
            % (sum(R.e * R.f for R, _ in classes), d))
    if refine is not None:
        classes = [(Ri, inf) for R, inf in classes
                   for Ri in _refine_class(R, refine)]

    # the norm of a class expanded at window eta is correct mod
    # X^(prec + v + 1); the coarse congruence holds at the worst of these
    n_start = eta + 1
    for R, _ in classes:
        n_start = min(n_start, int(R.prec + R.v) + 1)
    if n_start < 2 * cap + 1:
        raise PrecisionTooLow(
            "class windows certify the product only mod X^%d" % n_start)

    owners, seeds = [], []
    for R, at_inf in classes:
        W = _class_norm(R, n_start)
        if at_inf:
            W = tp.reciprocal_y(W, W.deg_y)
        owners.append(R.owner)
        seeds.append(W)

    if N + 1 <= n_start:
        u_fin = list(ub)[:N + 1]
        lifted = [g.truncated(N + 1) if g.prec > N + 1 else g for g in seeds]
    else:
        [(Kb, u_fin, lifted)] = lf.multifactor_lift(
            Fx, seeds, list(ub)[:n_start], n_start, N)
        assert Kb == J

    u_out = [K.zero] * xc + list(u_fin)
    u_out = u_out[:N + 1]
    while len(u_out) > 1 and u_out[-1] == K.zero:
        u_out.pop()

    prod = TruncBPoly(J, [list(u_out)], N + 1)
    for g in lifted:
        prod = prod.mul(g)
    Fc = F if F.prec <= N + 1 else F.truncated(N + 1)
    assert prod.sub(_as_exact(Fc, N + 1)).is_zero(), \
        "factor product does not reconstruct F"
    return u_out, list(zip(owners, lifted))
