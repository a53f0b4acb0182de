"""Desingularisation above all critical points (X = infinity included).

The critical X-values of a separable F are the roots of the resultant
R_F = res_Y(F, F_Y).  Splitting R_F into squarefree factors Q_k of
multiplicity n_k, the expansions above the roots of Q_k are certified at
precision n_k exactly; the point at infinity is handled by expanding the
X-reciprocal above 0, whose resultant valuation is the degree defect
d_X(2 d_Y - 1) - deg R_F.  The ramification data of the full report feeds
the Riemann-Hurwitz formula for the genus of the projective curve."""

from . import upoly as up
from .tpoly import TruncBPoly, len_max_row
from .expand import diff_y, rnp3
from .errors import NotSeparable, PreconditionViolated, NegativeGenus


class DesingReport:
    """Expansions above every critical point of F.

    parts: [(Q_k, n_k, [D5Rpe])] with Q_k monic squarefree pairwise
    coprime and prod Q_k^{n_k} = R_F up to a constant (the Q_k here are
    the atoms the computation distinguishes, so one squarefree factor may
    contribute several entries sharing its multiplicity).  infinity_part
    holds the classes of the X-reciprocal above 0, empty when X = infinity
    is not critical.  genus is filled on request."""

    __slots__ = ("parts", "infinity_part", "genus")

    def __init__(self, parts, infinity_part, genus=None):
        self.parts = parts
        self.infinity_part = infinity_part
        self.genus = genus

    def __repr__(self):
        return "DesingReport(%d affine parts, %d at infinity, genus=%s)" % (
            len(self.parts), len(self.infinity_part), self.genus)


def x_reciprocal(F, dX):
    """X^dX * F(1/X, Y) as an exact polynomial."""
    J = F.J
    rows = []
    for r in F.rows:
        rr = [J.zero] * (dX + 1)
        for j, c in enumerate(r):
            rr[dX - j] = c
        rows.append(rr)
    return TruncBPoly(J, rows, max(F.prec, dX + 1))


def resultant_fy(F):
    """res_Y(F, F_Y) as a stripped coefficient list over the base field."""
    rows = [list(r) for r in F.rows]
    dyr = [list(r) for r in diff_y(F).rows]
    return up.strip(up.resultant_y(rows, dyr, F.J.K), F.J.K)


def desingularise(F, base_cutoff=6, seed=0, stats=None):
    """RPE systems above all critical points of F, including X = infinity.

    F must be an exact polynomial over the base field, separable and
    primitive in Y with d_Y >= 1.  Each squarefree factor of R_F is
    expanded at its multiplicity; infinity at the valuation of the
    reciprocal resultant."""
    assert F.J.trivial, "desingularise expects F over the base field"
    K = F.J.K
    d = F.deg_y
    assert d >= 1
    K.check_char(d)
    cont = []
    for r in F.rows:
        cont = up.gcd(cont, up.strip(list(r), K), K)
    if up.deg(cont) > 0:
        raise PreconditionViolated("F must be primitive in Y "
                                   "(Y-content has positive degree)")
    res = resultant_fy(F)
    if up.is_zero(res):
        raise NotSeparable("res_Y(F, F_Y) = 0")
    dX = len_max_row(F) - 1
    parts = []
    if up.deg(res) > 0:
        for Qk, nk in up.squarefree_decompose(up.monic(res, K), K):
            for Qa, rs in rnp3(F, Qk, nk, stats=stats, base_cutoff=base_cutoff,
                               seed=seed):
                parts.append((list(Qa), nk, rs))
    n_inf = dX * (2 * d - 1) - up.deg(res)
    infinity_part = []
    if n_inf > 0:
        # The X-reciprocal is exact, so widening its window only adds true
        # coefficients; the extra 2*dX covers the precision the Laurent
        # inversion spends on pole classes (pole order is at most dX).
        Ft = x_reciprocal(F, dX)
        for _, rs in rnp3(Ft, [K.zero, K.one], n_inf + 2 * dX, stats=stats,
                          base_cutoff=base_cutoff, seed=seed):
            infinity_part.extend(rs)
    return DesingReport(parts, infinity_part)


def genus(F, base_cutoff=6, seed=0, report=None, stats=None):
    """Genus of the projective curve of F by Riemann-Hurwitz.

    Requires F geometrically irreducible (not checked; a negative result
    raises NegativeGenus naming that assumption) and characteristic 0 or
    larger than max(d_X, d_Y).  A report from desingularise(F) may be
    passed to avoid recomputing it."""
    K = F.J.K
    K.check_char(max(F.deg_y, len_max_row(F) - 1, 1))
    rep = report if report is not None else \
        desingularise(F, base_cutoff=base_cutoff, seed=seed, stats=stats)
    tot = 0
    for Qa, _, rs in rep.parts:
        tot += (len(Qa) - 1) * sum(R.f * (R.e - 1) for R in rs)
    tot += sum(R.f * (R.e - 1) for R in rep.infinity_part)
    assert tot % 2 == 0
    g = 1 - F.deg_y + tot // 2
    if g < 0:
        raise NegativeGenus(
            "genus %d < 0: F is not geometrically irreducible" % g)
    rep.genus = g
    return g
