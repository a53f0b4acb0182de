"""Newton polygons, truncated polygons and characteristic polynomials.

Support points are (i, j) = (Y-exponent, X-exponent).  An edge lies on
the line q*j + m*i = l with q > 0 and gcd(m, q) = 1; all support points
satisfy q*j + m*i >= l.  Edges are ordered by increasing slope m/q.
"""

from fractions import Fraction
from math import gcd

from .tpoly import TruncBPoly


class Edge:
    """One edge of a Newton polygon plus its Bezout data."""

    __slots__ = ("m", "q", "l", "i0", "j0", "i1", "j1", "points", "u", "v")

    def __init__(self, p0, p1, points):
        self.i0, self.j0 = p0
        self.i1, self.j1 = p1
        di = self.i1 - self.i0
        dj = self.j0 - self.j1
        g = gcd(di, abs(dj)) if dj else di
        self.q = di // g
        self.m = dj // g
        self.l = self.q * self.j0 + self.m * self.i0
        self.points = points
        if self.m >= 0:
            self.u, self.v = bezout_uv(self.m, self.q)
        else:
            self.u = self.v = None

    @property
    def slope(self):
        return Fraction(self.m, self.q)

    def key(self):
        return (self.m, self.q, self.l)

    def __repr__(self):
        return "Edge(m=%d, q=%d, l=%d; (%d,%d)-(%d,%d))" % (
            self.m, self.q, self.l, self.i0, self.j0, self.i1, self.j1)


def bezout_uv(m, q):
    """(u, v) with u*q - m*v = 1 and 0 <= v < q."""
    if q == 1:
        return 1, 0
    v = (-pow(m, -1, q)) % q
    u = (1 + m * v) // q
    assert u * q - m * v == 1
    return u, v


class NewtonPolygon:
    """Lower hull: vertex chain plus edges sorted by increasing m/q."""

    __slots__ = ("vertices", "edges")

    def __init__(self, vertices, edges):
        self.vertices = vertices
        self.edges = edges

    def __repr__(self):
        return "NewtonPolygon(%r)" % (self.vertices,)


def support(H, jmax=None):
    """Nonzero support of H as a sorted list of (i, j)."""
    J = H.J
    out = []
    for i, r in enumerate(H.rows):
        for j, c in enumerate(r):
            if jmax is not None and j > jmax:
                break
            if not J.is_zero(c):
                out.append((i, j))
    return out


def _lower_hull(pts):
    """Andrew monotone chain, keeping the lower boundary in j over i."""
    best = {}
    for i, j in pts:
        if i not in best or j < best[i]:
            best[i] = j
    cols = sorted(best.items())
    hull = []
    for i, j in cols:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (j - y1) - (y2 - y1) * (i - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append((i, j))
    return hull


def newton_polygon(H, jmax=None):
    """Lower hull of the (optionally X-truncated) support of H."""
    pts = support(H, jmax)
    assert pts, "polygon of the zero polynomial"
    hull = _lower_hull(pts)
    edges = []
    for a, b in zip(hull, hull[1:]):
        e = Edge(a, b, [])
        e.points = sorted(p for p in pts if e.q * p[1] + e.m * p[0] == e.l)
        edges.append(e)
    edges.sort(key=lambda e: e.slope)
    return NewtonPolygon(hull, edges)


def truncated_polygon(H, n):
    """Edges of the polygon of H mod X^{n+1} kept iff m >= 0 and l/q <= n.

    Every kept edge is an edge of the exact polygon of H: a discarded
    support point has j > n, so q*j + m*i >= q(n+1) > l puts it above the
    edge line — an argument that needs m >= 0, hence the slope filter."""
    pts = support(H, n)
    if not pts:
        return NewtonPolygon([], [])
    poly = newton_polygon(H, jmax=n)
    kept = [e for e in poly.edges if e.m >= 0 and Fraction(e.l, e.q) <= n]
    return NewtonPolygon(poly.vertices, kept)


def char_poly(H, edge):
    """phi(T) = sum over edge points (i, j) of c_ij T^((i - i0)/q)."""
    J = H.J
    deg = (edge.i1 - edge.i0) // edge.q
    out = [J.zero] * (deg + 1)
    for i, j in edge.points:
        out[(i - edge.i0) // edge.q] = J.add(out[(i - edge.i0) // edge.q],
                                             H.coeff(i, j))
    assert not J.is_zero(out[0]), "a0 is not minimal on the edge"
    return out


def polygon_data(H, I, n):
    """Regularize H, compute its n-truncated polygon and the squarefree
    decomposition of every edge characteristic polynomial, branching on
    zero divisors.  Rows: (TriSet, H_branch, Edge, phi, multiplicity)."""
    from .dynev import with_splits, _yun_raise

    shape = H.shape()
    prec = H.prec

    def fn(J, ps):
        HJ = TruncBPoly.unflat(J, ps[0], shape, prec)
        for r in HJ.rows:
            for c in r:
                if not J.is_zero(c):
                    J.regular_check(c)
        poly = truncated_polygon(HJ, n)
        data = []
        for e in poly.edges:
            phi = char_poly(HJ, e)
            linv = J.inv(phi[-1])
            phim = [J.mul(c, linv) for c in phi]
            dec = _yun_raise(J, phim)
            data.append((e, dec))
        return (HJ.rows, data)

    rows = []
    for J, (hrows, data) in with_splits(I, [H.flat()], fn):
        HJ = TruncBPoly(J, hrows, prec)
        for e, dec in data:
            for phi, M in dec:
                rows.append((J, HJ, e, phi, M))
    return rows


# ---------------------------------------------------------------------------
# SVG rendering (documentation output for --emit-polygon)

def polygon_svg(H, n=None):
    """Simple SVG picture of the support and lower hull of H."""
    pts = support(H, n)
    if not pts:
        return '<svg xmlns="http://www.w3.org/2000/svg" width="80" height="80"/>'
    hull = _lower_hull(pts)
    imax = max(p[0] for p in pts)
    jmax = max(p[1] for p in pts)
    sc, mg = 28, 30
    W, Hh = imax * sc + 2 * mg, jmax * sc + 2 * mg
    def xy(p):
        return (mg + p[0] * sc, Hh - mg - p[1] * sc)
    parts = ['<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d">' % (W, Hh)]
    parts.append('<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="#999"/>'
                 % (mg, Hh - mg, W - mg // 2, Hh - mg))
    parts.append('<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="#999"/>'
                 % (mg, Hh - mg, mg, mg // 2))
    path = " ".join("%d,%d" % xy(p) for p in hull)
    parts.append('<polyline points="%s" fill="none" stroke="#c00" stroke-width="2"/>' % path)
    for p in pts:
        x, y = xy(p)
        parts.append('<circle cx="%d" cy="%d" r="3" fill="#036"/>' % (x, y))
    for p in hull:
        x, y = xy(p)
        parts.append('<text x="%d" y="%d" font-size="10">(%d,%d)</text>'
                     % (x + 4, y - 4, p[0], p[1]))
    parts.append('</svg>')
    return "\n".join(parts)
