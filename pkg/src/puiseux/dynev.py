"""Dynamic evaluation (D5) over bivariate triangular sets.

A triangular set I = (Q(Z1), P(Z1, Z2)) with Q monic squarefree over the
base field K and P monic in Z2, squarefree over K_Q = K[Z1]/(Q), presents
the product-of-fields ring K_I = K[Z1,Z2]/(Q,P).  Elements are dense
nested tuples: a tuple of deg_{Z2}(P) entries, each a tuple of deg(Q)
base-field coefficients.  Over the trivial set (both levels linear) an
element is just a bare base-field value, so field-only code pays nothing.

Inverting a zero divisor raises Split carrying a monic factor of Q or P;
with_splits catches it, refines the set, recasts the inputs and reruns the
(pure) computation on each branch.  Branch order is deterministic.
"""

from . import upoly as up
from .errors import RandomnessExhausted


class Split(Exception):
    """A zero divisor was hit; `factor` is a monic proper factor of Q
    (level 1, a coefficient tuple) or of P (level 2, a tuple of tuples)."""

    def __init__(self, level, factor):
        super().__init__("split at level %d" % level)
        self.level = level
        self.factor = factor


class TriSet:
    """Immutable bivariate triangular set and arithmetic context for K_I."""

    __slots__ = ("K", "Q", "P", "dq", "dp", "trivial", "zero", "one", "_hash")

    def __init__(self, K, Q, P):
        self.K = K
        self.Q = tuple(Q)
        self.P = tuple(tuple(v) for v in P)
        self.dq = len(self.Q) - 1
        self.dp = len(self.P) - 1
        self.trivial = self.dq == 1 and self.dp == 1
        if self.trivial:
            self.zero = K.zero
            self.one = K.one
        else:
            zv = (K.zero,) * self.dq
            ov = (K.one,) + (K.zero,) * (self.dq - 1)
            self.zero = (zv,) * self.dp
            self.one = (ov,) + (zv,) * (self.dp - 1)
        self._hash = hash((self.K, self.Q, self.P))

    # -- identity ---------------------------------------------------------

    @property
    def dI(self):
        return self.dq * self.dp

    def __eq__(self, other):
        return (isinstance(other, TriSet) and other.K == self.K
                and other.Q == self.Q and other.P == self.P)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "TriSet(dq=%d, dp=%d)" % (self.dq, self.dp)

    @classmethod
    def trivial_over(cls, K):
        """The set (Z1, Z2): K_I = K, elements stay bare."""
        return cls(K, (K.zero, K.one), ((K.zero,), (K.one,)))

    @classmethod
    def over_q(cls, K, Qlist):
        """(Q, Z2): K_I = K[Z1]/(Q)."""
        dq = len(Qlist) - 1
        zv = (K.zero,) * dq
        return cls(K, tuple(Qlist), (zv, (K.one,) + (K.zero,) * (dq - 1)))

    # -- level-1 kernels: K_Q vectors of length dq ------------------------

    def _q_zero(self):
        return (self.K.zero,) * self.dq

    def _q_one(self):
        return (self.K.one,) + (self.K.zero,) * (self.dq - 1)

    def _q_pad(self, cs):
        return tuple(cs) + (self.K.zero,) * (self.dq - len(cs))

    def _q_add(self, u, v):
        K = self.K
        return tuple(K.add(a, b) for a, b in zip(u, v))

    def _q_sub(self, u, v):
        K = self.K
        return tuple(K.sub(a, b) for a, b in zip(u, v))

    def _q_neg(self, u):
        K = self.K
        return tuple(K.neg(a) for a in u)

    def _q_mul(self, u, v):
        K = self.K
        if self.dq == 1:
            return (K.mul(u[0], v[0]),)
        prod = up.mul(list(u), list(v), K)
        if len(prod) > self.dq:
            prod = up.rem(prod, list(self.Q), K)
        return self._q_pad(prod)

    def _q_smul(self, u, c):
        K = self.K
        return tuple(K.mul(a, c) for a in u)

    def _q_is_zero(self, u):
        K = self.K
        return all(K.is_zero(a) for a in u)

    def _q_inv(self, u):
        """Inverse in K_Q; raises Split(1, g) on zero divisors."""
        K = self.K
        if self.dq == 1:
            return (K.inv(u[0]),)
        g, s, _ = up.xgcd(list(u), list(self.Q), K)
        if up.deg(g) == 0:
            return self._q_pad(up.rem(s, list(self.Q), K))
        if up.deg(g) == self.dq:
            raise ZeroDivisionError("inverse of 0 in K_Q")
        raise Split(1, tuple(g))

    # -- Z2-polynomial kernels over K_Q (lists of vectors, lowest first) --

    def _z2_strip(self, f):
        n = len(f)
        while n and self._q_is_zero(f[n - 1]):
            n -= 1
        return f[:n]

    def _z2_rem_monic(self, f, g):
        """Remainder of f by monic g (both lists of K_Q vectors)."""
        r = list(f)
        dg = len(g) - 1
        for k in range(len(r) - 1, dg - 1, -1):
            c = r[k]
            if self._q_is_zero(c):
                continue
            for j in range(dg):
                r[k - dg + j] = self._q_sub(r[k - dg + j], self._q_mul(c, g[j]))
        return self._z2_strip(r[:dg])

    def _z2_divexact_monic(self, f, g):
        r = list(f)
        dg = len(g) - 1
        q = [self._q_zero()] * max(len(r) - dg, 0)
        for k in range(len(r) - 1, dg - 1, -1):
            c = r[k]
            q[k - dg] = c
            if self._q_is_zero(c):
                continue
            for j in range(dg + 1):
                r[k - dg + j] = self._q_sub(r[k - dg + j], self._q_mul(c, g[j]))
        assert not self._z2_strip(r), "division by a non-factor"
        return q

    # -- element arithmetic ----------------------------------------------

    def from_int(self, n):
        return self.from_base(self.K.from_int(n))

    def from_base(self, c):
        if self.trivial:
            return c
        v = (c,) + (self.K.zero,) * (self.dq - 1)
        return (v,) + (self._q_zero(),) * (self.dp - 1)

    def z1(self):
        """The class of Z1 (the level-1 generator)."""
        if self.dq == 1:
            return self.from_base(self.K.neg(self.Q[0]))
        v = (self.K.zero, self.K.one) + (self.K.zero,) * (self.dq - 2)
        return (v,) + (self._q_zero(),) * (self.dp - 1)

    def z2(self):
        """The class of Z2 (the level-2 generator)."""
        if self.dp == 1:
            neg = self._q_neg(self.P[0])
            if self.trivial:
                return neg[0]
            return (neg,)
        return (self._q_zero(), self._q_one()) + (self._q_zero(),) * (self.dp - 2)

    def make_elem(self, vecs):
        """Element from a raw Z2-major list of coefficient lists."""
        K = self.K
        red = [up.rem(list(v), list(self.Q), K) if len(v) > self.dq else list(v)
               for v in vecs]
        red = [self._q_pad(v) for v in red]
        if len(red) > self.dp:
            red = self._z2_rem_monic(red, [self._q_pad(v) for v in self.P])
        red = list(red) + [self._q_zero()] * (self.dp - len(red))
        if self.trivial:
            return red[0][0]
        return tuple(red)

    def add(self, a, b):
        if self.trivial:
            return self.K.add(a, b)
        return tuple(self._q_add(u, v) for u, v in zip(a, b))

    def sub(self, a, b):
        if self.trivial:
            return self.K.sub(a, b)
        return tuple(self._q_sub(u, v) for u, v in zip(a, b))

    def neg(self, a):
        if self.trivial:
            return self.K.neg(a)
        return tuple(self._q_neg(u) for u in a)

    def mul(self, a, b):
        if self.trivial:
            return self.K.mul(a, b)
        dp = self.dp
        if dp == 1:
            return (self._q_mul(a[0], b[0]),)
        prod = [self._q_zero()] * (2 * dp - 1)
        for i, u in enumerate(a):
            if self._q_is_zero(u):
                continue
            for j, v in enumerate(b):
                if self._q_is_zero(v):
                    continue
                prod[i + j] = self._q_add(prod[i + j], self._q_mul(u, v))
        for k in range(2 * dp - 2, dp - 1, -1):
            c = prod[k]
            if self._q_is_zero(c):
                continue
            for j in range(dp):
                prod[k - dp + j] = self._q_sub(prod[k - dp + j], self._q_mul(c, self.P[j]))
        return tuple(prod[:dp])

    def mul_base(self, a, c):
        if self.trivial:
            return self.K.mul(a, c)
        return tuple(self._q_smul(u, c) for u in a)

    def is_zero(self, a):
        if self.trivial:
            return self.K.is_zero(a)
        return a == self.zero

    def eq(self, a, b):
        if self.trivial:
            return self.K.eq(a, b)
        return a == b

    def pow(self, a, e):
        out = self.one
        b = a
        while e:
            if e & 1:
                out = self.mul(out, b)
            b = self.mul(b, b)
            e >>= 1
        return out

    def rand(self, rng):
        if self.trivial:
            return self.K.rand(rng)
        return tuple(tuple(self.K.rand(rng) for _ in range(self.dq))
                     for _ in range(self.dp))

    def inv(self, a):
        """Inverse in K_I; raises Split on zero divisors."""
        if self.trivial:
            return self.K.inv(a)
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of 0 in K_I")
        if self.dp == 1:
            return (self._q_inv(a[0]),)
        # extended Euclid of a against P over K_Q, tracking the a-cofactor
        r0 = [self._q_pad(v) for v in self.P]
        r1 = self._z2_strip(list(a))
        t0, t1 = [], [self._q_one()]
        while r1:
            linv = self._q_inv(r1[-1])
            r1 = [self._q_mul(c, linv) for c in r1]
            t1 = [self._q_mul(c, linv) for c in t1]
            q, r = self._z2_quo_rem_monic(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, self._z2_sub(t0, self._z2_mul(q, t1))
        if len(r0) == 1:
            # r0 is monic constant 1; t0 * a = 1 mod P
            t0 = self._z2_rem_monic(t0, [self._q_pad(v) for v in self.P])
            t0 = list(t0) + [self._q_zero()] * (self.dp - len(t0))
            return tuple(t0)
        raise Split(2, tuple(self._q_pad(v) for v in r0))

    def _z2_quo_rem_monic(self, f, g):
        r = list(f)
        dg = len(g) - 1
        q = [self._q_zero()] * max(len(r) - dg, 0)
        for k in range(len(r) - 1, dg - 1, -1):
            c = r[k]
            q[k - dg] = c
            if self._q_is_zero(c):
                continue
            for j in range(dg + 1):
                r[k - dg + j] = self._q_sub(r[k - dg + j], self._q_mul(c, g[j]))
        return q, self._z2_strip(r[:dg])

    def _z2_sub(self, f, g):
        n = max(len(f), len(g))
        out = []
        for i in range(n):
            u = f[i] if i < len(f) else self._q_zero()
            v = g[i] if i < len(g) else self._q_zero()
            out.append(self._q_sub(u, v))
        return self._z2_strip(out)

    def _z2_mul(self, f, g):
        if not f or not g:
            return []
        prod = [self._q_zero()] * (len(f) + len(g) - 1)
        for i, u in enumerate(f):
            if self._q_is_zero(u):
                continue
            for j, v in enumerate(g):
                prod[i + j] = self._q_add(prod[i + j], self._q_mul(u, v))
        return self._z2_strip(prod)

    def regular_check(self, a):
        """Raise Split if the nonzero element a is a zero divisor."""
        if self.trivial:
            return
        r0 = [self._q_pad(v) for v in self.P]
        r1 = self._z2_strip(list(a))
        while r1:
            linv = self._q_inv(r1[-1])
            r1 = [self._q_mul(c, linv) for c in r1]
            _, r = self._z2_quo_rem_monic(r0, r1)
            r0, r1 = r1, r
        if len(r0) > 1:
            raise Split(2, tuple(self._q_pad(v) for v in r0))

    # -- refinement -------------------------------------------------------

    def split_children(self, s):
        K = self.K
        if s.level == 1:
            g = list(s.factor)
            cof, r = up.quo_rem(list(self.Q), g, K)
            assert not r, "split factor does not divide Q"
            kids = [self._with_q(g), self._with_q(cof)]
        else:
            gP = tuple(self._q_pad(tuple(v)) for v in s.factor)
            cof = self._z2_divexact_monic([self._q_pad(tuple(v)) for v in self.P],
                                          list(gP))
            kids = [TriSet(K, self.Q, gP),
                    TriSet(K, self.Q, _monic_close(self, cof))]
        assert sum(k.dI for k in kids) == self.dI, "degree not conserved"
        return kids

    def _with_q(self, newQ):
        K = self.K
        dq = len(newQ) - 1
        newP = []
        for v in self.P:
            r = up.rem(list(v), newQ, K) if len(v) > dq else list(v)
            newP.append(tuple(r) + (K.zero,) * (dq - len(r)))
        return TriSet(K, tuple(newQ), tuple(newP))

    def cast(self, parent, a):
        """Image in this refined set of a parent element."""
        if parent.trivial:
            return a if self.trivial else self.from_base(a)
        vecs = [list(v) for v in a]
        if self.Q != parent.Q:
            vecs = [list(self._q_pad(up.rem(v, list(self.Q), self.K)
                                     if len(v) > self.dq else v)) for v in vecs]
        else:
            vecs = [list(v) for v in vecs]
        if self.dp < len(vecs):
            vecs = [list(v) for v in
                    self._z2_rem_monic([self._q_pad(v) for v in vecs],
                                       [self._q_pad(tuple(w)) for w in self.P])]
        vecs = [self._q_pad(v) for v in vecs] + [self._q_zero()] * (self.dp - len(vecs))
        if self.trivial:
            return vecs[0][0]
        return tuple(vecs)


def _monic_close(I, veclist):
    """Normalize a monic Z2-poly (list of K_Q vectors) into a P tuple."""
    out = [I._q_pad(tuple(v)) for v in veclist]
    return tuple(out)


# ---------------------------------------------------------------------------
# univariate polynomials over K_I ("ring polys"): plain lists of elements,
# lowest degree first, trailing zeros stripped.

def rp_strip(f, J):
    n = len(f)
    while n and J.is_zero(f[n - 1]):
        n -= 1
    return f[:n]


def rp_add(f, g, J):
    n = max(len(f), len(g))
    out = [J.add(f[i] if i < len(f) else J.zero, g[i] if i < len(g) else J.zero)
           for i in range(n)]
    return rp_strip(out, J)


def rp_sub(f, g, J):
    n = max(len(f), len(g))
    out = [J.sub(f[i] if i < len(f) else J.zero, g[i] if i < len(g) else J.zero)
           for i in range(n)]
    return rp_strip(out, J)


def rp_neg(f, J):
    return [J.neg(c) for c in f]


def rp_smul(f, c, J):
    if J.is_zero(c):
        return []
    return rp_strip([J.mul(a, c) for a in f], J)


def rp_mul(f, g, J):
    if not f or not g:
        return []
    out = [J.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if J.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = J.add(out[i + j], J.mul(a, b))
    return rp_strip(out, J)


def rp_diff(f, J):
    return rp_strip([J.mul_base(c, J.K.from_int(i)) for i, c in enumerate(f)][1:], J)


def rp_quo_rem_monic(f, g, J):
    """Division by monic g: multiplications and subtractions only."""
    r = list(f)
    dg = len(g) - 1
    q = [J.zero] * max(len(r) - dg, 0)
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        q[k - dg] = c
        if J.is_zero(c):
            continue
        for j in range(dg + 1):
            r[k - dg + j] = J.sub(r[k - dg + j], J.mul(c, g[j]))
    return rp_strip(q, J), rp_strip(r[:dg], J)


def rp_divexact_monic(f, g, J):
    q, r = rp_quo_rem_monic(f, g, J)
    assert not r, "division by a non-factor"
    return q


def rp_eval(f, x, J):
    acc = J.zero
    for c in reversed(f):
        acc = J.add(J.mul(acc, x), c)
    return acc


def rp_pow(f, e, J):
    out = [J.one]
    b = f
    while e:
        if e & 1:
            out = rp_mul(out, b, J)
        b = rp_mul(b, b, J)
        e >>= 1
    return out


# ---------------------------------------------------------------------------
# the split driver

def with_splits(I, polys, fn, noncritical=True):
    """Run fn(J, polys) across the refinement tree of I.

    polys is a list of coefficient lists over K_I (recast on every split);
    returns [(leaf TriSet, fn result)].  With noncritical=True the leaf
    sets are refined to a pairwise non-critical decomposition (rerunning fn
    as needed) before returning.
    """
    done = []
    stack = [(I, polys)]
    while stack:
        J, ps = stack.pop()
        try:
            done.append((J, ps, fn(J, ps)))
        except Split as s:
            for child in reversed(J.split_children(s)):
                stack.append((child, [[child.cast(J, c) for c in p] for p in ps]))
        if not stack and noncritical and len(done) > 1:
            refined = _refine_noncritical([d[0] for d in done])
            if refined is not None:
                new_stack = []
                for child, origin in refined:
                    J0, ps0, _ = done[origin]
                    new_stack.append((child, [[child.cast(J0, c) for c in p] for p in ps0]))
                stack = list(reversed(new_stack))
                done = []
    return [(J, res) for J, _, res in done]


def _refine_noncritical(parts):
    """None if parts are pairwise non-critical; else a refined list of
    (child TriSet, origin index).  Level-1 gcds are base-field gcds; level-2
    gcds over K_Q may split Q, which is folded into the same refinement."""
    work = [(J, i) for i, J in enumerate(parts)]
    changed = False
    restart = True
    while restart:
        restart = False
        for a in range(len(work)):
            for b in range(a + 1, len(work)):
                Ja, ia = work[a]
                Jb, ib = work[b]
                K = Ja.K
                if Ja.Q != Jb.Q:
                    g = up.gcd(list(Ja.Q), list(Jb.Q), K)
                    if up.deg(g) == 0:
                        continue
                    repl = []
                    for (J, i) in (work[a], work[b]):
                        if tuple(g) == J.Q:
                            repl.append((J, i))
                            continue
                        cof = up.exact_div(list(J.Q), g, K)
                        repl.append((J._with_q(list(g)), i))
                        if up.deg(cof) > 0:
                            repl.append((J._with_q(cof), i))
                    work = [w for k, w in enumerate(work) if k not in (a, b)] + repl
                    changed = restart = True
                    break
                if Ja.P == Jb.P:
                    continue  # identical sets: caller's merge policy
                split = _refine_p_pair(Ja, Jb)
                if split is None:
                    continue
                kidsa, kidsb = split
                repl = [(J, ia) for J in kidsa] + [(J, ib) for J in kidsb]
                work = [w for k, w in enumerate(work) if k not in (a, b)] + repl
                changed = restart = True
                break
            if restart:
                break
    if not changed:
        return None
    for i in set(i for _, i in work):
        assert sum(J.dI for J, j in work if j == i) == parts[i].dI
    return work


def _refine_p_pair(Ja, Jb):
    """Split data for two sets sharing Q with distinct P's, or None if the
    P's are coprime over K_Q.  May itself discover a Q-split."""
    Jq = TriSet.over_q(Ja.K, list(Ja.Q))
    A = [Jq.make_elem([list(v)]) for v in Ja.P]
    B = [Jq.make_elem([list(v)]) for v in Jb.P]
    try:
        g, _, _ = _xgcd_raise(Jq, A, B)
    except Split as s:
        assert s.level == 1  # K_Q scalars only split through Q
        gq = list(s.factor)
        kidsa = [Ja._with_q(gq), Ja._with_q(up.exact_div(list(Ja.Q), gq, Ja.K))]
        kidsb = [Jb._with_q(gq), Jb._with_q(up.exact_div(list(Jb.Q), gq, Jb.K))]
        return kidsa, kidsb
    if len(g) <= 1:
        return None
    gvec = [Jq_elem_to_vec(Jq, c) for c in g]
    kids = []
    for J in (Ja, Jb):
        gP = _monic_close(J, gvec)
        if gP == J.P:
            kids.append([J])
            continue
        cof = J._z2_divexact_monic([J._q_pad(tuple(v)) for v in J.P],
                                   [J._q_pad(tuple(v)) for v in gvec])
        kids.append([TriSet(J.K, J.Q, gP), TriSet(J.K, J.Q, _monic_close(J, cof))])
    return kids[0], kids[1]


def Jq_elem_to_vec(Jq, c):
    """K_Q element of the helper set (Q, Z2) as a plain coefficient tuple."""
    if Jq.trivial:
        return (c,)
    return c[0]


# ---------------------------------------------------------------------------
# raising (internal) versions of the D5 operations

def _xgcd_raise(J, A, B):
    """Monic extended Euclid over K_I; splits on zero-divisor leading
    coefficients.  Returns (g, u, v) with u*A + v*B = g."""
    r0, r1 = rp_strip(list(A), J), rp_strip(list(B), J)
    s0, s1 = [J.one], []
    t0, t1 = [], [J.one]
    while r1:
        linv = J.inv(r1[-1])
        r1 = rp_smul(r1, linv, J)
        s1 = rp_smul(s1, linv, J)
        t1 = rp_smul(t1, linv, J)
        q, r = rp_quo_rem_monic(r0, r1, J)
        r0, r1 = r1, r
        s0, s1 = s1, rp_sub(s0, rp_mul(q, s1, J), J)
        t0, t1 = t1, rp_sub(t0, rp_mul(q, t1, J), J)
    if not r0:
        return [], [], []
    linv = J.inv(r0[-1])
    return rp_smul(r0, linv, J), rp_smul(s0, linv, J), rp_smul(t0, linv, J)


def _gcd_raise(J, A, B):
    r0, r1 = rp_strip(list(A), J), rp_strip(list(B), J)
    while r1:
        linv = J.inv(r1[-1])
        r1 = rp_smul(r1, linv, J)
        _, r = rp_quo_rem_monic(r0, r1, J)
        r0, r1 = r1, r
    if not r0:
        return []
    return rp_smul(r0, J.inv(r0[-1]), J)


def _yun_raise(J, f):
    """Yun's squarefree decomposition over K_I; splits as needed."""
    df = rp_diff(f, J)
    u = _gcd_raise(J, f, df)
    if len(u) == 1:
        return [(rp_smul(f, J.inv(f[-1]), J), 1)]
    v = rp_divexact_monic(f, u, J)
    w = rp_divexact_monic(df, u, J)
    out = []
    i = 1
    while len(v) > 1:
        t = rp_sub(w, rp_diff(v, J), J)
        h = _gcd_raise(J, v, t)
        if len(h) > 1:
            out.append((h, i))
        v = rp_divexact_monic(v, h, J)
        w = rp_divexact_monic(t, h, J)
        i += 1
    return out


# ---------------------------------------------------------------------------
# public D5 operations

def regularize(a, I):
    """[(TriSet, image, is_invertible)] with each image zero or invertible."""
    def fn(J, ps):
        x = ps[0][0]
        if J.is_zero(x):
            return (x, False)
        J.regular_check(x)
        return (x, True)
    return [(J, r[0], r[1]) for J, r in with_splits(I, [[a]], fn)]


def d5_xgcd(A, B, I):
    """[(TriSet, g, u, v)] with u*A + v*B = g monic per branch."""
    out = with_splits(I, [list(A), list(B)], lambda J, ps: _xgcd_raise(J, ps[0], ps[1]))
    return [(J, g, u, v) for J, (g, u, v) in out]


def d5_squarefree(phi, I):
    """[(TriSet, [(factor, multiplicity)])], Yun over each branch."""
    I.K.check_char(len(phi) - 1)
    out = with_splits(I, [list(phi)], lambda J, ps: _yun_raise(J, ps[0]))
    return out


def reduce_pol(rows, I):
    """rows: list of coefficient lists over K_I.  [(TriSet, rows)] with every
    nonzero coefficient invertible per branch (zero coefficients stay)."""
    def fn(J, ps):
        for p in ps:
            for c in p:
                if not J.is_zero(c):
                    J.regular_check(c)
        return ps
    return with_splits(I, [list(r) for r in rows], fn)


def remove_critical_pairs(parts):
    """Non-critical refinement of a list of TriSets.

    Returns a list of (TriSet, origins) where origins is the sorted list of
    input indices mapping onto that part; identical refined parts merge."""
    refined = _refine_noncritical(list(parts))
    if refined is None:
        refined = [(J, i) for i, J in enumerate(parts)]
    merged = {}
    for J, i in refined:
        merged.setdefault(J, set()).add(i)
    out = [(J, sorted(v)) for J, v in merged.items()]
    out.sort(key=lambda t: t[1][0])
    return out


def gauss_solve(A, b, J):
    """Solve A x = b over K_I, or None if inconsistent.

    Zero-divisor pivots raise Split (D5 discipline); free variables are set
    to zero.  A is a list of rows, b the right-hand column."""
    m = len(A)
    ncols = len(A[0]) if m else 0
    M = [row[:] + [b[i]] for i, row in enumerate(A)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, m) if not J.is_zero(M[k][c])), None)
        if piv is None:
            continue
        J.regular_check(M[piv][c])
        M[r], M[piv] = M[piv], M[r]
        inv = J.inv(M[r][c])
        M[r] = [J.mul(inv, e) for e in M[r]]
        for k in range(m):
            if k != r and not J.is_zero(M[k][c]):
                f = M[k][c]
                M[k] = [J.sub(e, J.mul(f, g)) for e, g in zip(M[k], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for k in range(r, m):
        if not J.is_zero(M[k][ncols]):
            return None
    x = [J.zero] * ncols
    for row, c in enumerate(pivots):
        x[c] = M[row][ncols]
    return x


# ---------------------------------------------------------------------------
# Berkowitz division-free characteristic polynomial

def berkowitz(M, ring):
    """char(T) coefficients, highest degree first, of the square matrix M
    over a commutative ring given as an ops tuple
    (zero, one, add, sub, mul)."""
    zero, one, radd, rsub, rmul = ring
    n = len(M)
    if n == 0:
        return [one]
    if n == 1:
        return [one, rsub(zero, M[0][0])]
    a = M[0][0]
    R = M[0][1:]
    C = [row[0] for row in M[1:]]
    A = [row[1:] for row in M[1:]]
    items = [one, rsub(zero, a)]
    w = list(C)
    for _ in range(n - 2):
        acc = zero
        for x, y in zip(R, w):
            acc = radd(acc, rmul(x, y))
        items.append(rsub(zero, acc))
        w = [_dotrow(row, w, ring) for row in A]
    acc = zero
    for x, y in zip(R, w):
        acc = radd(acc, rmul(x, y))
    items.append(rsub(zero, acc))
    prev = berkowitz(A, ring)
    out = []
    for i in range(n + 1):
        acc = zero
        for j in range(len(items)):
            if 0 <= i - j < len(prev):
                acc = radd(acc, rmul(items[j], prev[i - j]))
        out.append(acc)
    return out


def _dotrow(row, w, ring):
    zero, one, radd, rsub, rmul = ring
    acc = zero
    for x, y in zip(row, w):
        acc = radd(acc, rmul(x, y))
    return acc


# ---------------------------------------------------------------------------
# primitive element: collapse (Q, P, phi) to a bivariate set

class Iso:
    """Isomorphism data K_I[Z3]/(phi) ~ K_new: images of z2 and z3."""

    __slots__ = ("old", "new", "lam", "g2", "g3")

    def __init__(self, old, new, lam, g2, g3):
        self.old = old
        self.new = new
        self.lam = lam
        self.g2 = g2
        self.g3 = g3

    def cast_elem(self, a):
        """Image of a K_old element (substitute z2 -> g2)."""
        old, new = self.old, self.new
        if old.trivial:
            return new.from_base(a)
        acc = new.zero
        for vec in reversed(a):
            acc = new.mul(acc, self.g2)
            acc = new.add(acc, _embed_qvec(new, vec))
        return acc

    def cast_poly(self, f):
        return [self.cast_elem(c) for c in f]


def _embed_qvec(J, vec):
    """K_Q coefficient vector as an element of J (Z2-degree 0)."""
    if J.trivial:
        return vec[0]
    v = J._q_pad(tuple(vec))
    return (v,) + (J._q_zero(),) * (J.dp - 1)


def primitive_element(I, phi, rng, budget=None):
    """[(TriSet, Iso)] presenting K_I[Z3]/(phi) as bivariate sets.

    phi must be monic and squarefree over K_I.  Las Vegas: draws lambda
    until the characteristic polynomial of z2 + lambda*z3 is squarefree;
    raises RandomnessExhausted past the budget (default 4*d^2 draws)."""
    dphi = len(phi) - 1
    if dphi == 1:
        root = I.neg(phi[0])
        return [(I, Iso(I, I, I.K.zero, I.z2(), root))]
    d = I.dI * dphi
    if budget is None:
        budget = 4 * d * d

    def fn(J, ps):
        ph = ps[0]
        for _ in range(budget):
            lam = J.K.rand(rng)
            chi = _charpoly_of_zeta(J, ph, lam)
            # squarefree test over K_Q
            Jq = TriSet.over_q(J.K, list(J.Q))
            chiq = [_vec_as_jq(Jq, v) for v in chi]
            g = _gcd_raise(Jq, chiq, rp_diff(chiq, Jq))
            if len(g) != 1:
                continue
            new = TriSet(J.K, J.Q, tuple(J._q_pad(tuple(v)) for v in chi))
            g3 = _solve_for_z3(J, ph, lam, chi, new)
            g2 = new.sub(new.z2(), new.mul_base(g3, lam))
            return Iso(J, new, lam, g2, g3)
        raise RandomnessExhausted("no squarefree candidate after %d draws" % budget)

    out = with_splits(I, [list(phi)], fn)
    return [(iso.new, iso) for _, iso in out]


def _vec_as_jq(Jq, vec):
    if Jq.trivial:
        return vec[0]
    return (Jq._q_pad(tuple(vec)),)


def _charpoly_of_zeta(J, phi, lam):
    """char poly (list of K_Q vectors, lowest first, monic) of multiplication
    by z2 + lam*z3 on K_J[Z3]/(phi), as a K_Q-linear map of dim dp*dphi."""
    dp, dphi = J.dp, len(phi) - 1
    n = dp * dphi
    z2e = J.z2()
    lam_e = J.from_base(lam)
    cols = []
    for j in range(dphi):
        for i in range(dp):
            # basis element z2^i z3^j as an A-vector (list over z3-pow of K_J elems)
            base = [J.zero] * dphi
            base[j] = J.pow(z2e, i)
            az2 = [J.mul(z2e, c) for c in base]
            az3 = [J.zero] * dphi
            for k in range(dphi):
                if J.is_zero(base[k]):
                    continue
                if k + 1 < dphi:
                    az3[k + 1] = J.add(az3[k + 1], base[k])
                else:
                    for t in range(dphi):
                        az3[t] = J.sub(az3[t], J.mul(phi[t], base[k]))
            col = [J.add(u, J.mul(lam_e, v)) for u, v in zip(az2, az3)]
            cols.append(_flatten_avec(J, col))
    M = [[cols[c][r] for c in range(n)] for r in range(n)]
    ring = (J._q_zero(), J._q_one(), J._q_add, J._q_sub, J._q_mul)
    chi_high = berkowitz(M, ring)
    return list(reversed(chi_high))


def _flatten_avec(J, avec):
    """A-vector (list over z3-pow of K_J elems) to K_Q coordinates."""
    out = []
    for e in avec:
        if J.trivial:
            out.append((e,))
        else:
            out.extend(list(e))
    return out


def _solve_for_z3(J, phi, lam, chi, new):
    """Coordinates of z3 in the basis (1, zeta, ..., zeta^{n-1}), returned
    as an element of the new set."""
    dp, dphi = J.dp, len(phi) - 1
    n = dp * dphi
    z2e = J.z2()
    lam_e = J.from_base(lam)
    # zeta powers as A-vectors
    zeta_pows = []
    cur = [J.zero] * dphi
    cur[0] = J.one
    for _ in range(n):
        zeta_pows.append(_flatten_avec(J, cur))
        nxt_z2 = [J.mul(z2e, c) for c in cur]
        nxt_z3 = [J.zero] * dphi
        for k in range(dphi):
            if J.is_zero(cur[k]):
                continue
            if k + 1 < dphi:
                nxt_z3[k + 1] = J.add(nxt_z3[k + 1], cur[k])
            else:
                for t in range(dphi):
                    nxt_z3[t] = J.sub(nxt_z3[t], J.mul(phi[t], cur[k]))
        cur = [J.add(u, J.mul(lam_e, v)) for u, v in zip(nxt_z2, nxt_z3)]
    # target: z3 = basis vector at (i=0, j=1)
    target = [J._q_zero()] * n
    target[dp] = J._q_one()
    # solve sum_k x_k * zeta_pows[k] = target over K_Q
    A = [[zeta_pows[k][r] for k in range(n)] for r in range(n)]
    x = _gauss_solve_q(J, A, target)
    return tuple(x) if not new.trivial else x[0][0]


def _gauss_solve_q(J, A, b):
    """Solve A x = b over K_Q (vectors as rows); pivots via _q_inv (splits)."""
    n = len(A)
    M = [row[:] + [b[i]] for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if not J._q_is_zero(M[r][c])), None)
        assert piv is not None, "primitive-element basis matrix is singular"
        M[c], M[piv] = M[piv], M[c]
        inv = J._q_inv(M[c][c])
        M[c] = [J._q_mul(inv, e) for e in M[c]]
        for r in range(n):
            if r != c and not J._q_is_zero(M[r][c]):
                f = M[r][c]
                M[r] = [J._q_sub(e, J._q_mul(f, g)) for e, g in zip(M[r], M[c])]
    return [J._q_pad(M[r][n]) for r in range(n)]
