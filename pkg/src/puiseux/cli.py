"""Command-line front-end: parse polynomials, dispatch the four commands
(puiseux, desing, genus, factor) and emit human-readable or JSON reports.

JSON reports follow a fixed schema: top-level {"version", "field",
"command", ...} with coefficient arrays lowest-degree-first, prime-field
elements as canonical non-negative integers and rationals as {"num",
"den"} decimal strings.  Identical --seed values produce byte-identical
JSON.  --trace streams one JSON-lines record per recursion event (edge
chosen, phi decomposition, split, lift) to stderr; --emit-polygon writes
an SVG of the input's support and lower hull.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .anfact import analytic_factor
from .desing import desingularise, genus, x_reciprocal
from .dynev import TriSet
from .errors import PuiseuxError
from .expand import rnp3
from .fields import PrimeField, QQ
from .oracle import verify_rpe_system
from .polygon import polygon_svg
from .tpoly import TruncBPoly, len_max_row


# ---------------------------------------------------------------------------
# polynomial parsing (integer literals, X, Y, + - * ^, parentheses)


def _skip(t, i):
    while i < len(t) and t[i].isspace():
        i += 1
    return i


def _neg(a):
    return {k: -c for k, c in a.items()}


def _padd(a, b):
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, 0) + c
    return out


def _pmul(a, b):
    out = {}
    for (ya, xa), ca in a.items():
        for (yb, xb), cb in b.items():
            k = (ya + yb, xa + xb)
            out[k] = out.get(k, 0) + ca * cb
    return out


def _parse_uint(t, i):
    i = _skip(t, i)
    j = i
    while j < len(t) and t[j].isdigit():
        j += 1
    if j == i:
        have = repr(t[i]) if i < len(t) else "end of input"
        raise SyntaxError("expected an integer at offset %d, found %s"
                          % (i, have))
    return int(t[i:j]), j


def _parse_atom(t, i):
    i = _skip(t, i)
    if i >= len(t):
        raise SyntaxError("unexpected end of input at offset %d" % i)
    ch = t[i]
    if ch in "Xx":
        return {(0, 1): 1}, i + 1
    if ch in "Yy":
        return {(1, 0): 1}, i + 1
    if ch.isdigit():
        n, j = _parse_uint(t, i)
        return {(0, 0): n}, j
    if ch == "(":
        acc, j = _parse_sum(t, i + 1)
        j = _skip(t, j)
        if j >= len(t) or t[j] != ")":
            raise SyntaxError("expected ')' at offset %d" % j)
        return acc, j + 1
    raise SyntaxError("unexpected %r at offset %d" % (ch, i))


def _parse_power(t, i):
    base, i = _parse_atom(t, i)
    i = _skip(t, i)
    if i < len(t) and t[i] == "^":
        n, i = _parse_uint(t, i + 1)
        acc = {(0, 0): 1}
        for _ in range(n):
            acc = _pmul(acc, base)
        base = acc
    return base, i


def _parse_term(t, i):
    acc, i = _parse_power(t, i)
    while True:
        i = _skip(t, i)
        if i < len(t) and t[i] == "*":
            rhs, i = _parse_power(t, i + 1)
            acc = _pmul(acc, rhs)
        else:
            return acc, i


def _parse_sum(t, i):
    i = _skip(t, i)
    sign = 1
    if i < len(t) and t[i] in "+-":
        sign = -1 if t[i] == "-" else 1
        i += 1
    acc, i = _parse_term(t, i)
    if sign < 0:
        acc = _neg(acc)
    while True:
        i = _skip(t, i)
        if i < len(t) and t[i] in "+-":
            op = t[i]
            rhs, i = _parse_term(t, i + 1)
            acc = _padd(acc, _neg(rhs) if op == "-" else rhs)
        else:
            return acc, i


def parse_poly(text, field):
    """Exact bivariate polynomial over `field` from its text form.

    Grammar: integer literals, variables X and Y, operators + - * ^ and
    parentheses, whitespace-insensitive.  Coefficients are reduced into
    the field (mod p over a prime field).  Raises SyntaxError carrying
    the byte offset of the first offending character."""
    dic, i = _parse_sum(text, 0)
    i = _skip(text, i)
    if i != len(text):
        raise SyntaxError("unexpected %r at offset %d" % (text[i], i))
    K = field
    kept = {k: c for k, c in dic.items() if not K.is_zero(K.from_int(c))}
    maxx = max((x for _, x in kept), default=0)
    return TruncBPoly.from_dict(TriSet.trivial_over(K), kept, maxx + 1)


# ---------------------------------------------------------------------------
# JSON encoding


def _enc_q(x):
    f = Fraction(x)
    return {"num": str(f.numerator), "den": str(f.denominator)}


def _enc_scalar(K, a):
    if isinstance(K, PrimeField):
        return int(a) % K.p
    return _enc_q(a)


def _enc_elem(J, a):
    if J.trivial:
        return _enc_scalar(J.K, a)
    return [[_enc_scalar(J.K, c) for c in vec] for vec in a]


def _enc_triset(J):
    return {"Q": [_enc_scalar(J.K, c) for c in J.Q],
            "P": [[_enc_scalar(J.K, c) for c in vec] for vec in J.P]}


def _enc_rpe(R):
    J = R.owner
    return {"triset": _enc_triset(J),
            "gamma": _enc_elem(J, R.gamma),
            "e": R.e,
            "f": R.f,
            "r": R.r,
            "v": _enc_q(R.v),
            "off": R.off,
            "gamma_series_coeffs": [_enc_elem(J, c) for c in R.coeffs],
            "precision": _enc_q(R.prec)}


def _branchify(classes, chart, mult=None):
    groups = []
    for R in classes:
        for g in groups:
            if g[0] == R.owner:
                g[1].append(R)
                break
        else:
            groups.append((R.owner, [R]))
    out = []
    for J, rs in groups:
        b = {"triset": _enc_triset(J), "chart": chart}
        if mult is not None:
            b["multiplicity"] = mult
        b["rpes"] = [_enc_rpe(R) for R in rs]
        out.append(b)
    return out


# ---------------------------------------------------------------------------
# human-readable rendering


def _fmt_scalar(K, a):
    if isinstance(K, PrimeField):
        return str(int(a) % K.p)
    f = Fraction(a)
    return str(f.numerator) if f.denominator == 1 else \
        "%d/%d" % (f.numerator, f.denominator)


def _fmt_elem(J, a):
    if J.trivial:
        return _fmt_scalar(J.K, a)
    return "[" + ", ".join(
        "[" + ", ".join(_fmt_scalar(J.K, c) for c in vec) + "]"
        for vec in a) + "]"


def _fmt_upoly(K, coeffs, var):
    terms = []
    for k, c in enumerate(coeffs):
        if K.is_zero(c):
            continue
        s = _fmt_scalar(K, c)
        if k == 0:
            terms.append(s)
        else:
            head = "" if s == "1" else s + "*"
            terms.append("%s%s^%d" % (head, var, k) if k > 1
                         else "%s%s" % (head, var))
    return " + ".join(reversed(terms)) if terms else "0"


def _fmt_rpe(R, indent="  "):
    J = R.owner
    pairs = R.gamma_pairs()
    shown = ["%s*T^%d" % (_fmt_elem(J, c), k) for k, c in pairs[:8]]
    if len(pairs) > 8:
        shown.append("...")
    series = " + ".join(shown) if shown else "0"
    lines = ["%se=%d f=%d r=%d v=%s  (window %s, certified below T^%d)"
             % (indent, R.e, R.f, R.r, R.v, R.prec, R.t_prec),
             "%s  x = x0 + %s*T^%d" % (indent, _fmt_elem(J, R.gamma), R.e),
             "%s  y = %s + O(T^%d)" % (indent, series, R.t_prec)]
    return "\n".join(lines)


def _print_branches(classes, chart, mult=None):
    groups = []
    for R in classes:
        for g in groups:
            if g[0] == R.owner:
                g[1].append(R)
                break
        else:
            groups.append((R.owner, [R]))
    for J, rs in groups:
        head = "branch over Q = %s" % _fmt_upoly(J.K, J.Q, "z")
        if J.dp > 1:
            head += ", deg P = %d" % J.dp
        if mult is not None:
            head += "  (multiplicity %d)" % mult
        print(head + "  [%s]" % chart)
        for R in rs:
            print(_fmt_rpe(R))


# ---------------------------------------------------------------------------
# command dispatch


def _field_of(spec):
    if spec.strip() in ("Q", "q"):
        return QQ
    try:
        return PrimeField(int(spec))
    except ValueError as ex:
        raise PuiseuxError("--field must be a prime p or Q: %s" % ex)


def _jsonable(x):
    if isinstance(x, Fraction):
        return _enc_q(x)
    return x


def _emit_trace(stats):
    for ev in (stats or {}).get("events", []):
        print(json.dumps({k: _jsonable(v) for k, v in ev.items()},
                         separators=(",", ":")), file=sys.stderr)


def _emit_json(report):
    sys.stdout.write(json.dumps(report, separators=(",", ":")) + "\n")


def _verify_parts(F, systems, label):
    """Oracle re-check of each class system; nonzero exit on mismatch."""
    bad = 0
    for tag, Fref, classes in systems:
        rep = verify_rpe_system(Fref, classes)
        if not rep.ok:
            bad += 1
            name, detail = rep.failures[0]
            print("verify: %s %s failed at %s: %s"
                  % (label, tag, name, detail), file=sys.stderr)
    if bad == 0:
        print("verify: ok", file=sys.stderr)
    return 0 if bad == 0 else 1


def _cmd_puiseux(args, F, K, seed, stats):
    n = args.prec
    systems = []
    branches = []
    if args.x0 == "all":
        rep = desingularise(F, seed=seed, stats=stats)
        for Qa, nk, rs in rep.parts:
            branches.extend(_branchify(rs, "affine", mult=nk))
            systems.append(("Q=%s" % _fmt_upoly(K, Qa, "z"), F, rs))
    elif args.x0 == "inf":
        dX = len_max_row(F) - 1
        Ft = x_reciprocal(F, dX)
        classes = [R for _, rs in rnp3(Ft, [K.zero, K.one], n + 2 * dX,
                                       seed=seed, stats=stats)
                   for R in rs]
        branches.extend(_branchify(classes, "infinity"))
        systems.append(("x0=inf", Ft, classes))
    else:
        try:
            x0 = int(args.x0)
        except ValueError:
            raise PuiseuxError("--x0 must be an integer, 'all' or 'inf', "
                               "got %r" % args.x0)
        Q = [K.from_int(-x0), K.one]
        classes = [R for _, rs in rnp3(F, Q, n, seed=seed, stats=stats)
                   for R in rs]
        branches.extend(_branchify(classes, "affine"))
        systems.append(("x0=%d" % x0, F, classes))
    if args.json:
        _emit_json({"version": "1", "field": args.field,
                    "command": "puiseux", "x0": args.x0,
                    "branches": branches})
    else:
        print("# puiseux over %s, x0 = %s, window n = %d"
              % (_field_name(args.field), args.x0, n))
        chart = "infinity" if args.x0 == "inf" else "affine"
        for tag, _, classes in systems:
            if len(systems) > 1:
                print("-- %s" % tag)
            _print_branches(classes, chart)
    if args.verify:
        return _verify_parts(F, systems, "system")
    return 0


def _cmd_desing(args, F, K, seed, stats):
    rep = desingularise(F, seed=seed, stats=stats)
    branches = []
    systems = []
    for Qa, nk, rs in rep.parts:
        branches.extend(_branchify(rs, "affine", mult=nk))
        systems.append(("Q=%s" % _fmt_upoly(K, Qa, "z"), F, rs))
    if rep.infinity_part:
        branches.extend(_branchify(rep.infinity_part, "infinity"))
        dX = len_max_row(F) - 1
        systems.append(("x0=inf", x_reciprocal(F, dX), rep.infinity_part))
    if args.json:
        _emit_json({"version": "1", "field": args.field,
                    "command": "desing", "branches": branches})
    else:
        print("# desing over %s: %d affine critical part(s), %d class(es) "
              "at infinity" % (_field_name(args.field), len(rep.parts),
                               len(rep.infinity_part)))
        for Qa, nk, rs in rep.parts:
            print("critical part Q = %s  (multiplicity %d)"
                  % (_fmt_upoly(K, Qa, "z"), nk))
            _print_branches(rs, "affine")
        if rep.infinity_part:
            print("at infinity:")
            _print_branches(rep.infinity_part, "infinity")
    if args.verify:
        return _verify_parts(F, systems, "part")
    return 0


def _cmd_genus(args, F, K, seed, stats):
    rep = desingularise(F, seed=seed, stats=stats)
    g = genus(F, seed=seed, report=rep)
    if args.json:
        _emit_json({"version": "1", "field": args.field,
                    "command": "genus", "genus": g})
    else:
        print("genus: %d" % g)
    if args.verify:
        systems = [("Q=%s" % _fmt_upoly(K, Qa, "z"), F, rs)
                   for Qa, _, rs in rep.parts]
        if rep.infinity_part:
            dX = len_max_row(F) - 1
            systems.append(("x0=inf", x_reciprocal(F, dX),
                            rep.infinity_part))
        return _verify_parts(F, systems, "part")
    return 0


def _poly_dict(g, K):
    out = {}
    for y, row in enumerate(g.rows):
        for x, c in enumerate(row):
            if not K.is_zero(c):
                out[(y, x)] = c
    return out


def _dict_mul_trunc(a, b, K, N):
    out = {}
    for (ya, xa), ca in a.items():
        for (yb, xb), cb in b.items():
            if xa + xb > N:
                continue
            k = (ya + yb, xa + xb)
            s = K.add(out.get(k, K.zero), K.mul(ca, cb))
            if K.is_zero(s):
                out.pop(k, None)
            else:
                out[k] = s
    return out


def _cmd_factor(args, F, K, seed, stats):
    N = args.prec
    u, pairs = analytic_factor(F, N, seed=seed, stats=stats)
    if args.json:
        _emit_json({"version": "1", "field": args.field,
                    "command": "factor", "modulus_exponent": N + 1,
                    "unit": [_enc_scalar(K, c) for c in u],
                    "factors": [{"triset": _enc_triset(J),
                                 "rows": [[_enc_scalar(K, c) for c in row]
                                          for row in g.rows]}
                                for J, g in pairs]})
    else:
        print("# factor over %s, mod X^%d" % (_field_name(args.field), N + 1))
        print("unit u(X) = %s" % _fmt_upoly(K, u, "X"))
        for k, (J, g) in enumerate(pairs):
            label = ""
            if J.dp > 1 or len(J.Q) > 2:
                label = "  (class of degree f=%d over Q of degree %d)" \
                    % (J.dp, len(J.Q) - 1)
            print("factor %d:%s" % (k, label))
            print("  " + _fmt_biv(g, K))
    if args.verify:
        # independent product check: plain dict convolution mod X^{N+1}
        acc = {(0, x): c for x, c in enumerate(u) if not K.is_zero(c)}
        for _, g in pairs:
            acc = _dict_mul_trunc(acc, _poly_dict(g, K), K, N)
        want = {k: c for k, c in _poly_dict(F, K).items() if k[1] <= N}
        if acc == want:
            print("verify: ok", file=sys.stderr)
            return 0
        print("verify: factor product does not match F mod X^%d" % (N + 1),
              file=sys.stderr)
        return 1
    return 0


def _fmt_biv(g, K):
    terms = []
    for y, row in enumerate(g.rows):
        for x, c in enumerate(row):
            if K.is_zero(c):
                continue
            parts = []
            s = _fmt_scalar(K, c)
            if s != "1" or (y == 0 and x == 0):
                parts.append(s)
            if y:
                parts.append("Y" if y == 1 else "Y^%d" % y)
            if x:
                parts.append("X" if x == 1 else "X^%d" % x)
            terms.append("*".join(parts))
    return " + ".join(reversed(terms)) if terms else "0"


def _field_name(spec):
    return "Q" if spec.strip() in ("Q", "q") else "F_%s" % spec.strip()


_COMMANDS = {"puiseux": _cmd_puiseux, "desing": _cmd_desing,
             "genus": _cmd_genus, "factor": _cmd_factor}


def run(command, flags):
    """Programmatic entry point: run(command, [flag strings]) -> exit code."""
    return main([command] + list(flags))


def main(argv=None):
    ap = argparse.ArgumentParser(
        prog="puiseux",
        description="Rational Puiseux expansions, critical-point reports, "
                    "genus and analytic factorization of bivariate "
                    "polynomials over F_p or Q.")
    sub = ap.add_subparsers(dest="command", required=True)
    helps = {
        "puiseux": "expansions above one point (--x0 int|all|inf)",
        "desing": "expansions above every critical point and at infinity",
        "genus": "genus of the projective plane curve",
        "factor": "analytic factorization in K[[X]][Y] mod X^(prec+1)",
    }
    for name in _COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("poly", nargs="?",
                       help="polynomial in X and Y (stdin when omitted)")
        p.add_argument("--field", default="Q", metavar="p|Q",
                       help="prime p for F_p, or Q (default Q)")
        p.add_argument("--prec", type=int, default=6, metavar="N",
                       help="certified window (default 6)")
        p.add_argument("--json", action="store_true",
                       help="machine-readable report on stdout")
        p.add_argument("--seed", type=int, default=None, metavar="S",
                       help="randomness seed (default $PUISEUX_SEED or 0)")
        p.add_argument("--verify", action="store_true",
                       help="re-check the output with the independent "
                            "verifier; nonzero exit on mismatch")
        p.add_argument("--trace", action="store_true",
                       help="JSON-lines recursion events on stderr")
        p.add_argument("--emit-polygon", metavar="PATH", dest="emit_polygon",
                       help="write an SVG of the support and lower hull")
        if name == "puiseux":
            p.add_argument("--x0", default="0", metavar="int|all|inf",
                           help="expansion point (default 0)")
    args = ap.parse_args(argv)
    try:
        K = _field_of(args.field)
        seed = args.seed if args.seed is not None else \
            int(os.environ.get("PUISEUX_SEED", "0"))
        text = args.poly if args.poly is not None else sys.stdin.read()
        F = parse_poly(text, K)
        if F.deg_y < 1:
            print("error: the polynomial must involve Y", file=sys.stderr)
            return 2
        if args.emit_polygon:
            with open(args.emit_polygon, "w") as fh:
                fh.write(polygon_svg(F))
        stats = {} if args.trace else None
        code = _COMMANDS[args.command](args, F, K, seed, stats)
        if args.trace:
            _emit_trace(stats)
        return code
    except SyntaxError as ex:
        print("error: %s" % ex, file=sys.stderr)
        return 2
    except PuiseuxError as ex:
        print("error: %s: %s" % (type(ex).__name__, ex), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
