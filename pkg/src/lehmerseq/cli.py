"""Command-line interface.

Exit codes: 0 everything verified, 1 a mathematical check failed,
2 bad input, 3 a resource cap was hit.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .errors import (ConsistencyError, DecompositionError, DomainError, OrderTooLowError,
                     ResourceError)
from .numtheory import factorize, primes_up_to
from .polycore import IntPoly, is_squarefree, parse_poly

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


def _num(x):
    """Decimal string for JSON; never a float."""
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if hasattr(x, "man_exp") or hasattr(x, "imag"):
        from mpmath import nstr

        return nstr(x, 20)
    return repr(float(x))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, IntPoly):
        return obj.to_string()
    return _num(obj)


def _factor_json(n, work=1 << 14):
    f = factorize(n, work=work)
    out = {"sign": f.sign, "factors": [[str(p), e] for p, e in f.factors]}
    if f.cofactor != 1:
        out["composite_cofactor"] = str(f.cofactor)
    return out


def _measure_json(m):
    from mpmath import nstr

    return {"value": nstr(m.value, 20), "error": nstr(m.error, 3), "method": m.method}


def _log_json(value, error):
    from mpmath import nstr

    return {"value": nstr(value, 20), "error": nstr(error, 3)}


# plain-text rendering

def _is_factorization(v):
    return isinstance(v, dict) and "factors" in v and "sign" in v


def _factor_text(v):
    if v["sign"] in ("0", 0):
        return "0"
    parts = [p if e in ("1", 1) else f"{p}^{e}" for p, e in v["factors"]]
    if "composite_cofactor" in v:
        parts.append(f"[{v['composite_cofactor']}]")
    text = " * ".join(parts) or "1"
    return ("-" if v["sign"] in ("-1", -1) else "") + text


def _scalar(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    if _is_factorization(v):
        return _factor_text(v)
    if isinstance(v, list):
        return ", ".join(":".join(map(str, x)) if isinstance(x, list) else _scalar(x) for x in v)
    if isinstance(v, dict):
        return " ".join(f"{k}={_scalar(x)}" for k, x in v.items())
    return "" if v is None else str(v)


def _simple(v):
    return not isinstance(v, (dict, list)) or _is_factorization(v) or (
        isinstance(v, list) and all(not isinstance(x, dict) for x in v))


def _render(obj, indent=0) -> list:
    pad = " " * indent
    lines = []
    if isinstance(obj, dict):
        width = max((len(str(k)) for k in obj), default=0)
        for k, v in obj.items():
            if _simple(v) or not v:
                lines.append(f"{pad}{str(k).ljust(width)}  {_scalar(v)}".rstrip())
            else:
                lines.append(f"{pad}{k}:")
                lines.extend(_render(v, indent + 2))
    elif isinstance(obj, list):
        rows = [r for r in obj if isinstance(r, dict)]
        flat = len(rows) == len(obj) and all(_simple(x) for r in rows for x in r.values())
        if flat and rows and all(r.keys() == rows[0].keys() for r in rows):
            keys = list(rows[0])
            cells = [[_scalar(r[k]) for k in keys] for r in rows]
            widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
            lines.append(pad + "  ".join(k.ljust(w) for k, w in zip(keys, widths)).rstrip())
            lines.extend(pad + "  ".join(x.ljust(w) for x, w in zip(c, widths)).rstrip() for c in cells)
        elif flat:
            lines.extend(pad + _scalar(r) for r in rows)
        else:
            for v in obj:
                lines.extend(_render(v, indent))
                lines.append("")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _emit(report, as_json, out):
    report = _jsonable(report)
    if as_json:
        out.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write("\n".join(_render(report)) + "\n")


# commands

def _poly(args) -> IntPoly:
    if not args.poly:
        raise DomainError("--poly is required")
    return parse_poly(args.poly)


def _range(args, default):
    n = args.range if args.range is not None else args.n
    n = default if n is None else n
    if n < 1:
        raise DomainError("range must be positive")
    return n


def cmd_analyze(args):
    from .roots import is_cyclotomic_product, is_reciprocal, mahler_measure
    from .sequences import delta_seq, essential_factors, gauss_check_coefficients, gauss_check_delta, small_delta

    p = _poly(args)
    N = _range(args, 12)
    m = mahler_measure(p, args.precision)
    lo, hi = m.log()
    rep = {"polynomial": p.to_string(), "expression": p.to_expr(), "degree": p.degree,
           "measure": _measure_json(m), "log_measure": _log_json(lo, hi),
           "reciprocal": is_reciprocal(p)}
    ok = True
    if not p.is_monic:
        rep["cyclotomic"] = False
        rep["note"] = "sequence analysis needs a monic polynomial"
        return rep, ok
    cyc = is_cyclotomic_product(p)
    rep["cyclotomic"] = bool(cyc)
    g = gauss_check_coefficients(p, N)
    rep["gauss"] = {"coefficients": g.passed}
    ok &= g.passed
    if p.degree < 2:
        return rep, ok
    seq = delta_seq(p, N)
    gd = gauss_check_delta(p, N, seq)
    rep["gauss"]["discriminant"] = gd.passed
    ok &= gd.passed
    sd = small_delta(p, N, seq)
    rep["discriminants"] = [{"n": n, "value": seq.values[n], "factorization": _factor_json(seq.values[n]),
                             "delta": sd.deltas[n], "n | delta": sd.divisibility[n - 1]}
                            for n in range(1, N + 1)]
    rep["sign_constancy"] = sd.sign_verdict
    if sd.zero_witness is not None:
        rep["vanishing_at"] = sd.zero_witness
        rep["torsion_orders"] = list(sd.torsion)
    rep["abs_sum_identity"] = sd.abs_sum_identity
    rep["twelve_divides_delta_after"] = sd.n0
    ok &= sd.passed
    if is_squarefree(p):
        try:
            ef = essential_factors(p, N, seq)
            rep["essential_factors"] = [{"m": k, "psi": ef.psi[k], "sqrt": ef.roots[k]}
                                        for k in range(1, N + 1)]
            squares = all(ef.roots[k] is not None for k in range(2, N + 1) if ef.psi[k] is not None)
            rep["psi_squares"] = squares
            ok &= squares
        except ConsistencyError as e:
            rep["essential_factors_error"] = str(e)
            ok = False
        if not cyc:
            from .estimates import sandwich_check

            s = sandwich_check(p, N)
            rep["sandwich"] = {"per_n_bound": s.passed, "exceeds_M^(d-1)": s.exceeded,
                               "first_exceeding_n": s.first_exceeding_n}
            ok &= s.passed
    return rep, ok


def cmd_gauss(args):
    from .sequences import gauss_suite

    p = _poly(args)
    N = _range(args, 24)
    qs = [parse_poly(q) for q in (args.q or ["x-1"])]
    reports = gauss_suite(p, qs, N)
    data = [r.to_json() for r in reports]
    return {"polynomial": p.to_string(), "reports": data}, all(r.passed for r in reports)


def cmd_u(args):
    from .sequences import (a0_power_divisibility, u_divisibility_check, u_of_n, u_partition_factors,
                            u_small_prime_divisibility, u_structure, u_upper_bound_check)

    p = _poly(args)
    if args.n is None:
        raise DomainError("--n is required")
    n = args.n
    l, r, dp, dm = u_structure(n)
    u = u_of_n(p, n, args.degree_cap)
    main, extra = u_divisibility_check(p, n, args.degree_cap, u)
    verdicts = [main, *extra, a0_power_divisibility(p, n, args.degree_cap, u),
                u_upper_bound_check(p, n, args.degree_cap, u)]
    for k in primes_up_to(7):
        try:
            small = u_small_prime_divisibility(p, k, n, args.degree_cap, u)
        except DomainError as e:
            small = [_note_verdict(f"small prime {k}", str(e))]
        # the P(1) verdict does not depend on k
        verdicts.extend(small if k == 2 else small[:-1])
    rep = {"polynomial": p.to_string(), "n": n, "l": l, "D+": dp, "D-": dm, "U": u,
           "factorization": _factor_json(u)}
    if u == 0:
        rep["note"] = "U(n) = 0" + (" because P(1) = 0" if p(1) == 0 else "")
    rep["verdicts"] = [v.to_json() for v in verdicts]
    ok = all(v.passed is not False for v in verdicts)
    if l <= 2 and is_squarefree(p):
        parts, _ = u_partition_factors(p, n, degree_cap=args.degree_cap)
        rep["partitions"] = [{"partition": " ".join("{" + ",".join(map(str, b)) + "}" for b in blocks),
                              "U(n,P)": v} for blocks, v in parts]
    return rep, ok


def _note_verdict(name, reason):
    from .sequences import Verdict

    return Verdict(name, None, {"reason": reason})


def cmd_genfun(args):
    from .genfun import (g_quadratic, gauss_property_witness, minton_decompose, product_identity_check,
                         rational_fn_of_delta)

    p = _poly(args)
    if args.g:
        g = g_quadratic(p)
        coeffs = g.series(40)[1:]
        return {"polynomial": p.to_string(), "g": g.to_json(), "expression": g.to_expr(),
                "gauss_witness": gauss_property_witness(coeffs)}, True
    N = args.range if args.range is not None else args.n
    res = rational_fn_of_delta(p, N)
    dec = minton_decompose(res.fn)
    order = args.order
    ok = product_identity_check(p, order, dec)
    return {"polynomial": p.to_string(), "f": res.fn.to_json(), "expression": res.fn.to_expr(),
            "recurrence_order": res.recurrence.order, "terms_used": res.N, "certified_order_bound": res.certified,
            "decomposition": dec.to_json(), "product_identity_order": order, "product_identity": ok}, ok


def _parse_point(text):
    x, _, m = text.partition(":")
    m = int(m) if m else 1
    x = x.strip()
    if "j" in x or "i" in x:
        return complex(x.replace("i", "j")), m
    return Fraction(x), m


def cmd_vandermonde(args):
    from .estimates import confluent_vandermonde

    if not args.points:
        raise DomainError("--points is required, e.g. '0:1,3/2:2'")
    try:
        pts = [_parse_point(t) for t in args.points.split(",") if t.strip()]
    except ValueError as e:
        raise DomainError(f"bad point list: {e}") from e
    r = confluent_vandermonde(pts)
    return {"points": [[str(x).strip("()"), m] for x, m in pts], "size": len(r.matrix),
            "determinant": str(r.determinant), "product": str(r.product), "equal": r.equal}, r.equal


def cmd_scan(args):
    from .corpus import scan, smyth_violations

    recs = scan(args.max_degree, args.height, float(args.threshold), args.reciprocal_only,
                threads=args.threads, budget=args.budget)
    bad = smyth_violations(recs)
    return {"max_degree": args.max_degree, "height": args.height, "threshold": str(args.threshold),
            "reciprocal_only": args.reciprocal_only, "count": len(recs),
            "records": [r.to_json() for r in recs],
            "smyth_violations": [r.polynomial for r in bad]}, not bad


def cmd_estimate(args):
    from .estimates import limsup_delta_estimate, limsup_resultant_estimate, sandwich_check
    from .roots import is_cyclotomic_product

    p = _poly(args)
    N = _range(args, 40)
    e = limsup_delta_estimate(p, N)
    rep = {"polynomial": p.to_string(), "N": N,
           "delta_limsup": {"E_N": repr(e.E), "T": repr(e.T), "ratio": repr(e.ratio),
                            "per_n_upper_bound": e.passed, "lower_chain": e.lower_chain_ok}}
    ok = e.passed
    if not is_cyclotomic_product(p):
        s = sandwich_check(p, N)
        rep["sandwich"] = {"per_n_bound": s.passed, "exceeds_M^(d-1)": s.exceeded,
                           "first_exceeding_n": s.first_exceeding_n}
        ok &= s.passed
    for q in args.q or []:
        r = limsup_resultant_estimate(p, parse_poly(q), N)
        rep.setdefault("resultant_limsup", []).append(
            {"Q": parse_poly(q).to_string(), "E_N": repr(r.E), "target": repr(r.target), "ratio": repr(r.ratio)})
    return rep, ok


COMMANDS = {"analyze": cmd_analyze, "gauss": cmd_gauss, "u": cmd_u, "genfun": cmd_genfun,
            "vandermonde": cmd_vandermonde, "scan": cmd_scan, "estimate": cmd_estimate}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--poly", help="polynomial, e.g. '1,-3,1' (ascending) or 'x^2-3x+1'")
    common.add_argument("--n", type=int, help="index n (U(n)); range end for other commands")
    common.add_argument("--range", type=int, help="range end N")
    common.add_argument("--precision", type=float, default=1e-12, help="root enclosure target")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--degree-cap", type=int, default=64, dest="degree_cap")
    common.add_argument("--threads", type=int, default=1)

    ap = argparse.ArgumentParser(prog="lehmerseq", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="one-shot report for a polynomial")
    g = sub.add_parser("gauss", parents=[common], help="Gauss congruence families")
    g.add_argument("--q", action="append", help="second polynomial for Res(P_n, Q); repeatable")
    sub.add_parser("u", parents=[common], help="U(n) and its divisibility properties")
    gf = sub.add_parser("genfun", parents=[common], help="generating function of Delta(P_n)")
    gf.add_argument("--g", action="store_true", help="print g_P for a quadratic instead")
    gf.add_argument("--order", type=int, default=16, help="product identity truncation")
    v = sub.add_parser("vandermonde", parents=[common], help="confluent Vandermonde identity")
    v.add_argument("--points", help="comma separated x:m, e.g. '0:1,3/2:2,1+2j:1'")
    s = sub.add_parser("scan", parents=[common], help="search for small Mahler measures")
    s.add_argument("--max-degree", type=int, default=10, dest="max_degree")
    s.add_argument("--height", type=int, default=1)
    s.add_argument("--threshold", default="1.3")
    s.add_argument("--reciprocal-only", action="store_true", dest="reciprocal_only")
    s.add_argument("--budget", type=int, default=2_000_000)
    e = sub.add_parser("estimate", parents=[common], help="limsup estimates and per-n bounds")
    e.add_argument("--q", action="append", help="Q for the resultant estimate; repeatable")
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        report, ok = COMMANDS[args.command](args)
    except ResourceError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except DomainError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OrderTooLowError as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return EXIT_FAIL
    except (ConsistencyError, DecompositionError) as e:
        print(f"verification failed: {e}", file=sys.stderr)
        if getattr(e, "witness", None):
            print(f"witness: {e.witness}", file=sys.stderr)
        return EXIT_FAIL
    _emit(report, args.json, out)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
