"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 numeric failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import claims, kernel, powser, series, zeta
from .errors import MathieuError

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4


class UsageError(Exception):
    pass


def evaluate(name: str, method: str, h: float, mu: float, tol: float):
    """Dispatch one (series, method) pair; raises UsageError on invalid combinations."""
    if method == "expansion" and not 0 <= h < 1:
        raise UsageError(
            f"expansion converges only for 0 <= h < 1 (radius of convergence 1), got h={h:g}"
        )
    if method in ("integral", "integral-parts") and not h > 0:
        raise UsageError(f"integral representations need h > 0, got h={h:g}")
    if h < 0:
        raise UsageError(f"h must be nonnegative, got {h:g}")
    if name == "F":
        fns = {
            "direct": lambda: series.eval_mathieu_direct(series.SeriesParams(h, tol=tol)),
            "integral": lambda: kernel.integral_F(h, tol),
            "integral-parts": lambda: kernel.integral_F_parts(h, tol),
            "expansion": lambda: zeta.eval_expansion(h, tol),
        }
    elif name == "S":
        fns = {
            "direct": lambda: series.eval_alternating(series.SeriesParams(h, tol=tol)),
            "integral": lambda: kernel.integral_S(h, tol),
            "expansion": lambda: zeta.eval_expansion_alternating(h, tol),
        }
    else:
        if not mu > 1:
            raise UsageError(f"--mu must exceed 1, got {mu:g}")
        fns = {"direct": lambda: series.eval_generalized(series.SeriesParams(h, mu, tol))}
    if method not in fns:
        raise UsageError(f"method {method!r} is not available for series {name}")
    return fns[method]()


def _result_dict(name, h, mu, res) -> dict:
    return {
        "series": name,
        "h": h,
        "mu": mu,
        "method": res.method,
        "value": res.value,
        "lo": res.enclosure.lo,
        "hi": res.enclosure.hi,
        "half_width": res.half_width,
        "terms_used": res.terms_used,
    }


def cmd_eval(args) -> int:
    method = args.method_flag or args.method or "direct"
    if args.tol <= 0 or args.tol > 1e-2:
        raise UsageError("--tol must lie in (0, 1e-2]")
    res = evaluate(args.series, method, args.h, args.mu, args.tol)
    d = _result_dict(args.series, args.h, args.mu if args.series == "Fmu" else 2.0, res)
    if args.format == "json":
        print(json.dumps(d))
    else:
        unit = "nodes" if method.startswith("integral") else "terms"
        print(f"{args.series}({args.h:g}) via {res.method}")
        print(f"value      {claims.fmt(res.value)}")
        print(f"enclosure  [{claims.fmt(res.enclosure.lo)}, {claims.fmt(res.enclosure.hi)}]")
        print(f"half-width {res.half_width:.3e}")
        print(f"{unit:<10} {res.terms_used}")
    return EXIT_OK


def coeffs_report(K: int) -> str:
    num = powser.numerator_eq11(K)
    lines = ["(3-x)e^{2x} - 4x e^x - x - 3 =", ""]
    lines += [f"x^{k}: {c}" for k, c in enumerate(num.as_strings())]
    lead, m, bracket = powser.normalized_bracket(num)
    terms = " + ".join(
        ("1" if k == 0 else f"{b}*x" if k == 1 else f"{b}*x^{k}") for k, b in enumerate(bracket)
    )
    lines += ["", f"exact:   {lead}*x^{m} * [{terms} + ...]"]
    printed = " + ".join(
        ("1" if k == 0 else f"{b}*x" if k == 1 else f"{b}*x^{k}")
        for k, b in enumerate(claims.PRINTED_BRACKET)
    )
    lines.append(f"printed: {claims.PRINTED_LEAD}*x^5 * [{printed} + ...]")
    return "\n".join(lines) + "\n"


def cmd_coeffs(args) -> int:
    if args.order < 5:
        raise UsageError("--order must be at least 5")
    sys.stdout.write(coeffs_report(args.order))
    return EXIT_OK


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def cmd_claims(args) -> int:
    cfg = claims.ClaimsConfig(tol=args.tol, workers=args.workers)
    verdicts = claims.run_claims(cfg)
    _write(args.out, claims.RENDERERS[args.format](verdicts))
    return EXIT_OK


def scan(name: str, h_min: float, h_max: float, steps: int, tol: float, workers: int = 1):
    if not (0 <= h_min < h_max) or steps < 2:
        raise UsageError("scan needs 0 <= h-min < h-max and steps >= 2")
    hs = [float(h) for h in np.linspace(h_min, h_max, steps)]
    method = "direct"
    results = claims.grid_map(lambda h: evaluate(name, method, h, 2.0, tol), hs, workers)
    return hs, results


def render_scan(hs, results) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["h", "value", "half_width"])
    for h, r in zip(hs, results):
        w.writerow([claims.fmt(h), claims.fmt(r.value), claims.fmt(r.half_width)])
    s = claims.monotonicity_summary(hs, results)
    buf.write(
        f"# max_upward_jump={claims.fmt(s['max_upward_jump'])} "
        f"combined_half_width={claims.fmt(s['combined_half_width'])} "
        f"certified_upward_jump={claims.fmt(s['certified_upward_jump'])}\n"
    )
    return buf.getvalue()


def cmd_scan(args) -> int:
    hs, results = scan(args.series, args.h_min, args.h_max, args.steps, args.tol, args.workers)
    _write(args.out, render_scan(hs, results))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mathieu", description="Mathieu series evaluation and claim checks")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate F, S or F_mu with a certified enclosure")
    e.add_argument("series", choices=["F", "S", "Fmu"])
    e.add_argument("method", nargs="?", choices=["direct", "integral", "integral-parts", "expansion"])
    e.add_argument("--method", dest="method_flag", choices=["direct", "integral", "integral-parts", "expansion"])
    e.add_argument("--h", type=float, required=True)
    e.add_argument("--mu", type=float, default=2.0)
    e.add_argument("--tol", type=float, default=series.DEFAULT_TOL)
    e.add_argument("--format", choices=["text", "json"], default="text")
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("coeffs", help="exact Taylor coefficients of the f'' numerator")
    c.add_argument("--order", type=int, default=powser.DEFAULT_ORDER)
    c.set_defaults(func=cmd_coeffs)

    cl = sub.add_parser("claims", help="claim-by-claim verification report")
    cl.add_argument("--format", choices=sorted(claims.RENDERERS), default="md")
    cl.add_argument("--out", default=None, help="output path ('-' or omitted for stdout)")
    cl.add_argument("--tol", type=float, default=series.DEFAULT_TOL)
    cl.add_argument("--workers", type=int, default=1)
    cl.set_defaults(func=cmd_claims)

    s = sub.add_parser("scan", help="tabulate F or S over a grid of h")
    s.add_argument("series", choices=["F", "S"])
    s.add_argument("--h-min", type=float, required=True)
    s.add_argument("--h-max", type=float, required=True)
    s.add_argument("--steps", type=int, default=200, help="number of grid points")
    s.add_argument("--tol", type=float, default=series.DEFAULT_TOL)
    s.add_argument("--out", default=None)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_scan)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"mathieu: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MathieuError as exc:
        print(f"mathieu: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"mathieu: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
