"""Command-line interface: ``laplace-lp <subcommand> ...``.

Exit status is 0 on success, 1 when ``verify-all`` reports a failed check,
2 when an input violates a precondition and 3 when a computation diverges
or fails to converge.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from . import acceptance, analytics, blowup, testbed
from .core import (
    Bounded,
    FullHalfLine,
    LebesgueExponent,
    Tail,
    classify,
    parse_domain,
    region_sweep,
)
from .errors import LaplaceLpError, NumericalFailure
from .quadrature import DEFAULT_TOL, laplace_lq_norm, laplace_point, lp_norm

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_PRECONDITION = 2
EXIT_NUMERICAL = 3


class PreconditionError(ValueError):
    pass


# -- rendering --------------------------------------------------------------

def fmt(x: float) -> str:
    return format(float(x), ".17g")


def _json(obj) -> str:
    """JSON with floats rendered at 17 significant digits; non-finite floats
    become the strings ``"inf"``, ``"-inf"``, ``"nan"``."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt(obj) if math.isfinite(obj) else json.dumps(fmt(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json(v) for v in obj) + "]"
    raise TypeError(f"cannot render {type(obj).__name__}")


def _record_dict(r: blowup.SweepRecord) -> dict:
    d = {"epsilon": r.epsilon, "norm_f": r.norm_f, "norm_Lf": r.norm_Lf, "ratio": r.ratio}
    if r.failure:
        d["failure"] = r.failure
    return d


def records_csv(records: Iterable[blowup.SweepRecord]) -> str:
    lines = ["epsilon,norm_f,norm_Lf,ratio"]
    for r in records:
        lines.append(",".join(fmt(v) for v in (r.epsilon, r.norm_f, r.norm_Lf, r.ratio)))
    return "\n".join(lines) + "\n"


# -- region diagram ---------------------------------------------------------

_SIZE = 400
_PAD = 60


def _px(a: float, b: float):
    return _PAD + a * _SIZE, _PAD + (1 - b) * _SIZE


def _line(a0, b0, a1, b1, stroke, dash=None, width=2):
    x0, y0 = _px(a0, b0)
    x1, y1 = _px(a1, b1)
    extra = f' stroke-dasharray="{dash}"' if dash else ""
    return (f'<line x1="{x0:g}" y1="{y0:g}" x2="{x1:g}" y2="{y1:g}" '
            f'stroke="{stroke}" stroke-width="{width}"{extra}/>')


def region_svg(domain) -> str:
    """The admissible ``(1/p, 1/q)`` region as a static SVG 1.1 document."""
    blue, grey = "#1f4fbf", "#888888"
    w = _SIZE + 2 * _PAD
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{w}" '
        f'viewBox="0 0 {w} {w}">',
        f'<title>continuity region, domain {domain}</title>',
    ]
    if isinstance(domain, Bounded):
        tri = [(1, 0), (1, 1), (0, 1)]
    elif isinstance(domain, Tail):
        tri = [(0, 0), (1, 0), (0, 1)]
    else:
        tri = []
    if tri:
        pts = " ".join("{:g},{:g}".format(*_px(a, b)) for a, b in tri)
        out.append(f'<polygon points="{pts}" fill="#dfe7fb" stroke="none"/>')
    # axes and guides
    out.append(_line(0, 0, 1.1, 0, "black", width=1))
    out.append(_line(0, 0, 0, 1.1, "black", width=1))
    out.append(_line(0, 0, 1, 1, grey, "2,3", 1))
    out.append(_line(0.5, 0, 0.5, 0.5, grey, "2,3", 1))
    out.append(_line(0.5, 0.5, 0, 1, grey, "2,3", 1))
    if isinstance(domain, Bounded):
        out.append(_line(0.01, 1, 1, 1, blue))
        out.append(_line(1, 0, 1, 1, blue))
    elif isinstance(domain, Tail):
        out.append(_line(0, 1, 1, 1, grey, "2,3", 1))
        out.append(_line(1, 0, 1, 1, grey, "2,3", 1))
        out.append(_line(0, 0, 1, 0, blue))
        out.append(_line(0, 0, 0, 0.99, blue))
    out.append(_line(1, 0, 0.5, 0.5, blue))
    for a, b in ((0.5, 0.5), (1, 0)):
        x, y = _px(a, b)
        out.append(f'<circle cx="{x:g}" cy="{y:g}" r="4" fill="{blue}"/>')
    x, y = _px(0, 1)
    out.append(f'<circle cx="{x:g}" cy="{y:g}" r="5" fill="white" stroke="black" stroke-width="1"/>')
    labels = [((0.5, 0), "1/2", 0, 22), ((1, 0), "1", 0, 22), ((0, 1), "1", -22, 5),
              ((1.1, 0), "1/p", 18, 5), ((0, 1.1), "1/q", -22, 0)]
    for (a, b), text, dx, dy in labels:
        x, y = _px(a, b)
        out.append(f'<text x="{x + dx:g}" y="{y + dy:g}" font-family="serif" font-size="16" '
                   f'text-anchor="middle">{text}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def region_rows(domain, step: float) -> List[dict]:
    return [{"inv_p": float(rp), "inv_q": float(rq), "continuous": v.continuous,
             "reason": v.reason.value} for rp, rq, v in region_sweep(step, domain)]


def region_csv(rows: Sequence[dict]) -> str:
    lines = ["inv_p,inv_q,continuous,reason"]
    for r in rows:
        lines.append(f"{fmt(r['inv_p'])},{fmt(r['inv_q'])},{str(r['continuous']).lower()},{r['reason']}")
    return "\n".join(lines) + "\n"


# -- argument parsing -------------------------------------------------------

def _exponent(text: str) -> LebesgueExponent:
    try:
        return LebesgueExponent.of(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _domain(text: str):
    try:
        return parse_domain(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _step(text: str) -> float:
    try:
        v = float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad grid step {text!r}") from None
    return v


def parse_eps_grid(text: str) -> List[float]:
    """``start:stop:count`` (geometric) or a comma-separated list."""
    try:
        if ":" in text:
            start, stop, count = text.split(":")
            return [float(v) for v in blowup.eps_grid(float(start), float(stop), int(count))]
        return [float(v) for v in text.split(",")]
    except (ValueError, LaplaceLpError) as exc:
        raise argparse.ArgumentTypeError(f"bad eps grid {text!r}: {exc}") from None


def _function(args):
    name = args.f
    if name in testbed.VARIANTS:
        if args.p is None or args.eps is None:
            raise PreconditionError(f"--f {name} needs --p and --eps")
        return testbed.family_function(name, args.p, args.eps)
    return testbed.lookup_function(name)


def _add_function_args(sp, need_p=False):
    sp.add_argument("--f", required=True,
                    help="function name (const1, chi01, exp1, power0.5, exp:a, power:a, "
                         "indicator:a,b, trunc:n) or a family (thm1, thm2)")
    sp.add_argument("--eps", type=float, help="family parameter")
    if need_p:
        sp.add_argument("--p", type=_exponent, help="Lebesgue exponent (also the family exponent)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="laplace-lp",
                                 description="Boundedness of the Laplace operator between Lebesgue spaces.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("transform", help="evaluate Lf(x)")
    _add_function_args(sp, need_p=True)
    sp.add_argument("--x", type=float, required=True)
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)

    sp = sub.add_parser("norm", help="||f||_p or, with --transform, ||Lf||_q on a domain")
    _add_function_args(sp, need_p=True)
    sp.add_argument("--q", type=_exponent, help="exponent for the transform norm")
    sp.add_argument("--domain", type=_domain, default=FullHalfLine())
    sp.add_argument("--transform", action="store_true", help="norm of Lf instead of f")
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)

    sp = sub.add_parser("classify", help="is L bounded from L^p(0,inf) to L^q(domain)?")
    sp.add_argument("--p", type=_exponent, required=True)
    sp.add_argument("--q", type=_exponent, required=True)
    sp.add_argument("--domain", type=_domain, required=True)

    sp = sub.add_parser("region", help="classify a lattice in (1/p, 1/q)")
    sp.add_argument("--domain", type=_domain, required=True)
    sp.add_argument("--step", type=_step, default=1 / 16, help="lattice step, e.g. 1/16")
    sp.add_argument("--format", choices=("svg", "json", "csv"), default="svg")
    sp.add_argument("--output", "-o")

    for name, text in (("sweep", "norm ratios along an eps grid"),
                       ("fit", "log-log slope of a sweep")):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--variant", choices=blowup.SWEEP_VARIANTS, required=True)
        sp.add_argument("--p", type=_exponent, required=True)
        sp.add_argument("--q", type=_exponent, help="defaults to the conjugate of p")
        sp.add_argument("--domain", type=_domain, required=True)
        sp.add_argument("--eps-grid", type=parse_eps_grid, default=None,
                        help="start:stop:count or a comma list (default 1e-1:1e-4:7)")
        sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
        if name == "sweep":
            sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--output", "-o")

    sp = sub.add_parser("opnorm", help="discretized lower bound for the operator norm")
    sp.add_argument("--p", type=_exponent, required=True)
    sp.add_argument("--q", type=_exponent, required=True)
    sp.add_argument("--domain", type=_domain, required=True)
    sp.add_argument("--nodes", type=int, default=512)
    sp.add_argument("--iters", type=int, default=blowup.ITER_CAP)

    sp = sub.add_parser("scaling-check", help="dilation identities for f")
    _add_function_args(sp, need_p=True)
    sp.add_argument("--lambda", dest="lam", type=float, required=True)
    sp.add_argument("--q", type=_exponent, default=LebesgueExponent.of(2))
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)

    sp = sub.add_parser("verify-all", help="run every acceptance check")
    sp.add_argument("--only", type=int, action="append", help="run just this criterion")
    return ap


# -- commands ---------------------------------------------------------------

def _emit(text: str, path: Optional[str], stdout) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def _cmd_transform(args, stdout):
    f = _function(args)
    r = laplace_point(f, args.x, args.tol)
    stdout.write(_json({"f": f.label, "x": args.x, "value": r.value,
                        "error_estimate": r.error_estimate}) + "\n")


def _cmd_norm(args, stdout):
    if args.p is None and not args.transform:
        raise PreconditionError("norm needs --p")
    f = _function(args)
    if args.transform:
        if args.q is None:
            raise PreconditionError("--transform needs --q")
        value = laplace_lq_norm(f, args.domain, args.q, args.tol)
        out = {"f": f.label, "q": str(args.q), "domain": str(args.domain), "norm_Lf": value}
    else:
        value = lp_norm(f, args.domain, args.p, args.tol)
        out = {"f": f.label, "p": str(args.p), "domain": str(args.domain), "norm_f": value}
    stdout.write(_json(out) + "\n")


def _cmd_classify(args, stdout):
    v = classify(args.p, args.q, args.domain)
    stdout.write(_json({"continuous": v.continuous, "reason": v.reason.value}) + "\n")


def _cmd_region(args, stdout):
    if args.format == "svg":
        text = region_svg(args.domain)
    else:
        rows = region_rows(args.domain, args.step)
        text = _json(rows) + "\n" if args.format == "json" else region_csv(rows)
    _emit(text, args.output, stdout)


def _sweep_inputs(args):
    q = args.q if args.q is not None else args.p.conjugate()
    grid = args.eps_grid if args.eps_grid is not None else list(blowup.standard_eps_grid())
    return q, grid


def _failed(records) -> List[blowup.SweepRecord]:
    return [r for r in records if not r.ok]


def _report_failures(records, stderr) -> int:
    bad = _failed(records)
    for r in bad:
        stderr.write(f"error: record eps={fmt(r.epsilon)} failed: {r.failure}\n")
    return EXIT_NUMERICAL if bad else EXIT_OK


def _cmd_sweep(args, stdout, stderr):
    q, grid = _sweep_inputs(args)
    recs = blowup.sweep(args.p, q, args.domain, args.variant, grid, args.tol)
    if args.format == "csv":
        text = records_csv(recs)
    else:
        text = _json([_record_dict(r) for r in recs]) + "\n"
    _emit(text, args.output, stdout)
    return _report_failures(recs, stderr)


def _cmd_fit(args, stdout, stderr):
    q, grid = _sweep_inputs(args)
    recs = blowup.sweep(args.p, q, args.domain, args.variant, grid, args.tol)
    code = _report_failures(recs, stderr)
    if code:
        return code
    fit = blowup.fit_exponent(recs, args.p)
    out = {"p": str(args.p), "q": str(q), "domain": str(args.domain), "variant": args.variant,
           "slope": fit.slope, "intercept": fit.intercept, "max_residual": fit.max_residual,
           "theoretical_slope": fit.theoretical_slope,
           "records": [_record_dict(r) for r in fit.records]}
    _emit(_json(out) + "\n", args.output, stdout)
    return EXIT_OK


def _cmd_opnorm(args, stdout):
    value = blowup.discretized_opnorm(args.p, args.q, args.domain, args.nodes, args.iters)
    stdout.write(_json({"p": str(args.p), "q": str(args.q), "domain": str(args.domain),
                        "nodes": args.nodes, "lower_bound": value}) + "\n")


def _cmd_scaling(args, stdout):
    if args.p is None:
        raise PreconditionError("scaling-check needs --p")
    f = _function(args)
    rep = analytics.check_scaling_identity(f, args.lam, tol=args.tol, p=args.p, q=args.q)
    stdout.write(_json({"lambda": rep.lam, "max_identity_error": rep.max_identity_error,
                        "norm_ratio_error": rep.norm_ratio_error,
                        "lq_lower_bound_satisfied": rep.lq_lower_bound_satisfied}) + "\n")


def _cmd_verify(args, stdout):
    numbers = sorted(set(args.only)) if args.only else sorted(acceptance.CRITERIA)
    for n in numbers:
        if n not in acceptance.CRITERIA:
            raise PreconditionError(f"no criterion {n}; valid: 1..{max(acceptance.CRITERIA)}")
    stdout.write(f"{'#':>2}  {'result':6}  {'time':>7}  {'check':26}  detail\n")
    failed = 0
    for n in numbers:
        r = acceptance.run(n)
        failed += not r.passed
        stdout.write(f"{r.number:>2}  {'PASS' if r.passed else 'FAIL':6}  {r.seconds:6.1f}s  "
                     f"{r.title:26}  {r.detail}\n")
        stdout.flush()
    stdout.write(f"{len(numbers) - failed}/{len(numbers)} criteria passed\n")
    return EXIT_FAILED_CHECK if failed else EXIT_OK


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "transform":
            return _cmd_transform(args, stdout) or EXIT_OK
        if args.command == "norm":
            return _cmd_norm(args, stdout) or EXIT_OK
        if args.command == "classify":
            return _cmd_classify(args, stdout) or EXIT_OK
        if args.command == "region":
            return _cmd_region(args, stdout) or EXIT_OK
        if args.command == "sweep":
            return _cmd_sweep(args, stdout, stderr)
        if args.command == "fit":
            return _cmd_fit(args, stdout, stderr)
        if args.command == "opnorm":
            return _cmd_opnorm(args, stdout) or EXIT_OK
        if args.command == "scaling-check":
            return _cmd_scaling(args, stdout) or EXIT_OK
        if args.command == "verify-all":
            return _cmd_verify(args, stdout)
    except NumericalFailure as exc:
        stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_NUMERICAL
    except (LaplaceLpError, ValueError, TypeError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_PRECONDITION
    raise AssertionError(f"unhandled command {args.command}")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
