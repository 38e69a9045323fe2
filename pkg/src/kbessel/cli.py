"""Command line interface: eval, zeros, radius, verify and sweep.

Exit codes: 0 success, 1 property violation, 2 usage or domain error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, KBesselError, PoleError, TruncationError, UnsupportedError, UsageError
from .radii import ALPHA_CAP, solve_radius
from .rayleigh import radius_bounds
from .series import DEFAULT_TRUNCATION, Mode, Params, RatioKind, Truncation, Weight, w_eval_detail
from .zeros import find_zeros, verify_interlacing

SCHEMA = 1
EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

ZERO_FAMILIES = ("W", "WPRIME", "GPRIME", "HPRIME", "ZGPRIME", "ZHPRIME")
KINDS = {"f": RatioKind.F, "g": RatioKind.G, "h": RatioKind.H}
MODES = {"star": Mode.STAR, "convex": Mode.CONVEX}


class CliError(Exception):
    def __init__(self, message: str, code: int) -> None:
        super().__init__(message)
        self.code = code


def _truncation() -> Truncation:
    raw = os.environ.get("KBESSEL_MAX_TERMS")
    if raw is None or raw == "":
        return DEFAULT_TRUNCATION
    try:
        max_terms = int(raw)
    except ValueError:
        raise CliError(f"KBESSEL_MAX_TERMS must be an integer, got {raw!r}", EXIT_USAGE)
    if max_terms < 1:
        raise CliError(f"KBESSEL_MAX_TERMS must be positive, got {max_terms}", EXIT_USAGE)
    return Truncation(max_terms=max_terms, min_terms=min(DEFAULT_TRUNCATION.min_terms, max_terms))


def _params(args: argparse.Namespace) -> Params:
    return Params(args.k, args.nu, args.c)


def _fmt(x: Optional[float]) -> str:
    return "" if x is None else f"{x:.17g}"


def _dump(obj: dict) -> str:
    return json.dumps(obj, indent=2, allow_nan=False)


# --- eval -------------------------------------------------------------------


def cmd_eval(args: argparse.Namespace) -> int:
    params = _params(args)
    value, terms = w_eval_detail(params, args.z, args.deriv, _truncation())
    if args.json:
        print(_dump({
            "schema": SCHEMA,
            "k": params.k,
            "nu": params.nu,
            "c": params.c,
            "z": args.z,
            "deriv": args.deriv,
            "value": value,
            "terms_used": terms,
        }))
    else:
        print(f"{value:.15g}")
    return EXIT_OK


# --- zeros ------------------------------------------------------------------


def cmd_zeros(args: argparse.Namespace) -> int:
    params = _params(args)
    params.require_real_zeros()
    trunc = _truncation()
    zs = find_zeros(params, Weight(args.family), args.count, trunc)
    report = None
    if args.interlace:
        report = verify_interlacing(
            find_zeros(params, Weight.UNIT, args.count, trunc),
            find_zeros(params, Weight.WPRIME, args.count, trunc),
        )
    if args.json:
        out = {
            "schema": SCHEMA,
            "k": params.k,
            "nu": params.nu,
            "c": params.c,
            "family": args.family,
            "zeros": list(zs.z_zeros),
        }
        if report is not None:
            out["interlacing"] = {
                "passed": report.passed,
                "first_violation": report.first_violation,
                "detail": report.detail,
            }
        print(_dump(out))
    else:
        for z in zs.z_zeros:
            print(f"{z:.17g}")
        if report is not None:
            print(f"interlacing: {'pass' if report.passed else 'FAIL'} ({report.detail})", file=sys.stderr)
    if report is not None and not report.passed:
        return EXIT_VIOLATION
    return EXIT_OK


# --- radius -----------------------------------------------------------------


def _bounds(kind: RatioKind, mode: Mode, params: Params, m: int) -> tuple[Optional[float], Optional[float]]:
    try:
        b = radius_bounds(kind, mode, params, m=m)
    except UnsupportedError:
        return None, None
    return b.lower, b.upper


def radius_record(kind: RatioKind, mode: Mode, params: Params, alpha: float, m: int = 1) -> dict:
    res = solve_radius(kind, mode, params, alpha, _truncation())
    lower, upper = _bounds(kind, mode, params, m)
    within = None if lower is None else bool(lower < res.radius < upper)
    return {
        "radius": res.radius,
        "residual": res.residual,
        "lower_bound": lower,
        "upper_bound": upper,
        "within_bounds": within,
    }


def cmd_radius(args: argparse.Namespace) -> int:
    params = _params(args)
    if not 0.0 <= args.alpha < ALPHA_CAP:
        raise CliError(f"alpha must lie in [0, {ALPHA_CAP!r}), got {args.alpha!r}", EXIT_USAGE)
    kind, mode = KINDS[args.kind], MODES[args.mode]
    rec = radius_record(kind, mode, params, args.alpha, args.m)
    out = {
        "schema": SCHEMA,
        "k": params.k,
        "nu": params.nu,
        "c": params.c,
        "kind": args.kind,
        "mode": args.mode,
        "alpha": args.alpha,
        "m": args.m,
        **rec,
    }
    print(_dump(out))
    return EXIT_OK


# --- verify -----------------------------------------------------------------


def _load_grid(source: str) -> list[Params]:
    from .verification import default_grid

    if source == "default":
        return default_grid()
    try:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read grid file {source!r}: {exc}", EXIT_IO)
    try:
        data = json.loads(text) if text.strip() else []
    except json.JSONDecodeError as exc:
        raise CliError(f"grid file {source!r} is not valid JSON: {exc}", EXIT_USAGE)
    if isinstance(data, dict):
        data = data.get("grid", [])
    if not isinstance(data, list):
        raise CliError("grid must be a JSON list of {k, nu, c} objects", EXIT_USAGE)
    try:
        grid = [Params(float(row["k"]), float(row["nu"]), float(row["c"])) for row in data]
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(f"malformed grid entry: {exc}", EXIT_USAGE)
    return grid


def cmd_verify(args: argparse.Namespace) -> int:
    from .verification import build_report

    grid = _load_grid(args.grid)
    if not grid:
        raise CliError("grid is empty", EXIT_USAGE)
    if args.out is not None:
        # fail before the run rather than after it
        try:
            with open(args.out, "a", encoding="utf-8"):
                pass
        except OSError as exc:
            raise CliError(f"cannot write {args.out!r}: {exc}", EXIT_IO)
    report = build_report(grid, workers=args.workers)
    text = _dump(report) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise CliError(f"cannot write {args.out!r}: {exc}", EXIT_IO)
        s = report["summary"]
        print(f"pass={s['pass']} fail={s['fail']} discrepancy={s['discrepancy']}")
    return EXIT_OK if report["summary"]["fail"] == 0 else EXIT_VIOLATION


# --- sweep ------------------------------------------------------------------

SWEEP_PAIRS = [(kind, mode) for mode in Mode for kind in RatioKind]


def sweep_rows(params: Params, param: str, start: float, stop: float, steps: int, alpha: float = 0.0):
    if steps <= 0:
        raise CliError(f"--steps must be positive, got {steps}", EXIT_USAGE)
    lo, hi = sorted((start, stop))
    header = ["param", "value"]
    header += [f"radius_{mode.value}_{kind.value}" for kind, mode in SWEEP_PAIRS]
    bounded = [(k, m) for k, m in SWEEP_PAIRS if (k, m) != (RatioKind.F, Mode.CONVEX)]
    for kind, mode in bounded:
        header += [f"lower_{mode.value}_{kind.value}", f"upper_{mode.value}_{kind.value}"]
    rows = [header]
    for value in np.linspace(lo, hi, steps + 1):
        value = float(value)
        if param == "alpha":
            p, a = params, value
        else:
            p, a = params.with_(**{param: value}), alpha
        row = [param, _fmt(value)]
        row += [_fmt(solve_radius(kind, mode, p, a, _truncation()).radius) for kind, mode in SWEEP_PAIRS]
        for kind, mode in bounded:
            lower, upper = _bounds(kind, mode, p, 1)
            row += [_fmt(lower), _fmt(upper)]
        rows.append(row)
    return rows


def cmd_sweep(args: argparse.Namespace) -> int:
    rows = sweep_rows(_params(args), args.param, args.start, args.stop, args.steps, args.alpha)
    writer = csv.writer(sys.stdout, lineterminator="\r\n")
    writer.writerows(rows)
    return EXIT_OK


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=float, default=1.0, help="k > 0 (default 1)")
    common.add_argument("--nu", type=float, default=1.0, help="nu > -k (default 1)")
    common.add_argument("--c", type=float, default=1.0, help="c (default 1)")

    parser = argparse.ArgumentParser(
        prog="kbessel",
        description="Generalized k-Bessel functions: values, zeros, radii of starlikeness and convexity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate W, W' or W'' at z >= 0")
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--deriv", type=int, choices=(0, 1, 2), default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("zeros", parents=[common], help="leading positive zeros of a series family")
    p.add_argument("--family", choices=ZERO_FAMILIES, default="W")
    p.add_argument("--count", type=int, default=8)
    p.add_argument("--interlace", action="store_true", help="also check W/WPRIME interlacing")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("radius", parents=[common], help="radius of starlikeness or convexity of order alpha")
    p.add_argument("--kind", choices=tuple(KINDS), required=True)
    p.add_argument("--mode", choices=tuple(MODES), required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--m", type=int, default=1, help="Euler-Rayleigh order of the reported bounds")
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("verify", help="run the acceptance checks over a parameter grid")
    p.add_argument("--grid", default="default", help="'default' or a JSON file of {k, nu, c} objects")
    p.add_argument("--out", default=None, help="report path (stdout if omitted)")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", parents=[common], help="CSV of all radii across a parameter range")
    p.add_argument("--param", choices=("nu", "k", "c", "alpha"), required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True, help="number of intervals (steps + 1 rows)")
    p.add_argument("--alpha", type=float, default=0.0, help="order used when not sweeping alpha")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"kbessel: error: {exc}", file=sys.stderr)
        return exc.code
    except (DomainError, UsageError, UnsupportedError, PoleError, TruncationError) as exc:
        print(f"kbessel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KBesselError as exc:
        print(f"kbessel: failure: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except OSError as exc:
        print(f"kbessel: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
