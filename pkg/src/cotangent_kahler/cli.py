"""Command line entry point: ``verify`` runs the suites, ``scan`` tabulates a profile over t.

Exit codes: 0 when every check passes, 1 when a check fails (the report is
still written), 2 for usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from pathlib import Path

import numpy as np

from .connection import ricci_coefficients
from .errors import DomainError, GeometryError
from .profile import EinsteinProfileParams, LiftProfile, Polynomial, SqrtFamily
from .report import Report, dumps, format_real, write_atomic
from .spaceform import SpaceFormParams
from .verify import DEFAULT_TOLERANCES, SUITES, Context, SampleSpec, _lambda_target, run_suites

OUTPUT_DIR_ENV = "COTANGENT_KAHLER_OUTPUT_DIR"
EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SCAN_COLUMNS = ("t", "u", "du", "v", "w", "u_plus_2tv", "u2_minus_2ct", "F_minus_c", "gamma", "a")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def default_output(name: str) -> Path:
    return Path(os.environ.get(OUTPUT_DIR_ENV, ".")) / name


def parse_profile(spec: str, A: float, c: float) -> LiftProfile:
    """``einstein`` | ``poly:a0,a1,...`` | ``sqrt:A,B``; the last two use the integrable v."""
    kind, _, args = spec.partition(":")
    try:
        nums = tuple(float(x) for x in args.split(",")) if args else ()
    except ValueError:
        raise UsageError(f"bad profile arguments {args!r}") from None
    if kind == "einstein" and not nums:
        return LiftProfile.einstein(A, c)
    if kind == "poly" and nums:
        return LiftProfile.integrable(Polynomial(nums), c, f"poly:{args}")
    if kind == "sqrt" and len(nums) == 2:
        return LiftProfile.integrable(SqrtFamily(*nums), c, f"sqrt:{args}")
    raise UsageError(f"unknown profile {spec!r}; use einstein, poly:a0,a1,... or sqrt:A,B")


def parse_tolerances(items) -> dict:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or name not in DEFAULT_TOLERANCES:
            raise UsageError(f"bad tolerance override {item!r}; expected one of the check names, e.g. einstein.proportional=1e-7")
        try:
            val = float(value)
        except ValueError:
            raise UsageError(f"tolerance {item!r} is not a number") from None
        if not val > 0:
            raise UsageError(f"tolerance {name} must be positive")
        out[name] = val
    return out


def parse_suites(text: str) -> list[str]:
    names = [s.strip() for s in text.split(",") if s.strip()]
    if names == ["all"]:
        return list(SUITES)
    bad = [s for s in names if s not in SUITES]
    if bad or not names:
        raise UsageError(f"unknown suites {bad}; choose from {', '.join(SUITES)} or all")
    return [s for s in SUITES if s in names]


def _common(p: argparse.ArgumentParser):
    p.add_argument("--n", type=int, default=3, help="base dimension (>= 2)")
    p.add_argument("--c", type=float, default=-1.0, help="sectional curvature of the base")
    p.add_argument("--A", type=float, default=1.0, help="Einstein profile constant (> 0)")
    p.add_argument("--profile", default="einstein", help="einstein | poly:a0,a1,... | sqrt:A,B")
    p.add_argument("--output", type=Path, default=None, help=f"output file (default under ${OUTPUT_DIR_ENV} or .)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cotangent-kahler", description="Numerical checks for diagonal-lift Kahler-Einstein structures on T*M.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run verification suites and write a report")
    _common(v)
    v.add_argument("--suites", default="all", help=f"comma separated subset of {','.join(SUITES)}, or all")
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--oracle-samples", type=int, default=20, help="points used by the finite-difference oracles")
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--q-radius", type=float, default=None)
    v.add_argument("--t-min", type=float, default=0.0)
    v.add_argument("--t-max", type=float, default=4.0)
    v.add_argument("--guard", type=float, default=0.2, help="margin in t below the tube bound A^2/(2c) when c > 0")
    v.add_argument("--tol", action="append", metavar="NAME=VALUE", help="override one check tolerance")
    v.add_argument("--format", choices=("json", "text"), default="json")

    s = sub.add_parser("scan", help="tabulate profile quantities over t as CSV")
    _common(s)
    s.add_argument("--t-min", type=float, default=0.0)
    s.add_argument("--t-max", type=float, default=4.0)
    s.add_argument("--points", type=int, default=101)
    return parser


def _base_and_params(args) -> tuple[SpaceFormParams, EinsteinProfileParams]:
    if args.n < 2:
        raise UsageError("n must be at least 2")
    if not args.A > 0:
        raise UsageError("A must be positive")
    try:
        base = SpaceFormParams(args.n, args.c)
        params = EinsteinProfileParams(args.A, args.c, args.n)
    except GeometryError as exc:
        raise UsageError(str(exc)) from None
    return base, params


def build_context(args) -> Context:
    base, params = _base_and_params(args)
    profile = parse_profile(args.profile, args.A, args.c)
    tolerances = parse_tolerances(args.tol)
    try:
        spec = SampleSpec(
            seed=args.seed,
            count=args.samples,
            q_radius=args.q_radius,
            t_range=(args.t_min, args.t_max),
            guard=args.guard,
            oracle_count=min(args.oracle_samples, args.samples),
        )
        return Context(base, params, spec, tolerances, profile)
    except GeometryError as exc:
        raise UsageError(str(exc)) from None


def config_record(ctx: Context, suites) -> dict:
    spec = ctx.spec
    return {
        "n": ctx.base.n,
        "c": ctx.base.c,
        "A": ctx.params.A,
        "profile": ctx.profile.describe(),
        "suites": list(suites),
        "sampling": {
            "seed": spec.seed,
            "count": spec.count,
            "oracle_count": spec.oracle_count,
            "q_radius": ctx.base.default_radius() if spec.q_radius is None else spec.q_radius,
            "t_range": list(spec.t_range),
            "guard": spec.guard,
        },
        "tolerances": dict(ctx.tolerances),
    }


def run_verify(args) -> tuple[int, Report]:
    suites = parse_suites(args.suites)
    ctx = build_context(args)
    checks = run_suites(ctx, suites)
    lam, k = _lambda_target(ctx)
    notes = []
    if ctx.clipped:
        notes.append(f"t-range clipped to the tube: t < {ctx.t_hi:.17g} (tube bound A^2/(2c) = {ctx.params.t_max:.17g})")
    if ctx.base.low_dimension_warning:
        notes.append("n = 2: lowest dimension where the coefficient decomposition is unique")
    summary = {"lambda": lam, "k": k, "t_range_used": [ctx.t_lo, ctx.t_hi], "notes": notes}
    report = Report(config_record(ctx, suites), checks, summary)
    return (EXIT_PASS if report.passed else EXIT_FAIL), report


def format_text(report: Report) -> str:
    lines = []
    for c in report.checks:
        lines.append(
            f"{'PASS' if c.passed else 'FAIL'}  {c.name:<40} {c.bound:<5} max={format_real(c.max_residual)} "
            f"tol={format_real(c.tolerance)} n={c.samples}"
        )
    d = report.to_dict()["summary"]
    lines.append(f"{d['passed']}/{d['checks']} checks passed; lambda={format_real(d['lambda'])} k={format_real(d['k'])}")
    lines.extend(f"note: {n}" for n in d["notes"])
    return "\n".join(lines) + "\n"


def scan_rows(profile: LiftProfile, base: SpaceFormParams, t_grid) -> tuple[list[list[float]], int]:
    """Rows for every grid point where the profile is admissible; also returns the number dropped."""
    rows, dropped = [], 0
    c, n = base.c, base.n
    for t in t_grid:
        try:
            vals = profile.values(float(t))
            F = profile.integrability_scalar(float(t))
        except DomainError:
            dropped += 1
            continue
        co = ricci_coefficients(n, c, t, vals.u, vals.du, vals.d2u, vals.d3u)
        rows.append([t, vals.u, vals.du, vals.v, vals.w, vals.u + 2 * t * vals.v, vals.u**2 - 2 * c * t, F - c, co.gamma, co.a])
    return rows, dropped


def format_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SCAN_COLUMNS)
    for row in rows:
        w.writerow([format_real(float(x)) for x in row])
    return buf.getvalue()


def run_scan(args) -> tuple[int, str, list[str]]:
    base, params = _base_and_params(args)
    profile = parse_profile(args.profile, args.A, args.c)
    if args.points < 1 or not (0 <= args.t_min <= args.t_max):
        raise UsageError("need points >= 1 and 0 <= t-min <= t-max")
    grid = np.linspace(args.t_min, args.t_max, args.points)
    notes = []
    if profile.label == "einstein" and base.c > 0 and args.t_max >= params.t_max:
        grid = grid[grid < params.t_max]
        notes.append(f"grid clipped to the tube t < {params.t_max:.17g}")
    rows, dropped = scan_rows(profile, base, grid)
    if dropped:
        notes.append(f"{dropped} grid points outside the admissible domain were dropped")
    if not rows:
        raise UsageError("no admissible grid points")
    return EXIT_PASS, format_csv(rows), notes


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "verify":
            code, report = run_verify(args)
            text = dumps(report.to_dict()) if args.format == "json" else format_text(report)
            out = args.output or default_output("report.json" if args.format == "json" else "report.txt")
            write_atomic(out, text)
            d = report.to_dict()["summary"]
            print(f"{d['verdict']}: {d['passed']}/{d['checks']} checks passed; report written to {out}")
            for name in d["failed"]:
                print(f"failed: {name}", file=sys.stderr)
            return code
        code, text, notes = run_scan(args)
        out = args.output or default_output("scan.csv")
        write_atomic(out, text)
        for note in notes:
            print(f"notice: {note}", file=sys.stderr)
        print(f"scan written to {out}")
        return code
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
