"""Command-line front end.

Subcommands cover every library operation; report output is a plain table,
CSV with fixed headers, or a JSON array.  Exact rationals serialize as
"num/den" next to a 6-decimal approximation, so the dominance boundary
survives serialization exactly.  Data goes to stdout, diagnostics to
stderr; exit codes are 0 (success), 1 (usage), 2 (computation failure).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .analysis import (
    CoverageReport,
    DensityReport,
    DominanceReport,
    PrimorialReport,
    coverage_check,
    density_report,
    dominance_report,
    dominance_scan,
    primorial_series,
    solve_sum_product,
)
from .arith import primes_up_to
from .cardinality import (
    DIFFERENCE,
    SUM,
    CardinalityReport,
    card_S2_pp,
    card_signed_sumset,
)
from .hyperbola import (
    DEFAULT_BUDGET,
    HyperbolaSpec,
    enumerate_points,
    signed_sumset,
    sum_diff_cardinalities,
    sum_diff_sets,
)

__all__ = ["build_parser", "main", "render_svg", "resolve_threads", "run", "write_reports"]

_SMALL_SWEEP_ALL_A = 300  # below this n the verify sweep checks every unit a
_SWEEP_SAMPLES = 20
_SWEEP_SEED = 0x5EED

_HEADERS = {
    "dominance": ("a", "n", "c2", "c2_decimal", "classification"),
    "card": ("a", "n", "d", "m", "p", "t", "count", "method", "total"),
    "density": (
        "a",
        "x",
        "threshold",
        "eligible_count",
        "dominant_count",
        "empirical_density",
        "empirical_decimal",
        "class_constant",
        "bound_truncated",
        "bound_truncated_decimal",
        "bound_rigorous",
        "bound_rigorous_decimal",
        "prime_limit",
    ),
    "primorial": (
        "a",
        "t",
        "k",
        "primorial",
        "ratio_first_power",
        "ratio_first_decimal",
        "ratio_power_t",
        "ratio_power_decimal",
        "loglog",
    ),
    "coverage": ("a", "n", "d", "m", "covered", "guaranteed", "missing_count", "missing"),
    "triple": ("b", "a", "p", "t", "modulus", "x1", "x2", "x3"),
}


def _rat(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _dec(f: Fraction | float) -> str:
    return f"{float(f):.6f}"


def _dominance_rows(r: DominanceReport) -> list[dict[str, str]]:
    return [
        {
            "a": str(r.a),
            "n": str(r.n),
            "c2": _rat(r.c2),
            "c2_decimal": _dec(r.c2),
            "classification": r.classification,
        }
    ]


def _card_rows(rep: CardinalityReport) -> list[dict[str, str]]:
    s = rep.spec
    return [
        {
            "a": str(s.a),
            "n": str(s.n),
            "d": str(s.d),
            "m": str(s.m),
            "p": str(fc.p),
            "t": str(fc.t),
            "count": str(fc.count),
            "method": fc.method,
            "total": str(rep.total),
        }
        for fc in rep.per_factor
    ]


def _density_rows(r: DensityReport) -> list[dict[str, str]]:
    return [
        {
            "a": str(r.a),
            "x": str(r.x),
            "threshold": _rat(r.threshold),
            "eligible_count": str(r.eligible_count),
            "dominant_count": str(r.dominant_count),
            "empirical_density": _rat(r.empirical_density),
            "empirical_decimal": _dec(r.empirical_density),
            "class_constant": _rat(r.class_constant),
            "bound_truncated": _rat(r.bound_truncated),
            "bound_truncated_decimal": _dec(r.bound_truncated),
            "bound_rigorous": _rat(r.bound_rigorous),
            "bound_rigorous_decimal": _dec(r.bound_rigorous),
            "prime_limit": str(r.prime_limit),
        }
    ]


def _primorial_rows(rep: PrimorialReport) -> list[dict[str, str]]:
    return [
        {
            "a": str(rep.a),
            "t": str(rep.t),
            "k": str(row.k),
            "primorial": str(row.primorial),
            "ratio_first_power": _rat(row.ratio_first_power),
            "ratio_first_decimal": _dec(row.ratio_first_power),
            "ratio_power_t": _rat(row.ratio_power_t),
            "ratio_power_decimal": _dec(row.ratio_power_t),
            "loglog": f"{row.loglog:.6f}",
        }
        for row in rep.rows
    ]


def _coverage_rows(r: CoverageReport) -> list[dict[str, str]]:
    s = r.spec
    return [
        {
            "a": str(s.a),
            "n": str(s.n),
            "d": str(s.d),
            "m": str(s.m),
            "covered": "true" if r.covered else "false",
            "guaranteed": "true" if r.guaranteed else "false",
            "missing_count": str(len(r.missing)),
            "missing": " ".join(str(v) for v in r.missing),
        }
    ]


_BUILDERS = {
    "dominance": _dominance_rows,
    "card": _card_rows,
    "density": _density_rows,
    "primorial": _primorial_rows,
    "coverage": _coverage_rows,
}


def write_reports(reports: Iterable, fmt: str, kind: str) -> str:
    """Serialize a homogeneous stream of reports as CSV or a JSON array.

    CSV uses the fixed header for the report kind; an empty stream gives
    a header-only CSV (or an empty JSON array).  Row order follows input
    order, so output is byte-deterministic.
    """
    header = _HEADERS[kind]
    build = _BUILDERS[kind]
    rows = [row for rep in reports for row in build(rep)]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([row[k] for k in header])
        return buf.getvalue()
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    raise ValueError(f"unsupported report format {fmt!r}")


def render_svg(points: Iterable[tuple[int, int]], n: int) -> str:
    """Standalone SVG scatter of planar points on a square of side n.

    Mathematical orientation (origin bottom-left, y upward); one filled
    unit square per point, or a dot for small n where squares would touch.
    No external references, so the document is self-contained.
    """
    pts = list(points)
    for x, y in pts:
        if not (1 <= x < n and 1 <= y < n):
            raise ValueError(f"point ({x}, {y}) is outside [1, {n})^2")
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="640" height="640" '
        f'viewBox="0 0 {n} {n}">',
        f'<g fill="#1f3b73" transform="translate(0,{n}) scale(1,-1)">',
    ]
    if n <= 64:
        parts.extend(
            f'<circle cx="{x + 0.5}" cy="{y + 0.5}" r="0.3"/>' for x, y in pts
        )
    else:
        parts.extend(f'<rect x="{x}" y="{y}" width="1" height="1"/>' for x, y in pts)
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def resolve_threads(value: int | None) -> int:
    """Explicit flag wins, then MODHYP_THREADS, then the hardware count."""
    if value is not None:
        return max(1, value)
    env = os.environ.get("MODHYP_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"MODHYP_THREADS must be an integer, got {env!r}")
    return os.cpu_count() or 1


def _rational_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational (use num/den)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--threads",
        type=int,
        default=None,
        help="worker threads (default: MODHYP_THREADS or the hardware count)",
    )
    common.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_BUDGET,
        help=f"enumeration budget in leading tuples (default {DEFAULT_BUDGET})",
    )
    common.add_argument(
        "--format",
        choices=("table", "csv", "json"),
        default="table",
        help="output format (default table)",
    )

    parser = argparse.ArgumentParser(
        prog="modhyp",
        description="Coordinate sumsets and difference sets of modular hyperbolas",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="emit points or the signed sumset")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--m", type=int, default=None, help="plus signs (default d)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--points", action="store_true", help="emit points instead of the sumset")
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("card", parents=[common], help="cardinality report with per-factor methods")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--m", type=int, default=None)
    p.set_defaults(handler=_cmd_card)

    p = sub.add_parser("ratio", parents=[common], help="dominance ratio with classification")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_cmd_ratio)

    p = sub.add_parser("verify", parents=[common], help="oracle-vs-closed-form sweep")
    p.add_argument("--max-pp", type=int, required=True, help="prime-power sweep bound")
    p.add_argument("--max-n", type=int, default=None, help="also sweep composite n up to this bound")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("scan", parents=[common], help="dominance reports, ascending n")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--L", type=_rational_arg, default=None, help="emit only ratios above this")
    p.set_defaults(handler=_cmd_scan)

    p = sub.add_parser("density", parents=[common], help="dominance density and lower bounds")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--L", type=_rational_arg, default=Fraction(1))
    p.set_defaults(handler=_cmd_density)

    p = sub.add_parser("primorial", parents=[common], help="ratio series along 3-mod-4 primorials")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--t", type=int, default=2)
    p.set_defaults(handler=_cmd_primorial)

    p = sub.add_parser("coverage", parents=[common], help="attained residues for d >= 3")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_cmd_coverage)

    p = sub.add_parser("solve3", parents=[common], help="one verified sum-product triple")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--t", type=int, default=1)
    p.set_defaults(handler=_cmd_solve3)

    p = sub.add_parser("plot", parents=[common], help="SVG scatter of the planar hyperbola")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True, help="output file, or - for stdout")
    p.set_defaults(handler=_cmd_plot)

    return parser


def _cmd_enumerate(args: argparse.Namespace, threads: int) -> int:
    m = args.m if args.m is not None else args.d
    spec = HyperbolaSpec(args.d, m, args.a, args.n)
    if args.points:
        pts = list(enumerate_points(spec, budget=args.budget))
        if args.format == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow([f"x{i}" for i in range(1, spec.d + 1)])
            writer.writerows(pts)
            sys.stdout.write(buf.getvalue())
        elif args.format == "json":
            sys.stdout.write(json.dumps([list(pt) for pt in pts]) + "\n")
        else:
            for pt in pts:
                print(" ".join(str(c) for c in pt))
        return 0
    attained = signed_sumset(spec, budget=args.budget, workers=threads)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["residue"])
        writer.writerows([v] for v in attained)
        sys.stdout.write(buf.getvalue())
    elif args.format == "json":
        payload = {
            "d": spec.d,
            "m": spec.m,
            "a": spec.a,
            "n": spec.n,
            "cardinality": len(attained),
            "members": attained.values(),
        }
        sys.stdout.write(json.dumps(payload) + "\n")
    else:
        print(f"cardinality {len(attained)} of modulus {spec.n}")
        print(" ".join(str(v) for v in attained))
    return 0


def _cmd_card(args: argparse.Namespace, threads: int) -> int:
    m = args.m if args.m is not None else args.d
    spec = HyperbolaSpec(args.d, m, args.a, args.n)
    rep = card_signed_sumset(spec, budget=args.budget, workers=threads)
    if args.format == "table":
        for fc in rep.per_factor:
            print(f"{fc.p}^{fc.t}: {fc.count}  [{fc.method}]")
        print(f"total {rep.total}")
    else:
        sys.stdout.write(write_reports([rep], args.format, "card"))
    return 0


def _cmd_ratio(args: argparse.Namespace, threads: int) -> int:
    rep = dominance_report(args.a, args.n)
    if args.format == "table":
        print(f"c2({rep.a}; {rep.n}) = {_rat(rep.c2)} ({_dec(rep.c2)})  {rep.classification}")
        for p, t, r in rep.factor_breakdown:
            print(f"  {p}^{t}: {_rat(r)}")
    else:
        sys.stdout.write(write_reports([rep], args.format, "dominance"))
    return 0


def _prime_powers_up_to(bound: int) -> list[tuple[int, int, int]]:
    out = []
    for p in primes_up_to(bound):
        q, t = p, 1
        while q <= bound:
            out.append((p, t, q))
            q *= p
            t += 1
    return sorted(out, key=lambda v: v[2])


def _cmd_verify(args: argparse.Namespace, threads: int) -> int:
    import random

    mismatches = 0
    checked = 0
    for p, t, q in _prime_powers_up_to(args.max_pp):
        sums, diffs = sum_diff_cardinalities(q)
        for a in range(1, q):
            if math.gcd(a, q) != 1:
                continue
            checked += 1
            cs = card_S2_pp(a, p, t, SUM)
            cd = card_S2_pp(a, p, t, DIFFERENCE)
            if cs != int(sums[a]) or cd != int(diffs[a]):
                mismatches += 1
                print(
                    f"mismatch at a={a}, q={p}^{t}: closed form ({cs}, {cd}) "
                    f"vs oracle ({int(sums[a])}, {int(diffs[a])})",
                    file=sys.stderr,
                )
    composite_checked = 0
    if args.max_n is not None:
        rng = random.Random(_SWEEP_SEED)
        for n in range(2, args.max_n + 1):
            units = [a for a in range(1, n) if math.gcd(a, n) == 1]
            if n <= _SMALL_SWEEP_ALL_A:
                sums, diffs = sum_diff_cardinalities(n)
                sample = units
                oracle = lambda a: (int(sums[a]), int(diffs[a]))
            else:
                sample = sorted(rng.sample(units, min(_SWEEP_SAMPLES, len(units))))
                oracle = lambda a: tuple(
                    len(s) for s in sum_diff_sets(a, n, budget=args.budget)
                )
            for a in sample:
                composite_checked += 1
                osum, odiff = oracle(a)
                csum = card_signed_sumset(HyperbolaSpec(2, 2, a, n)).total
                cdiff = card_signed_sumset(HyperbolaSpec(2, 1, a, n)).total
                if csum != osum or cdiff != odiff:
                    mismatches += 1
                    print(
                        f"mismatch at a={a}, n={n}: composed ({csum}, {cdiff}) "
                        f"vs oracle ({osum}, {odiff})",
                        file=sys.stderr,
                    )
    summary = f"verified {checked} prime-power cases"
    if args.max_n is not None:
        summary += f" and {composite_checked} composite cases"
    print(f"{summary}: {mismatches} mismatches")
    return 0 if mismatches == 0 else 2


def _cmd_scan(args: argparse.Namespace, threads: int) -> int:
    reports = dominance_scan(args.a, args.max_n, threshold=args.L, workers=threads)
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(_HEADERS["dominance"])
        for rep in reports:
            row = _dominance_rows(rep)[0]
            writer.writerow([row[k] for k in _HEADERS["dominance"]])
    elif args.format == "json":
        rows = [_dominance_rows(rep)[0] for rep in reports]
        sys.stdout.write(json.dumps(rows, indent=2) + "\n")
    else:
        for rep in reports:
            print(f"n={rep.n} c2={_rat(rep.c2)} ({_dec(rep.c2)}) {rep.classification}")
    skipped = sum(1 for n in range(2, args.max_n + 1) if math.gcd(args.a, n) != 1)
    print(f"skipped {skipped} moduli sharing a factor with a={args.a}", file=sys.stderr)
    return 0


def _cmd_density(args: argparse.Namespace, threads: int) -> int:
    rep = density_report(args.a, args.max_n, threshold=args.L)
    if args.format == "table":
        print(
            f"eligible {rep.eligible_count}, above threshold {rep.dominant_count}, "
            f"empirical density {_rat(rep.empirical_density)} ({_dec(rep.empirical_density)})"
        )
        print(
            f"class constant {_rat(rep.class_constant)}, truncated bound "
            f"{_dec(rep.bound_truncated)}, rigorous bound {_dec(rep.bound_rigorous)} "
            f"(primes up to {rep.prime_limit})"
        )
    else:
        sys.stdout.write(write_reports([rep], args.format, "density"))
    return 0


def _cmd_primorial(args: argparse.Namespace, threads: int) -> int:
    rep = primorial_series(args.a, args.k_max, t=args.t)
    if args.format == "table":
        for row in rep.rows:
            print(
                f"k={row.k} N={row.primorial} c2={_rat(row.ratio_first_power)} "
                f"({_dec(row.ratio_first_power)}) c2^t={_rat(row.ratio_power_t)} "
                f"({_dec(row.ratio_power_t)}) loglog={row.loglog:.6f}"
            )
    else:
        sys.stdout.write(write_reports([rep], args.format, "primorial"))
    return 0


def _cmd_coverage(args: argparse.Namespace, threads: int) -> int:
    spec = HyperbolaSpec(args.d, args.m, args.a, args.n)
    rep = coverage_check(spec, budget=args.budget, workers=threads)
    if args.format == "table":
        state = "covered" if rep.covered else "NOT covered"
        print(f"{state}; guaranteed={'yes' if rep.guaranteed else 'no'}")
        if rep.missing:
            print("missing: " + " ".join(str(v) for v in rep.missing))
    else:
        sys.stdout.write(write_reports([rep], args.format, "coverage"))
    return 0


def _cmd_solve3(args: argparse.Namespace, threads: int) -> int:
    triple = solve_sum_product(args.b, args.a, args.p, args.t)
    q = args.p**args.t
    if args.format == "table":
        x1, x2, x3 = triple
        print(f"x1={x1} x2={x2} x3={x3} (mod {q})")
        print(f"sum={sum(triple) % q} product={x1 * x2 * x3 % q}")
    else:
        row = {
            "b": str(args.b),
            "a": str(args.a),
            "p": str(args.p),
            "t": str(args.t),
            "modulus": str(q),
            "x1": str(triple[0]),
            "x2": str(triple[1]),
            "x3": str(triple[2]),
        }
        if args.format == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(_HEADERS["triple"])
            writer.writerow([row[k] for k in _HEADERS["triple"]])
            sys.stdout.write(buf.getvalue())
        else:
            sys.stdout.write(json.dumps([row], indent=2) + "\n")
    return 0


def _cmd_plot(args: argparse.Namespace, threads: int) -> int:
    spec = HyperbolaSpec(2, 2, args.a, args.n)
    pts = [(x, y) for x, y in enumerate_points(spec, budget=args.budget)]
    svg = render_svg(pts, spec.n)
    if args.out == "-":
        sys.stdout.write(svg)
    else:
        Path(args.out).write_text(svg)
        print(f"wrote {len(pts)} points to {args.out}", file=sys.stderr)
    return 0


def run(argv: list[str]) -> int:
    """Parse argv and dispatch; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        threads = resolve_threads(args.threads)
        return args.handler(args, threads)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (RuntimeError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
