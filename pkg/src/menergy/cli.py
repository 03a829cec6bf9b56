"""Command-line front end.

    menergy analyze  (--in FILE | --gen SPEC) [--in-format graph6|edgelist]
                     [--format csv|json] [--out FILE] [--fail-on-violation]
    menergy generate SPEC [SPEC ...] [--out FILE]
    menergy sweep    (--in FILE | --gen SPEC) --max-degree K
                     [--format csv|json] [--out FILE] [--fail-on-violation]

graph6 input is one graph per line; edge-list input is one graph per file.
Output ordering and float formatting (12 significant digits) are fixed, so
identical input produces byte-identical CSV.  The ME_TOLERANCE_SCALE
environment variable rescales the soundness and tightness tolerances.

Exit codes: 0 on success, 1 on unreadable input (diagnostics name the line),
2 when --fail-on-violation is set and a soundness check fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Iterator

from .families import FamilyError, generate_from_string
from .graph6 import Graph6Error, parse_graph6, write_graph6
from .graphs import Graph, GraphError, parse_edge_list
from .moments import MomentMismatchError, NoEdgesError
from .polyopt import LpConvergenceError, LpInfeasibleError, bound_sweep
from .report import analyze_graph, soundness_ok

ANALYZE_COLUMNS = (
    "n",
    "m",
    "max_degree",
    "zagreb",
    "quad_count",
    "m2",
    "m4",
    "scaled_m4",
    "scaled_m2",
    "scaled_m0",
    "tangency",
    "clamped",
    "energy",
    "quartic_bound",
    "van_dam_bound",
    "tightness",
    "classification",
    "connected",
)

SWEEP_COLUMNS = (
    "graph",
    "label",
    "degree",
    "lp_upper",
    "upper_status",
    "upper_certified",
    "lp_lower",
    "lower_status",
    "lower_certified",
    "quartic_bound",
    "energy",
)


class InputError(Exception):
    """Unreadable command input; the message is the user-facing diagnostic."""


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _input_graphs(args: argparse.Namespace) -> Iterator[tuple[str, Graph]]:
    if args.gen is not None:
        try:
            g = generate_from_string(args.gen)
        except FamilyError as err:
            raise InputError(f"bad family spec {args.gen!r}: {err}") from err
        yield g.label, g
        return
    try:
        with open(args.infile, "r", encoding="ascii") as handle:
            content = handle.read()
    except OSError as err:
        raise InputError(f"cannot read {args.infile}: {err}") from err
    if args.in_format == "edgelist":
        try:
            yield args.infile, parse_edge_list(content)
        except GraphError as err:
            raise InputError(f"{args.infile}: {err}") from err
        return
    for lineno, line in enumerate(content.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            yield f"line {lineno}", parse_graph6(line)
        except (Graph6Error, GraphError) as err:
            raise InputError(f"line {lineno}: {err}") from err


def _emit(rows: list[dict], columns: tuple[str, ...], fmt: str, out: str | None) -> None:
    if fmt == "json":
        text = json.dumps([{k: row[k] for k in columns} for row in rows], indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row[k]) for k in columns])
        text = buf.getvalue()
    if out:
        with open(out, "w", encoding="ascii", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _report_row(report) -> dict:
    s = report.summary
    t = report.scaled
    return {
        "n": s.n,
        "m": s.m,
        "max_degree": s.max_degree,
        "zagreb": s.zagreb,
        "quad_count": s.quad_count,
        "m2": s.m2,
        "m4": s.m4,
        "scaled_m4": None if t is None else t.m4_scaled,
        "scaled_m2": None if t is None else t.m2_scaled,
        "scaled_m0": None if t is None else t.m0_scaled,
        "tangency": report.tangency,
        "clamped": report.tangency_clamped,
        "energy": report.energy,
        "quartic_bound": report.quartic_bound,
        "van_dam_bound": report.van_dam_bound,
        "tightness": report.tightness,
        "classification": str(report.classification),
        "connected": report.connected,
    }


def cmd_analyze(args: argparse.Namespace, tol_scale: float) -> int:
    rows = []
    violations = 0
    try:
        for _, g in _input_graphs(args):
            report = analyze_graph(g, tol_scale=tol_scale)
            if not soundness_ok(report, tol_scale):
                violations += 1
            rows.append(_report_row(report))
    except (InputError, MomentMismatchError) as err:
        print(str(err), file=sys.stderr)
        return 1
    _emit(rows, ANALYZE_COLUMNS, args.format, args.out)
    if args.fail_on_violation and violations:
        print(f"{violations} soundness violation(s)", file=sys.stderr)
        return 2
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    lines = []
    try:
        for spec_text in args.spec:
            lines.append(write_graph6(generate_from_string(spec_text)))
    except (FamilyError, Graph6Error) as err:
        print(str(err), file=sys.stderr)
        return 1
    text = "".join(line + "\n" for line in lines)
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_sweep(args: argparse.Namespace, tol_scale: float) -> int:
    rows = []
    violations = 0
    try:
        for index, (label, g) in enumerate(_input_graphs(args)):
            report = analyze_graph(g, tol_scale=tol_scale)
            entries = bound_sweep(g, args.max_degree)
            slack = 1e-6 * tol_scale * max(1.0, report.energy)
            for entry in entries:
                if (
                    entry.upper.objective < report.energy - slack
                    or entry.lower.objective > report.energy + slack
                ):
                    violations += 1
                rows.append(
                    {
                        "graph": index,
                        "label": label,
                        "degree": entry.degree,
                        "lp_upper": entry.upper.objective,
                        "upper_status": entry.upper.status,
                        "upper_certified": entry.upper.certified,
                        "lp_lower": entry.lower.objective,
                        "lower_status": entry.lower.status,
                        "lower_certified": entry.lower.certified,
                        "quartic_bound": report.quartic_bound,
                        "energy": report.energy,
                    }
                )
    except (InputError, MomentMismatchError, NoEdgesError, ValueError) as err:
        print(str(err), file=sys.stderr)
        return 1
    except (LpConvergenceError, LpInfeasibleError) as err:
        print(f"LP solve failed: {err}", file=sys.stderr)
        return 1
    _emit(rows, SWEEP_COLUMNS, args.format, args.out)
    if args.fail_on_violation and violations:
        print(f"{violations} bound violation(s)", file=sys.stderr)
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="menergy",
        description="Graph energy, spectral-moment bounds, and equality classification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="per-graph moments, energy, bounds, classification")
    source = analyze.add_mutually_exclusive_group(required=True)
    source.add_argument("--in", dest="infile", metavar="FILE", help="input file")
    source.add_argument("--gen", metavar="SPEC", help="generate a family instead of reading")
    analyze.add_argument("--in-format", choices=("graph6", "edgelist"), default="graph6")
    analyze.add_argument("--format", choices=("csv", "json"), default="csv")
    analyze.add_argument("--out", metavar="FILE", help="write here instead of stdout")
    analyze.add_argument(
        "--fail-on-violation",
        action="store_true",
        help="exit 2 if any upper bound undercuts the exact energy",
    )

    generate = sub.add_parser("generate", help="emit graph6 lines for family specs")
    generate.add_argument("spec", nargs="+", metavar="SPEC")
    generate.add_argument("--out", metavar="FILE")

    sweep = sub.add_parser("sweep", help="LP bound table over even degrees")
    source = sweep.add_mutually_exclusive_group(required=True)
    source.add_argument("--in", dest="infile", metavar="FILE")
    source.add_argument("--gen", metavar="SPEC")
    sweep.add_argument("--in-format", choices=("graph6", "edgelist"), default="graph6")
    sweep.add_argument("--max-degree", type=int, required=True, metavar="K")
    sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    sweep.add_argument("--out", metavar="FILE")
    sweep.add_argument("--fail-on-violation", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    raw = os.environ.get("ME_TOLERANCE_SCALE", "1")
    try:
        tol_scale = float(raw)
    except ValueError:
        print(f"invalid ME_TOLERANCE_SCALE {raw!r}: expected a number", file=sys.stderr)
        return 1
    if not tol_scale > 0:
        print(f"invalid ME_TOLERANCE_SCALE {raw!r}: must be positive", file=sys.stderr)
        return 1
    if args.command == "analyze":
        return cmd_analyze(args, tol_scale)
    if args.command == "generate":
        return cmd_generate(args)
    return cmd_sweep(args, tol_scale)


if __name__ == "__main__":
    sys.exit(main())
