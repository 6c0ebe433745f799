"""Command-line front end.

Exit codes: 0 success/feasible, 2 no feasible answer, 1 any error.
``--json`` prints a single JSON document on stdout for every outcome.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .errors import AutopartError, InfeasibleSynthesis, NoCompatibleTemplate
from .evaluation import ScoreWeights, evaluate
from .hwsynth import suggest_hardware
from .io import (
    parse_catalog,
    parse_hardware,
    parse_mapping,
    parse_software,
    serialize_hardware,
    serialize_mapping,
)
from .solvers import DEFAULT_EXHAUSTIVE_CAP, SOLVERS, SolveRequest, solve

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2

CAP_ENV = "AUTOPART_EXHAUSTIVE_CAP"


class CliError(Exception):
    def __init__(self, kind, message):
        self.kind = kind
        super().__init__(message)


def _read(path, parser):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError("IOError", f"{path}: {exc.strerror or exc}") from None
    try:
        return parser(text)
    except AutopartError as exc:
        raise CliError(exc.kind, f"{path}: {exc}") from None


def _weights(spec) -> ScoreWeights:
    parts = spec.split(",")
    if len(parts) != 4:
        raise CliError("InvalidWeights", f"expected four comma-separated weights, got {spec!r}")
    try:
        values = [float(Fraction(p.strip())) for p in parts]
        return ScoreWeights(*values)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError("InvalidWeights", str(exc)) from None


def _exhaustive_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_EXHAUSTIVE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise CliError("InvalidEnvironment", f"{CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise CliError("InvalidEnvironment", f"{CAP_ENV} must be positive")
    return cap


def _emit(args, doc, human):
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        print(human)


def _fmt_num(x):
    if isinstance(x, float) and x.is_integer():
        return str(int(x))
    return f"{x:g}" if isinstance(x, float) else str(x)


# -- subcommands --------------------------------------------------------------

def cmd_validate(args) -> int:
    reports = []
    targets = [("hardware", args.hardware, parse_hardware)]
    if args.software:
        targets.append(("software", args.software, parse_software))
    for kind, path, parser in targets:
        try:
            model = _read(path, parser)
        except CliError as exc:
            reports.append({"document": kind, "path": path, "valid": False,
                            "error": {"kind": exc.kind, "message": str(exc)}})
            continue
        if kind == "hardware":
            summary = {"ecus": len(model.ecus), "links": len(model.links)}
        else:
            summary = {"components": len(model.components), "edges": len(model.edges)}
        reports.append({"document": kind, "path": path, "valid": True, "summary": summary})

    ok = all(r["valid"] for r in reports)
    lines = []
    for r in reports:
        if r["valid"]:
            counts = ", ".join(f"{v} {k}" for k, v in r["summary"].items())
            lines.append(f"OK    {r['document']} {r['path']}: {counts}")
        else:
            lines.append(f"FAIL  {r['document']} {r['path']}: {r['error']['kind']}: {r['error']['message']}")
    _emit(args, {"valid": ok, "documents": reports}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_ERROR


def _evaluation_text(result) -> str:
    lines = [f"score: {result.score}", f"feasible: {'yes' if result.feasible else 'no'}"]
    if result.violations:
        lines.append("violations:")
        lines += [f"  {v.kind.value}({v.subject}): {v.detail}" for v in result.violations]
    lines.append("ECU utilization:")
    for ecu, used in result.ecu_utilization.items():
        lines.append(f"  {ecu}: ram {_fmt_num(used['ram_mb'])} MB, cpu {_fmt_num(used['cpu_units'])}")
    if result.link_utilization:
        lines.append("link utilization (kbps):")
        lines += [f"  {k}: {_fmt_num(v)}" for k, v in result.link_utilization.items()]
    if result.edge_latencies:
        lines.append("edge latency (ms):")
        lines += [f"  {k}: {'no route' if v is None else _fmt_num(v)}"
                  for k, v in result.edge_latencies.items()]
    return "\n".join(lines)


def cmd_evaluate(args) -> int:
    hw = _read(args.hardware, parse_hardware)
    sw = _read(args.software, parse_software)
    mapping = _read(args.mapping, parse_mapping)
    weights = _weights(args.weights)
    try:
        result = evaluate(hw, sw, mapping, weights)
    except AutopartError as exc:
        raise CliError(exc.kind, str(exc)) from None
    _emit(args, result.to_dict(), _evaluation_text(result))
    return EXIT_OK if result.feasible else EXIT_INFEASIBLE


def cmd_solve(args) -> int:
    hw = _read(args.hardware, parse_hardware)
    sw = _read(args.software, parse_software)
    pins = _read(args.pins, parse_mapping).assignment if args.pins else {}
    weights = _weights(args.weights)
    try:
        req = SolveRequest(hw, sw, weights, pins, seed=args.seed, restarts=args.restarts,
                           max_iters=args.max_iters, exhaustive_cap=_exhaustive_cap())
        result = solve(req, args.solver)
    except (AutopartError, ValueError) as exc:
        kind = exc.kind if isinstance(exc, AutopartError) else "InvalidRequest"
        raise CliError(kind, str(exc)) from None

    if args.mapping_out and result.mapping is not None:
        Path(args.mapping_out).write_text(serialize_mapping(result.mapping), encoding="utf-8")

    if result.feasible:
        lines = [f"solver: {args.solver}", f"score: {result.score}", f"explored: {result.explored}",
                 "mapping:"]
        lines += [f"  {c} -> {e}" for c, e in sorted(result.mapping.items())]
    else:
        lines = [f"solver: {args.solver}", "no feasible mapping found", f"explored: {result.explored}"]
    _emit(args, result.to_dict(), "\n".join(lines))
    return EXIT_OK if result.feasible else EXIT_INFEASIBLE


def cmd_suggest_hw(args) -> int:
    sw = _read(args.software, parse_software)
    catalog = _read(args.catalog, parse_catalog)
    try:
        result = suggest_hardware(sw, catalog)
    except (NoCompatibleTemplate, InfeasibleSynthesis) as exc:
        doc = {"ok": False, "error": {"kind": exc.kind, "message": str(exc)}}
        if isinstance(exc, InfeasibleSynthesis):
            doc["violations"] = [v.to_dict() for v in exc.violations]
        _emit(args, doc, f"{exc.kind}: {exc}")
        return EXIT_INFEASIBLE

    written = {}
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        written = {"hardware": str(out / "hardware.json"), "mapping": str(out / "mapping.json")}
        Path(written["hardware"]).write_text(serialize_hardware(result.hw), encoding="utf-8")
        Path(written["mapping"]).write_text(serialize_mapping(result.mapping), encoding="utf-8")

    doc = {"ok": True, **result.to_dict(), "written": written}
    lines = [f"total cost: {_fmt_num(result.total_cost)}", "devices:"]
    for ecu in result.hw.ecus:
        hosted = sorted(c for c, e in result.mapping.items() if e == ecu.id)
        lines.append(f"  {ecu.id} ({ecu.tier.value}): {', '.join(hosted) or '-'}")
    lines += [f"wrote {p}" for p in written.values()]
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


# -- entry point --------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # usage errors are errors (1); argparse's default 2 means "infeasible" here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="autopart",
        description="Validate, evaluate and optimize software-to-ECU deployments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="machine-readable JSON output")

    def weights(p):
        p.add_argument("--weights", default="0.25,0.25,0.25,0.25", metavar="MEM,CPU,BW,LAT",
                       help="score weights, four rationals summing to 1 (default: %(default)s)")

    p = sub.add_parser("validate", help="check hardware (and optionally software) model documents")
    p.add_argument("hardware")
    p.add_argument("software", nargs="?")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("evaluate", help="score a deployment mapping")
    p.add_argument("hardware")
    p.add_argument("software")
    p.add_argument("mapping")
    weights(p)
    common(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("solve", help="search for the best deployment mapping")
    p.add_argument("hardware")
    p.add_argument("software")
    p.add_argument("--solver", choices=sorted(SOLVERS), default="bnb")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--max-iters", type=int, default=1000)
    p.add_argument("--pins", help="mapping document fixing some components to ECUs")
    p.add_argument("--mapping-out", help="write the found mapping to this file")
    weights(p)
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("suggest-hw", help="synthesize a star hardware model from a device catalog")
    p.add_argument("software")
    p.add_argument("catalog")
    p.add_argument("--out", help="directory for hardware.json and mapping.json")
    common(p)
    p.set_defaults(func=cmd_suggest_hw)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        if args.json:
            print(json.dumps({"ok": False, "error": {"kind": exc.kind, "message": str(exc)}}, indent=2))
        else:
            print(f"error: {exc.kind}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
