"""``lo`` command-line interface.

Exit codes: 0 success, 2 invalid input or usage, 3 capacity exceeded.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import pickle
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from . import boxes
from .classify import Classifier, anchored_maximal_cliques, class_counts
from .cliques import CliqueStream
from .dgp import DGPInstance, classical_value, dgp_to_inequality, is_maximally_difficult
from .errors import CapacityExceeded, LOError, NoViolationInRange, ValidationError
from .graph import OrthogonalityGraph, build_graph, induced_subgraph, support_vertices
from .inequalities import BUNDLED, LOInequality, bundled_inequality, evaluate, load_inequality
from .nspolytope import ns_argmax
from .scenario import Behavior, Event, Scenario, event_index


@dataclass
class RunReport:
    command: str
    scenario: str | None = None
    inputs: dict[str, str] = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def _digest(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _graph(scenario: Scenario) -> OrthogonalityGraph:
    cache = os.environ.get("LO_CACHE_DIR")
    if not cache:
        return build_graph(scenario)
    path = Path(cache) / f"graph_{scenario.n}_{scenario.m}_{scenario.d}.pkl"
    if path.exists():
        with path.open("rb") as fh:
            labels, adjacency = pickle.load(fh)
        return OrthogonalityGraph(scenario, labels, adjacency, f"G{scenario}")
    g = build_graph(scenario)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("wb") as fh:
        pickle.dump((g.labels, g.adjacency), fh)
    return g


def _inequality(spec: str, report: RunReport, scenario: Scenario | None = None) -> LOInequality:
    if Path(spec).exists():
        report.inputs[spec] = _digest(spec)
        return load_inequality(spec, scenario)
    # bundled names are accepted bare or as their data file names (gyni, gyni.txt, gyni3.txt)
    stem = spec[:-4] if spec.endswith(".txt") else spec
    name = next((k for k, fname in BUNDLED.items() if stem in (k, fname[:-4])), None)
    if name is not None:
        report.inputs[spec] = "bundled"
        ineq = bundled_inequality(name)
        if scenario is not None and ineq.scenario != scenario:
            raise ValidationError(f"bundled inequality {name} lives on {ineq.scenario}, not {scenario}")
        return ineq
    raise ValidationError(f"{spec}: no such file or bundled inequality ({', '.join(sorted(BUNDLED))})")


def _box(spec: str, report: RunReport) -> Behavior:
    if spec == "pr":
        return boxes.pr_box()
    if spec.startswith("noisy:"):
        return boxes.noisy_pr(Fraction(spec.split(":", 1)[1]))
    if spec.startswith("fig4:"):
        xi, gamma = spec.split(":", 1)[1].split(",")
        return boxes.fig4_family(Fraction(xi), Fraction(gamma))
    if spec in ("uniform",):
        return boxes.noisy_pr(0)
    if Path(spec).exists():
        report.inputs[spec] = _digest(spec)
        return Behavior.load(spec)
    raise ValidationError(f"unknown box {spec!r}: use pr, noisy:q, fig4:xi,gamma or a JSON file")


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def cmd_graph(args, report: RunReport) -> list[str]:
    g = _graph(args.scenario)
    report.results = {"vertices": g.n_vertices, "edges": g.n_edges}
    if args.dot:
        g.write_text(args.dot)
        report.results["written"] = args.dot
    return [f"vertices={g.n_vertices} edges={g.n_edges}"]


def cmd_cliques(args, report: RunReport) -> list[str]:
    g = _graph(args.scenario)
    if args.support:
        report.inputs[args.support] = _digest(args.support)
        b = Behavior.load(args.support)
        g = induced_subgraph(g, support_vertices(g, b))
    stream = CliqueStream(g, min_size=args.min_size, limit=args.limit)
    lines = [",".join(str(g.event(v)) for v in c.vertices) for c in stream]
    if args.sorted:
        lines.sort()
    report.results = {"count": len(lines), "truncated": stream.truncated, "cliques": lines}
    if stream.truncated:
        lines.append(f"# truncated after {len(lines)} cliques")
    return lines


def _read_cliques(path: str, scenario: Scenario) -> list[tuple[int, ...]]:
    """Cliques file: one clique per line as comma-separated events, or one inequality file."""
    text = Path(path).read_text()
    body = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if any("," in ln for ln in body):
        return [tuple(event_index(scenario, Event.parse(t)) for t in ln.split(",")) for ln in body]
    return [load_inequality(path, scenario).indices]


def cmd_classify(args, report: RunReport) -> list[str]:
    scenario = args.scenario
    clf = Classifier(scenario)
    if args.input:
        report.inputs[args.input] = _digest(args.input)
        for clique in _read_cliques(args.input, scenario):
            clf.add(LOInequality.from_indices(scenario, clique))
    else:
        clf.add_all(anchored_maximal_cliques(scenario))
    classes = clf.classes()
    counts = class_counts(classes)
    report.results = {"counts": counts, "classes": [c.summary() for c in classes]}
    lines = []
    for i, c in enumerate(classes):
        kind = "trivial" if c.trivial else "nontrivial"
        lines.append(
            f"class {i}: {kind} ns_max={c.ns_max} orbit_size={c.orbit_size} "
            f"representative={','.join(str(e) for e in c.representative.events)}"
        )
    lines.append(f"classes={counts['total']} nontrivial={counts['nontrivial']} trivial={counts['trivial']}")
    return lines


def cmd_eval(args, report: RunReport) -> list[str]:
    box = _box(args.box, report)
    if args.copies > 1:
        box = boxes.power(box, args.copies)
    ineq = _inequality(args.ineq, report, box.scenario)
    value = evaluate(ineq, box)
    report.scenario = str(box.scenario)
    report.results = {"value": str(value), "violated": value > 1}
    return [str(value)]


def cmd_nsmax(args, report: RunReport) -> list[str]:
    ineq = _inequality(args.ineq, report, args.scenario)
    report.scenario = str(ineq.scenario)
    value, witness = ns_argmax(ineq)
    report.results = {"ns_max": str(value)}
    if args.witness:
        witness.save(args.witness)
        report.results["witness"] = args.witness
    return [str(value)]


def cmd_threshold(args, report: RunReport) -> list[str]:
    ineq = _inequality(args.ineq, report)
    report.scenario = str(ineq.scenario)
    iv = boxes.lo_threshold(boxes.noisy_pr_family(), ineq, args.copies)
    report.results = {"lo": str(iv.lo), "hi": str(iv.hi), "decimal": f"{iv.midpoint:.5f}"}
    return [f"[{iv.lo}, {iv.hi}]", f"q* ~ {iv.midpoint:.5f} (interval [{float(iv.lo):.6f}, {float(iv.hi):.6f}])"]


def cmd_dgp(args, report: RunReport) -> list[str]:
    report.inputs[args.instance] = _digest(args.instance)
    inst = DGPInstance.load(args.instance)
    report.scenario = str(inst.scenario)
    hard = is_maximally_difficult(inst)
    report.results = {"maximally_difficult": hard, "size": len(inst.S)}
    lines = [f"maximally_difficult={str(hard).lower()} |S|={len(inst.S)}"]
    if hard:
        ineq = dgp_to_inequality(inst)
        report.results["inequality"] = [str(e) for e in ineq.events]
        lines.append(str(ineq))
    if args.classical_value:
        value = classical_value(inst)
        report.results["classical_value"] = str(value)
        lines.append(f"classical_value={value}")
    return lines


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lo", description="Local orthogonality toolkit")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a single JSON run report")
    common.add_argument("--threads", type=int, default=1, help="parallelism cap (computation is single-threaded)")
    sub = parser.add_subparsers(dest="command", required=True)

    def scenario_arg(p, required=True):
        p.add_argument("--scenario", type=Scenario.parse, required=required, help="n,m,d")

    p = sub.add_parser("graph", parents=[common], help="orthogonality graph statistics")
    scenario_arg(p)
    p.add_argument("--dot", help="write vertex and edge lists to this file")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("cliques", parents=[common], help="enumerate maximal cliques")
    scenario_arg(p)
    p.add_argument("--support", help="restrict to the possible events of this behavior (JSON)")
    p.add_argument("--min-size", type=int, default=1)
    p.add_argument("--limit", type=int)
    p.add_argument("--sorted", action="store_true")
    p.set_defaults(func=cmd_cliques)

    p = sub.add_parser("classify", parents=[common], help="equivalence classes of LO inequalities")
    scenario_arg(p)
    p.add_argument("--input", help="cliques file (one clique per line); default: all maximal cliques")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("eval", parents=[common], help="evaluate an inequality on a box")
    p.add_argument("--box", required=True, help="pr | noisy:q | fig4:xi,gamma | file.json")
    p.add_argument("--copies", type=int, default=1)
    p.add_argument("--ineq", required=True, help=f"inequality file or bundled name ({', '.join(sorted(BUNDLED))})")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("nsmax", parents=[common], help="exact maximum over the NS polytope")
    scenario_arg(p, required=False)
    p.add_argument("--ineq", required=True)
    p.add_argument("--witness", help="write an optimal NS box to this JSON file")
    p.set_defaults(func=cmd_nsmax)

    p = sub.add_parser("threshold", parents=[common], help="noisy-PR violation threshold")
    p.add_argument("--ineq", required=True)
    p.add_argument("--copies", type=int, default=2)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("dgp", parents=[common], help="distributed guessing problem")
    p.add_argument("--instance", required=True)
    p.add_argument("--classical-value", action="store_true")
    p.set_defaults(func=cmd_dgp)
    return parser


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    scenario = getattr(args, "scenario", None)
    report = RunReport(args.command, str(scenario) if scenario else None)
    start = time.perf_counter()
    try:
        lines = args.func(args, report)
    except CapacityExceeded as exc:
        print(f"lo: capacity exceeded: {exc}", file=sys.stderr)
        return 3
    except (ValidationError, NoViolationInRange, OSError) as exc:
        print(f"lo: {exc}", file=sys.stderr)
        return 2
    except LOError as exc:
        print(f"lo: {exc}", file=sys.stderr)
        return 2
    report.wall_time = round(time.perf_counter() - start, 6)
    if args.json:
        out.write(report.to_json() + "\n")
    else:
        for line in lines:
            out.write(line + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
