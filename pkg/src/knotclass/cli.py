"""Command-line front end.

Every command prints one report per input in input order.  Exit status is 0
when all inputs were processed, 1 when any input failed to parse or validate,
and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .classify import report
from .diagram import DiagramError, PlaneDiagram, is_alternating, is_knot, is_reduced, parse_diagram, serialize
from .handlebody import check_graph
from .rational import LayerSequence, fraction, generate
from .tangle import serialize_tangle

SCHEMA = 1
EXTENSIONS = {".pd": "pd", ".gauss": "gauss"}
SIDECAR = ".expected"
CORPUS_ENV = "KNOTCLASS_CORPUS"


@dataclass(frozen=True)
class RunConfig:
    command: str
    format: str | None = None
    output: str = "text"
    paths: tuple[str, ...] = ()
    mirror_auto: bool = True
    jobs: int = 1


def _format_for(path: Path, fmt: str | None) -> str:
    return fmt or EXTENSIONS.get(path.suffix, "pd")


def _error(exc: Exception) -> dict:
    return {"type": type(exc).__name__, "message": str(exc)}


def _load(path: Path, fmt: str | None) -> PlaneDiagram:
    return parse_diagram(path.read_text(), _format_for(path, fmt))


# -- per-diagram reports -----------------------------------------------------------


def validate_report(d: PlaneDiagram) -> dict:
    return {
        "valid": True,
        "input": serialize(d),
        "crossings": d.crossing_count,
        "faces": len(d.faces),
        "euler": d.euler_characteristic(),
        "knot": is_knot(d),
        "alternating": is_alternating(d),
        "reduced": is_reduced(d),
    }


def classify_report(d: PlaneDiagram, mirror_auto: bool) -> dict:
    if d.vertex is not None:
        return {"input": serialize(d), **check_graph(d).to_json()}
    return report(d, mirror_auto)


def tunnels_report(d: PlaneDiagram, mirror_auto: bool) -> dict:
    full = report(d, mirror_auto)
    return {key: full[key] for key in ("input", "verdict", "mirrored", "tunnels", "reason")}


def handlebody_report(d: PlaneDiagram, mirror_auto: bool) -> dict:
    return {"input": serialize(d), **check_graph(d).to_json()}


_REPORTS: dict[str, Callable[[PlaneDiagram, bool], dict]] = {
    "validate": lambda d, _: validate_report(d),
    "classify": classify_report,
    "tunnels": tunnels_report,
    "handlebody": handlebody_report,
}


def run_one(command: str, path: str, fmt: str | None, mirror_auto: bool) -> dict:
    """Report for a single file; failures are recorded in the report, never raised."""
    out: dict = {"schema": SCHEMA, "file": path}
    try:
        d = _load(Path(path), fmt)
        out.update(_REPORTS[command](d, mirror_auto))
    except (DiagramError, OSError, ValueError) as exc:
        out["error"] = _error(exc)
    return out


def _run_one_args(args: tuple[str, str, str | None, bool]) -> dict:
    return run_one(*args)


def run_many(command: str, paths: Sequence[str], fmt: str | None, mirror_auto: bool, jobs: int = 1) -> list[dict]:
    tasks = [(command, p, fmt, mirror_auto) for p in paths]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_one_args, tasks))
    return [run_one(*t) for t in tasks]


# -- corpus -------------------------------------------------------------------------------


def bundled_corpus() -> Path:
    return Path(str(resources.files("knotclass") / "corpus"))


def corpus_files(directory: Path) -> list[Path]:
    files = [p for p in directory.rglob("*") if p.is_file() and p.suffix in EXTENSIONS]
    return sorted(files, key=lambda p: p.relative_to(directory).as_posix())


def _verdict(rep: dict) -> str:
    if "error" in rep:
        return "error"
    if "handlebody" in rep:
        return "handlebody" if rep["handlebody"] else "not-handlebody"
    return rep["verdict"]


def corpus_run(directory: Path, fmt: str | None = None, mirror_auto: bool = True, jobs: int = 1) -> dict:
    files = corpus_files(directory)
    reports = run_many("classify", [str(p) for p in files], fmt, mirror_auto, jobs)
    entries, mismatches, counts = [], [], {}
    for path, rep in zip(files, reports):
        name = path.relative_to(directory).as_posix()
        rep["file"] = name
        sidecar = path.with_suffix(SIDECAR)
        expected = sidecar.read_text().strip() if sidecar.exists() else None
        verdict = _verdict(rep)
        counts[verdict] = counts.get(verdict, 0) + 1
        if expected is not None and expected != verdict:
            mismatches.append(name)
        entries.append({"file": name, "verdict": verdict, "expected": expected, "report": rep})
    return {
        "schema": SCHEMA,
        "files": len(files),
        "counts": dict(sorted(counts.items())),
        "mismatches": mismatches,
        "results": entries,
    }


# -- output ----------------------------------------------------------------------------------


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True)


def _text(rep: dict) -> str:
    head = rep.get("file", "")
    if "error" in rep:
        return f"{head}: error {rep['error']['type']}: {rep['error']['message']}"
    if "valid" in rep:
        flags = [k for k in ("knot", "alternating", "reduced") if rep[k]]
        return f"{head}: ok, {rep['crossings']} crossings, {rep['faces']} faces [{', '.join(flags)}]"
    if "handlebody" in rep:
        pattern = rep["pattern"] or "no pattern"
        return f"{head}: handlebody={str(rep['handlebody']).lower()} ({pattern}, {rep['reduction_steps']} reduction steps)"
    verdict = rep["verdict"]
    if verdict == "two-bridge":
        detail = rep.get("fraction") or ""
    elif verdict == "montesinos":
        m = rep["montesinos"]
        detail = f"({m['e']}; {m['t1']}, {m['clasp']}, {m['t2']})"
    else:
        detail = rep.get("reason") or ""
    lines = [f"{head}: {verdict} {detail}".rstrip() + (" [mirror]" if rep.get("mirrored") else "")]
    for t in rep.get("tunnels") or []:
        where = "none" if t["vertical_at"] is None else t["vertical_at"]
        lines.append(f"  tunnel in face {t['face']} joining arcs {t['arcs'][0]} and {t['arcs'][1]}, vertical at {where}")
    return "\n".join(lines)


def _corpus_text(summary: dict) -> str:
    lines = [_text(e["report"]) for e in summary["results"]]
    counts = ", ".join(f"{k}: {v}" for k, v in summary["counts"].items()) or "empty"
    lines.append(f"{summary['files']} files ({counts}); {len(summary['mismatches'])} mismatches")
    lines.extend(f"  mismatch: {name}" for name in summary["mismatches"])
    return "\n".join(lines)


def _emit(objs: Iterable[dict], output: str, render: Callable[[dict], str] = _text) -> None:
    for obj in objs:
        print(dumps(obj) if output == "json" else render(obj))


# -- argument handling -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="knotclass", description="Tunnel number one for alternating knot diagrams.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("pd", "gauss"), default=None, help="input format (default: by extension, else pd)")
    common.add_argument("--output", choices=("json", "text"), default="text")
    common.add_argument("--no-mirror", dest="mirror_auto", action="store_false", help="do not search the reflection")
    common.add_argument("--jobs", type=int, default=1, metavar="N", help="worker processes")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("validate", "parse diagrams and check planarity"),
        ("classify", "decide tunnel number one"),
        ("tunnels", "list unknotting tunnels as planar arcs"),
        ("handlebody", "decide whether a one-vertex graph has handlebody exterior"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("paths", nargs="+", metavar="FILE")
    p = sub.add_parser("gen-rational", parents=[common], help="build a rational tangle from a layer sequence")
    p.add_argument("sequence", help='e.g. "core=0; layers=right+,bottom+,right+"')
    p = sub.add_parser("corpus", parents=[common], help="classify every diagram in a directory")
    p.add_argument("directory", nargs="?", default=None, help=f"defaults to ${CORPUS_ENV}, then the bundled corpus")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    if args.command == "gen-rational":
        try:
            seq = LayerSequence.parse(args.sequence)
        except ValueError as exc:
            _emit([{"schema": SCHEMA, "error": _error(exc)}], args.output)
            return 1
        rep = {"schema": SCHEMA, "sequence": str(seq), "fraction": str(fraction(seq)), "tangle": serialize_tangle(generate(seq))}
        _emit([rep], args.output, lambda r: f"{r['tangle']}\nfraction {r['fraction']}")
        return 0
    if args.command == "corpus":
        directory = Path(args.directory or os.environ.get(CORPUS_ENV) or bundled_corpus())
        if not directory.is_dir():
            _emit([{"schema": SCHEMA, "file": str(directory), "error": _error(NotADirectoryError(str(directory)))}], args.output)
            return 1
        summary = corpus_run(directory, args.format, args.mirror_auto, args.jobs)
        _emit([summary], args.output, _corpus_text)
        return 1 if summary["counts"].get("error") else 0
    reports = run_many(args.command, args.paths, args.format, args.mirror_auto, args.jobs)
    _emit(reports, args.output)
    return 1 if any("error" in r for r in reports) else 0


if __name__ == "__main__":
    sys.exit(main())
