"""Command-line entry point: ``rigidity-spectra <subcommand> ...``.

Exit codes: 0 on success whatever the verdicts, 2 on input errors, 3 when a
size guard refuses the job.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Optional

from .certify import THEOREM_IDS, Certificate, certify
from .cover import component_cover, hd_canonical_cover, verify_cover
from .errors import GraphError, ParseError, SizeGuardError
from .families import FamilySpec, gen_hd
from .graph import Graph, format_graph, min_degree, parse_graph, vertex_connectivity
from .numeric import is_rigid_numeric
from .packing import pack_spanning_rigid
from .sparsity import extract_spanning_tight, is_globally_rigid, is_redundantly_rigid, is_rigid
from .spectral import (
    adjacency,
    eigenvalues,
    lambda2,
    lambda_abs,
    laplacian,
    mu2,
    q2,
    signless_laplacian,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SIZE_GUARD = 3

ANALYZE_THEOREMS = ("strcor", "maincor", "redund", "glob", "ramanujan_glob")


def fmt(x: Any) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


@dataclass
class Report:
    source: str
    n: int
    m: int
    min_degree: int
    connectivity: int
    spectral: dict[str, Optional[float]]
    rigid: bool
    redundantly_rigid: bool
    globally_rigid: bool
    certificates: list[Certificate] = field(default_factory=list)
    witnesses: dict[str, Any] = field(default_factory=dict)
    timing: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "n": self.n,
            "m": self.m,
            "min_degree": self.min_degree,
            "connectivity": self.connectivity,
            "spectral": dict(self.spectral),
            "rigid": self.rigid,
            "redundantly_rigid": self.redundantly_rigid,
            "globally_rigid": self.globally_rigid,
            "certificates": [c.to_dict() for c in self.certificates],
            "witnesses": self.witnesses,
            "timing": dict(self.timing),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        fields = dict(data)
        fields["certificates"] = [Certificate.from_dict(c) for c in data["certificates"]]
        return cls(**fields)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def text(self) -> str:
        lines = [
            f"source: {self.source}",
            f"n={self.n} m={self.m} min_degree={self.min_degree} connectivity={self.connectivity}",
        ]
        lines += [f"{k}: {fmt(v)}" for k, v in self.spectral.items()]
        lines += [
            f"rigid: {self.rigid}",
            f"redundantly_rigid: {self.redundantly_rigid}",
            f"globally_rigid: {self.globally_rigid}",
        ]
        for c in self.certificates:
            lines.append(c.text())
        for name, w in self.witnesses.items():
            if name == "cover":
                lines.append(
                    f"cover witness: {len(w['blocks'])} blocks, value {w['value']} < {w['threshold']}"
                )
            else:
                lines.append(f"{name} witness: {len(w)} edges")
        lines.append("timing: " + ", ".join(f"{k}={v:.3g}s" for k, v in self.timing.items()))
        return "\n".join(lines)


def read_graph(path: str) -> Graph:
    if path == "-":
        return parse_graph(sys.stdin.read())
    with open(path) as fh:
        return parse_graph(fh.read())


def _timed(timing: dict, name: str, fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    timing[name] = time.perf_counter() - t0
    return out


def analyze(g: Graph, source: str = "<graph>", force: bool = False, jobs: Optional[int] = None) -> Report:
    timing: dict[str, float] = {}
    spectral: dict[str, Optional[float]] = {"mu2": None, "lambda2": None, "lambda": None, "q2": None}
    if g.n >= 2:
        t0 = time.perf_counter()
        spectral = {"mu2": mu2(g), "lambda2": lambda2(g), "lambda": lambda_abs(g), "q2": q2(g)}
        timing["spectral"] = time.perf_counter() - t0
    rigid = _timed(timing, "rigid", is_rigid, g)
    redundant = _timed(timing, "redundantly_rigid", is_redundantly_rigid, g)
    glob = _timed(timing, "globally_rigid", is_globally_rigid, g)
    kappa = _timed(timing, "connectivity", vertex_connectivity, g)
    certificates = []
    if g.n >= 2:
        t0 = time.perf_counter()
        certificates = [certify(g, tid, 1, force=force, jobs=jobs) for tid in ANALYZE_THEOREMS]
        timing["certify"] = time.perf_counter() - t0
    witnesses: dict[str, Any] = {}
    if rigid:
        tight = extract_spanning_tight(g)
        witnesses["laman_subgraph"] = [list(e) for e in tight]
    elif g.m:
        cover = component_cover(g)
        if verify_cover(g, cover).is_nonrigidity_witness:
            witnesses["cover"] = cover.to_dict(g)
    return Report(
        source, g.n, g.m, min_degree(g), kappa, spectral, rigid, redundant, glob,
        certificates, witnesses, timing,
    )


def reproduce_rows(ds=range(6, 13)) -> list[dict]:
    """Per d: mu2(H_d) against 5/(d+3) and 5/(d+1), the canonical cover value
    against 2n-3, and pebble-game / numeric non-rigidity."""
    rows = []
    for d in ds:
        g = gen_hd(d)
        m2 = mu2(g)
        lower, upper = 5 / (d + 3), 5 / (d + 1)
        verdict = verify_cover(g, hd_canonical_cover(d))
        pebble = is_rigid(g)
        numeric = is_rigid_numeric(g)
        rows.append({
            "d": d,
            "n": g.n,
            "m": g.m,
            "mu2": m2,
            "lower": lower,
            "upper": upper,
            "bounds_ok": lower < m2 <= upper + 1e-8,
            "cover_value": verdict.value,
            "threshold": verdict.threshold,
            "rigid_pebble": pebble,
            "rigid_numeric": numeric,
            "agree": pebble == numeric,
        })
    return rows


# -- argparse wiring ----------------------------------------------------------------

def _emit(args, obj, text: str) -> None:
    if args.json:
        print(json.dumps(obj, indent=2))
    else:
        print(text)


def _cmd_analyze(args) -> int:
    g = read_graph(args.path)
    report = analyze(g, args.path, force=args.force, jobs=args.jobs)
    _emit(args, report.to_dict(), report.text())
    return EXIT_OK


def _cmd_certify(args) -> int:
    g = read_graph(args.path)
    cert = certify(g, args.theorem, args.k, force=args.force, jobs=args.jobs)
    _emit(args, cert.to_dict(), cert.text())
    return EXIT_OK


def _cmd_pack(args) -> int:
    g = read_graph(args.path)
    result = pack_spanning_rigid(g, args.k)
    lines = [f"k={result.k} found={result.found}"]
    for i, part in enumerate(result.parts):
        lines.append(f"part {i}: {len(part)} edges: " + " ".join(f"{u}-{v}" for u, v in part))
    _emit(args, result.to_dict(), "\n".join(lines))
    return EXIT_OK


def _cmd_family(args) -> int:
    g = FamilySpec.parse(args.spec).build()
    sys.stdout.write(format_graph(g))
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    g = read_graph(args.path)
    build = {"laplacian": laplacian, "adjacency": adjacency, "signless": signless_laplacian}[args.matrix]
    spectrum = eigenvalues(build(g))
    _emit(
        args,
        {"matrix": args.matrix, "values": spectrum.tolist(), "max_residual": spectrum.max_residual},
        "\n".join(fmt(x) for x in spectrum.tolist()),
    )
    return EXIT_OK


def _cmd_reproduce(args) -> int:
    rows = reproduce_rows()
    header = "d   n   m    mu2             5/(d+3)         5/(d+1)         ok    cover  2n-3  rigid(pebble/numeric)"
    lines = [header]
    for r in rows:
        lines.append(
            f"{r['d']:<3} {r['n']:<3} {r['m']:<4} {fmt(r['mu2']):<15} {fmt(r['lower']):<15} "
            f"{fmt(r['upper']):<15} {str(r['bounds_ok']):<5} {r['cover_value']:<6} {r['threshold']:<5} "
            f"{r['rigid_pebble']}/{r['rigid_numeric']}"
        )
    _emit(args, rows, "\n".join(lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--jobs", type=int, default=None, help="parallel workers (default: all CPUs)")

    parser = argparse.ArgumentParser(prog="rigidity-spectra", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full report for one graph")
    p.add_argument("path", help="edge-list file, or - for stdin")
    p.add_argument("--force", action="store_true", help="lift the n > 300 guard")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("certify", parents=[common], help="evaluate one spectral condition")
    p.add_argument("path")
    p.add_argument("--theorem", required=True, choices=THEOREM_IDS)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("pack", parents=[common], help="k edge-disjoint spanning rigid subgraphs")
    p.add_argument("path")
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(func=_cmd_pack)

    p = sub.add_parser("family", parents=[common], help="print a generated graph as an edge list")
    p.add_argument("spec", help="e.g. hd:d=10, complete:n=7, regular:n=40,d=8,seed=1")
    p.set_defaults(func=_cmd_family)

    p = sub.add_parser("spectrum", parents=[common], help="eigenvalues of a graph matrix")
    p.add_argument("path")
    p.add_argument("--matrix", choices=("laplacian", "adjacency", "signless"), default="laplacian")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("reproduce-paper", parents=[common], help="H_d table for d = 6..12")
    p.set_defaults(func=_cmd_reproduce)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SizeGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE_GUARD
    except (ParseError, GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
