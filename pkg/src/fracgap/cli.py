"""Command-line entry point: ``fracgap {stats,witness,canonical,verify,gen}``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Iterator, TextIO

from .fractional import canonical_matching, canonical_stats
from .graph import (Graph, Graph6Error, UnsupportedSize, encode_graph6, enumerate_connected,
                    gen_disjoint_triangles, gen_equality_small, gen_triangle_star, iter_unions,
                    open_text, parse_graph6)
from .matching import DEFAULT_CAP, HARD_CAP, CapExceeded, tutte_berge_witness
from .fractional import frac_deficiency_witness
from .verify import CorpusInputError, evaluate, evaluate_many, verify_corpus

FAMILIES = ("triangle-star", "c5", "k2k3", "triangles")
STATS_COLUMNS = ("graph6", "n", "alpha", "alpha_f_halves", "gap_sixths", "regime", "gap_ok",
                 "ratio_ok", "equality_gap", "equality_ratio", "class")


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input: str = "-"
    format: str = "json"
    jobs: int = 1
    cap: int = DEFAULT_CAP
    enumerate: int | None = None
    mode: str = "connected"
    family: str | None = None
    k: int | None = None
    summary_only: bool = False

    def __post_init__(self):
        if self.jobs < 1:
            raise InputError("--jobs must be at least 1")
        if not 0 <= self.cap <= HARD_CAP:
            raise InputError(f"--cap must be between 0 and {HARD_CAP}")


def _lines(path: str) -> Iterator[str]:
    if path == "-":
        yield from sys.stdin
    else:
        with open_text(path) as fh:
            yield from fh


def read_input(path: str, errors: list[str]) -> Iterator[Graph]:
    """Parse graph6 lines, collecting failures as messages instead of stopping."""
    try:
        for lineno, line in enumerate(_lines(path), 1):
            s = line.strip()
            if not s or s == ">>graph6<<":
                continue
            try:
                yield parse_graph6(s)
            except (Graph6Error, UnsupportedSize) as exc:
                errors.append(f"line {lineno}: {exc}")
    except OSError as exc:
        errors.append(str(exc))


def _emit(out: TextIO, fmt: str, rec: dict, columns=None) -> None:
    if fmt == "json":
        out.write(json.dumps(rec) + "\n")
    elif fmt == "tsv":
        cols = columns or list(rec)
        out.write("\t".join(_tsv_cell(rec.get(c)) for c in cols) + "\n")
    else:
        out.write("  ".join(f"{k}={v}" for k, v in rec.items()) + "\n")


def _tsv_cell(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    if isinstance(v, bool):
        return "true" if v else "false"
    return "" if v is None else str(v)


def _human_stats(rec: dict) -> str:
    def frac(num: int, den: int) -> str:
        from fractions import Fraction
        return str(Fraction(num, den))
    return (f"{rec['graph6']}  n={rec['n']}  alpha'={rec['alpha']}  "
            f"alpha_f={frac(rec['alpha_f_halves'], 2)}  gap={frac(rec['gap_sixths'], 6)}  "
            f"class={rec['class']}")


def _report_errors(errors: list[str]) -> None:
    for e in errors:
        print(f"fracgap: {e}", file=sys.stderr)


def cmd_stats(cfg: RunConfig, out: TextIO) -> int:
    errors: list[str] = []
    if cfg.format == "tsv":
        out.write("\t".join(STATS_COLUMNS) + "\n")
    for rec in evaluate_many(read_input(cfg.input, errors), None, cfg.jobs):
        d = rec.to_json()
        if cfg.format == "human":
            out.write(_human_stats(d) + "\n")
        else:
            _emit(out, cfg.format, d, STATS_COLUMNS)
    _report_errors(errors)
    return 2 if errors else 0


def cmd_witness(cfg: RunConfig, out: TextIO) -> int:
    errors: list[str] = []
    seen = failed = 0
    for g in read_input(cfg.input, errors):
        seen += 1
        try:
            rec = {
                "graph6": encode_graph6(g),
                "odd_component": tutte_berge_witness(g, cfg.cap).to_json(),
                "isolated_vertex": frac_deficiency_witness(g, cfg.cap).to_json(),
            }
        except CapExceeded as exc:
            failed += 1
            rec = {"graph6": encode_graph6(g), "error": str(exc)}
        _emit(out, cfg.format, rec, ("graph6", "odd_component", "isolated_vertex", "error"))
    _report_errors(errors)
    if errors:
        return 2
    return 1 if seen and failed == seen else 0


def cmd_canonical(cfg: RunConfig, out: TextIO) -> int:
    errors: list[str] = []
    for g in read_input(cfg.input, errors):
        log: list[str] = []
        f = canonical_matching(g, log)
        rec = {
            "graph6": encode_graph6(g),
            "matching": f.to_json(),
            "stats": canonical_stats(g, f).to_json(),
            "rewrites": log,
        }
        _emit(out, cfg.format, rec, ("graph6", "matching", "stats", "rewrites"))
    _report_errors(errors)
    return 2 if errors else 0


def _enumerated(n: int, mode: str) -> Iterator[Graph]:
    if mode == "connected":
        return enumerate_connected(n)
    levels = {s: tuple(enumerate_connected(s)) for s in range(1, n + 1)}
    return (g for g in iter_unions(levels, n) if g.n == n)


def cmd_verify(cfg: RunConfig, out: TextIO) -> int:
    errors: list[str] = []
    if cfg.enumerate is not None:
        try:
            graphs = _enumerated(cfg.enumerate, cfg.mode)
        except UnsupportedSize as exc:
            print(f"fracgap: {exc}", file=sys.stderr)
            return 2
    else:
        graphs = read_input(cfg.input, errors)

    def emit(rec):
        if not cfg.summary_only:
            _emit(out, cfg.format, rec.to_json(), STATS_COLUMNS)

    if cfg.format == "tsv" and not cfg.summary_only:
        out.write("\t".join(STATS_COLUMNS) + "\n")
    try:
        report = verify_corpus(graphs, cfg.mode, cfg.jobs, emit)
    except CorpusInputError as exc:
        print(f"fracgap: {exc}", file=sys.stderr)
        return 2
    summary = report.to_json()
    if cfg.format == "human":
        out.write(f"mode={report.mode} total={report.total} violations={len(report.violations)} "
                  f"mismatches={len(report.mismatches)} equality={len(report.equality)} "
                  f"ok={report.ok}\n")
        for k, v in summary["class_counts"].items():
            out.write(f"  {k}: {v}\n")
    else:
        out.write(json.dumps(summary) + "\n")
    _report_errors(errors)
    if errors:
        return 2
    return report.exit_code


def family_graphs(family: str, k: int | None) -> list[Graph]:
    if family == "triangle-star":
        return [gen_triangle_star(k or 1)]
    if family == "triangles":
        return [gen_disjoint_triangles(k or 1)]
    if family == "c5":
        return [gen_equality_small()[0]]
    if family == "k2k3":
        return [gen_equality_small()[1]]
    raise InputError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def cmd_gen(cfg: RunConfig, out: TextIO) -> int:
    if cfg.family is None:
        raise InputError("gen needs a family name")
    if cfg.k is not None and cfg.k < 1:
        raise InputError("k must be positive")
    for g in family_graphs(cfg.family, cfg.k):
        out.write(encode_graph6(g) + "\n")
    return 0


COMMANDS = {
    "stats": cmd_stats,
    "witness": cmd_witness,
    "canonical": cmd_canonical,
    "verify": cmd_verify,
    "gen": cmd_gen,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", default="-", help="graph6 file (.gz allowed) or - for stdin")
    common.add_argument("--format", "-f", choices=("json", "tsv", "human"), default="json")
    common.add_argument("--jobs", "-j", type=int, default=os.cpu_count() or 1)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="brute-force subset cap on n")

    ap = argparse.ArgumentParser(prog="fracgap", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("stats", parents=[common], help="alpha', alpha_f, gap and class per graph")
    sub.add_parser("witness", parents=[common], help="deficiency witnesses per graph")
    sub.add_parser("canonical", parents=[common], help="canonical half-integral matching per graph")
    v = sub.add_parser("verify", parents=[common], help="check the bounds over a corpus")
    v.add_argument("--enumerate", "-n", type=int, help="enumerate graphs on N vertices instead of reading input")
    v.add_argument("--mode", choices=("connected", "union"), default="connected")
    v.add_argument("--summary-only", action="store_true")
    g = sub.add_parser("gen", parents=[common], help="emit extremal family members")
    g.add_argument("family_pos", nargs="?", metavar="FAMILY")
    g.add_argument("k_pos", nargs="?", type=int, metavar="K")
    g.add_argument("--family")
    g.add_argument("--k", type=int)
    return ap


def main(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = out or sys.stdout
    opts = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__}
    if args.command == "gen":
        opts["family"] = args.family or args.family_pos
        opts["k"] = args.k if args.k is not None else args.k_pos
    try:
        cfg = RunConfig(**opts)
        return COMMANDS[cfg.command](cfg, out)
    except InputError as exc:
        print(f"fracgap: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
