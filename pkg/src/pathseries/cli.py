"""Command line interface.

Exit codes: 0 success, 1 usage, 2 input parse error, 3 size limit exceeded,
4 cross-method mismatch or failed internal check.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass

from .graph import Graph, GraphError, parse_edge_list
from .oracle import dfs_hamiltonian, dfs_path_series
from .rings import RingError, format_word, ring_by_name
from .series import (EngineError, PathSeriesResult, cycle_counts, hamiltonian_matrices,
                     path_series_all_subsets, path_series_connected)
from .subgraphs import DEFAULT_REFERENCE_LIMIT, LimitError, count_connected_by_size, \
    iter_connected

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_LIMIT, EXIT_MISMATCH = 0, 1, 2, 3, 4

METHODS = ("connected", "all-subsets", "oracle")
CSV_HEADER = ["table", "i", "j", "k", "value", "path"]


class UsageError(Exception):
    pass


class MismatchError(Exception):
    pass


@dataclass
class RunConfig:
    input: str
    directed: bool = True
    ring: str = "bigint"
    max_length: int | None = None
    kind: str = "both"
    method: str = "connected"
    output: str = "json"
    threads: int = 1
    limit_n: int = DEFAULT_REFERENCE_LIMIT
    max_words: int = 10000
    timing: bool = True

    def validate(self) -> None:
        if self.ring == "word" and self.kind == "hamiltonian":
            raise UsageError("the word ring cannot count Hamiltonian cycles "
                             "(it has no integer division)")
        if self.method not in METHODS:
            raise UsageError(f"unknown method {self.method!r}")
        if self.threads < 1:
            raise UsageError("--threads must be >= 1")


# ---------------------------------------------------------------------------
# serialization helpers


def _value(ring, x):
    return ring.to_json(x)


def _word_count(res: PathSeriesResult) -> int:
    total = 0
    for table in (res.open, res.closed):
        for p in table.values():
            total += sum(len(c) for c in p.coeffs)
    return total


def series_report(res: PathSeriesResult, kind: str, max_words: int = 10000) -> dict:
    ring = res.ring
    word = ring.name == "word"
    report: dict = {}
    truncated = word and _word_count(res) > max_words
    if word:
        report["words_truncated"] = truncated
    if kind in ("paths", "both"):
        totals = res.open_totals()
        if word:
            report["open_totals"] = {str(k): str(sum(c for _, c in v)) for k, v in totals.items()}
        else:
            report["open_totals"] = {str(k): _value(ring, v) for k, v in totals.items()}
        if not truncated:
            report["open"] = [[i, j, k, _value(ring, x)]
                              for (i, j), p in sorted(res.open.items())
                              for k, x in enumerate(p.coeffs) if not ring.is_zero(x)]
    if kind in ("cycles", "both"):
        if not truncated:
            report["closed"] = [[i, k, _value(ring, x)]
                                for i, p in sorted(res.closed.items())
                                for k, x in enumerate(p.coeffs) if not ring.is_zero(x)]
        if ring.supports_division:
            cc = cycle_counts(res)
            cycles = {
                "raw_trace": {str(k): _value(ring, v) for k, v in cc.raw_trace.items()},
                "directed": {str(k): _value(ring, v) for k, v in cc.directed.items()},
            }
            if cc.undirected is not None:
                cycles["undirected"] = {str(k): _value(ring, v) for k, v in cc.undirected.items()}
                cycles["degenerate"] = list(cc.degenerate)
            report["cycles"] = cycles
        else:
            report["cycles"] = None
    return report


def series_rows(res: PathSeriesResult, kind: str) -> list:
    ring = res.ring
    rows = []

    def emit(table, i, j, k, x):
        if ring.name == "word":
            for w, c in x.terms:
                rows.append([table, i, j, k, str(c), format_word(w)])
        else:
            rows.append([table, i, j, k, _value(ring, x), ""])

    if kind in ("paths", "both"):
        for (i, j), p in sorted(res.open.items()):
            for k, x in enumerate(p.coeffs):
                if not ring.is_zero(x):
                    emit("open", i, j, k, x)
    if kind in ("cycles", "both"):
        for i, p in sorted(res.closed.items()):
            for k, x in enumerate(p.coeffs):
                if not ring.is_zero(x):
                    emit("closed", i, i, k, x)
    return rows


def _write(report: dict, rows: list | None, output: str, out) -> None:
    if output == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(CSV_HEADER)
        w.writerows(rows or [])
    else:
        out.write(json.dumps(report, indent=2) + "\n")


def _stats(cfg: RunConfig, **fields) -> dict:
    stats = dict(fields)
    if not cfg.timing:
        stats.pop("wall_time", None)
    return stats


# ---------------------------------------------------------------------------
# commands


def load_graph(cfg: RunConfig) -> Graph:
    ring = ring_by_name(cfg.ring)
    if cfg.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(cfg.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {cfg.input}: {exc}") from None
    return parse_edge_list(text, directed=cfg.directed, ring=ring)


def _cap(cfg: RunConfig, g: Graph) -> int:
    L = g.n if cfg.max_length is None else cfg.max_length
    if not 1 <= L <= g.n:
        raise UsageError(f"--max-length must lie in [1, {g.n}]")
    return L


def run_series(g: Graph, L: int, method: str, cfg: RunConfig) -> PathSeriesResult:
    if method == "connected":
        return path_series_connected(g, L, workers=cfg.threads)
    if method == "all-subsets":
        return path_series_all_subsets(g, L, workers=cfg.threads, limit=cfg.limit_n)
    return dfs_path_series(g, L)


def cmd_count(cfg: RunConfig, out=sys.stdout) -> dict:
    cfg.validate()
    if cfg.kind == "hamiltonian":
        return cmd_hamiltonian(cfg, out)
    g = load_graph(cfg)
    L = _cap(cfg, g)
    t0 = time.perf_counter()
    res = run_series(g, L, cfg.method, cfg)
    wall = time.perf_counter() - t0
    report = {
        "n": g.n,
        "m": g.m,
        "L": L,
        "ring": g.ring.name,
        "mode": "directed" if g.directed else "undirected",
        "kind": cfg.kind,
    }
    report.update(series_report(res, cfg.kind, cfg.max_words))
    report["stats"] = _stats(cfg, method=cfg.method, visited_subsets=res.visited,
                             wall_time=round(wall, 6))
    _write(report, series_rows(res, cfg.kind) if cfg.output == "csv" else None, cfg.output, out)
    return report


def cmd_hamiltonian(cfg: RunConfig, out=sys.stdout) -> dict:
    cfg.kind = "hamiltonian"
    cfg.validate()
    g = load_graph(cfg)
    ring = g.ring
    t0 = time.perf_counter()
    if cfg.method == "oracle":
        res = dfs_hamiltonian(g)
    elif cfg.method == "connected":
        res = hamiltonian_matrices(g, workers=cfg.threads)
    else:
        raise UsageError("Hamiltonian counting supports --method connected or oracle")
    wall = time.perf_counter() - t0
    h_op = [[i, j, _value(ring, x)] for i, row in enumerate(res.h_op)
            for j, x in enumerate(row) if not ring.is_zero(x)]
    report = {
        "n": g.n,
        "m": g.m,
        "ring": ring.name,
        "mode": "directed" if g.directed else "undirected",
        "h_op": h_op,
        "ham_cycles": _value(ring, res.ham_cycles),
        "stats": _stats(cfg, method=cfg.method, dominating_sets=res.dominating_sets,
                        wall_time=round(wall, 6)),
    }
    rows = [["h_op", i, j, "", v, ""] for i, j, v in h_op]
    rows.append(["ham_cycles", "", "", g.n, report["ham_cycles"], ""])
    _write(report, rows, cfg.output, out)
    return report


def cmd_subgraphs(cfg: RunConfig, max_size: int | None, list_max_size: int | None,
                  out=sys.stdout) -> dict:
    g = load_graph(cfg)
    k = g.n if max_size is None else max_size
    if not 1 <= k <= g.n:
        raise UsageError(f"--max-size must lie in [1, {g.n}]")
    t0 = time.perf_counter()
    counts = count_connected_by_size(g, k)
    report = {
        "n": g.n,
        "m": g.m,
        "max_size": k,
        "counts": {str(s): c for s, c in counts.items()},
        "total": sum(counts.values()),
    }
    if list_max_size:
        report["sets"] = [list(c) for c, _, _ in iter_connected(g, min(k, list_max_size))]
    report["stats"] = _stats(cfg, wall_time=round(time.perf_counter() - t0, 6))
    if cfg.output == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["size", "count"])
        w.writerows([s, c] for s, c in counts.items())
    else:
        _write(report, None, "json", out)
    return report


def _series_equal(a: PathSeriesResult, b: PathSeriesResult) -> bool:
    if a.ring.exact:
        return a == b
    keys = set(a.open) | set(b.open)
    pairs = [(a.open.get(k), b.open.get(k)) for k in keys]
    keys = set(a.closed) | set(b.closed)
    pairs += [(a.closed.get(k), b.closed.get(k)) for k in keys]
    for p, q in pairs:
        pc = p.coeffs if p is not None else (0.0,) * (a.cap + 1)
        qc = q.coeffs if q is not None else (0.0,) * (a.cap + 1)
        if not all(math.isclose(x, y, rel_tol=1e-9, abs_tol=1e-9) for x, y in zip(pc, qc)):
            return False
    return True


def cmd_bench(cfg: RunConfig, methods: list, census: bool = False, out=sys.stdout) -> dict:
    cfg.validate()
    g = load_graph(cfg)
    L = _cap(cfg, g)
    results = []
    entries = []
    for method in methods:
        if method not in METHODS:
            raise UsageError(f"unknown method {method!r}")
        t0 = time.perf_counter()
        res = run_series(g, L, method, cfg)
        wall = time.perf_counter() - t0
        results.append(res)
        entry = {"method": method, "visited_subsets": res.visited}
        if cfg.timing:
            entry["wall_time"] = round(wall, 6)
        entry.update(series_report(res, "both" if cfg.kind == "hamiltonian" else cfg.kind,
                                   cfg.max_words))
        entry.pop("open", None)
        entry.pop("closed", None)
        entries.append(entry)
    agree = all(_series_equal(results[0], r) for r in results[1:])
    report = {"n": g.n, "m": g.m, "L": L, "ring": g.ring.name,
              "mode": "directed" if g.directed else "undirected",
              "methods": entries, "agree": agree}
    if census:
        sizes = count_connected_by_size(g, min(L + 1, g.n))
        report["connected_by_size"] = {str(s): c for s, c in sizes.items()}
        report["connected_total"] = sum(sizes.values())
    _write(report, None, "json", out)
    if not agree:
        raise MismatchError("methods disagree: " + ", ".join(methods))
    return report


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser, series: bool = True) -> None:
    p.add_argument("--input", required=True, help="edge-list file, '-' for stdin")
    orient = p.add_mutually_exclusive_group()
    orient.add_argument("--directed", dest="directed", action="store_true", default=True)
    orient.add_argument("--undirected", dest="directed", action="store_false")
    p.add_argument("--ring", choices=["bigint", "float", "word"], default="bigint")
    p.add_argument("--output", choices=["json", "csv"], default="json")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--limit-n", type=int, default=DEFAULT_REFERENCE_LIMIT,
                   help="n limit of the all-subsets reference method")
    p.add_argument("--no-timing", dest="timing", action="store_false",
                   help="omit wall times so reports are reproducible byte for byte")
    if series:
        p.add_argument("--max-length", type=int, default=None, help="truncation L (default n)")
        p.add_argument("--max-words", type=int, default=10000,
                       help="word ring: omit path tables above this many words")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pathseries",
                     description="Count simple paths, cycles and Hamiltonian paths.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", help="simple path / cycle series")
    _common(p)
    p.add_argument("--kind", choices=["paths", "cycles", "both", "hamiltonian"], default="both")
    p.add_argument("--method", choices=METHODS, default="connected")

    p = sub.add_parser("hamiltonian", help="Hamiltonian path matrix and cycle count")
    _common(p, series=False)
    p.add_argument("--method", choices=["connected", "oracle"], default="connected")

    p = sub.add_parser("oracle", help="brute-force DFS counts")
    _common(p)
    p.add_argument("--kind", choices=["paths", "cycles", "both", "hamiltonian"], default="both")

    p = sub.add_parser("subgraphs", help="weakly connected induced subgraph census")
    _common(p, series=False)
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--list-max-size", type=int, default=None,
                   help="also list the sets with at most this many vertices")

    p = sub.add_parser("bench", help="run several methods and cross-check them")
    _common(p)
    p.add_argument("--kind", choices=["paths", "cycles", "both"], default="both")
    p.add_argument("--methods", default="connected,all-subsets,oracle")
    p.add_argument("--census", action="store_true",
                   help="also report connected-set counts per size")
    return parser


def _config(args) -> RunConfig:
    return RunConfig(
        input=args.input,
        directed=args.directed,
        ring=args.ring,
        max_length=getattr(args, "max_length", None),
        kind=getattr(args, "kind", "both"),
        method=getattr(args, "method", "connected"),
        output=args.output,
        threads=args.threads,
        limit_n=args.limit_n,
        max_words=getattr(args, "max_words", 10000),
        timing=args.timing,
    )


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    cfg = _config(args)
    buf = io.StringIO()
    try:
        if args.command == "count":
            cmd_count(cfg, buf)
        elif args.command == "oracle":
            cfg.method = "oracle"
            cmd_count(cfg, buf)
        elif args.command == "hamiltonian":
            cmd_hamiltonian(cfg, buf)
        elif args.command == "subgraphs":
            cmd_subgraphs(cfg, args.max_size, args.list_max_size, buf)
        elif args.command == "bench":
            try:
                cmd_bench(cfg, [m for m in args.methods.split(",") if m], args.census, buf)
            finally:
                out.write(buf.getvalue())
                buf = io.StringIO()
    except (UsageError, RingError) as exc:
        print(f"pathseries: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphError as exc:
        print(f"pathseries: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except LimitError as exc:
        print(f"pathseries: limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (MismatchError, EngineError) as exc:
        print(f"pathseries: correctness failure: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    out.write(buf.getvalue())
    return EXIT_OK
