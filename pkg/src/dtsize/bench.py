"""Run every solver over a corpus of CSV files and cross-check the sizes."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass
from pathlib import Path

from .dataset import DatasetError, load_csv
from .deadline import Deadline, SolverTimeout
from .dp import dp_min_size
from .fpt import fpt_min_tree
from .oracle import MAX_ORACLE_SIZE, OracleLimits, brute_min_size
from .tree import size

ALGOS = ("dp", "fpt", "oracle")


@dataclass
class BenchRow:
    instance: str
    algo: str
    size: int | None
    millis: float
    status: str  # OK, NONE, TIMEOUT or ERROR


def _run_one(algo: str, ds, deadline: Deadline):
    if algo == "dp":
        return dp_min_size(ds, deadline=deadline).size
    if algo == "fpt":
        return size(fpt_min_tree(ds, cache=True, deadline=deadline))
    if algo == "oracle":
        # the oracle has no deadline hook; its size cap keeps it short
        return brute_min_size(ds, OracleLimits(MAX_ORACLE_SIZE))
    raise ValueError(f"unknown algorithm {algo!r}")


def run_bench(paths, algos=ALGOS, timeout: float | None = 10.0, has_header: bool = False) -> list[BenchRow]:
    rows = []
    for path in sorted(Path(p) for p in paths):
        name = path.name
        try:
            ds = load_csv(path, has_header)
        except (OSError, DatasetError) as exc:
            rows.extend(BenchRow(name, a, None, 0.0, f"ERROR: {exc}") for a in algos)
            continue
        for algo in algos:
            start = time.perf_counter()
            try:
                result = _run_one(algo, ds, Deadline(timeout))
                status = "OK" if result is not None else "NONE"
            except SolverTimeout:
                result, status = None, "TIMEOUT"
            millis = (time.perf_counter() - start) * 1000
            rows.append(BenchRow(name, algo, result, millis, status))
    return rows


def agreement(rows: list[BenchRow]) -> str:
    sizes = {r.size for r in rows if r.status == "OK"}
    if len(sizes) > 1:
        return "MISMATCH"
    # a bounded oracle that found nothing agrees with any size above its cap
    for r in rows:
        if r.algo == "oracle" and r.status == "NONE" and sizes and min(sizes) <= MAX_ORACLE_SIZE:
            return "MISMATCH"
    return "OK" if sizes else "-"


def by_instance(rows: list[BenchRow]) -> dict:
    grouped: dict[str, list[BenchRow]] = {}
    for r in rows:
        grouped.setdefault(r.instance, []).append(r)
    return grouped


def format_csv(rows: list[BenchRow], timing: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["instance", "algo", "size", "millis", "status"])
    for r in rows:
        millis = f"{r.millis:.1f}" if timing else ""
        w.writerow([r.instance, r.algo, "" if r.size is None else r.size, millis, r.status])
    return buf.getvalue()


def format_text(rows: list[BenchRow], algos=ALGOS, timing: bool = True) -> str:
    header = ["instance", *algos, "agreement"]
    table = [header]
    for name, group in by_instance(rows).items():
        cells = [name]
        for algo in algos:
            r = next((r for r in group if r.algo == algo), None)
            if r is None:
                cells.append("")
                continue
            shown = str(r.size) if r.status == "OK" else r.status.split(":")[0]
            if timing:
                shown += f" ({r.millis:.0f} ms)"
            cells.append(shown)
        cells.append(agreement(group))
        table.append(cells)
    widths = [max(len(row[c]) for row in table) for c in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in table]
    return "\n".join(lines) + "\n"
