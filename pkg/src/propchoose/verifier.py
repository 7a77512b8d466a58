"""Exhaustive proportional (k, ell)-choosability checks.

The assignment index space is cut into chunks sharing a fixed digit prefix,
so every chunk is a contiguous index range.  Chunks are solved in order (one
process) or by a worker pool; either way the reported witness is the failing
assignment of smallest index, and counts are those of a sequential scan.
"""

from __future__ import annotations

import multiprocessing as mp
import os
import sys
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Iterable, Sequence

from .assignment import (
    DEFAULT_CAP,
    AssignmentError,
    ListAssignment,
    check_cap,
    digits_to_index,
    iter_digits,
    k_subsets,
    palette_action,
    _prefix_stabilizer,
)
from .graph import Graph, format_edge_list
from .solver import find_proportional_coloring, make_plan, search

PROGRESS_EVERY = 10**6
_POLL = 4096


@dataclass(frozen=True)
class Verdict:
    graph: Graph
    k: int
    ell: int
    mode: str
    choosable: bool
    witness: ListAssignment | None
    witness_index: int | None
    assignments_checked: int
    duration: float  # seconds
    failing: int | None = None  # number of bad assignments, exhaustive runs only

    def to_dict(self, graph_spec: str | None = None) -> dict:
        out = {
            "graph": graph_spec if graph_spec is not None else format_edge_list(self.graph),
            "k": self.k,
            "ell": self.ell,
            "mode": self.mode,
            "choosable": self.choosable,
            "witness": None,
            "assignments_checked": self.assignments_checked,
            "duration_ms": round(self.duration * 1000, 3),
        }
        if self.witness is not None:
            out["witness"] = {"assignment": self.witness.to_dict(), "index": self.witness_index}
        if self.failing is not None:
            out["failing"] = self.failing
        return out


@dataclass
class _ChunkResult:
    start: int
    checked: int  # up to and including the first failure, or the whole chunk
    witness: tuple[int, ...] | None
    failing: int
    aborted: bool = False


_best = None  # shared lowest witness index, installed in pool workers


def _init_worker(best) -> None:
    global _best
    _best = best


def _run_chunk(
    g: Graph, k: int, ell: int, mode: str, order: str, prefix: tuple[int, ...], exhaustive: bool, progress: bool = False
) -> _ChunkResult:
    radix = comb(ell, k)
    start = digits_to_index(prefix, radix) * radix ** (g.n - len(prefix))
    plan = make_plan(g, order)
    subsets = k_subsets(k, ell)
    checked = 0
    failing = 0
    witness = None
    for digits in iter_digits(g.n, k, ell, mode, prefix):
        if _best is not None and checked % _POLL == 0 and start > _best.value:
            return _ChunkResult(start, checked, witness, failing, aborted=True)
        if witness is None or exhaustive:
            checked += 1
            if progress and checked % PROGRESS_EVERY == 0:
                _report(checked, checked - 1)
        colors, _, _ = search(plan, [subsets[d] for d in digits], k, ell)
        if colors is None:
            failing += 1
            if witness is None:
                witness = digits
                if not exhaustive:
                    break
    return _ChunkResult(start, checked, witness, failing)


def _prefixes(n: int, k: int, ell: int, mode: str, jobs: int) -> list[tuple[int, ...]]:
    if jobs <= 1:
        return [()]
    radix = comb(ell, k)
    depth = 0
    while depth < n and radix**depth < 8 * jobs:
        depth += 1
    out = list(product(range(radix), repeat=depth))
    if mode == "canonical":
        actions = palette_action(k, ell)
        out = [p for p in out if _prefix_stabilizer(p, actions) is not None]
    return out


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("PROPCHOOSE_JOBS", "1")))
    except ValueError:
        return 1


def verify_choosable(
    g: Graph,
    k: int,
    ell: int,
    mode: str = "full",
    jobs: int | None = None,
    cap: int = DEFAULT_CAP,
    force: bool = False,
    exhaustive: bool = False,
    order: str = "smart",
    progress: bool = False,
) -> Verdict:
    """Decide whether every (k, ell)-assignment of ``g`` has a proportional coloring.

    ``mode="canonical"`` inspects one assignment per palette-permutation orbit;
    permuting colors maps proportional colorings to proportional colorings, so
    the verdict is unchanged.  ``exhaustive`` disables the early exit and
    counts every failing assignment.
    """
    if mode not in ("full", "canonical"):
        raise AssignmentError(f"unknown enumeration mode {mode!r}")
    check_cap(g.n, k, ell, mode, cap, force)
    jobs = default_jobs() if jobs is None else max(1, jobs)
    t0 = time.perf_counter()
    prefixes = _prefixes(g.n, k, ell, mode, jobs)
    if jobs == 1:
        results = _run_serial(g, k, ell, mode, order, prefixes, exhaustive, progress)
    else:
        results = _run_pool(g, k, ell, mode, order, prefixes, exhaustive, progress, jobs)
    verdict = _merge(g, k, ell, mode, results, exhaustive, time.perf_counter() - t0)
    if verdict.witness is not None and find_proportional_coloring(g, verdict.witness).found:
        raise AssertionError("witness assignment unexpectedly admits a proportional coloring")
    return verdict


def _report(done: int, last: int) -> int:
    if done // PROGRESS_EVERY > last // PROGRESS_EVERY:
        print(f"[verify] {done} assignments checked", file=sys.stderr, flush=True)
    return done


def _run_serial(g, k, ell, mode, order, prefixes, exhaustive, progress) -> list[_ChunkResult]:
    out = []
    for p in prefixes:
        r = _run_chunk(g, k, ell, mode, order, p, exhaustive, progress)
        out.append(r)
        if r.witness is not None and not exhaustive:
            break
    return out


def _run_pool(g, k, ell, mode, order, prefixes, exhaustive, progress, jobs) -> list[_ChunkResult]:
    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
    radix = comb(ell, k)
    span = radix ** (g.n - (len(prefixes[0]) if prefixes else 0))
    best = ctx.Value("q", radix**g.n)
    results: list[_ChunkResult] = []
    done = 0
    with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx, initializer=_init_worker, initargs=(best,)) as pool:
        futures = {}
        for p in prefixes:
            f = pool.submit(_run_chunk, g, k, ell, mode, order, p, exhaustive)
            futures[f] = digits_to_index(p, radix) * span
        pending = set(futures)
        while pending:
            finished, pending = wait(pending, return_when=FIRST_COMPLETED)
            for f in finished:
                if f.cancelled():
                    continue
                r = f.result()
                results.append(r)
                if progress and not r.aborted:
                    done = _report(done + r.checked, done)
                if r.witness is not None and not exhaustive:
                    w = digits_to_index(r.witness, radix)
                    with best.get_lock():
                        if w < best.value:
                            best.value = w
                    for other in list(pending):
                        if futures[other] > best.value and other.cancel():
                            pending.discard(other)
    results.sort(key=lambda r: r.start)
    return results


def _merge(g, k, ell, mode, results, exhaustive, duration) -> Verdict:
    radix = comb(ell, k)
    subsets = k_subsets(k, ell)
    witness_chunk = None
    for r in results:
        if r.witness is not None:
            witness_chunk = r
            break
    if witness_chunk is None:
        checked = sum(r.checked for r in results)
        return Verdict(g, k, ell, mode, True, None, None, checked, duration, 0 if exhaustive else None)
    if exhaustive:
        checked = sum(r.checked for r in results)
    else:
        # chunks before the witness chunk all ran to completion
        checked = sum(r.checked for r in results if r.start < witness_chunk.start) + witness_chunk.checked
    witness = ListAssignment(k, ell, tuple(subsets[d] for d in witness_chunk.witness))
    return Verdict(
        g,
        k,
        ell,
        mode,
        False,
        witness,
        digits_to_index(witness_chunk.witness, radix),
        checked,
        duration,
        sum(r.failing for r in results) if exhaustive else None,
    )


@dataclass(frozen=True)
class TableRow:
    graph: Graph
    k: int
    ell: int
    label: str | None = None
    mode: str = "full"


def verify_table(rows: Iterable[TableRow | Sequence], jobs: int | None = None, cap: int = DEFAULT_CAP, force: bool = False) -> dict:
    """Run :func:`verify_choosable` per row; a failing row records its error and
    the batch carries on."""
    out = []
    for row in rows:
        if not isinstance(row, TableRow):
            row = TableRow(*row)
        entry = {"label": row.label, "k": row.k, "ell": row.ell, "mode": row.mode}
        try:
            v = verify_choosable(row.graph, row.k, row.ell, row.mode, jobs=jobs, cap=cap, force=force)
        except (AssignmentError, ValueError) as exc:
            entry["error"] = str(exc)
        else:
            entry.update(v.to_dict(row.label))
        out.append(entry)
    return {"rows": out}
