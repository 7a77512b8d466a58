"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line.

The lines are printed in the pytest terminal summary (see conftest.py), or
directly when this file is run as a script.
"""

import random
import time
from itertools import chain

import pytest

from oracles import brute_force_colorable
from propchoose.assignment import ListAssignment, k_subsets
from propchoose.classifier import equitably_2_colorable
from propchoose.graph import (
    all_labeled_graphs,
    build_complete_bipartite,
    build_cycle,
    build_path,
    disjoint_union,
)
from propchoose.runs import survey_graphs
from propchoose.solver import find_proportional_coloring, validate
from propchoose.verifier import verify_choosable
from propchoose.witnesses import (
    alpha_coloring,
    alpha_pair,
    alpha_pattern,
    check_witness,
    extend_with_clique,
    transplant,
    witness_cycle_23,
    witness_double_claw_25,
    witness_even_cycle_24,
    witness_p3p3_24,
    witness_p9_24,
    witness_star_23,
)

RESULTS: dict[int, tuple[bool, str]] = {}


def record(number: int, ok: bool, detail: str) -> None:
    RESULTS[number] = (ok, detail)
    assert ok, f"criterion {number}: {detail}"


def summary_lines() -> list[str]:
    return [f"{'PASS' if ok else 'FAIL'} criterion {n:2d}: {detail}" for n, (ok, detail) in sorted(RESULTS.items())]


def graphs_upto(n):
    return chain.from_iterable(all_labeled_graphs(i) for i in range(1, n + 1))


def test_01_p7_reproduction():
    t0 = time.perf_counter()
    v = verify_choosable(build_path(7), 2, 4, "full", jobs=1)
    dt = time.perf_counter() - t0
    ok = v.choosable and v.assignments_checked == 279936 and dt < 120
    record(1, ok, f"P7 (2,4) full: choosable={v.choosable}, checked={v.assignments_checked}, {dt:.1f}s single-threaded")


def test_02_witness_suite():
    p3p3 = disjoint_union(build_path(3), build_path(3))
    once = extend_with_clique(witness_p3p3_24(), 2)
    twice = extend_with_clique(once, 2)
    suite = {
        "star_23 on K1,3": witness_star_23(build_complete_bipartite(1, 3)),
        "even_cycle_24 on C4": witness_even_cycle_24(build_cycle(4)),
        "even_cycle_24 on C6": witness_even_cycle_24(build_cycle(6)),
        "double_claw_25 on P3+P3": witness_double_claw_25(p3p3),
        "p3p3_24": witness_p3p3_24(),
        "p9_24": witness_p9_24(),
        "cycle_23 on C4": witness_cycle_23(4),
        "cycle_23 on C6": witness_cycle_23(6),
        "clique chain on P8": transplant(once, build_path(8)),
        "clique chain on P10": transplant(twice, build_path(10)),
    }
    failed = [name for name, w in suite.items() if not check_witness(w)]
    record(2, not failed, f"{len(suite) - len(failed)}/{len(suite)} witnesses have no proportional coloring {failed or ''}")


def test_03_ell4_paths():
    expected = {n: n <= 5 or n == 7 for n in range(1, 10)}
    t0 = time.perf_counter()
    got = {n: verify_choosable(build_path(n), 2, 4, "full" if n <= 7 else "canonical").choosable for n in range(1, 10)}
    dt = time.perf_counter() - t0
    verdicts = "".join("y" if got[n] else "n" for n in range(1, 10))
    record(3, got == expected and dt < 300, f"P1..P9 at (2,4) = {verdicts} (P8, P9 canonical), {dt:.1f}s")


def test_04_ell3_paths():
    t0 = time.perf_counter()
    got = [verify_choosable(build_path(n), 2, 3).choosable for n in range(1, 11)]
    dt = time.perf_counter() - t0
    record(4, all(got) and dt < 10, f"P1..P10 at (2,3) all choosable={all(got)}, {dt:.2f}s")


def test_05_special_cases():
    a = verify_choosable(disjoint_union(build_path(6), build_path(1)), 2, 4)
    b = verify_choosable(disjoint_union(build_cycle(4), build_path(1)), 2, 3)
    ok = a.choosable and a.assignments_checked == 279936 and b.choosable and b.assignments_checked == 243
    record(
        5,
        ok,
        f"P6+P1 (2,4): {a.choosable}/{a.assignments_checked}; C4+P1 (2,3): {b.choosable}/{b.assignments_checked}",
    )


def test_06_classifier_soundness():
    s = survey_graphs(graphs_upto(5), 2, (2, 3, 4), "canonical", jobs=1)
    s5 = survey_graphs(graphs_upto(4), 2, (5,), "canonical", jobs=1)
    bad = s.disagreements() + s5.disagreements()
    stats = {**s.per_ell(), **s5.per_ell()}
    rates = ", ".join(f"ell={e} unknown {v['unknown']}/{v['graphs']}" for e, v in sorted(stats.items()))
    record(6, not bad, f"{len(bad)} disagreements; {rates}")


def test_07_equitable():
    mismatches = 0
    total = 0
    for g in graphs_upto(6):
        total += 1
        mismatches += verify_choosable(g, 2, 2).choosable != equitably_2_colorable(g).colorable
    record(7, mismatches == 0, f"(2,2)-choosable == equitably 2-colorable on {total} graphs, {mismatches} mismatches")


def test_08_monotonicity():
    violations = 0
    checked = 0
    for g in graphs_upto(4):
        verdict = {ell: verify_choosable(g, 2, ell).choosable for ell in (2, 3, 4, 5)}
        for ell in (2, 3, 4):
            checked += 1
            violations += verdict[ell + 1] and not verdict[ell]
    record(8, violations == 0, f"{checked} (graph, ell) pairs, {violations} violations")


def test_09_solver_vs_brute_force():
    rng = random.Random(0)
    subsets = k_subsets(2, 3)
    mismatches = 0
    total = 0
    for g in graphs_upto(5):
        edges = g.sorted_edges()
        for _ in range(200):
            lists = tuple(rng.choice(subsets) for _ in range(g.n))
            total += 1
            found = find_proportional_coloring(g, ListAssignment(2, 3, lists)).found
            mismatches += found != brute_force_colorable(edges, lists, 2)
    record(9, mismatches == 0, f"{total} seeded instances, {mismatches} mismatches")


def test_10_canonical_vs_full():
    mismatches = 0
    total = 0
    for g in graphs_upto(4):
        for ell in (3, 4):
            total += 1
            mismatches += verify_choosable(g, 2, ell, "full").choosable != verify_choosable(g, 2, ell, "canonical").choosable
    record(10, mismatches == 0, f"{total} (graph, ell) pairs, {mismatches} mismatches")


def test_11_alpha_colorings():
    problems = []
    for m in range(2, 13, 2):
        p = build_path(m)
        for variant, sizes in ((2, (m // 2, 1, m // 2 - 1)), (3, (m // 2 - 1, m // 2, 1))):
            f = alpha_coloring(m, variant)
            # a single copy is proper and from the lists; quotas only balance on the doubled pattern
            bad = validate(p, alpha_pattern(m), f)
            if (bad is not None and bad.clause != "quota") or tuple(f.count(c) for c in (1, 2, 3)) != sizes:
                problems.append((m, variant))
        g, L, f = alpha_pair(m)
        if validate(g, L, f) is not None:
            problems.append((m, "pair"))
    record(11, not problems, f"m = 2..12: alpha-2/alpha-3 class sizes and pair proportionality, problems={problems}")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                pass
    print("\n".join(summary_lines()))
