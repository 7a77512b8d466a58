"""Batch runs behind the CLI: the P7 reproduction and the classifier survey."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import chain

from . import __version__
from .assignment import assignment_count
from .classifier import classify
from .graph import all_labeled_graphs, build_path
from .verifier import default_jobs, verify_choosable

P7_ASSIGNMENTS = 279936


class SelfCheckError(RuntimeError):
    pass


@dataclass
class RunReport:
    subcommand: str
    inputs: dict
    result: dict
    duration_ms: float = 0.0
    tool_version: str = __version__
    seed: int | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> RunReport:
        return cls(**json.loads(text))


def reproduce_p7(mode: str = "full", jobs: int | None = None) -> RunReport:
    """Exhaust the (2,4)-assignments of P7 and insist that all of them are fine."""
    t0 = time.perf_counter()
    v = verify_choosable(build_path(7), 2, 4, mode, jobs=jobs)
    if not v.choosable:
        raise SelfCheckError(f"P7 has a bad (2,4)-assignment: {v.witness.lists}")
    if mode == "full" and v.assignments_checked != P7_ASSIGNMENTS:
        raise SelfCheckError(f"expected {P7_ASSIGNMENTS} assignments, checked {v.assignments_checked}")
    result = v.to_dict("path:7")
    return RunReport("reproduce", {"graph": "path:7", "k": 2, "ell": 4, "mode": mode}, result, (time.perf_counter() - t0) * 1000)


@dataclass
class SurveyRow:
    n: int
    edges: list
    ell: int
    classification: str
    rule: str
    choosable: bool
    agrees: bool | None  # None when the classification is unknown


def _survey_graph(args) -> list[SurveyRow]:
    g, k, ells, mode = args
    rows = []
    for ell in ells:
        c = classify(g, ell)
        v = verify_choosable(g, k, ell, mode, jobs=1)
        agrees = None if not c.known else c.choosable == v.choosable
        rows.append(SurveyRow(g.n, [list(e) for e in g.sorted_edges()], ell, c.status, c.rule, v.choosable, agrees))
    return rows


@dataclass
class SurveySummary:
    rows: list[SurveyRow] = field(default_factory=list)

    def disagreements(self) -> list[SurveyRow]:
        return [r for r in self.rows if r.agrees is False]

    def per_ell(self) -> dict[int, dict]:
        out: dict[int, dict] = {}
        for r in self.rows:
            s = out.setdefault(r.ell, {"graphs": 0, "unknown": 0, "disagreements": 0, "choosable": 0})
            s["graphs"] += 1
            s["unknown"] += r.agrees is None
            s["disagreements"] += r.agrees is False
            s["choosable"] += r.choosable
        for s in out.values():
            s["unknown_rate"] = round(s["unknown"] / s["graphs"], 4)
        return out


def survey_graphs(
    graphs, k: int = 2, ells=(2, 3, 4), mode: str = "canonical", jobs: int | None = None
) -> SurveySummary:
    jobs = default_jobs() if jobs is None else jobs
    work = [(g, k, tuple(ells), mode) for g in graphs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_survey_graph, work, chunksize=16))
    else:
        parts = [_survey_graph(w) for w in work]
    return SurveySummary(list(chain.from_iterable(parts)))


def survey(
    max_n: int,
    k: int = 2,
    ell_list=(2, 3, 4),
    mode: str = "canonical",
    jobs: int | None = None,
    cap: int = 10**7,
    include_rows: bool = False,
) -> RunReport:
    """Classify every labeled graph on at most ``max_n`` vertices and compare
    each non-unknown verdict with the exhaustive verifier."""
    if max_n > 6:
        raise ValueError("survey is limited to max_n <= 6")
    for ell in ell_list:
        if assignment_count(max_n, k, ell) > cap:
            raise ValueError(f"survey at ell={ell}, n={max_n} exceeds the cap of {cap} assignments per graph")
    t0 = time.perf_counter()
    graphs = chain.from_iterable(all_labeled_graphs(n) for n in range(1, max_n + 1))
    s = survey_graphs(graphs, k, ell_list, mode, jobs)
    result = {
        "per_ell": {str(e): v for e, v in s.per_ell().items()},
        "disagreements": [asdict(r) for r in s.disagreements()],
        "graphs_per_n": {str(n): 2 ** (n * (n - 1) // 2) for n in range(1, max_n + 1)},
    }
    if include_rows:
        result["rows"] = [asdict(r) for r in s.rows]
    inputs = {"max_n": max_n, "k": k, "ell_list": list(ell_list), "mode": mode}
    return RunReport("survey", inputs, result, (time.perf_counter() - t0) * 1000)

