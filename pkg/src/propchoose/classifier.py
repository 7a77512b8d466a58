"""Rule-based classification of proportional (2, ell)-choosability.

Every known verdict comes from a published characterization or from a short
chain of two closure facts:

* non-choosability passes from a spanning subgraph to the whole graph (so
  choosability passes from a graph to its spanning subgraphs);
* adding a disjoint K_2 to a non-choosable graph keeps it non-choosable.

Anything not settled this way is reported as unknown.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .graph import Graph, GraphAnalysis, analyze, describe

KNOWN_YES = "known_yes"
KNOWN_NO = "known_no"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Classification:
    status: str
    rule: str
    ell: int
    explanation: tuple[str, ...] = ()
    certificate: dict = field(default_factory=dict)

    def __post_init__(self):
        if bool(self.rule) != (self.status != UNKNOWN):
            raise ValueError("a rule is required exactly when the status is known")

    @property
    def known(self) -> bool:
        return self.status != UNKNOWN

    @property
    def choosable(self) -> bool | None:
        return {KNOWN_YES: True, KNOWN_NO: False}.get(self.status)

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "rule": self.rule,
            "ell": self.ell,
            "explanation": list(self.explanation),
            "certificate": self.certificate,
        }


@dataclass(frozen=True)
class EquitableResult:
    colorable: bool
    parts: tuple[tuple[int, ...], tuple[int, ...]] | None
    obstruction: str | None = None


def equitably_2_colorable(g: Graph, analysis: GraphAnalysis | None = None) -> EquitableResult:
    """Decide whether ``g`` has a proper 2-coloring with class sizes differing
    by at most one.

    Each component contributes its two BFS sides; flipping a component negates
    its imbalance ``d_i``.  A subset-sum table over the flips finds signs with
    ``|sum s_i d_i| <= 1`` when they exist.
    """
    a = analysis or analyze(g)
    if not a.is_bipartite:
        return EquitableResult(False, None, f"odd cycle {list(a.odd_cycle)}")
    x_side = set(a.bipartition[0])
    sides = []
    for c in a.components:
        xs = tuple(v for v in c.vertices if v in x_side)
        ys = tuple(v for v in c.vertices if v not in x_side)
        sides.append((xs, ys))
    # reach[s] = flip choices giving signed imbalance s over the components so far
    reach: dict[int, tuple[bool, ...]] = {0: ()}
    for xs, ys in sides:
        d = len(xs) - len(ys)
        nxt: dict[int, tuple[bool, ...]] = {}
        for s, flips in reach.items():
            nxt.setdefault(s + d, flips + (False,))
            nxt.setdefault(s - d, flips + (True,))
        reach = nxt
    best = min(reach, key=lambda s: (abs(s), -s))
    if abs(best) > 1:
        return EquitableResult(False, None, f"bipartite, but every choice of sides leaves imbalance >= {abs(best)}")
    X: list[int] = []
    Y: list[int] = []
    for (xs, ys), flip in zip(sides, reach[best]):
        X.extend(ys if flip else xs)
        Y.extend(xs if flip else ys)
    return EquitableResult(True, (tuple(sorted(X)), tuple(sorted(Y))))


@lru_cache(maxsize=None)
def special_cases() -> tuple[dict, ...]:
    text = resources.files("propchoose").joinpath("data/special_cases.json").read_text(encoding="utf-8")
    return tuple(json.loads(text))


def _lookup(shape: str, ell: int) -> dict | None:
    # a yes at palette bound e holds for every smaller bound; a no for every larger one
    for entry in special_cases():
        if entry["shape"] != shape:
            continue
        if entry["verdict"] == "yes" and ell <= entry["ell"]:
            return entry
        if entry["verdict"] == "no" and ell >= entry["ell"]:
            return entry
    return None


def _yes(rule: str, ell: int, *why: str, **cert) -> Classification:
    return Classification(KNOWN_YES, rule, ell, why, cert)


def _no(rule: str, ell: int, *why: str, **cert) -> Classification:
    return Classification(KNOWN_NO, rule, ell, why, cert)


def _bad_forest_base(orders: list[int]) -> str | None:
    """For a linear forest with the given component orders, name a
    non-(2,4)-choosable graph B such that B plus copies of P2 is a spanning
    subgraph, or return None.

    Bases used: P3+P3, and P_c for c = 6 or c >= 8.  A path of order c splits
    into segments of orders 3 and 2 with x threes iff c - 3x is even and >= 0.
    """
    if any(c == 1 for c in orders):
        return None
    odd = [c for c in orders if c % 2]
    if len(odd) == 2 and min(odd) >= 3:
        return "P3+P3 (one P3 in each odd component, P2's elsewhere)"
    if not odd and any(c >= 6 for c in orders):
        return f"P3+P3 inside P{max(orders)} (P2's elsewhere)"
    if len(odd) == 1 and odd[0] >= 9:
        return f"P{odd[0]} (P2's elsewhere)"
    return None


def classify(g: Graph, ell: int) -> Classification:
    """Classify proportional (2, ell)-choosability of ``g``; first matching rule wins."""
    if ell < 2:
        raise ValueError("the palette bound must be at least 2")
    a = analyze(g)
    if ell == 2:
        eq = equitably_2_colorable(g, a)
        if eq.colorable:
            return _yes("equitable-2-coloring", ell, "(2,2)-choosable iff equitably 2-colorable", parts=eq.parts)
        return _no("equitable-2-coloring", ell, "(2,2)-choosable iff equitably 2-colorable", obstruction=eq.obstruction)
    if not a.is_bipartite:
        return _no("not-2-colorable", ell, "identical lists {1,2} admit no proper coloring", odd_cycle=list(a.odd_cycle))
    orders = a.component_orders()
    small_shape = a.is_linear_forest and orders[0] <= 5 and all(c <= 2 for c in orders[1:])
    if ell >= 5:
        why = "for ell >= 5: linear forest, largest component <= 5, all others <= 2"
        return (_yes if small_shape else _no)("ell>=5-characterization", ell, why, component_orders=orders)
    if a.max_degree >= 3:
        center = next(v for v in g.vertices if g.degree(v) >= 3)
        leaves = sorted(g.neighbors(center))[:3]
        return _no("claw-subgraph", ell, "a K1,3 subgraph gives a bad (2,3)-assignment", center=center, leaves=leaves)
    if ell == 4 and a.has_cycle:
        return _no("cycle-at-ell>=4", ell, "an even cycle gives a bad (2,4)-assignment")
    shape = describe(g)
    if a.connected:
        comp = a.components[0]
        if ell == 4:
            ok = g.n <= 5 or g.n == 7
            return (_yes if ok else _no)("ell=4-connected-path", ell, "connected: P_n with n <= 5 or n = 7", shape=shape)
        if comp.is_path:
            return _yes("ell=3-connected", ell, "every path is (2,3)-choosable", shape=shape)
        return _no("ell=3-connected", ell, "an even cycle is not (2,3)-choosable", shape=shape)
    if small_shape:
        return _yes("2-choosable-shape", ell, "proportionally 2-choosable linear forest", shape=shape)
    if a.is_linear_forest:
        if ell == 3:
            return _yes(
                "ell=3-linear-forest", ell, f"spanning subgraph of P{g.n}, which is (2,3)-choosable", shape=shape
            )
        if g.n <= 5 or g.n == 7:
            return _yes("ell=4-spanning-path", ell, f"spanning subgraph of P{g.n}, which is (2,4)-choosable", shape=shape)
        base = _bad_forest_base(orders)
        if base is not None:
            return _no(
                "ell=4-bad-forest",
                ell,
                f"spanning subgraph {base}",
                "adding disjoint P2's and edges keeps a graph non-(2,4)-choosable",
                shape=shape,
            )
    else:
        # ell == 3, Delta <= 2, bipartite: components are paths and even cycles
        cycles = [c for c in a.components if c.is_cycle]
        if all(c.order % 2 == 0 for c in a.components):
            return _no(
                "ell=3-cycle-plus-matching",
                ell,
                f"spanning subgraph C{cycles[0].order} plus disjoint P2's",
                "an even cycle is not (2,3)-choosable; adding P2's and edges keeps it so",
                shape=shape,
            )
    entry = _lookup(shape, ell)
    if entry is not None:
        return (_yes if entry["verdict"] == "yes" else _no)(entry["rule"], ell, entry["note"], shape=shape)
    return Classification(UNKNOWN, "", ell, ("no known characterization applies",), {"shape": shape})
