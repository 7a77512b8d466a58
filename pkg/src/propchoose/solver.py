"""Backtracking search for proportional list colorings.

A coloring ``f`` is proportional for a k-assignment ``L`` when it is proper,
``f(v)`` lies in ``L(v)`` for every vertex, and every color ``c`` of the palette
is used between ``floor(eta(c)/k)`` and ``ceil(eta(c)/k)`` times, where
``eta(c)`` counts the lists containing ``c``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

from .assignment import ListAssignment, multiplicities, quotas
from .graph import Graph

ORDERS = ("smart", "appendix")


@dataclass(frozen=True)
class ProportionalColoring:
    colors: tuple[int, ...]  # colors[v - 1] is the color of vertex v

    def color_of(self, v: int) -> int:
        return self.colors[v - 1]

    @property
    def class_size(self) -> dict[int, int]:
        sizes: dict[int, int] = {}
        for c in self.colors:
            sizes[c] = sizes.get(c, 0) + 1
        return dict(sorted(sizes.items()))

    def to_dict(self) -> dict:
        return {"colors": list(self.colors), "class_size": {str(c): s for c, s in self.class_size.items()}}


@dataclass(frozen=True)
class SolveOutcome:
    status: str  # "found" or "none"
    coloring: ProportionalColoring | None
    nodes_explored: int
    count: int | None = None  # number of proportional colorings, when counting

    @property
    def found(self) -> bool:
        return self.status == "found"

    def to_dict(self) -> dict:
        out = {"status": self.status, "nodes_explored": self.nodes_explored}
        if self.coloring is not None:
            out["coloring"] = self.coloring.to_dict()
        if self.count is not None:
            out["count"] = self.count
        return out


@dataclass(frozen=True)
class Violation:
    clause: str  # "proper", "list" or "quota"
    message: str
    vertex: int | None = None
    edge: tuple[int, int] | None = None
    color: int | None = None


# search order


def vertex_order(g: Graph, order: str = "smart") -> tuple[int, ...]:
    """``appendix`` is plain 1..n; ``smart`` is a BFS order per component (lowest
    vertex first, neighbours ascending) so every non-root vertex follows one of
    its neighbours."""
    if order == "appendix":
        return tuple(g.vertices)
    if order != "smart":
        raise ValueError(f"unknown vertex order {order!r}")
    seen = [False] * (g.n + 1)
    out = []
    for s in g.vertices:
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            out.append(u)
            for w in sorted(g.neighbors(u)):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return tuple(out)


@dataclass(frozen=True)
class SearchPlan:
    order: tuple[int, ...]
    back: tuple[tuple[int, ...], ...]  # positions of earlier neighbours, per position
    n: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "n", len(self.order))


@lru_cache(maxsize=256)
def make_plan(g: Graph, order: str = "smart") -> SearchPlan:
    seq = vertex_order(g, order)
    pos = {v: i for i, v in enumerate(seq)}
    back = tuple(tuple(sorted(pos[w] for w in g.neighbors(v) if pos[w] < i)) for i, v in enumerate(seq))
    return SearchPlan(seq, back)


def search(
    plan: SearchPlan,
    lists: Sequence[Sequence[int]],
    k: int,
    ell: int,
    prune: bool = True,
    count_all: bool = False,
) -> tuple[list[int] | None, int, int]:
    """Core backtracking over ``plan.order``.

    ``lists`` is indexed by vertex - 1.  Returns ``(colors, nodes, count)`` where
    ``colors`` (vertex order) is the first proportional coloring found, or None.
    With ``count_all`` the search runs to completion and ``count`` is the number
    of proportional colorings; ``colors`` is then the first one.

    With ``prune`` the search keeps, for every color, the number of uncolored
    vertices still able to take it and abandons a branch once some color can no
    longer reach its lower quota.  Without it lower quotas are checked at leaves
    only.
    """
    n = plan.n
    back = plan.back
    L = [lists[v - 1] for v in plan.order]
    eta = [0] * (ell + 1)
    for s in L:
        for c in s:
            eta[c] += 1
    lo = [e // k for e in eta]
    hi = [-(-e // k) for e in eta]
    avail = eta[:]
    cnt = [0] * (ell + 1)
    col = [0] * n
    nxt = [0] * n
    nodes = 0
    total = 0
    first = None
    pos = 0
    for c in L[0]:
        avail[c] -= 1
    while pos >= 0:
        if pos == n:
            ok = True
            if not prune:
                for c in range(1, ell + 1):
                    if cnt[c] < lo[c]:
                        ok = False
                        break
            if ok:
                if first is None:
                    first = col[:]
                total += 1
                if not count_all:
                    break
            pos -= 1
            continue
        c = col[pos]
        if c:
            cnt[c] -= 1
            col[pos] = 0
        lst = L[pos]
        i = nxt[pos]
        chosen = 0
        while i < k:
            c = lst[i]
            i += 1
            if cnt[c] >= hi[c]:
                continue
            clash = False
            for q in back[pos]:
                if col[q] == c:
                    clash = True
                    break
            if clash:
                continue
            if prune:
                dead = False
                for d in lst:
                    if d != c and lo[d] - cnt[d] > avail[d]:
                        dead = True
                        break
                if dead:
                    continue
            chosen = c
            break
        nxt[pos] = i
        if chosen:
            cnt[chosen] += 1
            col[pos] = chosen
            nodes += 1
            pos += 1
            if pos < n:
                nxt[pos] = 0
                for d in L[pos]:
                    avail[d] -= 1
        else:
            for d in lst:
                avail[d] += 1
            pos -= 1
    if first is None:
        return None, nodes, total
    colors = [0] * n
    for p, v in enumerate(plan.order):
        colors[v - 1] = first[p]
    return colors, nodes, total


def find_proportional_coloring(
    g: Graph,
    L: ListAssignment,
    order: str = "smart",
    prune: bool = True,
    count_all: bool = False,
) -> SolveOutcome:
    """Search for a proportional L-coloring of ``g``.

    Deterministic: candidate colors are tried in ascending order along a fixed
    vertex order, and the first coloring found is returned.  A found coloring
    is re-checked with :func:`validate` before it is returned.
    """
    L.check_graph(g)
    colors, nodes, total = search(make_plan(g, order), L.lists, L.k, L.ell, prune, count_all)
    count = total if count_all else None
    if colors is None:
        return SolveOutcome("none", None, nodes, count)
    bad = validate(g, L, colors)
    if bad is not None:
        raise AssertionError(f"search produced an invalid coloring: {bad.message}")
    return SolveOutcome("found", ProportionalColoring(tuple(colors)), nodes, count)


def validate(g: Graph, L: ListAssignment, coloring: Sequence[int] | Mapping[int, int] | ProportionalColoring) -> Violation | None:
    """First violated clause (proper, then list, then quota), or None if the
    coloring is a proportional L-coloring."""
    if isinstance(coloring, ProportionalColoring):
        coloring = coloring.colors
    if isinstance(coloring, Mapping):
        f = dict(coloring)
    else:
        f = {v: c for v, c in enumerate(coloring, start=1)}
    missing = [v for v in g.vertices if v not in f]
    if missing:
        raise ValueError(f"coloring leaves vertices uncolored: {missing}")
    for u, v in g.sorted_edges():
        if f[u] == f[v]:
            return Violation("proper", f"edge ({u}, {v}) is monochromatic in color {f[u]}", edge=(u, v), color=f[u])
    for v in g.vertices:
        if f[v] not in L[v]:
            return Violation("list", f"vertex {v} has color {f[v]} outside its list {L[v]}", vertex=v, color=f[v])
    q = quotas(multiplicities(L), L.k)
    used: dict[int, int] = {}
    for v in g.vertices:
        used[f[v]] = used.get(f[v], 0) + 1
    for c in sorted(q.lo):
        size = used.get(c, 0)
        if not q.lo[c] <= size <= q.hi[c]:
            return Violation(
                "quota",
                f"color {c} used {size} times, allowed {q.lo[c]}..{q.hi[c]}",
                color=c,
            )
    return None


def is_proportional(g: Graph, L: ListAssignment, coloring) -> bool:
    return validate(g, L, coloring) is None
