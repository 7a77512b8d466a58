"""Simple undirected graphs on vertices 1..n, builders and structural queries."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator


class GraphError(ValueError):
    """Raised for malformed graphs, builder arguments or graph specs."""


class Graph:
    """Immutable simple graph with vertices ``1..n``.

    ``edges`` holds pairs ``(u, v)`` with ``u < v``.  Neighbourhoods are kept
    both as frozensets and as bitmasks (bit ``v - 1`` set for neighbour ``v``).
    """

    __slots__ = ("n", "edges", "_adj", "_masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise GraphError("graphs must have at least one vertex")
        norm = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 1..{n}")
            norm.add((u, v) if u < v else (v, u))
        adj: list[set[int]] = [set() for _ in range(n + 1)]
        for u, v in norm:
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.edges = frozenset(norm)
        self._adj = tuple(frozenset(s) for s in adj)
        self._masks = tuple(sum(1 << (w - 1) for w in s) for s in adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def neighbor_mask(self, v: int) -> int:
        return self._masks[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


# builders


def build_path(n: int) -> Graph:
    if n < 1:
        raise GraphError("a path needs at least one vertex")
    return Graph(n, ((i, i + 1) for i in range(1, n)))


def build_cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a simple cycle needs at least three vertices")
    return Graph(n, [(i, i + 1) for i in range(1, n)] + [(n, 1)])


def build_complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b}; vertices 1..a form the first part, a+1..a+b the second."""
    if a < 1 or b < 1:
        raise GraphError("both parts of K_{a,b} must be non-empty")
    return Graph(a + b, ((i, a + j) for i in range(1, a + 1) for j in range(1, b + 1)))


def build_star(leaves: int) -> Graph:
    return build_complete_bipartite(1, leaves)


def build_complete(n: int) -> Graph:
    return Graph(n, combinations(range(1, n + 1), 2))


def build_empty(n: int) -> Graph:
    return Graph(n)


def disjoint_union(*graphs: Graph) -> Graph:
    """Disjoint union; each later graph is shifted past the earlier ones."""
    if not graphs:
        raise GraphError("disjoint_union needs at least one graph")
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, edges)


def spanning_subgraph(g: Graph, edges: Iterable[tuple[int, int]]) -> Graph:
    h = Graph(g.n, edges)
    if not h.edges <= g.edges:
        raise GraphError("edges are not a subset of the host graph's edges")
    return h


def all_labeled_graphs(n: int) -> Iterator[Graph]:
    """Every labeled simple graph on 1..n, by increasing edge bitmask."""
    pairs = list(combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, (p for i, p in enumerate(pairs) if mask >> i & 1))


# structure


@dataclass(frozen=True)
class Component:
    vertices: tuple[int, ...]
    edge_count: int
    is_path: bool
    is_cycle: bool

    @property
    def order(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class GraphAnalysis:
    components: tuple[Component, ...]
    max_degree: int
    is_bipartite: bool
    bipartition: tuple[tuple[int, ...], tuple[int, ...]] | None
    odd_cycle: tuple[int, ...] | None
    has_cycle: bool
    is_linear_forest: bool
    connected: bool

    @property
    def component_count(self) -> int:
        return len(self.components)

    def component_orders(self) -> list[int]:
        return sorted((c.order for c in self.components), reverse=True)


def components(g: Graph) -> list[tuple[int, ...]]:
    seen = [False] * (g.n + 1)
    comps = []
    for s in g.vertices:
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def _two_color(g: Graph, comp: tuple[int, ...]):
    """BFS 2-colouring from the lowest vertex of ``comp`` (side 0).

    Returns ``(side, None)`` or ``(None, odd_cycle)``.
    """
    root = comp[0]
    side = {root: 0}
    parent = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted(g.neighbors(u)):
            if w not in side:
                side[w] = 1 - side[u]
                parent[w] = u
                queue.append(w)
            elif side[w] == side[u]:
                return None, _odd_cycle(parent, u, w)
    return side, None


def _odd_cycle(parent: dict[int, int], u: int, w: int) -> tuple[int, ...]:
    # u, w are adjacent and on the same BFS level parity; join via their common ancestor
    up_u = [u]
    while parent[up_u[-1]]:
        up_u.append(parent[up_u[-1]])
    up_w = [w]
    while parent[up_w[-1]]:
        up_w.append(parent[up_w[-1]])
    anc_u = set(up_u)
    lca = next(x for x in up_w if x in anc_u)
    left = up_u[: up_u.index(lca) + 1]
    right = up_w[: up_w.index(lca)]
    return tuple(left + right[::-1])


def analyze(g: Graph) -> GraphAnalysis:
    comps = []
    xs: list[int] = []
    ys: list[int] = []
    bipartite = True
    odd_cycle = None
    for vs in components(g):
        e = sum(g.degree(v) for v in vs) // 2
        degs = [g.degree(v) for v in vs]
        is_path = e == len(vs) - 1 and max(degs) <= 2
        is_cycle = len(vs) >= 3 and e == len(vs) and all(d == 2 for d in degs)
        comps.append(Component(vs, e, is_path, is_cycle))
        side, cyc = _two_color(g, vs)
        if side is None:
            bipartite = False
            if odd_cycle is None:
                odd_cycle = cyc
        else:
            xs.extend(v for v in vs if side[v] == 0)
            ys.extend(v for v in vs if side[v] == 1)
    return GraphAnalysis(
        components=tuple(comps),
        max_degree=max(g.degree(v) for v in g.vertices),
        is_bipartite=bipartite,
        bipartition=(tuple(sorted(xs)), tuple(sorted(ys))) if bipartite else None,
        odd_cycle=odd_cycle,
        has_cycle=any(c.edge_count >= c.order for c in comps),
        is_linear_forest=all(c.is_path for c in comps),
        connected=len(comps) == 1,
    )


def is_proper_two_coloring(g: Graph, x: Iterable[int], y: Iterable[int]) -> bool:
    xs, ys = set(x), set(y)
    if xs & ys or xs | ys != set(g.vertices):
        return False
    return all((u in xs) != (v in xs) for u, v in g.edges)


# text formats


def parse_edge_list(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"`` (1-indexed)."""
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows:
        raise GraphError("empty edge list")
    try:
        n, m = (int(t) for t in rows[0])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise GraphError(f"header announces {m} edges, found {len(edges)}")
    if len(set(map(frozenset, edges))) != m:
        raise GraphError("duplicate edge in edge list")
    return Graph(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))


def write_edge_list(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(g), encoding="utf-8")


def _ints(arg: str, count: int, name: str) -> list[int]:
    parts = arg.split(",")
    if len(parts) != count:
        raise GraphError(f"{name} expects {count} integer argument(s), got {arg!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise GraphError(f"{name}: non-integer argument {arg!r}") from None


def parse_graph_spec(spec: str) -> Graph:
    """Build a graph from the CLI mini-language.

    ``path:n``, ``cycle:n``, ``star:k`` (K_{1,k}), ``kbip:a,b``,
    ``complete:n``, ``empty:n``, ``file:edges.txt`` and
    ``union:<spec>+<spec>+...``.
    """
    spec = spec.strip()
    kind, sep, arg = spec.partition(":")
    if not sep:
        raise GraphError(f"graph spec {spec!r} is missing ':'")
    if kind == "union":
        parts = [p for p in arg.split("+")]
        if any(not p.strip() for p in parts):
            raise GraphError(f"empty operand in {spec!r}")
        return disjoint_union(*(parse_graph_spec(p) for p in parts))
    if kind == "file":
        return read_edge_list(arg)
    builders = {
        "path": (1, build_path),
        "cycle": (1, build_cycle),
        "star": (1, build_star),
        "complete": (1, build_complete),
        "empty": (1, build_empty),
        "kbip": (2, build_complete_bipartite),
    }
    if kind not in builders:
        raise GraphError(f"unknown graph kind {kind!r}")
    arity, fn = builders[kind]
    return fn(*_ints(arg, arity, kind))


def describe(g: Graph) -> str:
    """Shape name such as ``P3+P3`` or ``C4+P1`` when every component is a
    path or a cycle, otherwise a generic ``G(n=..,m=..)`` label."""
    a = analyze(g)
    names = []
    for c in sorted(a.components, key=lambda c: (not c.is_cycle, -c.order)):
        if c.is_path:
            names.append(f"P{c.order}")
        elif c.is_cycle:
            names.append(f"C{c.order}")
        else:
            return f"G(n={g.n},m={g.m})"
    return "+".join(names)
