"""Explicit bad list assignments and the coloring devices used on even paths.

Every constructor returns a :class:`WitnessSpec` whose assignment admits no
proportional coloring of its graph; :func:`check_witness` confirms this by
exhaustive search.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

from .assignment import ListAssignment, multiplicities
from .graph import (
    Graph,
    build_complete,
    build_complete_bipartite,
    build_cycle,
    build_path,
    disjoint_union,
)
from .solver import find_proportional_coloring


class EmbeddingError(ValueError):
    """An embedding does not describe the required subgraph of the host."""


@dataclass(frozen=True)
class WitnessSpec:
    name: str
    graph: Graph
    assignment: ListAssignment
    source: str
    claim: str = "no proportional coloring exists"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "graph": {"n": self.graph.n, "edges": [list(e) for e in self.graph.sorted_edges()]},
            "assignment": self.assignment.to_dict(),
            "claim": self.claim,
            "source": self.source,
        }


def check_witness(w: WitnessSpec) -> bool:
    """True when the search confirms that no proportional coloring exists."""
    return not find_proportional_coloring(w.graph, w.assignment).found


def _assign(g: Graph, lists: Mapping[int, Sequence[int]], default: Sequence[int], ell: int) -> ListAssignment:
    return ListAssignment(2, ell, tuple(tuple(lists.get(v, default)) for v in g.vertices))


def _check_vertices(g: Graph, vs: Sequence[int]) -> None:
    for v in vs:
        if not 1 <= v <= g.n:
            raise EmbeddingError(f"vertex {v} is not in the graph")
    if len(set(vs)) != len(vs):
        raise EmbeddingError(f"embedding repeats a vertex: {list(vs)}")


def _check_star(g: Graph, center: int, leaves: Sequence[int]) -> None:
    _check_vertices(g, [center, *leaves])
    for b in leaves:
        if not g.has_edge(center, b):
            raise EmbeddingError(f"missing edge ({center}, {b})")


def _check_cycle(g: Graph, cycle: Sequence[int]) -> None:
    _check_vertices(g, cycle)
    if len(cycle) < 3:
        raise EmbeddingError("a cycle needs at least three vertices")
    for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        if not g.has_edge(a, b):
            raise EmbeddingError(f"missing cycle edge ({a}, {b})")


# embedding search (first found, lowest vertices first)


def find_star(g: Graph) -> tuple[int, tuple[int, int, int]] | None:
    for a in g.vertices:
        nb = sorted(g.neighbors(a))
        if len(nb) >= 3:
            return a, tuple(nb[:3])
    return None


def find_even_cycle(g: Graph) -> tuple[int, ...] | None:
    """Shortest even cycle through the lowest possible start vertex, by DFS over
    simple paths; intended for small graphs."""
    best = None
    for start in g.vertices:
        stack = [(start, (start,))]
        while stack:
            u, path = stack.pop()
            for w in sorted(g.neighbors(u), reverse=True):
                if w == start and len(path) >= 4 and len(path) % 2 == 0:
                    if best is None or len(path) < len(best):
                        best = path
                elif w > start and w not in path:
                    stack.append((w, path + (w,)))
        if best is not None:
            return best
    return None


def find_two_claws(g: Graph) -> tuple[tuple[int, int, int], tuple[int, int, int]] | None:
    """Two vertex-disjoint copies of K_{1,2}, each given as (center, leaf, leaf)."""
    claws = []
    for a in g.vertices:
        for b, c in combinations(sorted(g.neighbors(a)), 2):
            claws.append((a, b, c))
    for x, y in combinations(claws, 2):
        if not set(x) & set(y):
            return x, y
    return None


# witness constructors


def witness_star_23(g: Graph, center: int | None = None, leaves: Sequence[int] | None = None) -> WitnessSpec:
    """Star vertices get {1,2}, every other vertex {2,3}.

    Color 1 appears on four lists, so it must be used exactly twice, but any
    proper coloring uses it either on the center alone or on all three leaves.
    """
    if center is None:
        found = find_star(g)
        if found is None:
            raise EmbeddingError("graph has no vertex of degree 3")
        center, leaves = found
    leaves = tuple(leaves or ())
    if len(leaves) != 3:
        raise EmbeddingError("a claw needs exactly three leaves")
    _check_star(g, center, leaves)
    star = {center, *leaves}
    return WitnessSpec("star23", g, _assign(g, {v: (1, 2) for v in star}, (2, 3), 3), "claw subgraph, palette 3")


def witness_even_cycle_24(g: Graph, cycle: Sequence[int] | None = None) -> WitnessSpec:
    """Cycle positions alternate {1,2} / {1,3}; vertices off the cycle get {3,4}."""
    if cycle is None:
        cycle = find_even_cycle(g)
        if cycle is None:
            raise EmbeddingError("graph has no even cycle")
    cycle = tuple(cycle)
    if len(cycle) % 2:
        raise EmbeddingError(f"cycle of odd length {len(cycle)}")
    _check_cycle(g, cycle)
    lists = {v: ((1, 2) if i % 2 == 0 else (1, 3)) for i, v in enumerate(cycle)}
    return WitnessSpec(f"evencycle24:{len(cycle)}", g, _assign(g, lists, (3, 4), 4), "even cycle subgraph, palette 4")


def witness_double_claw_25(
    g: Graph,
    first: Sequence[int] | None = None,
    second: Sequence[int] | None = None,
) -> WitnessSpec:
    """Two disjoint K_{1,2}'s, each as ``(center, leaf, leaf)``.

    Centers get {1,2}, the first pair of leaves {1,3}, the second {1,4} and every
    other vertex {1,5}.
    """
    if first is None or second is None:
        found = find_two_claws(g)
        if found is None:
            raise EmbeddingError("graph has no two disjoint copies of K_{1,2}")
        first, second = found
    first, second = tuple(first), tuple(second)
    if len(first) != 3 or len(second) != 3:
        raise EmbeddingError("claws are given as (center, leaf, leaf)")
    if set(first) & set(second):
        raise EmbeddingError("the two claws overlap")
    _check_star(g, first[0], first[1:])
    _check_star(g, second[0], second[1:])
    lists = {first[0]: (1, 2), second[0]: (1, 2)}
    lists.update({v: (1, 3) for v in first[1:]})
    lists.update({v: (1, 4) for v in second[1:]})
    return WitnessSpec("doubleclaw25", g, _assign(g, lists, (1, 5), 5), "two disjoint K1,2, palette 5")


def witness_p3p3_24() -> WitnessSpec:
    """P3+P3 on vertices 1-2-3 and 4-5-6 (centers 2 and 5).

    Centers get {1,2}; the leaves of the first path {1,3}, of the second {1,4}.
    """
    g = disjoint_union(build_path(3), build_path(3))
    lists = ((1, 3), (1, 2), (1, 3), (1, 4), (1, 2), (1, 4))
    return WitnessSpec("p3p3", g, ListAssignment(2, 4, lists), "P3+P3, palette 4")


def witness_p9_24() -> WitnessSpec:
    lists = ((1, 2), (1, 3), (1, 2), (1, 3), (1, 2), (1, 4), (1, 3), (1, 4), (2, 3))
    return WitnessSpec("p9", build_path(9), ListAssignment(2, 4, lists), "P9, palette 4")


def witness_cycle_23(n: int) -> WitnessSpec:
    """Even cycle v1..vn with {1,3} on odd and {1,2} on even positions."""
    if n < 4 or n % 2:
        raise EmbeddingError(f"needs an even cycle length >= 4, got {n}; see witness_odd_cycle")
    lists = tuple((1, 3) if v % 2 else (1, 2) for v in range(1, n + 1))
    return WitnessSpec(f"cycle23:{n}", build_cycle(n), ListAssignment(2, 3, lists), "even cycle, palette 3")


def witness_odd_cycle(n: int, ell: int = 3) -> WitnessSpec:
    """Identical lists {1,2} on an odd cycle; it has no proper 2-coloring at all."""
    if n < 3 or n % 2 == 0:
        raise EmbeddingError(f"needs an odd cycle length >= 3, got {n}")
    return WitnessSpec(f"oddcycle:{n}", build_cycle(n), ListAssignment(2, ell, ((1, 2),) * n), "odd cycle")


def extend_with_clique(base: WitnessSpec, k: int | None = None) -> WitnessSpec:
    """Append a disjoint K_k whose vertices all get the list {1..k}.

    Any proportional coloring of the extension uses each of 1..k once on the
    clique and both quota bounds of those colors rise by exactly one, so the
    base graph would inherit a proportional coloring.
    """
    L = base.assignment
    if k is None:
        k = L.k
    if k != L.k:
        raise ValueError(f"clique size {k} does not match list size {L.k}")
    g = disjoint_union(base.graph, build_complete(k))
    lists = L.extended(*([tuple(range(1, k + 1))] * k))
    return WitnessSpec(f"{base.name}+K{k}", g, lists, f"{base.source}; plus K{k}")


def transplant(base: WitnessSpec, host: Graph, mapping: Mapping[int, int] | Sequence[int] | None = None) -> WitnessSpec:
    """Carry a witness onto a host graph that contains ``base.graph`` as a
    spanning subgraph.  ``mapping`` sends base vertices to host vertices
    (identity by default); adding edges never creates proportional colorings.
    """
    if host.n != base.graph.n:
        raise EmbeddingError("a spanning embedding needs equal vertex counts")
    if mapping is None:
        phi = {v: v for v in base.graph.vertices}
    elif isinstance(mapping, Mapping):
        phi = dict(mapping)
    else:
        phi = {v: w for v, w in enumerate(mapping, start=1)}
    if sorted(phi) != list(base.graph.vertices) or sorted(phi.values()) != list(host.vertices):
        raise EmbeddingError("mapping is not a bijection onto the host's vertices")
    for u, v in base.graph.edges:
        if not host.has_edge(phi[u], phi[v]):
            raise EmbeddingError(f"edge ({u}, {v}) maps to a non-edge")
    inverse = {w: v for v, w in phi.items()}
    lists = tuple(base.assignment[inverse[w]] for w in host.vertices)
    L = ListAssignment(base.assignment.k, base.assignment.ell, lists)
    return WitnessSpec(f"{base.name}@host", host, L, f"{base.source}; spanning supergraph")


def named_witness(name: str, graph: Graph | None = None) -> WitnessSpec:
    """Resolve CLI names: ``star23``, ``evencycle24:<n>``, ``doubleclaw25``,
    ``p3p3``, ``p9``, ``cycle23:<n>``, ``oddcycle:<n>``."""
    kind, _, arg = name.partition(":")
    if kind == "star23":
        return witness_star_23(graph if graph is not None else build_complete_bipartite(1, 3))
    if kind == "evencycle24":
        if graph is None:
            return witness_even_cycle_24(build_cycle(int(arg or 4)))
        return witness_even_cycle_24(graph)
    if kind == "doubleclaw25":
        return witness_double_claw_25(graph if graph is not None else disjoint_union(build_path(3), build_path(3)))
    if kind == "p3p3":
        w = witness_p3p3_24()
    elif kind == "p9":
        w = witness_p9_24()
    elif kind == "cycle23":
        w = witness_cycle_23(int(arg or 4))
    elif kind == "oddcycle":
        w = witness_odd_cycle(int(arg or 3))
    else:
        raise ValueError(f"unknown witness {name!r}")
    return w if graph is None else transplant(w, graph)


# coloring devices on even paths


def alpha_pattern(m: int) -> ListAssignment:
    """Lists on P_m (m even): {1,2} at odd positions, {1,3} at even positions
    before the last vertex, and {2,3} on the last vertex."""
    if m < 2 or m % 2:
        raise ValueError(f"m must be even and positive, got {m}")
    lists = tuple((2, 3) if i == m else ((1, 2) if i % 2 else (1, 3)) for i in range(1, m + 1))
    return ListAssignment(2, 3, lists)


_ALPHA = {"2": (1, 3, 2), "3": (2, 1, 3)}  # (odd positions, even positions, last vertex)


def alpha_coloring(m: int, variant: int | str) -> tuple[int, ...]:
    """Color of each vertex of P_m under the alpha-2 or alpha-3 coloring.

    alpha-2 is 1,3,1,3,...,1,2 (one used m/2 times, three m/2-1 times, two
    once); alpha-3 is 2,1,2,1,...,2,3 (two m/2 times, one m/2-1 times, three
    once).  Both are proper colorings from :func:`alpha_pattern`.
    """
    if m < 2 or m % 2:
        raise ValueError(f"m must be even and positive, got {m}")
    key = str(variant).lower().replace("alpha", "").replace("α", "").strip("_")
    if key not in _ALPHA:
        raise ValueError(f"variant must be 2 or 3, got {variant!r}")
    odd, even, last = _ALPHA[key]
    return tuple(last if i == m else (odd if i % 2 else even) for i in range(1, m + 1))


def alpha_pair(m: int) -> tuple[Graph, ListAssignment, tuple[int, ...]]:
    """Two copies of P_m with the alpha pattern on each, colored alpha-2 on the
    first copy and alpha-3 on the second."""
    pattern = alpha_pattern(m)
    g = disjoint_union(build_path(m), build_path(m))
    L = ListAssignment(2, 3, pattern.lists * 2)
    return g, L, alpha_coloring(m, 2) + alpha_coloring(m, 3)


@dataclass(frozen=True)
class Augmentation:
    graph: Graph
    assignment: ListAssignment
    relabel: dict[int, int]  # original color -> color in the normalized frame
    augmented: bool

    def normalized(self) -> ListAssignment:
        """The augmented assignment with the two odd colors renamed to 1 and 2."""
        return self.assignment.permuted(self.relabel)

    def pull_back(self, colors: Sequence[int]) -> tuple[int, ...]:
        """Restrict a coloring of the augmented path to the original vertices."""
        return tuple(colors[: self.graph.n - (1 if self.augmented else 0)])


def parity_augment(L: ListAssignment) -> Augmentation:
    """Make every multiplicity even by appending one vertex to the path.

    ``L`` is a 2-assignment on P_n (vertices in order).  With exactly two
    odd-multiplicity colors ``a < b`` a new vertex ``n+1`` adjacent to ``n`` gets
    the list ``{a, b}``.  ``relabel`` maps ``a -> 1``, ``b -> 2`` and fixes or
    swaps the rest so that it is a permutation of the palette.  Restricting a
    proportional coloring of the result to 1..n gives one for ``L``: if
    ``eta(a) = 2q - 1`` the extension uses ``a`` exactly ``q`` times, so the
    restriction uses it ``q - 1`` or ``q`` times (likewise for ``b``).
    """
    if L.k != 2:
        raise ValueError("parity augmentation is defined for 2-assignments")
    odd = multiplicities(L).odd_colors()
    if not odd:
        return Augmentation(build_path(L.n), L, {c: c for c in range(1, L.ell + 1)}, False)
    if len(odd) != 2:
        raise ValueError(f"expected exactly two odd-multiplicity colors, got {odd}")
    a, b = odd
    rest = [c for c in range(1, L.ell + 1) if c not in (a, b)]
    relabel = {a: 1, b: 2}
    relabel.update(zip(rest, range(3, L.ell + 1)))
    return Augmentation(build_path(L.n + 1), L.extended((a, b)), relabel, True)

