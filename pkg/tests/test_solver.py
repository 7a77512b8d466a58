import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_force_colorable, brute_force_count
from propchoose.assignment import ListAssignment, k_subsets
from propchoose.graph import Graph, all_labeled_graphs, build_cycle, build_path, build_star, disjoint_union
from propchoose.solver import find_proportional_coloring, is_proportional, validate, vertex_order
from propchoose.witnesses import alpha_coloring, alpha_pattern, witness_p9_24, witness_star_23


def test_star_witness_has_no_coloring():
    w = witness_star_23(build_star(3))
    out = find_proportional_coloring(w.graph, w.assignment)
    assert out.status == "none" and out.coloring is None


def test_single_vertex():
    out = find_proportional_coloring(build_path(1), ListAssignment(2, 2, ((1, 2),)))
    assert out.found and out.coloring.colors == (1,)
    assert is_proportional(build_path(1), ListAssignment(2, 2, ((1, 2),)), (2,))


def test_c4_plus_p1_coloring():
    g = disjoint_union(build_cycle(4), build_path(1))
    L = ListAssignment(2, 3, ((1, 2), (1, 3), (1, 2), (1, 3), (1, 2)))
    assert validate(g, L, (2, 1, 2, 3, 1)) is None
    out = find_proportional_coloring(g, L)
    assert out.found and validate(g, L, out.coloring) is None


def test_p9_witness_has_no_coloring():
    w = witness_p9_24()
    assert not find_proportional_coloring(w.graph, w.assignment).found
    assert not find_proportional_coloring(w.graph, w.assignment, order="appendix").found


def test_validate_alpha_coloring():
    assert validate(build_path(4), alpha_pattern(4), alpha_coloring(4, 2)) is None


def test_validate_properness():
    g = build_path(2)
    L = ListAssignment(2, 2, ((1, 2), (1, 2)))
    for colors in ((1, 1), (2, 2)):
        bad = validate(g, L, colors)
        assert bad.clause == "proper" and bad.edge == (1, 2)


def test_validate_list_and_quota():
    g = Graph(3)
    L = ListAssignment(2, 3, ((1, 2), (1, 2), (1, 3)))
    bad = validate(g, L, (3, 1, 1))
    assert bad.clause == "list" and bad.vertex == 1
    bad = validate(g, L, (1, 1, 1))
    assert bad.clause == "quota" and bad.color == 1
    assert validate(g, L, {1: 2, 2: 1, 3: 3}) is None
    with pytest.raises(ValueError):
        validate(g, L, {1: 1})


def test_deterministic():
    w = witness_p9_24()
    L = ListAssignment(2, 4, w.assignment.lists[:-1] + ((3, 4),))
    runs = {find_proportional_coloring(w.graph, L).coloring.colors for _ in range(3)}
    assert len(runs) == 1


def test_vertex_orders():
    g = disjoint_union(build_path(3), build_cycle(4))
    assert vertex_order(g, "appendix") == tuple(range(1, 8))
    order = vertex_order(g, "smart")
    roots = {1, 4}
    seen = set()
    for v in order:
        # every vertex other than a component root follows a neighbour
        assert v in roots or g.neighbors(v) & seen
        seen.add(v)
    with pytest.raises(ValueError):
        vertex_order(g, "random")


def test_count_matches_brute_force():
    g = build_path(5)
    L = ListAssignment(2, 3, ((1, 2), (1, 3), (2, 3), (1, 2), (1, 3)))
    out = find_proportional_coloring(g, L, count_all=True)
    assert out.count == brute_force_count(g.sorted_edges(), L.lists, 2)


def _random_assignment(rng, n, k, ell):
    subsets = k_subsets(k, ell)
    return ListAssignment(k, ell, tuple(rng.choice(subsets) for _ in range(n)))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_agrees_with_brute_force_all_small(n):
    # every graph on n vertices, every (2,3)-assignment
    subsets = k_subsets(2, 3)
    from itertools import product

    for g in all_labeled_graphs(n):
        edges = g.sorted_edges()
        for lists in product(subsets, repeat=n):
            L = ListAssignment(2, 3, lists)
            assert find_proportional_coloring(g, L).found == brute_force_colorable(edges, lists, 2)


def test_pruning_is_sound_on_random_instances():
    rng = random.Random(0)
    for _ in range(1000):
        n = rng.randint(1, 7)
        edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < 0.35]
        g = Graph(n, edges)
        ell = rng.randint(2, 5)
        k = rng.randint(1, min(3, ell))
        L = _random_assignment(rng, n, k, ell)
        a = find_proportional_coloring(g, L)
        b = find_proportional_coloring(g, L, prune=False)
        assert a.found == b.found
        assert a.nodes_explored <= b.nodes_explored
        if a.found:
            assert validate(g, L, a.coloring) is None


@st.composite
def instances(draw):
    n = draw(st.integers(1, 7))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    ell = draw(st.integers(2, 4))
    k = draw(st.integers(1, ell))
    subsets = k_subsets(k, ell)
    lists = tuple(draw(st.sampled_from(subsets)) for _ in range(n))
    return Graph(n, edges), ListAssignment(k, ell, lists)


@given(instances(), st.sampled_from(["smart", "appendix"]))
@settings(max_examples=300)
def test_solver_properties(inst, order):
    g, L = inst
    out = find_proportional_coloring(g, L, order=order)
    assert out.found == brute_force_colorable(g.sorted_edges(), L.lists, L.k)
    if out.found:
        assert validate(g, L, out.coloring) is None
    # never more than the nodes of the full coloring tree
    assert out.nodes_explored <= sum(L.k**i for i in range(g.n + 1))
