from itertools import product
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_force_orbits
from propchoose.assignment import (
    AssignmentError,
    EnumerationCapError,
    ListAssignment,
    assignment_to_index,
    canonicalize,
    enumerate_assignments,
    index_to_assignment,
    is_canonical,
    iter_digits,
    k_subsets,
    multiplicities,
    palette_action,
    quotas,
)
from propchoose.graph import build_complete_bipartite, build_path
from propchoose.witnesses import witness_p9_24


def test_subset_table_order():
    assert k_subsets(2, 4) == ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
    assert len(k_subsets(3, 6)) == comb(6, 3)


def test_assignment_validation():
    with pytest.raises(AssignmentError):
        ListAssignment(3, 2, ((1, 2, 3),))
    with pytest.raises(AssignmentError):
        ListAssignment(2, 3, ((1, 1),))
    with pytest.raises(AssignmentError):
        ListAssignment(2, 3, ((1, 4),))
    L = ListAssignment(2, 4, ((2, 1), (4, 3)))
    assert L.lists == ((1, 2), (3, 4)) and L[2] == (3, 4)
    with pytest.raises(AssignmentError):
        L.check_graph(build_path(3))


def test_json_round_trip():
    L = ListAssignment(2, 4, ((1, 2), (1, 3), (3, 4)))
    assert ListAssignment.from_json(L.to_json()) == L
    assert L.to_dict() == {"k": 2, "ell": 4, "lists": [[1, 2], [1, 3], [3, 4]]}
    with pytest.raises(AssignmentError):
        ListAssignment.from_dict({"k": 2, "lists": []})


def test_multiplicities_examples():
    star = ListAssignment(2, 3, ((1, 2),) * 4)
    assert multiplicities(star)[1] == 4
    one = multiplicities(ListAssignment(2, 2, ((1, 2),)))
    assert one[1] == one[2] == 1
    eta = multiplicities(witness_p9_24().assignment)
    assert (eta[1], eta[3], eta[4]) == (8, 4, 2)
    assert 5 not in eta.eta and eta.palette == {1, 2, 3, 4}


@pytest.mark.parametrize("eta, expected", [(4, (2, 2)), (5, (2, 3)), (2, (1, 1)), (1, (0, 1))])
def test_quota_examples(eta, expected):
    m = multiplicities(ListAssignment(2, 9, tuple((1, c) for c in range(2, 2 + eta))))
    assert quotas(m, 2)[1] == expected


def test_full_enumeration_counts():
    assert sum(1 for _ in enumerate_assignments(build_path(7), 2, 4)) == 279936
    assert sum(1 for _ in enumerate_assignments(build_path(2), 2, 3)) == 9


@pytest.mark.parametrize("n, ell", [(n, ell) for n in range(1, 5) for ell in range(2, 6)])
def test_full_count_small(n, ell):
    assert sum(1 for _ in iter_digits(n, 2, ell)) == comb(ell, 2) ** n


def test_full_enumeration_order_matches_index():
    g = build_path(3)
    for i, L in enumerate(enumerate_assignments(g, 2, 3)):
        assert assignment_to_index(L) == i
        assert index_to_assignment(g, 2, 3, i) == L


def test_index_endpoints():
    g = build_path(7)
    assert index_to_assignment(g, 2, 4, 0).lists == ((1, 2),) * 7
    assert index_to_assignment(g, 2, 4, 6**7 - 1).lists == ((3, 4),) * 7
    with pytest.raises(AssignmentError):
        index_to_assignment(g, 2, 4, 6**7)
    with pytest.raises(AssignmentError):
        index_to_assignment(g, 2, 4, -1)


@pytest.mark.parametrize("n, ell", [(1, 3), (2, 3), (3, 3), (2, 4), (3, 4), (2, 5)])
def test_canonical_matches_orbit_partition(n, ell):
    subsets = k_subsets(2, ell)
    everything = [tuple(subsets[d] for d in ds) for ds in product(range(len(subsets)), repeat=n)]
    reps = set(brute_force_orbits(everything, ell).values())
    got = [L.lists for L in enumerate_assignments(build_path(n), 2, ell, "canonical")]
    assert len(got) == len(set(got)) == len(reps)
    assert set(got) == reps
    assert got == sorted(got, key=lambda a: ListAssignment(2, ell, a).digits())


def test_p2_orbit_count():
    subsets = k_subsets(2, 3)
    everything = [(a, b) for a in subsets for b in subsets]
    # under S3 the 9 assignments fall into "same list" and "different lists"
    assert len(set(brute_force_orbits(everything, 3).values())) == 2
    assert sum(1 for _ in enumerate_assignments(build_path(2), 2, 3, "canonical")) == 2


def test_cap_guard():
    g = build_path(12)
    with pytest.raises(EnumerationCapError):
        enumerate_assignments(g, 2, 4)
    assert next(iter(enumerate_assignments(g, 2, 4, force=True))).lists == ((1, 2),) * 12
    with pytest.raises(EnumerationCapError):
        enumerate_assignments(build_path(3), 2, 3, cap=10)


def test_palette_action_identity_first():
    acts = palette_action(2, 4)
    assert len(acts) == 24 and acts[0] == tuple(range(6))


def test_assignment_on_non_path_graph():
    g = build_complete_bipartite(1, 3)
    assert sum(1 for _ in enumerate_assignments(g, 2, 3)) == 81


@st.composite
def assignments(draw, max_n=8, max_ell=6):
    ell = draw(st.integers(2, max_ell))
    k = draw(st.integers(1, min(3, ell)))
    subsets = k_subsets(k, ell)
    n = draw(st.integers(1, max_n))
    return ListAssignment(k, ell, tuple(draw(st.sampled_from(subsets)) for _ in range(n)))


@given(assignments())
def test_multiplicity_sum(L):
    m = multiplicities(L)
    assert sum(m.eta.values()) == L.k * L.n
    assert m.palette == {c for s in L.lists for c in s}
    q = quotas(m, L.k)
    for c in m.palette:
        lo, hi = q[c]
        assert hi - lo in (0, 1) and (lo == hi) == (m[c] % L.k == 0)


@given(assignments())
def test_odd_multiplicities_even_when_k_is_two(L):
    if L.k == 2:
        assert len(multiplicities(L).odd_colors()) % 2 == 0


@given(assignments())
def test_index_round_trip(L):
    g = build_path(L.n)
    assert index_to_assignment(g, L.k, L.ell, assignment_to_index(L)) == L


@given(st.integers(0, 6**7 - 1))
@settings(max_examples=1000)
def test_index_round_trip_random(i):
    g = build_path(7)
    assert assignment_to_index(index_to_assignment(g, 2, 4, i)) == i


@given(assignments(max_n=6, max_ell=5), st.data())
def test_canonical_is_permutation_invariant(L, data):
    perm = data.draw(st.permutations(list(range(1, L.ell + 1))))
    rep = canonicalize(L)
    assert is_canonical(rep)
    assert canonicalize(L.permuted(perm)) == rep
    assert canonicalize(rep.permuted(perm)) == rep
