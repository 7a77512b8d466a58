"""(k, ell)-list assignments: multiplicities, quotas, indexing and enumeration.

A (k, ell)-assignment for a graph on ``n`` vertices is encoded as ``n`` digits,
one per vertex, each an index into :func:`k_subsets` (the k-subsets of
``{1..ell}`` in lexicographic order).  The assignment index reads these digits
as a base-``C(ell, k)`` number with vertex 1 most significant, so enumeration
by index is lexicographic in the digit tuple.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb
from typing import Iterator, Sequence

from .graph import Graph

DEFAULT_CAP = 10**8


class AssignmentError(ValueError):
    pass


class EnumerationCapError(AssignmentError):
    """The requested enumeration is larger than the configured cap."""


@lru_cache(maxsize=None)
def k_subsets(k: int, ell: int) -> tuple[tuple[int, ...], ...]:
    if not 1 <= k <= ell:
        raise AssignmentError(f"need 1 <= k <= ell, got k={k}, ell={ell}")
    return tuple(combinations(range(1, ell + 1), k))


@lru_cache(maxsize=None)
def _subset_index(k: int, ell: int) -> dict[tuple[int, ...], int]:
    return {s: i for i, s in enumerate(k_subsets(k, ell))}


@dataclass(frozen=True)
class ListAssignment:
    k: int
    ell: int
    lists: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not 1 <= self.k <= self.ell:
            raise AssignmentError(f"need 1 <= k <= ell, got k={self.k}, ell={self.ell}")
        if not self.lists:
            raise AssignmentError("an assignment needs at least one vertex")
        norm = []
        for v, lst in enumerate(self.lists, start=1):
            s = tuple(sorted(lst))
            if len(set(s)) != self.k or len(s) != self.k:
                raise AssignmentError(f"list of vertex {v} must have {self.k} distinct colors: {lst}")
            if s[0] < 1 or s[-1] > self.ell:
                raise AssignmentError(f"list of vertex {v} leaves the palette [1..{self.ell}]: {lst}")
            norm.append(s)
        object.__setattr__(self, "lists", tuple(norm))

    @classmethod
    def from_lists(cls, lists: Sequence[Sequence[int]], ell: int | None = None) -> ListAssignment:
        lists = [tuple(lst) for lst in lists]
        k = len(lists[0]) if lists else 0
        if ell is None:
            ell = max(max(lst) for lst in lists)
        return cls(k, ell, tuple(lists))

    @property
    def n(self) -> int:
        return len(self.lists)

    def __getitem__(self, v: int) -> tuple[int, ...]:
        """List of vertex ``v`` (1-indexed)."""
        if not 1 <= v <= self.n:
            raise IndexError(v)
        return self.lists[v - 1]

    def digits(self) -> tuple[int, ...]:
        idx = _subset_index(self.k, self.ell)
        return tuple(idx[s] for s in self.lists)

    def permuted(self, perm: dict[int, int] | Sequence[int]) -> ListAssignment:
        """Apply a palette permutation.  A sequence is read as ``c -> perm[c-1]``."""
        if not isinstance(perm, dict):
            perm = {c: p for c, p in enumerate(perm, start=1)}
        return ListAssignment(self.k, self.ell, tuple(tuple(sorted(perm.get(c, c) for c in s)) for s in self.lists))

    def extended(self, *lists: Sequence[int]) -> ListAssignment:
        return ListAssignment(self.k, self.ell, self.lists + tuple(tuple(s) for s in lists))

    def check_graph(self, g: Graph) -> None:
        if g.n != self.n:
            raise AssignmentError(f"assignment has {self.n} lists but the graph has {g.n} vertices")

    def to_dict(self) -> dict:
        return {"k": self.k, "ell": self.ell, "lists": [list(s) for s in self.lists]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> ListAssignment:
        try:
            return cls(int(data["k"]), int(data["ell"]), tuple(tuple(int(c) for c in s) for s in data["lists"]))
        except (KeyError, TypeError) as exc:
            raise AssignmentError(f"malformed assignment JSON: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> ListAssignment:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class MultiplicityTable:
    eta: dict[int, int]

    @property
    def palette(self) -> frozenset[int]:
        return frozenset(c for c, e in self.eta.items() if e > 0)

    def __getitem__(self, c: int) -> int:
        return self.eta.get(c, 0)

    def odd_colors(self) -> list[int]:
        return sorted(c for c, e in self.eta.items() if e % 2)


@dataclass(frozen=True)
class QuotaTable:
    lo: dict[int, int]
    hi: dict[int, int]

    def __getitem__(self, c: int) -> tuple[int, int]:
        return self.lo[c], self.hi[c]


def multiplicities(L: ListAssignment) -> MultiplicityTable:
    eta: dict[int, int] = {}
    for s in L.lists:
        for c in s:
            eta[c] = eta.get(c, 0) + 1
    return MultiplicityTable(dict(sorted(eta.items())))


def quotas(m: MultiplicityTable, k: int) -> QuotaTable:
    if k < 1:
        raise AssignmentError("k must be positive")
    lo = {c: e // k for c, e in m.eta.items()}
    hi = {c: -(-e // k) for c, e in m.eta.items()}
    return QuotaTable(lo, hi)


# indexing


def assignment_count(n: int, k: int, ell: int) -> int:
    return comb(ell, k) ** n


def index_to_digits(index: int, n: int, radix: int) -> tuple[int, ...]:
    if not 0 <= index < radix**n:
        raise AssignmentError(f"index {index} outside [0, {radix ** n})")
    out = [0] * n
    for j in range(n - 1, -1, -1):
        index, out[j] = divmod(index, radix)
    return tuple(out)


def digits_to_index(digits: Sequence[int], radix: int) -> int:
    index = 0
    for d in digits:
        index = index * radix + d
    return index


def index_to_assignment(g: Graph, k: int, ell: int, index: int) -> ListAssignment:
    subsets = k_subsets(k, ell)
    digits = index_to_digits(index, g.n, len(subsets))
    return ListAssignment(k, ell, tuple(subsets[d] for d in digits))


def assignment_to_index(L: ListAssignment) -> int:
    return digits_to_index(L.digits(), comb(L.ell, L.k))


# palette symmetry


@lru_cache(maxsize=None)
def palette_action(k: int, ell: int) -> tuple[tuple[int, ...], ...]:
    """For each permutation of ``[ell]`` (identity first), the induced map on
    k-subset indices."""
    subsets = k_subsets(k, ell)
    index = _subset_index(k, ell)
    table = []
    for perm in permutations(range(1, ell + 1)):
        table.append(tuple(index[tuple(sorted(perm[c - 1] for c in s))] for s in subsets))
    return tuple(table)


def canonical_digits(digits: Sequence[int], k: int, ell: int) -> tuple[int, ...]:
    """Lexicographically least image of ``digits`` over all palette permutations."""
    return min(tuple(act[d] for d in digits) for act in palette_action(k, ell))


def canonicalize(L: ListAssignment) -> ListAssignment:
    subsets = k_subsets(L.k, L.ell)
    return ListAssignment(L.k, L.ell, tuple(subsets[d] for d in canonical_digits(L.digits(), L.k, L.ell)))


def is_canonical(L: ListAssignment) -> bool:
    return canonical_digits(L.digits(), L.k, L.ell) == L.digits()


def _prefix_stabilizer(prefix: Sequence[int], actions) -> list | None:
    """Permutations fixing ``prefix``, or None when some permutation maps it to a
    lexicographically smaller prefix (no canonical completion exists)."""
    tied = list(actions)
    for d in prefix:
        keep = []
        for act in tied:
            e = act[d]
            if e < d:
                return None
            if e == d:
                keep.append(act)
        tied = keep
    return tied


def iter_digits(n: int, k: int, ell: int, mode: str = "full", prefix: Sequence[int] = ()) -> Iterator[tuple[int, ...]]:
    """Digit tuples starting with ``prefix`` in increasing index order.

    In canonical mode only lexicographically least orbit members are yielded.
    """
    radix = comb(ell, k)
    prefix = tuple(prefix)
    depth = n - len(prefix)
    if depth < 0:
        raise AssignmentError("prefix longer than the vertex count")
    if mode == "full":
        if depth == 0:
            yield prefix
            return
        for tail in product(range(radix), repeat=depth):
            yield prefix + tail
        return
    if mode != "canonical":
        raise AssignmentError(f"unknown enumeration mode {mode!r}")
    tied = _prefix_stabilizer(prefix, palette_action(k, ell))
    if tied is None:
        return
    yield from _canonical_walk(list(prefix), n, radix, tied)


def _canonical_walk(digits: list[int], n: int, radix: int, tied: list) -> Iterator[tuple[int, ...]]:
    if len(digits) == n:
        yield tuple(digits)
        return
    if len(tied) == 1:
        # only the identity ties: every completion is canonical
        for tail in product(range(radix), repeat=n - len(digits)):
            yield tuple(digits) + tail
        return
    for d in range(radix):
        keep = []
        for act in tied:
            e = act[d]
            if e < d:
                break
            if e == d:
                keep.append(act)
        else:
            digits.append(d)
            yield from _canonical_walk(digits, n, radix, keep)
            digits.pop()


def check_cap(n: int, k: int, ell: int, mode: str, cap: int = DEFAULT_CAP, force: bool = False) -> int:
    """Size estimate for the enumeration; raises when above ``cap`` unless forced.

    Canonical mode is estimated as the full count divided by ``ell!``.
    """
    total = assignment_count(n, k, ell)
    size = total if mode == "full" else -(-total // len(palette_action(k, ell)))
    if size > cap and not force:
        raise EnumerationCapError(f"{mode} enumeration of about {size} assignments exceeds cap {cap}")
    return size


def enumerate_assignments(
    g: Graph, k: int, ell: int, mode: str = "full", cap: int = DEFAULT_CAP, force: bool = False
) -> Iterator[ListAssignment]:
    """Stream every (k, ell)-assignment of ``g`` (or one per palette orbit).

    The cap is checked eagerly, before the first item is requested.
    """
    check_cap(g.n, k, ell, mode, cap, force)
    subsets = k_subsets(k, ell)
    return (ListAssignment(k, ell, tuple(subsets[d] for d in digits)) for digits in iter_digits(g.n, k, ell, mode))
