"""k-uniform hypergraphs with an eager co-degree index.

Vertices are the integers 0..n-1 and every edge is an ascending k-tuple of
distinct vertex ids. Construction normalizes (sorts, deduplicates) the edge
set and builds the co-degree index: a map from each (k-1)-subset X with at
least one completion to the ascending list of vertices v with X + {v} in the
edge set. All values are immutable after construction and safe to share
across threads; co-degree queries are index lookups.

Also here: balanced vertex partitions, the k-partite restriction induced by
a partition, perfect-matching verification with reason codes, and the
deterministic backtracking oracles used to find or count perfect matchings
at desk scale.
"""

from __future__ import annotations

import itertools
import math
import operator
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Optional, Sequence

import numpy as np

Edge = tuple[int, ...]

# k * |edges| at or above this uses the array-based index builder
_VECTOR_INDEX_THRESHOLD = 50_000


def _as_vertex(v) -> int:
    return operator.index(v)


def _normalize_edges(n: int, k: int, edges: Iterable[Iterable[int]]) -> tuple[Edge, ...]:
    seen: set[Edge] = set()
    for raw in edges:
        edge = tuple(sorted(_as_vertex(v) for v in raw))
        if len(edge) != k or len(set(edge)) != k:
            raise ValueError(f"edge {raw!r} must have exactly {k} distinct vertices")
        if edge[0] < 0 or edge[-1] >= n:
            raise ValueError(f"edge {raw!r} has a vertex outside [0, {n})")
        seen.add(edge)
    return tuple(sorted(seen))


def _index_from_dicts(k: int, edges: Sequence[Edge]) -> dict[Edge, Edge]:
    buckets: dict[Edge, list[int]] = {}
    for e in edges:
        for j in range(k):
            buckets.setdefault(e[:j] + e[j + 1:], []).append(e[j])
    return {x: tuple(sorted(vs)) for x, vs in sorted(buckets.items())}


def _index_from_arrays(k: int, edges: Sequence[Edge]) -> dict[Edge, Edge]:
    arr = np.asarray(edges, dtype=np.int64)
    xs = np.concatenate([np.delete(arr, j, axis=1) for j in range(k)])
    vs = np.concatenate([arr[:, j] for j in range(k)])
    order = np.lexsort((vs,) + tuple(xs[:, c] for c in range(k - 2, -1, -1)))
    xs, vs = xs[order], vs[order]
    breaks = np.nonzero((xs[1:] != xs[:-1]).any(axis=1))[0] + 1
    starts = np.concatenate(([0], breaks))
    ends = np.concatenate((breaks, [len(vs)]))
    keys = [tuple(row) for row in xs[starts].tolist()]
    values = vs.tolist()
    return {key: tuple(values[s:e]) for key, s, e in zip(keys, starts, ends)}


def _build_index(k: int, edges: Sequence[Edge]) -> dict[Edge, Edge]:
    if not edges:
        return {}
    if k * len(edges) >= _VECTOR_INDEX_THRESHOLD:
        return _index_from_arrays(k, edges)
    return _index_from_dicts(k, edges)


class Hypergraph:
    """Immutable k-uniform hypergraph with its co-degree index.

    ``edges`` is the lexicographically sorted tuple of ascending k-tuples.
    The index is exposed read-only through :meth:`codegree_index`; missing
    keys mean co-degree zero.
    """

    __slots__ = ("n", "k", "edges", "_edge_set", "_index", "_index_view", "_arrays")

    def __init__(self, n: int, k: int, edges: Iterable[Iterable[int]]):
        n = _as_vertex(n)
        k = _as_vertex(k)
        if k < 2:
            raise ValueError("uniformity k must be at least 2")
        if n < k:
            raise ValueError("need n >= k")
        self.n = n
        self.k = k
        self.edges = _normalize_edges(n, k, edges)
        self._finish_init()

    def _finish_init(self) -> None:
        self._edge_set = frozenset(self.edges)
        self._index = _build_index(self.k, self.edges)
        self._index_view = MappingProxyType(self._index)
        self._arrays = None

    @classmethod
    def _trusted(cls, n: int, k: int, edges: Sequence[Edge]) -> "Hypergraph":
        """Internal fast path: edges already ascending, unique, in range."""
        obj = object.__new__(cls)
        obj.n = n
        obj.k = k
        obj.edges = tuple(edges)
        obj._finish_init()
        return obj

    # -- queries ---------------------------------------------------------

    def has_edge(self, edge: Iterable[int]) -> bool:
        return tuple(sorted(edge)) in self._edge_set

    def _check_subset(self, subset: Iterable[int]) -> Edge:
        x = tuple(sorted(_as_vertex(v) for v in subset))
        if len(x) != self.k - 1 or len(set(x)) != len(x):
            raise ValueError(f"expected a set of {self.k - 1} distinct vertices, got {subset!r}")
        if x and (x[0] < 0 or x[-1] >= self.n):
            raise ValueError(f"subset {subset!r} has a vertex outside [0, {self.n})")
        return x

    def completions(self, subset: Iterable[int]) -> Edge:
        """Ascending vertices v with subset + {v} an edge (empty if none)."""
        return self._index.get(self._check_subset(subset), ())

    def codegree(self, subset: Iterable[int]) -> int:
        """Number of edges containing the given (k-1)-subset."""
        return len(self.completions(subset))

    def codegree_into(self, subset: Iterable[int], targets: Iterable[int]) -> int:
        """Number of edges e with subset inside e and e minus subset inside targets.

        ``targets`` may intersect the subset; completions never lie in the
        subset, so the overlap is irrelevant.
        """
        allowed = frozenset(_as_vertex(v) for v in targets)
        return sum(1 for v in self.completions(subset) if v in allowed)

    def codegree_index(self):
        """Read-only view of the co-degree index (absent key = degree 0)."""
        return self._index_view

    def codegree_extremes(self) -> tuple[int, int]:
        """(min, max) co-degree over all C(n, k-1) subsets, zeros included.

        Zero-degree subsets are exactly the keys absent from the index, so
        the minimum is 0 whenever the index has fewer keys than C(n, k-1).
        """
        total = math.comb(self.n, self.k - 1)
        if not self._index:
            return (0, 0)
        hi = max(len(vs) for vs in self._index.values())
        if len(self._index) < total:
            return (0, hi)
        return (min(len(vs) for vs in self._index.values()), hi)

    def _codegree_arrays(self):
        """Flat (keys, degrees, completions, group ids) arrays.

        Acceleration structure for partition verification; built lazily,
        cached, and never mutated afterwards.
        """
        if self._arrays is None:
            keys = tuple(self._index)
            degrees = np.fromiter(
                (len(self._index[x]) for x in keys), dtype=np.int64, count=len(keys)
            )
            flat = np.fromiter(
                (v for x in keys for v in self._index[x]),
                dtype=np.int64,
                count=int(degrees.sum()),
            )
            groups = np.repeat(np.arange(len(keys), dtype=np.int64), degrees)
            self._arrays = (keys, degrees, flat, groups)
        return self._arrays

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.n, self.k, self.edges) == (other.n, other.k, other.edges)

    def __hash__(self) -> int:
        return hash((self.n, self.k, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, k={self.k}, edges={len(self.edges)})"


class BalancedPartition:
    """Split of [0, n) into k parts of equal size m = n/k.

    ``parts`` are ascending tuples; ``assignment[v]`` is the part index of
    vertex v. Parts must be disjoint and cover [0, n) exactly.
    """

    __slots__ = ("parts", "assignment")

    def __init__(self, parts: Iterable[Iterable[int]]):
        norm = tuple(tuple(sorted(_as_vertex(v) for v in part)) for part in parts)
        if not norm:
            raise ValueError("need at least one part")
        m = len(norm[0])
        if m == 0 or any(len(part) != m for part in norm):
            raise ValueError("all parts must have the same positive size")
        n = m * len(norm)
        assignment = [-1] * n
        for i, part in enumerate(norm):
            for v in part:
                if not 0 <= v < n:
                    raise ValueError(f"vertex {v} outside [0, {n})")
                if assignment[v] != -1:
                    raise ValueError(f"vertex {v} appears in two parts")
                assignment[v] = i
        self.parts = norm
        self.assignment = tuple(assignment)

    @property
    def n(self) -> int:
        return len(self.assignment)

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def m(self) -> int:
        return len(self.parts[0])

    def part_of(self, v: int) -> int:
        return self.assignment[v]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BalancedPartition):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return f"BalancedPartition(n={self.n}, k={self.k})"


class PartiteHypergraph:
    """k-partite restriction: every edge meets each part exactly once."""

    __slots__ = ("hypergraph", "partition")

    def __init__(self, hypergraph: Hypergraph, partition: BalancedPartition):
        if partition.n != hypergraph.n:
            raise ValueError("partition and hypergraph disagree on n")
        if partition.k != hypergraph.k:
            raise ValueError("need exactly k parts for a k-uniform hypergraph")
        assignment = partition.assignment
        for e in hypergraph.edges:
            if len({assignment[v] for v in e}) != hypergraph.k:
                raise ValueError(f"edge {e} is not a transversal of the partition")
        self.hypergraph = hypergraph
        self.partition = partition

    @property
    def n(self) -> int:
        return self.hypergraph.n

    @property
    def k(self) -> int:
        return self.hypergraph.k

    @property
    def m(self) -> int:
        return self.partition.m

    @property
    def parts(self) -> tuple[Edge, ...]:
        return self.partition.parts

    def min_transversal_codegree(self) -> int:
        """Minimum over parts i and transversal (k-1)-tuples X of the other
        parts of the number of completions of X inside part i.

        Cost is k * m^(k-1) index lookups; intended for desk scale.
        """
        h = self.hypergraph
        assignment = self.partition.assignment
        best: Optional[int] = None
        for i in range(self.k):
            others = [self.parts[j] for j in range(self.k) if j != i]
            for combo in itertools.product(*others):
                x = tuple(sorted(combo))
                d = sum(1 for v in h._index.get(x, ()) if assignment[v] == i)
                if best is None or d < best:
                    best = d
                    if best == 0:
                        return 0
        return best if best is not None else 0

    def __repr__(self) -> str:
        return f"PartiteHypergraph(n={self.n}, k={self.k}, edges={len(self.hypergraph.edges)})"


def induce_partite(hypergraph: Hypergraph, partition: BalancedPartition) -> PartiteHypergraph:
    """Keep exactly the edges that meet every part of the partition once."""
    if partition.n != hypergraph.n:
        raise ValueError("partition and hypergraph disagree on n")
    if partition.k != hypergraph.k:
        raise ValueError("need exactly k parts for a k-uniform hypergraph")
    assignment = partition.assignment
    k = hypergraph.k
    kept = [e for e in hypergraph.edges if len({assignment[v] for v in e}) == k]
    return PartiteHypergraph(Hypergraph._trusted(hypergraph.n, k, kept), partition)


# -- perfect matchings ----------------------------------------------------


@dataclass(frozen=True)
class MatchingCheck:
    """Verification verdict with a reason code on failure.

    reason is one of "non-edge", "overlap", "uncovered"; detail names the
    offending edge or vertex.
    """

    ok: bool
    reason: Optional[str] = None
    detail: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok


def check_perfect_matching(hypergraph: Hypergraph, matching: Iterable[Iterable[int]]) -> MatchingCheck:
    """True iff the edges all belong to the hypergraph, are pairwise
    disjoint, and cover every vertex exactly once."""
    edges = [tuple(sorted(_as_vertex(v) for v in e)) for e in matching]
    for e in edges:
        if e not in hypergraph._edge_set:
            return MatchingCheck(False, "non-edge", (e,))
    covered: set[int] = set()
    for e in edges:
        for v in e:
            if v in covered:
                return MatchingCheck(False, "overlap", (v, e))
            covered.add(v)
    if len(covered) != hypergraph.n:
        missing = min(set(range(hypergraph.n)) - covered)
        return MatchingCheck(False, "uncovered", (missing,))
    return MatchingCheck(True)


@dataclass(frozen=True)
class PMSearch:
    """Result of the backtracking search.

    When no matching is returned, reason is "k-does-not-divide-n" or
    "exhausted".
    """

    matching: Optional[tuple[Edge, ...]]
    reason: Optional[str] = None


def _edges_by_vertex(hypergraph: Hypergraph) -> list[list[Edge]]:
    by_vertex: list[list[Edge]] = [[] for _ in range(hypergraph.n)]
    for e in hypergraph.edges:  # lexicographic, so candidate order is deterministic
        for v in e:
            by_vertex[v].append(e)
    return by_vertex


def bruteforce_perfect_matching(hypergraph: Hypergraph) -> PMSearch:
    """Deterministic backtracking over the lowest uncovered vertex.

    Candidate edges are tried in lexicographic order, so the returned
    matching is a pure function of the hypergraph. Practical up to roughly
    n = 21 for k = 3.
    """
    n, k = hypergraph.n, hypergraph.k
    if n % k:
        return PMSearch(None, "k-does-not-divide-n")
    by_vertex = _edges_by_vertex(hypergraph)
    covered = bytearray(n)
    chosen: list[Edge] = []

    def walk(start: int) -> bool:
        v = start
        while v < n and covered[v]:
            v += 1
        if v == n:
            return True
        for e in by_vertex[v]:
            if any(covered[u] for u in e):
                continue
            for u in e:
                covered[u] = 1
            chosen.append(e)
            if walk(v + 1):
                return True
            chosen.pop()
            for u in e:
                covered[u] = 0
        return False

    if walk(0):
        return PMSearch(tuple(chosen))
    return PMSearch(None, "exhausted")


def count_perfect_matchings(hypergraph: Hypergraph) -> int:
    """Exact number of perfect matchings (0 when k does not divide n)."""
    n, k = hypergraph.n, hypergraph.k
    if n % k:
        return 0
    by_vertex = _edges_by_vertex(hypergraph)
    covered = bytearray(n)

    def walk(start: int) -> int:
        v = start
        while v < n and covered[v]:
            v += 1
        if v == n:
            return 1
        total = 0
        for e in by_vertex[v]:
            if any(covered[u] for u in e):
                continue
            for u in e:
                covered[u] = 1
            total += walk(v + 1)
            for u in e:
                covered[u] = 0
        return total

    return walk(0)
