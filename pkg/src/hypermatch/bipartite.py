"""Balanced bipartite graphs, maximum matching, and Hall certificates.

Both sides are indexed 0..m-1; adjacency is stored per left vertex as an
ascending neighbor tuple. The matcher is Hopcroft-Karp (layered augmenting
paths, O(E * sqrt(V))) and is deterministic given the stored adjacency
order. When no perfect matching exists, a Hall certificate (a set X on one
side with |N(X)| < |X|) is extracted from alternating-path reachability.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class BipartiteGraph:
    """Immutable balanced bipartite graph with per-row neighbor lists."""

    __slots__ = ("m", "adjacency")

    def __init__(self, m: int, adjacency: Iterable[Iterable[int]]):
        if m < 0:
            raise ValueError("m must be nonnegative")
        rows = []
        for row in adjacency:
            nbrs = tuple(sorted(set(int(v) for v in row)))
            if nbrs and (nbrs[0] < 0 or nbrs[-1] >= m):
                raise ValueError(f"neighbor outside [0, {m}) in row {row!r}")
            rows.append(nbrs)
        if len(rows) != m:
            raise ValueError(f"expected {m} adjacency rows, got {len(rows)}")
        self.m = m
        self.adjacency = tuple(rows)

    def edge_count(self) -> int:
        return sum(len(row) for row in self.adjacency)

    def left_degrees(self) -> tuple[int, ...]:
        return tuple(len(row) for row in self.adjacency)

    def right_degrees(self) -> tuple[int, ...]:
        degs = [0] * self.m
        for row in self.adjacency:
            for v in row:
                degs[v] += 1
        return tuple(degs)

    def reverse(self) -> "BipartiteGraph":
        """The same graph viewed from the right side."""
        rows: list[list[int]] = [[] for _ in range(self.m)]
        for u, row in enumerate(self.adjacency):
            for v in row:
                rows[v].append(u)
        return BipartiteGraph(self.m, rows)

    def min_degree(self) -> int:
        """Minimum degree over both sides (0 for the empty graph on m = 0)."""
        if self.m == 0:
            return 0
        return min(min(self.left_degrees()), min(self.right_degrees()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (self.m, self.adjacency) == (other.m, other.adjacency)

    def __hash__(self) -> int:
        return hash((self.m, self.adjacency))

    def __repr__(self) -> str:
        return f"BipartiteGraph(m={self.m}, edges={self.edge_count()})"


@dataclass(frozen=True)
class BipartiteMatching:
    """Partial injective row -> right-vertex map; -1 marks unmatched rows."""

    row_to_right: tuple[int, ...]

    @property
    def size(self) -> int:
        return sum(1 for v in self.row_to_right if v != -1)

    def is_perfect(self) -> bool:
        return all(v != -1 for v in self.row_to_right)

    def pairs(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in enumerate(self.row_to_right) if v != -1]


def max_matching(graph: BipartiteGraph) -> BipartiteMatching:
    """Maximum-cardinality matching via Hopcroft-Karp.

    Rows are scanned in ascending order and neighbors in stored order, so
    the result is deterministic.
    """
    m = graph.m
    adj = graph.adjacency
    INF = m + 1
    match_l = [-1] * m
    match_r = [-1] * m
    dist = [INF] * m

    def bfs() -> bool:
        queue = [u for u in range(m) if match_l[u] == -1]
        for u in range(m):
            dist[u] = 0 if match_l[u] == -1 else INF
        found = INF
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            if dist[u] >= found:
                continue
            for v in adj[u]:
                w = match_r[v]
                if w == -1:
                    found = dist[u] + 1
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found != INF

    def dfs(u: int) -> bool:
        for v in adj[u]:
            w = match_r[v]
            if w == -1 or (dist[w] == dist[u] + 1 and dfs(w)):
                match_l[u] = v
                match_r[v] = u
                return True
        dist[u] = INF
        return False

    while bfs():
        for u in range(m):
            if match_l[u] == -1:
                dfs(u)
    return BipartiteMatching(tuple(match_l))


@dataclass(frozen=True)
class HallCertificate:
    """Witness that no perfect matching exists: |N(members)| < |members|."""

    side: str  # "left" | "right"
    members: tuple[int, ...]
    neighborhood: tuple[int, ...]

    @property
    def deficiency(self) -> int:
        return len(self.members) - len(self.neighborhood)

    def to_jsonable(self) -> dict:
        return {
            "side": self.side,
            "members": list(self.members),
            "neighborhood": list(self.neighborhood),
        }


def _reachable_certificate(adj: Sequence[Sequence[int]], match_l: Sequence[int],
                           match_r: Sequence[int]) -> tuple[set[int], set[int]]:
    """Alternating-path reachability from unmatched left vertices.

    Returns (X, N(X)). Every right vertex seen must be matched (an
    unmatched one would complete an augmenting path, contradicting matching
    maximality), and its partner joins X.
    """
    members = {u for u in range(len(match_l)) if match_l[u] == -1}
    frontier = list(members)
    neighborhood: set[int] = set()
    while frontier:
        u = frontier.pop()
        for v in adj[u]:
            if v in neighborhood:
                continue
            neighborhood.add(v)
            w = match_r[v]
            if w == -1:
                raise AssertionError("augmenting path found beside a maximum matching")
            if w not in members:
                members.add(w)
                frontier.append(w)
    return members, neighborhood


def hall_certificate(graph: BipartiteGraph, matching: Optional[BipartiteMatching] = None) -> HallCertificate:
    """Extract a Hall violator from a graph without a perfect matching.

    Both sides are searched; the smaller certificate wins (left on ties).
    Raises ValueError when the graph has a perfect matching.
    """
    if matching is None:
        matching = max_matching(graph)
    if matching.is_perfect():
        raise ValueError("graph has a perfect matching, no certificate exists")
    m = graph.m
    match_l = list(matching.row_to_right)
    match_r = [-1] * m
    for u, v in enumerate(match_l):
        if v != -1:
            match_r[v] = u
    left_x, left_n = _reachable_certificate(graph.adjacency, match_l, match_r)
    right_adj = graph.reverse().adjacency
    right_x, right_n = _reachable_certificate(right_adj, match_r, match_l)
    if len(right_x) < len(left_x):
        return HallCertificate("right", tuple(sorted(right_x)), tuple(sorted(right_n)))
    return HallCertificate("left", tuple(sorted(left_x)), tuple(sorted(left_n)))
