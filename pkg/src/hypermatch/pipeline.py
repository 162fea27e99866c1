"""Perfect matchings via the partition / permutation / bipartite reduction.

Given a k-uniform hypergraph H with k | n, the pipeline

a. derives the partition tolerance alpha = eps / (1 + 2*eps), the largest
   value with (1 - alpha) * (1/2 + eps) >= 1/2 + eps/2 (met with equality);
b. samples balanced partitions, keeping the first whose co-degree split
   passes at alpha, else the best effort partition seen (small instances
   rarely pass, and matching success is the real arbiter);
c. induces the k-partite restriction H' and records its minimum transversal
   co-degree;
d. searches permutation families pi: rows i of the auxiliary bipartite
   graph are {pi_1(i), ..., pi_{k-1}(i)}, adjacent to v in the last part
   exactly when the combined k-set is an edge of H'. The first pi whose
   auxiliary graph has a perfect matching wins;
e. translates the bipartite matching back to hyperedges and verifies it.

A perfect matching of the auxiliary graph always translates to a perfect
matching of H', hence of H; failures carry the Hall certificate of the last
attempt.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .bipartite import BipartiteGraph, BipartiteMatching, HallCertificate, hall_certificate, max_matching
from .hypergraph import (
    Edge,
    Hypergraph,
    MatchingCheck,
    PartiteHypergraph,
    check_perfect_matching,
    induce_partite,
)
from .rng import Rng, substream
from .sampling import partition_worst_deviation, sample_balanced_partition

STRATEGY_PI1 = "pi1-only"
STRATEGY_FULL = "full-random"

# substream labels inside one pipeline run
_LABEL_PARTITION = 1
_LABEL_PI = 2


@dataclass(frozen=True)
class PermutationFamily:
    """k-1 bijections onto parts 1..k-1; maps[j][i] is the vertex of part j
    placed in row i."""

    maps: tuple[tuple[int, ...], ...]


def identity_family(partite: PartiteHypergraph) -> PermutationFamily:
    return PermutationFamily(partite.parts[:-1])


def _validate_family(partite: PartiteHypergraph, family: PermutationFamily) -> None:
    maps = family.maps
    if len(maps) != partite.k - 1:
        raise ValueError(f"need {partite.k - 1} permutations, got {len(maps)}")
    for j, perm in enumerate(maps):
        if len(perm) != partite.m or set(perm) != set(partite.parts[j]):
            raise ValueError(f"map {j} is not a bijection onto part {j}")


def auxiliary_graph(partite: PartiteHypergraph, family: PermutationFamily) -> BipartiteGraph:
    """Bipartite graph between the m permutation rows and the last part."""
    _validate_family(partite, family)
    index = partite.hypergraph.codegree_index()
    last = partite.parts[-1]
    right_of = {v: i for i, v in enumerate(last)}
    rows = []
    for i in range(partite.m):
        key = tuple(sorted(perm[i] for perm in family.maps))
        # completions of a transversal (k-1)-row all lie in the last part
        rows.append([right_of[v] for v in index.get(key, ())])
    return BipartiteGraph(partite.m, rows)


def matching_to_edges(partite: PartiteHypergraph, family: PermutationFamily,
                      matching: BipartiteMatching) -> tuple[Edge, ...]:
    """Translate a perfect auxiliary matching into hyperedges of H'."""
    if not matching.is_perfect() or len(matching.row_to_right) != partite.m:
        raise ValueError("need a perfect matching of the auxiliary graph")
    _validate_family(partite, family)
    last = partite.parts[-1]
    edges = []
    for i in range(partite.m):
        combo = [perm[i] for perm in family.maps]
        combo.append(last[matching.row_to_right[i]])
        edges.append(tuple(sorted(combo)))
    return tuple(sorted(edges))


@dataclass(frozen=True)
class PiSearch:
    """Outcome of the permutation search.

    certificate is the Hall certificate of the last failed attempt;
    min_degree and degree_target report the auxiliary graph's minimum
    degree against (1/2 + eps/2) * m * p when p is known.
    """

    success: bool
    family: Optional[PermutationFamily]
    matching: Optional[BipartiteMatching]
    attempts: int
    best_size: int
    certificate: Optional[HallCertificate] = None
    min_degree: Optional[int] = None
    degree_target: Optional[float] = None


def _sample_family(partite: PartiteHypergraph, rng: Rng, strategy: str) -> PermutationFamily:
    parts = partite.parts
    maps = []
    for j in range(partite.k - 1):
        if j == 0 or strategy == STRATEGY_FULL:
            perm = list(parts[j])
            rng.shuffle(perm)
            maps.append(tuple(perm))
        else:
            maps.append(parts[j])
    return PermutationFamily(tuple(maps))


def find_matching_permutations(partite: PartiteHypergraph, eps: float, p: Optional[float],
                               budget: int, seed: int,
                               strategy: str = STRATEGY_PI1) -> PiSearch:
    """Retry random permutation families until the auxiliary graph has a
    perfect matching.

    Strategy "pi1-only" randomizes the first permutation and keeps the
    others at the identity; "full-random" randomizes all k-1. Attempt t
    draws from substream (seed, t), so retries are independent and the
    search is deterministic in (inputs, seed).
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if strategy not in (STRATEGY_PI1, STRATEGY_FULL):
        raise ValueError(f"unknown strategy {strategy!r}")
    target = None if p is None else (0.5 + eps / 2.0) * partite.m * p
    best_size = 0
    last_graph = None
    last_matching = None
    for attempt in range(1, budget + 1):
        rng = Rng(substream(seed, attempt))
        family = _sample_family(partite, rng, strategy)
        graph = auxiliary_graph(partite, family)
        matching = max_matching(graph)
        best_size = max(best_size, matching.size)
        if matching.is_perfect():
            return PiSearch(
                success=True,
                family=family,
                matching=matching,
                attempts=attempt,
                best_size=best_size,
                min_degree=graph.min_degree(),
                degree_target=target,
            )
        last_graph, last_matching = graph, matching
    return PiSearch(
        success=False,
        family=None,
        matching=None,
        attempts=budget,
        best_size=best_size,
        certificate=hall_certificate(last_graph, last_matching),
        degree_target=target,
    )


def partition_tolerance(eps: float) -> float:
    """Largest alpha with (1 - alpha) * (1/2 + eps) >= 1/2 + eps/2."""
    return eps / (1.0 + 2.0 * eps)


@dataclass(frozen=True)
class PipelineConfig:
    partition_retries: int = 20
    pi_budget: int = 100
    strategy: str = STRATEGY_PI1
    p: Optional[float] = None  # density hint, only used for degree diagnostics


@dataclass(frozen=True)
class PipelineOutcome:
    """Everything one run produced; matching is None exactly when
    failure_stage is set ("pi-search" or "verification")."""

    matching: Optional[tuple[Edge, ...]]
    verified: bool
    failure_stage: Optional[str]
    alpha: float
    partition_attempts: int
    partition_passed: bool
    partition_worst_deviation: float
    min_transversal_codegree: int
    pi_attempts: int
    certificate: Optional[HallCertificate] = None
    check: Optional[MatchingCheck] = None

    @property
    def matched(self) -> bool:
        return self.matching is not None


def find_perfect_matching(hypergraph: Hypergraph, eps: float,
                          config: Optional[PipelineConfig] = None,
                          seed: int = 0) -> PipelineOutcome:
    """Run the full reduction on a hypergraph with k | n and eps > 0."""
    if hypergraph.n % hypergraph.k:
        raise ValueError("k must divide n for a perfect matching to exist")
    if eps <= 0:
        raise ValueError("eps must be positive")
    cfg = config if config is not None else PipelineConfig()
    if cfg.partition_retries < 1:
        raise ValueError("partition_retries must be at least 1")
    alpha = partition_tolerance(eps)

    partition_seed = substream(seed, _LABEL_PARTITION)
    best_partition = None
    best_deviation = None
    attempts = 0
    passed = False
    for retry in range(cfg.partition_retries):
        attempts = retry + 1
        candidate = sample_balanced_partition(hypergraph.n, hypergraph.k,
                                              substream(partition_seed, retry))
        deviation = partition_worst_deviation(hypergraph, candidate)
        if best_deviation is None or deviation < best_deviation:
            best_partition, best_deviation = candidate, deviation
        if deviation <= alpha:
            passed = True
            break

    partite = induce_partite(hypergraph, best_partition)
    dstar = partite.min_transversal_codegree()
    search = find_matching_permutations(
        partite, eps, cfg.p, cfg.pi_budget, substream(seed, _LABEL_PI), cfg.strategy)

    common = dict(
        alpha=alpha,
        partition_attempts=attempts,
        partition_passed=passed,
        partition_worst_deviation=best_deviation,
        min_transversal_codegree=dstar,
        pi_attempts=search.attempts,
    )
    if not search.success:
        return PipelineOutcome(
            matching=None, verified=False, failure_stage="pi-search",
            certificate=search.certificate, **common)
    edges = matching_to_edges(partite, search.family, search.matching)
    check = check_perfect_matching(hypergraph, edges)
    if not check.ok:
        return PipelineOutcome(
            matching=None, verified=False, failure_stage="verification",
            check=check, **common)
    return PipelineOutcome(
        matching=edges, verified=True, failure_stage=None, check=check, **common)
