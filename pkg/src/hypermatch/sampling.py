"""Seeded sampling and the statistical checks built on it.

The binomial hypergraph sampler enumerates all C(n, k) subsets and spends
one uniform draw on each, so the output is a pure function of
(n, k, p, seed) and edge-count moments match Bin(C(n, k), p) exactly. For
sparse p a draw-count-then-sample mode exists behind a flag; the default
stays full enumeration for fidelity to the model.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .hypergraph import BalancedPartition, Edge, Hypergraph
from .rng import Rng


def sample_hypergraph(n: int, k: int, p: float, seed: int, *, sparse: bool = False) -> Hypergraph:
    """Random k-uniform hypergraph: each k-subset is an edge independently
    with probability p, deterministic in the seed.

    With sparse=True the edge count is drawn first (inverse-CDF binomial)
    and that many distinct subsets are then sampled by rank; same marginal
    model, different stream consumption, useful when p * C(n, k) is tiny.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    if k < 2 or n < k:
        raise ValueError("need n >= k >= 2")
    total = math.comb(n, k)
    rng = Rng(seed)
    if sparse:
        count = _binomial_draw(rng, total, p)
        ranks = sorted(rng.choose(total, count))
        edges = [_subset_by_rank(n, k, r) for r in ranks]
        return Hypergraph._trusted(n, k, edges)
    mask = rng.uniform_block(total) < p
    universe = itertools.combinations(range(n), k)
    return Hypergraph._trusted(n, k, list(itertools.compress(universe, mask)))


def _binomial_draw(rng: Rng, trials: int, p: float) -> int:
    u = rng.uniform()
    if p <= 0.0:
        return 0
    if p >= 1.0:
        return trials
    acc = 0.0
    pmf = (1.0 - p) ** trials
    for j in range(trials + 1):
        acc += pmf
        if u < acc or j == trials:
            return j
        pmf *= (trials - j) / (j + 1.0) * (p / (1.0 - p))
    return trials


def _subset_by_rank(n: int, k: int, rank: int) -> Edge:
    # combinatorial number system, lexicographic order
    out = []
    prev = -1
    for slot in range(k, 0, -1):
        v = prev + 1
        while True:
            block = math.comb(n - v - 1, slot - 1)
            if rank < block:
                break
            rank -= block
            v += 1
        out.append(v)
        prev = v
    return tuple(out)


def sample_balanced_partition(n: int, k: int, seed: int) -> BalancedPartition:
    """Uniform equipartition of [0, n) into k parts: one uniform permutation
    cut into k consecutive blocks of size n/k."""
    if k <= 0 or n % k:
        raise ValueError("k must be positive and divide n")
    perm = Rng(seed).permutation(n)
    m = n // k
    return BalancedPartition(perm[j * m:(j + 1) * m] for j in range(k))


# -- partition quality ------------------------------------------------------


@dataclass(frozen=True)
class PartitionReport:
    """Outcome of the co-degree split check.

    violations lists (X, part, d(X, part), d(X)) for every pair whose
    relative deviation |d(X, part) * k / d(X) - 1| exceeds alpha; subsets
    with d(X) = 0 are skipped (the relative criterion is undefined there)
    and counted in ``skipped``.
    """

    alpha: float
    worst_deviation: float
    violations: tuple[tuple[Edge, int, int, int], ...]
    checked: int
    skipped: int

    @property
    def passed(self) -> bool:
        return not self.violations


def _part_counts(hypergraph: Hypergraph, partition: BalancedPartition):
    if partition.n != hypergraph.n or partition.k != hypergraph.k:
        raise ValueError("partition does not match the hypergraph")
    keys, degrees, flat, groups = hypergraph._codegree_arrays()
    k = hypergraph.k
    if not keys:
        return keys, degrees, np.zeros((0, k), dtype=np.int64)
    assignment = np.asarray(partition.assignment, dtype=np.int64)
    packed = groups * k + assignment[flat]
    counts = np.bincount(packed, minlength=len(keys) * k).reshape(len(keys), k)
    if not np.array_equal(counts.sum(axis=1), degrees):
        raise AssertionError("parts do not cover all completions")
    return keys, degrees, counts


def _deviations(degrees: np.ndarray, counts: np.ndarray, k: int) -> np.ndarray:
    return np.abs(counts * k / degrees[:, None] - 1.0)


def partition_worst_deviation(hypergraph: Hypergraph, partition: BalancedPartition) -> float:
    """Cheap path of verify_partition for retry loops: the worst relative
    deviation only, 0.0 when no subset has positive co-degree."""
    keys, degrees, counts = _part_counts(hypergraph, partition)
    if not keys:
        return 0.0
    return float(_deviations(degrees, counts, hypergraph.k).max())


def verify_partition(hypergraph: Hypergraph, partition: BalancedPartition, alpha: float) -> PartitionReport:
    """Check d(X, V_i) within (1 +/- alpha) * d(X)/k for every
    positive-degree (k-1)-subset X and every part i.

    The comparison is on the relative deviation, with the boundary itself
    passing, so ``violations`` is empty exactly when
    ``worst_deviation <= alpha``.
    """
    keys, degrees, counts = _part_counts(hypergraph, partition)
    skipped = math.comb(hypergraph.n, hypergraph.k - 1) - len(keys)
    if not keys:
        return PartitionReport(alpha, 0.0, (), 0, skipped)
    dev = _deviations(degrees, counts, hypergraph.k)
    worst = float(dev.max())
    violations = []
    for g, i in np.argwhere(dev > alpha):
        violations.append((keys[g], int(i), int(counts[g, i]), int(degrees[g])))
    return PartitionReport(alpha, worst, tuple(violations), len(keys), skipped)


# -- co-degree concentration ------------------------------------------------


@dataclass(frozen=True)
class ConcentrationReport:
    """Whether (1-eps)np <= min co-degree and max co-degree <= (1+eps)np.

    ``offender`` is a worst-offending (k-1)-subset when the check fails
    (the side with the larger absolute breach; the low side on ties).
    """

    ok: bool
    lower: float
    upper: float
    min_codegree: int
    max_codegree: int
    offender: Optional[Edge]
    offender_codegree: Optional[int]


def _first_missing_subset(hypergraph: Hypergraph) -> Edge:
    for x in itertools.combinations(range(hypergraph.n), hypergraph.k - 1):
        if x not in hypergraph.codegree_index():
            return x
    raise AssertionError("no zero-degree subset exists")


def _subset_with_degree(hypergraph: Hypergraph, degree: int) -> Edge:
    if degree == 0:
        return _first_missing_subset(hypergraph)
    for x, vs in hypergraph.codegree_index().items():
        if len(vs) == degree:
            return x
    raise AssertionError("degree not attained")


def check_codegree_concentration(hypergraph: Hypergraph, p: float, eps: float) -> ConcentrationReport:
    lower = (1.0 - eps) * hypergraph.n * p
    upper = (1.0 + eps) * hypergraph.n * p
    lo, hi = hypergraph.codegree_extremes()
    low_breach = lower - lo
    high_breach = hi - upper
    if low_breach <= 0 and high_breach <= 0:
        return ConcentrationReport(True, lower, upper, lo, hi, None, None)
    if low_breach >= high_breach:
        offender, degree = _subset_with_degree(hypergraph, lo), lo
    else:
        offender, degree = _subset_with_degree(hypergraph, hi), hi
    return ConcentrationReport(False, lower, upper, lo, hi, offender, degree)
