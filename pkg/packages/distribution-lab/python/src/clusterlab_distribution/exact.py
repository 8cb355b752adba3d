"""
Exact law of H_r(G(n,p)) by enumerating every labeled graph on n vertices.

Graphs are visited in Gray-code order over the C(n, 2) pair bits, so each
step adds or removes one edge uv; the clique outcome (a bitmask over r-set
ranks) changes exactly on the r-sets made of uv and an (r-2)-clique in the
common neighbourhood of u and v. Counts are kept per (outcome, edge count)
and turned into probabilities only at the end.
"""
import itertools
import logging
from math import comb
from typing import Dict, List, Tuple

from clusterlab_core.errors import InvalidInstanceError
from clusterlab_core.exactprob import ExactProb, Number, check_probability, require_exact
from clusterlab_core.graphs import Edge, LabeledGraph, all_pairs, clique_hypergraph, cliques_through_pair
from clusterlab_core.guards import GRAPH_EDGE_BITS, check_guard
from clusterlab_core.pool import run_partitioned
from clusterlab_distribution.distribution import Distribution

logger = logging.getLogger(__name__)

OutcomeCounts = Dict[Tuple[int, int], int]


def _rset_ranks(n: int, r: int) -> Dict[Edge, int]:
    return {S: i for i, S in enumerate(itertools.combinations(range(n), r))}


def _gray_chunk(task) -> OutcomeCounts:
    n, r, low_bits, prefix = task
    pairs = all_pairs(n)
    rank = _rset_ranks(n, r)
    start = LabeledGraph.from_mask(n, prefix << low_bits)
    rows = list(start.rows)
    outcome = 0
    for S in clique_hypergraph(start, r).edges:
        outcome |= 1 << rank[S]
    edges = start.edge_count()
    counts: OutcomeCounts = {(outcome, edges): 1}
    for step in range(1, 1 << low_bits):
        bit = (step & -step).bit_length() - 1
        u, v = pairs[bit]
        for S in cliques_through_pair(rows, u, v, r):
            outcome ^= 1 << rank[S]
        if rows[u] >> v & 1:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
            edges -= 1
        else:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            edges += 1
        key = (outcome, edges)
        counts[key] = counts.get(key, 0) + 1
    return counts


def _high_bits(edge_bits: int, workers: int) -> int:
    if workers <= 1:
        return 0
    h = 0
    while (1 << h) < 4 * workers and h < edge_bits:
        h += 1
    return h


def outcome_counts(n: int, r: int, workers: int = 1, progress: bool = False) -> OutcomeCounts:
    """Number of labeled graphs per (clique outcome bitmask, edge count)."""
    if not 2 <= r <= n:
        raise InvalidInstanceError(f"need 2 <= r <= n, got n={n}, r={r}")
    edge_bits = comb(n, 2)
    check_guard("graph_edge_bits", edge_bits, GRAPH_EDGE_BITS)
    high = _high_bits(edge_bits, workers)
    low = edge_bits - high
    tasks = [(n, r, low, prefix) for prefix in range(1 << high)]
    merged: OutcomeCounts = {}
    for part in run_partitioned(_gray_chunk, tasks, workers, progress=progress, desc="graphs"):
        for key, v in part.items():
            merged[key] = merged.get(key, 0) + v
    logger.info("enumerated %d graphs into %d outcome classes", 1 << edge_bits, len(merged))
    return merged


def graph_weights(n: int, p: Number) -> List[ExactProb]:
    """Probability of one particular labeled graph with e edges, indexed by e."""
    total = comb(n, 2)
    return [p**e * (1 - p) ** (total - e) for e in range(total + 1)]


def outcome_edges(mask: int, n: int, r: int) -> Tuple[Edge, ...]:
    combos = itertools.combinations(range(n), r)
    return tuple(S for i, S in enumerate(combos) if mask >> i & 1)


def exact_distribution(n: int, r: int, p: Number, workers: int = 1, progress: bool = False) -> Distribution:
    """Pr(H_r(G(n,p)) = H) for every H with positive probability, as exact rationals."""
    p = require_exact(p)
    check_probability(p)
    weights = graph_weights(n, p)
    probs: Dict[int, ExactProb] = {}
    for (outcome, e), count in outcome_counts(n, r, workers, progress).items():
        probs[outcome] = probs.get(outcome, 0) + count * weights[e]
    return Distribution(
        n=n,
        r=r,
        probs={outcome_edges(mask, n, r): prob for mask, prob in probs.items() if prob},
        mode="exact",
    )
