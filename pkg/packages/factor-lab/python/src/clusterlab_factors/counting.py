"""
Exact perfect matching counts in r-uniform hypergraphs.

Backtracking always covers the lowest uncovered vertex next, so every
matching is built in exactly one order; partial results are memoized on the
set of covered vertices.
"""
import logging
from typing import Dict, List, Sequence

from clusterlab_core.errors import InvalidInstanceError
from clusterlab_core.graphs import Edge, LabeledGraph, RUniformHypergraph, clique_hypergraph
from clusterlab_core.guards import MATCHING_VERTICES, check_guard

logger = logging.getLogger(__name__)


def _check_divisible(n: int, r: int) -> None:
    if n % r:
        raise InvalidInstanceError(f"r={r} does not divide n={n}")
    check_guard("matching_vertices", n, MATCHING_VERTICES)


def count_perfect(n: int, edge_masks: Sequence[int], covered: int = 0) -> int:
    """Ways to cover every vertex outside ``covered`` with disjoint edges from ``edge_masks``."""
    full = (1 << n) - 1
    by_low: List[List[int]] = [[] for _ in range(n)]
    for m in edge_masks:
        if m & covered:
            continue
        low = (m & -m).bit_length() - 1
        by_low[low].append(m)
    memo: Dict[int, int] = {}

    def count(state: int) -> int:
        if state == full:
            return 1
        if state in memo:
            return memo[state]
        free = ~state & full
        v = (free & -free).bit_length() - 1
        total = 0
        for m in by_low[v]:
            if not m & state:
                total += count(state | m)
        memo[state] = total
        return total

    return count(covered)


def edge_mask(e: Edge) -> int:
    out = 0
    for v in e:
        out |= 1 << v
    return out


def count_matchings(H: RUniformHypergraph) -> int:
    """M(H): number of perfect matchings of H."""
    _check_divisible(H.n, H.r)
    return count_perfect(H.n, [edge_mask(e) for e in H.edges])


def count_matchings_with_edge(H: RUniformHypergraph, edge: Sequence[int]) -> int:
    """Perfect matchings of H that use ``edge``."""
    _check_divisible(H.n, H.r)
    edge = tuple(sorted(edge))
    if edge not in set(H.edges):
        raise InvalidInstanceError(f"{edge} is not a hyperedge of H")
    forced = edge_mask(edge)
    return count_perfect(H.n, [edge_mask(e) for e in H.edges if e != edge], covered=forced)


def count_factors(G: LabeledGraph, r: int) -> int:
    """F_r(G): number of K_r-factors of G."""
    _check_divisible(G.n, r)
    return count_matchings(clique_hypergraph(G, r))
