"""
Conditioned cluster expectations of an outcome H.

Sums run over all r-sets of [n], not only those in H; the conditional
probability that a copy is present given others are present is p raised to
the number of its graph edges the others do not already cover.
"""
import itertools
import logging
from math import comb
from typing import Dict, Set

from clusterlab_core.events import popcount
from clusterlab_core.exactprob import ExactProb, Number, exact_sum
from clusterlab_core.graphs import Edge, RUniformHypergraph
from clusterlab_stats.clusters import copies_overlap, neighbour_sets, pair_mask, shared

logger = logging.getLogger(__name__)


def _given_one(k: Edge, i: Edge, r: int, p: Number) -> ExactProb:
    return p ** (comb(r, 2) - comb(shared(k, i), 2))


def l2_sum(H: RUniformHypergraph, p: Number) -> ExactProb:
    """L_2: for each copy j of H, the sum over overlapping r-sets i of Pr(A_i | A_j)."""
    nbrs = neighbour_sets(H)
    return exact_sum(_given_one(i, j, H.r, p) for j in H.edges for i in nbrs[j])


def q2(H: RUniformHypergraph) -> int:
    """Number of overlapping pairs of copies in H (equal to W_2)."""
    return sum(1 for a, b in itertools.combinations(H.edges, 2) if shared(a, b) >= 2)


def q3(H: RUniformHypergraph, p: Number, ordered: bool = True) -> ExactProb:
    """
    Sum over 3-clusters {i, j, k} with i, j in H of Pr(A_k | A_i).

    With ``ordered=True`` every ordered triple of distinct indices is a term,
    so each cluster contributes once per role assignment. With
    ``ordered=False`` the pair {i, j} is unordered and the conditional is
    taken on its lexicographically smaller member.
    """
    nbrs = neighbour_sets(H)
    pairs = itertools.permutations(H.edges, 2) if ordered else itertools.combinations(H.edges, 2)
    terms = []
    for a, b in pairs:
        linked = shared(a, b) >= 2
        for k in nbrs[a] | nbrs[b]:
            if k == a or k == b:
                continue
            if linked or (k in nbrs[a] and k in nbrs[b]):
                terms.append(_given_one(k, a, H.r, p))
    return exact_sum(terms)


def q3_claim_sum(H: RUniformHypergraph, p: Number) -> ExactProb:
    """Sum over ordered pairs i != k in H and every j with i ~ j ~ k of Pr(A_j | A_i)."""
    nbrs = neighbour_sets(H)
    terms = []
    for i, k in itertools.permutations(H.edges, 2):
        for j in nbrs[i] & nbrs[k]:
            terms.append(_given_one(j, i, H.r, p))
    return exact_sum(terms)


def q4(H: RUniformHypergraph, p: Number) -> ExactProb:
    """
    Sum over 4-tuples of distinct r-sets i ~ i' ~ j' ~ j, with i' not ~ j and
    i not ~ j', where i and j are in H, of Pr(A_i' and A_j' | A_i and A_j).
    """
    n = H.n
    nbrs = neighbour_sets(H)
    masks: Dict[Edge, int] = {}

    def mask(S: Edge) -> int:
        if S not in masks:
            masks[S] = pair_mask(S, n)
        return masks[S]

    terms = []
    for i, j in itertools.permutations(H.edges, 2):
        base = mask(i) | mask(j)
        for i2 in nbrs[i]:
            if i2 == j or copies_overlap(i2, j):
                continue
            for j2 in nbrs[j]:
                if j2 == i or j2 == i2 or copies_overlap(j2, i) or not copies_overlap(j2, i2):
                    continue
                terms.append(p ** popcount((mask(i2) | mask(j2)) & ~base))
    return exact_sum(terms)


def overlapping_members(H: RUniformHypergraph, S: Edge) -> Set[Edge]:
    return {e for e in H.edges if copies_overlap(e, S)}
