"""
Complex terms and star-clusters.

A star-cluster is a centre r-set ``j`` with a set ``T`` of at least two leaf
r-sets, each overlapping the centre, such that the centre's graph edges are
not all covered by the leaves, and (for three or more leaves) every leaf
covers some edge of the centre that no other leaf covers. It is pre-present
in H when all its leaves are copies in H.
"""
import itertools
import logging
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, List, Sequence, Tuple

from clusterlab_core.errors import ImpossibleOutcomeError
from clusterlab_core.events import popcount
from clusterlab_core.exactprob import ExactProb, Number, exact_sum
from clusterlab_core.graphs import Edge, RUniformHypergraph, is_clique_realizable, rank_rset, rset_neighbours
from clusterlab_core.guards import STAR_LEAF_SUBSETS, check_guard
from clusterlab_stats.clusters import copies_overlap, neighbour_sets, pair_mask

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StarCluster:
    n: int
    center: Edge
    leaves: Tuple[Edge, ...]

    @property
    def center_index(self) -> int:
        return rank_rset(self.center, self.n)

    @property
    def leaf_indices(self) -> Tuple[int, ...]:
        return tuple(rank_rset(e, self.n) for e in self.leaves)

    def _masks(self) -> Tuple[int, int]:
        covered = 0
        for e in self.leaves:
            covered |= pair_mask(e, self.n)
        return pair_mask(self.center, self.n), covered

    def pi0(self, p: Number) -> ExactProb:
        """Probability that every leaf is present."""
        return p ** popcount(self._masks()[1])

    def pi1(self, p: Number) -> ExactProb:
        """Probability that the centre and every leaf are present."""
        center, covered = self._masks()
        return p ** popcount(center | covered)

    def pi_c(self, p: Number) -> ExactProb:
        """Probability of the centre given the leaves."""
        center, covered = self._masks()
        return p ** popcount(center & ~covered)


def is_star(center_mask: int, leaf_masks: Sequence[int]) -> bool:
    covered = 0
    for m in leaf_masks:
        covered |= m
    if center_mask & ~covered == 0:
        return False
    if len(leaf_masks) >= 3:
        for k, m in enumerate(leaf_masks):
            rest = 0
            for l, other in enumerate(leaf_masks):
                if l != k:
                    rest |= other
            if (m & center_mask) & ~rest == 0:
                return False
    return True


def _stars_at(center: Edge, candidates: Sequence[Edge], n: int, r: int) -> Iterator[StarCluster]:
    candidates = sorted(candidates)
    top = min(comb(r, 2), len(candidates))
    check_guard(
        "star_leaf_subsets",
        sum(comb(len(candidates), t) for t in range(2, top + 1)),
        STAR_LEAF_SUBSETS,
    )
    cmask = pair_mask(center, n)
    masks = {e: pair_mask(e, n) for e in candidates}
    for t in range(2, top + 1):
        for leaves in itertools.combinations(candidates, t):
            if is_star(cmask, [masks[e] for e in leaves]):
                yield StarCluster(n, center, leaves)


def star_clusters(H: RUniformHypergraph) -> List[StarCluster]:
    """Every star-cluster whose leaves are copies in H; the centre is any r-set of [n]."""
    nbrs = neighbour_sets(H)
    centres = set()
    for e in H.edges:
        centres |= nbrs[e]
    out: List[StarCluster] = []
    for c in sorted(centres):
        leaves = [e for e in H.edges if copies_overlap(e, c)]
        if len(leaves) >= 2:
            out.extend(_stars_at(c, leaves, H.n, H.r))
    return out


def all_star_clusters(n: int, r: int) -> Iterator[StarCluster]:
    """Every star-cluster of the complete clique family on (n, r)."""
    for c in itertools.combinations(range(n), r):
        yield from _stars_at(c, list(rset_neighbours(c, n)), n, r)


def c_hat(H: RUniformHypergraph, p: Number) -> ExactProb:
    return exact_sum(s.pi_c(p) for s in star_clusters(H))


def expected_c_hat(stars: Iterable[StarCluster], p: Number) -> ExactProb:
    """E[C-hat(I)] as the sum of presence probabilities over the given star-clusters."""
    return exact_sum(s.pi1(p) for s in stars)


def complex_sum(H: RUniformHypergraph, p: Number) -> ExactProb:
    """
    C(H): over r-sets outside H overlapping at least two copies of H, the
    probability that their uncovered graph edges are all present.
    """
    if not is_clique_realizable(H):
        raise ImpossibleOutcomeError("complex_sum needs a possible outcome")
    covered = 0
    for e in H.edges:
        covered |= pair_mask(e, H.n)
    present = set(H.edges)
    nbrs = neighbour_sets(H)
    candidates = set()
    for e in H.edges:
        candidates |= nbrs[e]
    terms = []
    for j in sorted(candidates - present):
        if sum(1 for e in H.edges if copies_overlap(e, j)) >= 2:
            terms.append(p ** popcount(pair_mask(j, H.n) & ~covered))
    return exact_sum(terms)
