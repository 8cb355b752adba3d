"""Legal clusters: the overlap shapes expected when p is a constant."""
import itertools
import logging
from typing import Sequence

from clusterlab_core.exactprob import ExactProb, Number, exact_sum
from clusterlab_core.graphs import Edge, LabeledGraph, RUniformHypergraph, clique_hypergraph, shadow_graph
from clusterlab_stats.clusters import clusters
from clusterlab_stats.stars import StarCluster, star_clusters

logger = logging.getLogger(__name__)


def _inside_clique_of_size(members: Sequence[Edge], size: int, graph: LabeledGraph) -> bool:
    union = sorted(set().union(*members))
    if len(union) > size:
        return False
    return all(graph.has_edge(u, v) for u, v in itertools.combinations(union, 2))


def is_legal_cluster(members: Sequence[Edge], r: int, graph: LabeledGraph) -> bool:
    """
    A cluster is legal when it sits inside a K_{r+1} of ``graph``, is a pair
    sharing exactly two vertices, or is three copies S1, S2, S3 with
    |S1 & S2| = |S1 & S3| = 2 and S2 & S3 inside S1.
    """
    if len(members) <= 1:
        return True
    if _inside_clique_of_size(members, r + 1, graph):
        return True
    sets = [set(m) for m in members]
    if len(sets) == 2:
        return len(sets[0] & sets[1]) == 2
    if len(sets) == 3:
        for s1, s2, s3 in itertools.permutations(sets):
            if len(s1 & s2) == 2 and len(s1 & s3) == 2 and not (s2 & s3) - s1:
                return True
    return False


def is_legal(H: RUniformHypergraph) -> bool:
    """Every maximal cluster of H is legal (the K_{r+1} test uses the shadow graph of H)."""
    graph = shadow_graph(H)
    for comp in clusters(H):
        members = [H.edges[i] for i in comp]
        if not is_legal_cluster(members, H.r, graph):
            logger.debug("illegal cluster %s", members)
            return False
    return True


def is_legal_star(star: StarCluster, r: int) -> bool:
    """The graph formed by the union of the leaves is legal."""
    leaves = RUniformHypergraph.build(star.n, r, star.leaves)
    return is_legal(clique_hypergraph(shadow_graph(leaves), r))


def c_hat_legal(H: RUniformHypergraph, p: Number) -> ExactProb:
    return exact_sum(s.pi_c(p) for s in star_clusters(H) if is_legal_star(s, H.r))
