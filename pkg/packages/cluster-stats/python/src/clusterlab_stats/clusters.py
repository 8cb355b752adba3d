"""
Clusters of clique copies.

Two copies overlap (``i ~ j``) when their vertex sets share at least two
vertices, i.e. their graph-edge sets intersect. A cluster is a set of copies
whose overlap graph is connected.
"""
import itertools
import logging
from dataclasses import dataclass, field
from math import comb
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

import networkx as nx

from clusterlab_core.errors import InvalidInstanceError
from clusterlab_core.graphs import Edge, RUniformHypergraph, pair_index, rset_neighbours, t_of
from clusterlab_core.guards import CLUSTER_SIZE, check_guard

logger = logging.getLogger(__name__)


def shared(a: Sequence[int], b: Sequence[int]) -> int:
    return len(set(a) & set(b))


def copies_overlap(a: Sequence[int], b: Sequence[int]) -> bool:
    return a != b and shared(a, b) >= 2


def pair_mask(S: Sequence[int], n: int) -> int:
    """Bitmask over the lexicographic pair indices of the graph edges inside S."""
    out = 0
    for u, v in itertools.combinations(S, 2):
        out |= 1 << pair_index(u, v, n)
    return out


def overlap_graph(H: RUniformHypergraph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(H.e()))
    for i, j in itertools.combinations(range(H.e()), 2):
        if shared(H.edges[i], H.edges[j]) >= 2:
            g.add_edge(i, j)
    return g


def clusters(H: RUniformHypergraph) -> List[Tuple[int, ...]]:
    """Maximal clusters of H as sorted tuples of hyperedge indices, ordered by smallest index."""
    comps = [tuple(sorted(c)) for c in nx.connected_components(overlap_graph(H))]
    return sorted(comps)


def connected_subsets(
    adj: Mapping[int, Set[int]], k: int, roots: Optional[Iterable[int]] = None
) -> Iterator[Tuple[int, ...]]:
    """
    Each connected k-subset of the graph ``adj`` exactly once (ESU enumeration).

    A subset is produced from its smallest vertex; ``roots`` restricts which
    smallest vertices are expanded, so disjoint root ranges split the work.
    """
    if k < 1:
        return

    def extend(sub: List[int], sub_nbhd: Set[int], ext: Set[int], root: int):
        if len(sub) == k:
            yield tuple(sorted(sub))
            return
        ext = set(ext)
        while ext:
            w = ext.pop()
            fresh = {u for u in adj[w] if u > root and u not in sub_nbhd and u not in sub}
            yield from extend(sub + [w], sub_nbhd | adj[w], ext | fresh, root)

    for v in sorted(adj) if roots is None else roots:
        yield from extend([v], set(adj[v]) | {v}, {u for u in adj[v] if u > v}, v)


def count_wk(H: RUniformHypergraph, k: int) -> int:
    """W_k(H): number of k-subsets of hyperedges forming a cluster (not only maximal ones)."""
    if k < 2:
        raise InvalidInstanceError(f"W_k needs k >= 2, got {k}")
    check_guard("cluster_size", k, CLUSTER_SIZE)
    g = overlap_graph(H)
    adj = {v: set(g.adj[v]) for v in g.nodes}
    return sum(1 for _ in connected_subsets(adj, k))


@dataclass
class ClusterReport:
    w: Dict[int, int] = field(default_factory=dict)
    t_by_size: Dict[int, int] = field(default_factory=dict)
    t_isolated: Dict[int, int] = field(default_factory=dict)
    t_total: int = 0


def t_counts(H: RUniformHypergraph) -> ClusterReport:
    """
    Pair statistics of H.

    ``t_by_size[s]`` counts unordered pairs of hyperedges sharing exactly ``s``
    vertices (0 <= s <= r-1). ``t_isolated[s]`` counts those pairs where
    neither hyperedge shares two or more vertices with any other hyperedge.
    """
    r = H.r
    t_by = {s: 0 for s in range(r)}
    t_iso = {s: 0 for s in range(r)}
    degree = [0] * H.e()
    sizes = {}
    for i, j in itertools.combinations(range(H.e()), 2):
        s = shared(H.edges[i], H.edges[j])
        sizes[(i, j)] = s
        t_by[s] += 1
        if s >= 2:
            degree[i] += 1
            degree[j] += 1
    for (i, j), s in sizes.items():
        others_i = degree[i] - (1 if s >= 2 else 0)
        others_j = degree[j] - (1 if s >= 2 else 0)
        if others_i == 0 and others_j == 0:
            t_iso[s] += 1
    w = {k: count_wk(H, k) for k in range(2, 5)}
    return ClusterReport(w=w, t_by_size=t_by, t_isolated=t_iso, t_total=t_of(H))


def repeated_edge_bounds(report: ClusterReport, r: int) -> Dict[str, Tuple[int, int, int]]:
    """
    The two sandwich bounds relating pair counts to repeated edges.

    Returns ``(low, middle, high)`` triples; each must satisfy low <= middle <= high.
    """
    central = sum(comb(s, 2) * report.t_by_size.get(s, 0) for s in range(2, r)) - report.t_total
    isolated_gap = sum(
        comb(s, 2) * (report.t_by_size.get(s, 0) - report.t_isolated.get(s, 0)) for s in range(2, r)
    )
    w3 = report.w.get(3, 0)
    return {
        "repeated_pairs": (0, central, comb(r - 1, 2) * w3),
        "isolated_pairs": (0, isolated_gap, 3 * comb(r - 1, 2) * w3),
    }


def neighbour_sets(H: RUniformHypergraph) -> Dict[Edge, Set[Edge]]:
    """For every hyperedge of H, all r-sets of [n] (in or out of H) overlapping it."""
    return {e: set(rset_neighbours(e, H.n)) for e in H.edges}
