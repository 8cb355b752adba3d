"""
Graphs, G(n,p) sampling and clique hypergraphs.

Vertices are 0-based. Graph adjacency is one int bitmask row per vertex.
Vertex pairs and r-sets are indexed lexicographically; the r-set index space
``[0, C(n, r))`` is the member index space of the complete clique family.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, List, Sequence, Tuple

from clusterlab_core.errors import InvalidInstanceError
from clusterlab_core.events import EventFamily, Outcome, popcount
from clusterlab_core.exactprob import Number, check_probability
from clusterlab_core.rng import RngStream

logger = logging.getLogger(__name__)

Edge = Tuple[int, ...]


def pair_index(u: int, v: int, n: int) -> int:
    """Lexicographic index of the pair {u, v} among the C(n, 2) pairs of [n]."""
    if u > v:
        u, v = v, u
    if not 0 <= u < v < n:
        raise InvalidInstanceError(f"invalid pair ({u}, {v}) for n={n}")
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


@lru_cache(maxsize=None)
def all_pairs(n: int) -> Tuple[Tuple[int, int], ...]:
    return tuple(itertools.combinations(range(n), 2))


@dataclass(frozen=True)
class LabeledGraph:
    n: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        if len(rows) != self.n:
            raise InvalidInstanceError("adjacency must have one row per vertex")
        full = (1 << self.n) - 1
        for u, row in enumerate(rows):
            if row & ~full or row >> u & 1:
                raise InvalidInstanceError(f"row {u} has a loop or an out-of-range neighbour")
            for v in range(self.n):
                if row >> v & 1 and not rows[v] >> u & 1:
                    raise InvalidInstanceError(f"adjacency is not symmetric at ({u}, {v})")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "LabeledGraph":
        rows = [0] * n
        for u, v in edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise InvalidInstanceError(f"invalid edge ({u}, {v}) for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "LabeledGraph":
        """Graph whose edge set is the set bits of ``mask`` in lexicographic pair order."""
        return cls.from_edges(n, (pair for k, pair in enumerate(all_pairs(n)) if mask >> k & 1))

    @classmethod
    def complete(cls, n: int) -> "LabeledGraph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << u) for u in range(n)))

    @classmethod
    def empty(cls, n: int) -> "LabeledGraph":
        return cls(n, (0,) * n)

    @classmethod
    def cycle(cls, n: int) -> "LabeledGraph":
        if n < 3:
            raise InvalidInstanceError("a cycle needs at least 3 vertices")
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u, v in all_pairs(self.n) if self.rows[u] >> v & 1]

    def edge_count(self) -> int:
        return sum(popcount(row) for row in self.rows) // 2

    def edge_mask(self) -> int:
        return sum(1 << k for k, (u, v) in enumerate(all_pairs(self.n)) if self.rows[u] >> v & 1)


@dataclass(frozen=True)
class RUniformHypergraph:
    n: int
    r: int
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        if self.r < 2 or self.r > self.n:
            raise InvalidInstanceError(f"need 2 <= r <= n, got n={self.n}, r={self.r}")
        edges = tuple(tuple(e) for e in self.edges)
        for e in edges:
            if len(e) != self.r or any(b <= a for a, b in zip(e, e[1:])):
                raise InvalidInstanceError(f"hyperedge {e} is not a strictly increasing {self.r}-tuple")
            if e[0] < 0 or e[-1] >= self.n:
                raise InvalidInstanceError(f"hyperedge {e} leaves [0, {self.n})")
        if any(b <= a for a, b in zip(edges, edges[1:])):
            raise InvalidInstanceError("hyperedges must be distinct and sorted")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def build(cls, n: int, r: int, edges: Iterable[Iterable[int]]) -> "RUniformHypergraph":
        """Canonicalize (sort each edge, sort and dedupe the edge list) and validate."""
        return cls(n, r, tuple(sorted({tuple(sorted(e)) for e in edges})))

    def e(self) -> int:
        return len(self.edges)

    def vertex_masks(self) -> List[int]:
        return [sum(1 << v for v in e) for e in self.edges]


def sample_gnp(n: int, p: Number, rng: RngStream) -> LabeledGraph:
    """Keep each of the C(n, 2) pairs independently with probability p."""
    check_probability(p)
    draws = rng.generator().random(comb(n, 2))
    threshold = float(p)
    rows = [0] * n
    for k, (u, v) in enumerate(all_pairs(n)):
        if draws[k] < threshold:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return LabeledGraph(n, tuple(rows))


def _extend(rows: Sequence[int], clique: List[int], cand: int, r: int, out: List[Edge]) -> None:
    if len(clique) == r:
        out.append(tuple(clique))
        return
    need = r - len(clique)
    while cand and popcount(cand) >= need:
        low = cand & -cand
        v = low.bit_length() - 1
        cand ^= low
        clique.append(v)
        _extend(rows, clique, cand & rows[v], r, out)
        clique.pop()


def clique_hypergraph(G: LabeledGraph, r: int) -> RUniformHypergraph:
    """H_r(G): every r-set of vertices inducing a clique, found by bit-intersection search."""
    if not 2 <= r <= G.n:
        raise InvalidInstanceError(f"need 2 <= r <= n, got n={G.n}, r={r}")
    return RUniformHypergraph(G.n, r, tuple(cliques_within(G.rows, (1 << G.n) - 1, r)))


def cliques_within(rows: Sequence[int], cand: int, size: int) -> List[Edge]:
    """All cliques of the given size inside the vertex mask ``cand``, in lexicographic order."""
    above = [row & ~((1 << (w + 1)) - 1) for w, row in enumerate(rows)]
    out: List[Edge] = []
    _extend(above, [], cand, size, out)
    return out


def cliques_through_pair(rows: Sequence[int], u: int, v: int, r: int) -> List[Edge]:
    """All r-cliques of the graph plus uv that contain both u and v."""
    common = rows[u] & rows[v] & ~(1 << u) & ~(1 << v)
    return [tuple(sorted(rest + (u, v))) for rest in cliques_within(rows, common, r - 2)]


def rank_rset(S: Sequence[int], n: int) -> int:
    """Lexicographic rank of the sorted r-set S among the r-subsets of [n]."""
    r = len(S)
    rank = 0
    prev = -1
    for i, c in enumerate(S):
        for v in range(prev + 1, c):
            rank += comb(n - 1 - v, r - 1 - i)
        prev = c
    return rank


def unrank_rset(rank: int, n: int, r: int) -> Edge:
    if not 0 <= rank < comb(n, r):
        raise InvalidInstanceError(f"rank {rank} out of range for C({n}, {r})")
    out = []
    v = 0
    for i in range(r):
        while True:
            block = comb(n - 1 - v, r - 1 - i)
            if rank < block:
                break
            rank -= block
            v += 1
        out.append(v)
        v += 1
    return tuple(out)


def rset_neighbours(S: Sequence[int], n: int) -> Iterator[Edge]:
    """Every r-set other than S sharing at least two vertices with S."""
    S = tuple(S)
    r = len(S)
    outside = [v for v in range(n) if v not in S]
    for k in range(2, r):
        for keep in itertools.combinations(S, k):
            for add in itertools.combinations(outside, r - k):
                yield tuple(sorted(keep + add))


@lru_cache(maxsize=32)
def clique_family(n: int, r: int) -> EventFamily:
    """
    The complete clique family on (n, r).

    Ground elements are the C(n, 2) vertex pairs in lexicographic order; member
    i is the set of pair indices inside the i-th r-set in lexicographic order.
    """
    if not 2 <= r <= n:
        raise InvalidInstanceError(f"need 2 <= r <= n, got n={n}, r={r}")
    members = tuple(
        tuple(pair_index(u, v, n) for u, v in itertools.combinations(S, 2))
        for S in itertools.combinations(range(n), r)
    )
    return EventFamily(comb(n, 2), comb(r, 2), members)


def outcome_of(H: RUniformHypergraph) -> Outcome:
    """Y(H): the member indices of H's hyperedges in the complete clique family."""
    return Outcome(clique_family(H.n, H.r), tuple(rank_rset(e, H.n) for e in H.edges))


def hypergraph_of(Y, n: int, r: int) -> RUniformHypergraph:
    indices = Y.indices if isinstance(Y, Outcome) else tuple(Y)
    return RUniformHypergraph(n, r, tuple(sorted(unrank_rset(i, n, r) for i in set(indices))))


def shadow_graph(H: RUniformHypergraph) -> LabeledGraph:
    """G(H): pairs of vertices lying together in some hyperedge."""
    rows = [0] * H.n
    for e, mask in zip(H.edges, H.vertex_masks()):
        for v in e:
            rows[v] |= mask & ~(1 << v)
    return LabeledGraph(H.n, tuple(rows))


def t_of(H: RUniformHypergraph) -> int:
    """Number of repeated vertex pairs: C(r, 2) e(H) minus the shadow edge count."""
    return comb(H.r, 2) * H.e() - shadow_graph(H).edge_count()


def is_clique_realizable(H: RUniformHypergraph) -> bool:
    return clique_hypergraph(shadow_graph(H), H.r).edges == H.edges
