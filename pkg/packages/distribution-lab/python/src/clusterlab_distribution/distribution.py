"""Finite distributions over labeled hypergraphs and their total variation distance."""
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, Optional, Tuple

from clusterlab_core.exactprob import ExactProb, Number, exact_sum
from clusterlab_core.graphs import Edge, RUniformHypergraph

Key = Tuple[Edge, ...]


@dataclass
class Distribution:
    """Law over canonical hyperedge tuples; ``stderr`` is set only for ``mode="estimated"``."""

    n: int
    r: int
    probs: Dict[Key, ExactProb]
    mode: str = "exact"
    stderr: Optional[Dict[Key, float]] = None

    def total(self) -> ExactProb:
        return exact_sum(self.probs.values())

    def hypergraph(self, key: Key) -> RUniformHypergraph:
        return RUniformHypergraph(self.n, self.r, key)

    def items(self) -> Iterator[Tuple[RUniformHypergraph, ExactProb]]:
        """(H, Pr(H)) in canonical key order."""
        for key in sorted(self.probs):
            yield self.hypergraph(key), self.probs[key]

    def expectation(self, statistic: Callable[[RUniformHypergraph], Number]) -> ExactProb:
        return exact_sum(prob * statistic(H) for H, prob in self.items() if prob)

    def prob_of(self, H: RUniformHypergraph) -> ExactProb:
        return self.probs.get(H.edges, 0)


def tv_distance(d1: Distribution, d2: Distribution) -> ExactProb:
    """Half the L1 distance; keys missing on one side count as probability zero."""
    keys = sorted(set(d1.probs) | set(d2.probs))
    return exact_sum(abs(d1.probs.get(k, 0) - d2.probs.get(k, 0)) for k in keys) / 2
