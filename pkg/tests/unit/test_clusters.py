from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterlab_core.errors import GuardExceededError, InvalidInstanceError
from clusterlab_core.graphs import LabeledGraph, RUniformHypergraph, clique_hypergraph
from clusterlab_stats.clusters import (
    clusters,
    connected_subsets,
    count_wk,
    repeated_edge_bounds,
    t_counts,
)
from clusterlab_stats.conditional import l2_sum, q2, q3, q3_claim_sum, q4
from clusterlab_stats.moments import moment_table

HALF = Fraction(1, 2)


def hyper(n, r, *edges):
    return RUniformHypergraph.build(n, r, edges)


@pytest.mark.unit
class TestClusterCounts:
    def test_triangle_fan(self):
        H = hyper(5, 3, (0, 1, 2), (0, 1, 3), (0, 2, 3))
        assert count_wk(H, 2) == 3
        assert count_wk(H, 3) == 1
        assert count_wk(H, 4) == 0

    def test_maximal_clusters(self):
        H = hyper(6, 3, (0, 1, 2), (0, 1, 3), (3, 4, 5))
        assert clusters(H) == [(0, 1), (2,)]

    def test_k_bounds(self):
        H = hyper(4, 3, (0, 1, 2))
        with pytest.raises(InvalidInstanceError):
            count_wk(H, 1)
        with pytest.raises(GuardExceededError):
            count_wk(H, 5)

    def test_connected_subsets_of_a_path(self):
        adj = {0: {1}, 1: {0, 2}, 2: {1, 3}, 3: {2}}
        assert sorted(connected_subsets(adj, 2)) == [(0, 1), (1, 2), (2, 3)]
        assert sorted(connected_subsets(adj, 3)) == [(0, 1, 2), (1, 2, 3)]
        split = list(connected_subsets(adj, 3, roots=[0])) + list(connected_subsets(adj, 3, roots=[1, 2, 3]))
        assert sorted(split) == [(0, 1, 2), (1, 2, 3)]


@pytest.mark.unit
def test_pair_counts_and_isolation():
    H = hyper(5, 3, (0, 1, 2), (0, 1, 3), (2, 3, 4))
    report = t_counts(H)
    assert report.t_by_size == {0: 0, 1: 2, 2: 1}
    assert report.t_isolated == {0: 0, 1: 0, 2: 1}
    assert report.t_total == 1
    assert report.w[2] == 1


@pytest.mark.unit
@settings(max_examples=30, deadline=None)
@given(mask=st.integers(0, (1 << 28) - 1), r=st.sampled_from([3, 4]))
def test_sandwich_bounds_hold_on_clique_hypergraphs(mask, r):
    H = clique_hypergraph(LabeledGraph.from_mask(8, mask), r)
    report = t_counts(H)
    for low, middle, high in repeated_edge_bounds(report, r).values():
        assert low <= middle <= high
    for s, iso in report.t_isolated.items():
        assert iso <= report.t_by_size[s]


@pytest.mark.unit
def test_l2_identity():
    table = moment_table(5, 3, HALF)
    H = hyper(5, 3, (0, 1, 2), (0, 3, 4), (1, 2, 4))
    assert l2_sum(H, HALF) == 2 * H.e() * table.delta2 / table.mu_r
    assert l2_sum(H, HALF) == Fraction(9, 2)


@pytest.mark.unit
def test_conditioned_sums_on_two_triangles():
    H = hyper(4, 3, (0, 1, 2), (0, 1, 3))
    assert q2(H) == count_wk(H, 2) == 1
    assert q3(H, HALF) == 1
    assert q3(H, HALF, ordered=False) == HALF
    assert q3_claim_sum(H, HALF) == 1
    # every pair of triangles in K4 overlaps, so no four-chain exists
    assert q4(H, HALF) == 0


@pytest.mark.unit
def test_q4_sees_two_separate_copies():
    H = hyper(6, 3, (0, 1, 2), (3, 4, 5))
    value = q4(H, HALF)
    assert isinstance(value, Fraction)
    assert value > 0
    assert q3(H, HALF) == 0
