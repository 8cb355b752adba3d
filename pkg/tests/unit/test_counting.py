from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterlab_core.errors import InvalidInstanceError
from clusterlab_core.graphs import LabeledGraph, RUniformHypergraph, clique_hypergraph
from clusterlab_distribution.predicates import PredicateConfig, expectations_exact
from clusterlab_factors.counting import count_factors, count_matchings, count_matchings_with_edge
from clusterlab_factors.expectation import binomial_pmf, conditional_factor_ratio, expected_factors_exact
from clusterlab_stats.moments import moment_table, sigma_npi

HALF = Fraction(1, 2)


@pytest.mark.unit
class TestCounts:
    def test_complete_graphs(self):
        assert count_factors(LabeledGraph.complete(6), 3) == 10
        assert count_factors(LabeledGraph.complete(9), 3) == 280
        assert count_factors(LabeledGraph.complete(8), 4) == 35

    def test_triangle_free(self):
        assert count_factors(LabeledGraph.cycle(6), 3) == 0

    def test_trivial_hypergraphs(self):
        assert count_matchings(RUniformHypergraph(3, 3, ((0, 1, 2),))) == 1
        assert count_matchings(RUniformHypergraph(6, 3, ())) == 0

    def test_forced_edge(self):
        H = clique_hypergraph(LabeledGraph.complete(6), 3)
        assert count_matchings_with_edge(H, (2, 0, 1)) == 1
        with pytest.raises(InvalidInstanceError):
            count_matchings_with_edge(RUniformHypergraph(6, 3, ((0, 1, 2),)), (3, 4, 5))

    def test_divisibility(self):
        with pytest.raises(InvalidInstanceError):
            count_factors(LabeledGraph.complete(7), 3)


@pytest.mark.unit
@settings(max_examples=50, deadline=None)
@given(mask=st.integers(0, (1 << 15) - 1))
def test_factors_are_matchings_of_the_clique_hypergraph(mask):
    G = LabeledGraph.from_mask(6, mask)
    H = clique_hypergraph(G, 3)
    assert count_factors(G, 3) == count_matchings(H)
    total = sum(count_matchings_with_edge(H, e) for e in H.edges)
    assert total == 2 * count_matchings(H)


@pytest.mark.unit
def test_expected_factors():
    assert expected_factors_exact(3, 3, HALF) == Fraction(1, 8)
    assert expected_factors_exact(6, 3, HALF) == sigma_npi(6, 3, HALF**3) == Fraction(5, 32)
    assert expected_factors_exact(6, 3, Fraction(1)) == 10


@pytest.mark.unit
def test_conditional_factor_ratio_reports_both_sides():
    table = moment_table(6, 3, HALF)
    cfg = PredicateConfig(table=table, expectations=expectations_exact(6, 3, HALF))
    res = conditional_factor_ratio(6, 3, HALF, 2, cfg)
    assert res.prob_bin_m == binomial_pmf(20, Fraction(1, 8), 2)
    assert res.lhs >= 0
    assert res.rhs > 0
    with pytest.raises(InvalidInstanceError):
        conditional_factor_ratio(6, 3, HALF, 21, cfg)
