from fractions import Fraction
from math import comb

import pytest

from clusterlab_core.errors import InvalidInstanceError
from clusterlab_core.graphs import LabeledGraph, RUniformHypergraph, clique_hypergraph
from clusterlab_core.rng import RngStream
from clusterlab_factors.counting import count_matchings
from clusterlab_factors.shamir import conditional_xi_mean, conjecture_observable, shamir_process, shamir_runs


@pytest.mark.unit
class TestShamirProcess:
    def test_first_step(self):
        trace = shamir_process(6, 3, RngStream(7), stop_m=19)
        assert trace.phi0 == 10
        (step,) = trace.steps
        assert step.gamma == Fraction(1, 10)
        # every triangle of [6] lies in exactly one of the ten matchings
        assert step.xi == Fraction(1, 10)
        assert step.alpha == 0
        assert step.Phi == 9

    def test_full_run(self):
        trace = shamir_process(6, 3, RngStream(3), stop_m=0)
        assert len(trace.steps) == comb(6, 3)
        assert trace.recursion_holds()
        assert trace.final_phi == 0
        phis = [trace.phi0] + [s.Phi for s in trace.steps]
        assert all(a >= b for a, b in zip(phis, phis[1:]))
        assert all(0 <= s.xi <= 1 for s in trace.steps)
        assert sorted(s.removed_edge for s in trace.steps) == sorted(clique_hypergraph(LabeledGraph.complete(6), 3).edges)
        # fewer than n/r edges cannot hold a matching
        assert all(s.Phi == 0 for s in trace.steps if comb(6, 3) - s.t < 2)

    def test_reproducible(self):
        assert shamir_process(6, 3, RngStream(5, 1)) == shamir_process(6, 3, RngStream(5, 1))

    def test_preconditions(self):
        with pytest.raises(InvalidInstanceError):
            shamir_process(7, 3, RngStream(0))
        with pytest.raises(InvalidInstanceError):
            shamir_process(6, 3, RngStream(0), stop_m=21)


@pytest.mark.unit
def test_conditional_xi_mean_equals_gamma():
    H = clique_hypergraph(LabeledGraph.complete(6), 3)
    assert conditional_xi_mean(H) == Fraction(2, 20)
    trace = shamir_process(6, 3, RngStream(9), stop_m=14)
    alive = set(H.edges)
    for step in trace.steps:
        current = RUniformHypergraph.build(6, 3, alive)
        if count_matchings(current):
            assert conditional_xi_mean(current) == step.gamma
        alive.discard(step.removed_edge)
    assert conditional_xi_mean(RUniformHypergraph(6, 3, ())) == 0


@pytest.mark.unit
def test_runs_summary():
    summary = shamir_runs(6, 3, seed=7, runs=40, stop_m=10, workers=1)
    assert summary.phi0 == 10
    assert summary.gamma_1 == Fraction(1, 10)
    assert summary.recursion_ok
    expected = Fraction(10)
    for t in range(1, 11):
        expected *= 1 - Fraction(2, 21 - t)
    assert summary.expected_phi_m == expected
    assert len(summary.traces) == 40
    assert summary.alpha_mean[1] == 0
    assert summary.alpha_count[1] == 40


@pytest.mark.unit
def test_runs_do_not_depend_on_workers():
    one = shamir_runs(6, 3, seed=2, runs=12, stop_m=12, workers=1)
    two = shamir_runs(6, 3, seed=2, runs=12, stop_m=12, workers=2)
    assert one.traces == two.traces
    assert one.mean_phi_m == two.mean_phi_m
    assert one.alpha_mean == two.alpha_mean


@pytest.mark.unit
def test_conjecture_observable():
    mean, scale = conjecture_observable([10, 10], 6, 3, 20)
    assert mean == pytest.approx(0.0)
    assert scale == pytest.approx(216 / 400)
    mean, _ = conjecture_observable([0, 0], 6, 3, 10)
    assert mean != mean
