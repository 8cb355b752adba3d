import math
from fractions import Fraction
from math import comb

import pytest

from clusterlab_core.errors import InvalidInstanceError, MissingExpectationsError
from clusterlab_core.graphs import RUniformHypergraph, hypergraph_of, is_clique_realizable
from clusterlab_distribution.exact import exact_distribution
from clusterlab_distribution.model import (
    main_bound_log_prob,
    model_distribution,
    model_error_budget,
    model_log_prob,
    model_mass_split,
    model_vs_exact,
)
from clusterlab_distribution.predicates import (
    PredicateConfig,
    expectations_exact,
    is_good,
    is_plausible,
    is_reasonable,
    is_well_behaved,
)
from clusterlab_stats.moments import moment_table

HALF = Fraction(1, 2)


@pytest.fixture(scope="module")
def law_n5():
    return exact_distribution(5, 3, HALF)


@pytest.fixture(scope="module")
def cfg_n5(law_n5):
    return PredicateConfig(
        table=moment_table(5, 3, HALF), expectations=expectations_exact(5, 3, HALF, dist=law_n5)
    )


@pytest.mark.unit
class TestPredicateConfig:
    def test_defaults_and_validation(self):
        table = moment_table(5, 3, HALF)
        cfg = PredicateConfig(table=table)
        assert cfg.omega == pytest.approx(math.log(math.log(5)) + 3)
        with pytest.raises(InvalidInstanceError):
            PredicateConfig(table=table, plaus_delta=0.3)
        with pytest.raises(InvalidInstanceError):
            PredicateConfig(table=table, omega=-1.0)

    def test_expectation_dependent_predicates_need_expectations(self):
        cfg = PredicateConfig(table=moment_table(5, 3, HALF))
        H = RUniformHypergraph(5, 3, ())
        with pytest.raises(MissingExpectationsError):
            is_good(H, cfg)
        assert is_plausible(H, cfg).checked > 0


@pytest.mark.unit
def test_unrealizable_outcome_is_not_good(cfg_n5):
    H = RUniformHypergraph.build(5, 3, [(0, 1, 2), (0, 1, 3), (0, 2, 3)])
    report = is_good(H, cfg_n5)
    assert not report
    assert "not_realizable" in report.codes


@pytest.mark.unit
def test_predicate_hierarchy(law_n5, cfg_n5):
    for H, _ in law_n5.items():
        if is_well_behaved(H, cfg_n5):
            assert is_good(H, cfg_n5)
        if is_reasonable(H, cfg_n5):
            assert is_plausible(H, cfg_n5)


@pytest.mark.unit
def test_model_log_prob_without_overlaps_is_binomial():
    table = moment_table(5, 3, HALF)
    H = RUniformHypergraph(5, 3, ((0, 1, 2),))
    expected = math.log(1 / 8) + 9 * math.log(7 / 8) - float(table.lambda_)
    assert model_log_prob(H, table) == pytest.approx(expected)
    prime = expected + float(table.lambda_) - float(table.lambda_prime)
    assert model_log_prob(H, table, correction="lambda_prime") == pytest.approx(prime)
    shift = -(2 / float(table.mu_r) - 1) * float(table.lambda_)
    assert main_bound_log_prob(H, table) == pytest.approx(expected + float(table.lambda_) + shift)


@pytest.mark.unit
def test_model_distribution_is_normalized(law_n5):
    table = moment_table(5, 3, HALF)
    model = model_distribution((H for H, _ in law_n5.items()), table)
    assert sum(model.probs.values()) == pytest.approx(1.0)
    assert set(model.probs) == set(law_n5.probs)


@pytest.mark.unit
def test_mass_split_matches_brute_force():
    n, r = 4, 3
    table = moment_table(n, r, HALF)
    ok = bad = 0.0
    for mask in range(1 << comb(n, r)):
        H = hypergraph_of([j for j in range(4) if mask >> j & 1], n, r)
        mass = math.exp(model_log_prob(H, table))
        if is_clique_realizable(H):
            ok += mass
        else:
            bad += mass
    split = model_mass_split(n, r, table)
    assert split.realizable == pytest.approx(ok)
    assert split.unrealizable == pytest.approx(bad)
    assert split.total == pytest.approx(ok + bad)


@pytest.mark.unit
def test_model_vs_exact_rows(law_n5, cfg_n5):
    comp = model_vs_exact(law_n5, cfg_n5)
    assert comp.budget == pytest.approx(model_error_budget(cfg_n5.table, cfg_n5.omega))
    assert 0 <= comp.tv <= 1
    for row in comp.rows:
        assert row.error == pytest.approx(row.log_exact - row.log_model)
        assert row.ratio == pytest.approx(abs(row.error) / comp.budget)
    assert comp.max_ratio == max((row.ratio for row in comp.rows), default=0.0)
