import itertools
from fractions import Fraction

import pytest

from clusterlab_core.errors import InvalidInstanceError
from clusterlab_distribution.distribution import Distribution
from clusterlab_distribution.model import ModelComparison, ModelRow
from clusterlab_distribution.montecarlo import MonteCarloSummary, StatEstimate
from clusterlab_guardians import validate_calibration
from clusterlab_guardians.common import GRIDS, IdentityReport, within_stderr
from clusterlab_guardians.suite import run_identity_suite
from clusterlab_guardians.validate_calibration import CALIBRATION_P, MODEL_CONSTANT, MODEL_PROBS
from clusterlab_guardians.validate_factors import validate_factor_counts
from clusterlab_guardians.validate_moments import validate_l2, validate_moments
from clusterlab_stats.moments import moment_table


@pytest.mark.unit
def test_identity_report_sections():
    rep = IdentityReport()
    rep.begin("demo")
    rep.check(True, "A", "fine")
    rep.check(False, "B", "broken", "x=1")
    assert rep.sections == {"demo": 2}
    assert not rep.ok
    assert rep.first_failure.code == "B"
    assert rep.first_failure.path == "demo/x=1"


@pytest.mark.unit
def test_within_stderr():
    assert within_stderr(Fraction(1), Fraction(1), 0.0, 3)
    assert not within_stderr(Fraction(2), Fraction(1), 0.0, 3)
    assert within_stderr(1.2, 1.0, 0.1, 3)
    assert not within_stderr(1.5, 1.0, 0.1, 3)


@pytest.mark.unit
def test_moment_sections_pass_on_tiny_grid():
    grid = GRIDS["tiny"]
    rep = IdentityReport(grid="tiny")
    validate_moments(rep, grid)
    validate_l2(rep, grid)
    validate_factor_counts(rep, grid)
    assert rep.ok, rep.issues
    assert rep.sections["moments"] > 0
    assert rep.sections["l2"] == len(grid.moment_instances) * len(grid.probs) * grid.l2_outcomes


@pytest.mark.unit
def test_unknown_grid():
    with pytest.raises(InvalidInstanceError):
        run_identity_suite("huge")


@pytest.mark.slow
@pytest.mark.unit
def test_tiny_grid_passes():
    rep = run_identity_suite("tiny", workers=1)
    assert rep.ok, rep.issues
    assert {"moments", "l2", "exact_law", "chain", "complex_bounds", "inequalities", "factors", "shamir"} <= set(
        rep.sections
    )


def _fake_model_run(monkeypatch, ratios):
    monkeypatch.setattr(validate_calibration, "exact_distribution", lambda n, r, p, workers=1: p)
    monkeypatch.setattr(validate_calibration, "expectations_exact", lambda *a, **k: None)
    tvs = {p: 0.01 * (i + 1) for i, p in enumerate(validate_calibration.MODEL_PROBS)}

    def compare(p, cfg):
        comp = ModelComparison(p=float(p), budget=1.0, tv=tvs[p])
        comp.rows.append(ModelRow((), 0.0, 0.0, ratios[p], ratios[p]))
        return comp

    monkeypatch.setattr(validate_calibration, "model_vs_exact", compare)
    rep = IdentityReport(grid="full")
    validate_calibration.validate_model(rep, GRIDS["full"])
    return rep


@pytest.mark.unit
def test_model_constant_is_not_rescaled(monkeypatch):
    within = {p: MODEL_CONSTANT / 2 for p in MODEL_PROBS}
    rep = _fake_model_run(monkeypatch, within)
    assert rep.ok, rep.issues
    assert rep.diagnostics["model_constant"] == MODEL_CONSTANT

    # a large ratio at the calibration point must fail instead of moving the constant
    beyond = dict(within)
    beyond[CALIBRATION_P] = 3 * MODEL_CONSTANT
    rep = _fake_model_run(monkeypatch, beyond)
    assert rep.codes == ["MODEL_BUDGET"]
    assert rep.diagnostics["model_constant"] == MODEL_CONSTANT
    assert rep.diagnostics["model_measured_ratio"] == 3 * MODEL_CONSTANT


def _exact_moment_stats(n, r, p, samples, seed, statistics, workers=1):
    table = moment_table(n, r, p)
    target = {"e": table.mu_r, "W2": table.delta2}
    summary = MonteCarloSummary(n=n, r=r, p=p, samples=samples, seed=seed)
    summary.stats = {s: StatEstimate(mean=Fraction(target[s]), stderr=0.0, count=samples) for s in statistics}
    return summary


@pytest.mark.unit
def test_estimated_law_is_checked_against_exact_law(monkeypatch):
    monkeypatch.setattr(validate_calibration, "monte_carlo_stats", _exact_moment_stats)
    monkeypatch.setattr(validate_calibration, "MC_SAMPLES", 400)
    rep = IdentityReport(grid="tiny")
    validate_calibration.validate_monte_carlo(rep, GRIDS["tiny"])
    assert rep.ok, rep.issues
    assert rep.diagnostics["empirical_law_tv"] > 0

    def complete_law(n, r, p, samples, seed, workers=1):
        key = tuple(itertools.combinations(range(n), r))
        return Distribution(n, r, {key: Fraction(1)}, mode="estimated", stderr={key: 0.0})

    monkeypatch.setattr(validate_calibration, "empirical_distribution", complete_law)
    rep = IdentityReport(grid="tiny")
    validate_calibration.validate_monte_carlo(rep, GRIDS["tiny"])
    assert rep.codes == ["EMPIRICAL_LAW"]
