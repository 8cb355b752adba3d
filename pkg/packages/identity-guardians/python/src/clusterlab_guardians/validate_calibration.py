"""
Monte Carlo calibration against closed-form moments and the exact law, and the
model-versus-exact diagnostic with a frozen calibration constant.
"""
import logging
import math
from fractions import Fraction

from clusterlab_distribution.distribution import tv_distance
from clusterlab_distribution.exact import exact_distribution
from clusterlab_distribution.model import model_vs_exact
from clusterlab_distribution.montecarlo import empirical_distribution, monte_carlo_stats
from clusterlab_distribution.predicates import PredicateConfig, expectations_exact
from clusterlab_guardians.common import Grid, IdentityReport, within_stderr
from clusterlab_stats.moments import moment_table

logger = logging.getLogger(__name__)

MC_SAMPLES = 10_000
MC_SIGMAS = 4
LAW_N, LAW_P = 5, Fraction(1, 2)
MODEL_N, MODEL_R = 6, 3
MODEL_PROBS = (Fraction(1, 10), Fraction(2, 10), Fraction(3, 10))
# |log Pr(H) - log model(H)| <= MODEL_CONSTANT * budget on every good H
MODEL_CONSTANT = 1.0
CALIBRATION_P = Fraction(2, 10)


def validate_monte_carlo(rep: IdentityReport, grid: Grid, workers: int = 1) -> IdentityReport:
    rep.begin("monte_carlo")
    p = Fraction(1, 10)
    for n, stat, target_name in ((50, "e", "mu_r"), (30, "W2", "delta2")):
        summary = monte_carlo_stats(n, 3, p, MC_SAMPLES, grid.seed, (stat,), workers=workers)
        est = summary.stats[stat]
        target = getattr(moment_table(n, 3, p), target_name)
        rep.check(
            within_stderr(est.mean, target, est.stderr, MC_SIGMAS),
            "MC_CALIBRATION",
            f"{stat}: mean {float(est.mean):.6g} vs {float(target):.6g} (stderr {est.stderr:.3g})",
            f"n={n},p=1/10",
        )
    exact = exact_distribution(LAW_N, 3, LAW_P, workers=workers)
    law = empirical_distribution(LAW_N, 3, LAW_P, MC_SAMPLES, grid.seed, workers=workers)
    # E[TV] is at most half the summed per-outcome standard deviations
    bound = sum(math.sqrt(float(q * (1 - q)) / MC_SAMPLES) for q in exact.probs.values()) / 2
    tv = float(tv_distance(law, exact))
    rep.diagnostics["empirical_law_tv"] = tv
    rep.check(law.total() == 1, "EMPIRICAL_LAW", f"estimated law sums to {law.total()}", f"n={LAW_N},p=1/2")
    rep.check(
        tv <= 2 * bound,
        "EMPIRICAL_LAW",
        f"TV(estimated, exact) = {tv:.4g} exceeds {2 * bound:.4g}",
        f"n={LAW_N},p=1/2",
    )
    return rep


def validate_model(rep: IdentityReport, grid: Grid, workers: int = 1) -> IdentityReport:
    rep.begin("model")
    comparisons = {}
    for p in MODEL_PROBS:
        dist = exact_distribution(MODEL_N, MODEL_R, p, workers=workers)
        cfg = PredicateConfig(
            table=moment_table(MODEL_N, MODEL_R, p),
            expectations=expectations_exact(MODEL_N, MODEL_R, p, dist=dist, workers=workers),
        )
        comparisons[p] = model_vs_exact(dist, cfg)
    c = MODEL_CONSTANT
    rep.diagnostics["model_constant"] = c
    rep.diagnostics["model_measured_ratio"] = comparisons[CALIBRATION_P].max_ratio
    for p, comp in comparisons.items():
        rep.diagnostics[f"model_tv_p={p}"] = comp.tv
        rep.diagnostics[f"model_max_ratio_p={p}"] = comp.max_ratio
        rep.check(comp.max_ratio <= c, "MODEL_BUDGET", f"max ratio {comp.max_ratio:.4g} > c = {c:.4g}", f"p={p}")
    tvs = [comparisons[p].tv for p in MODEL_PROBS]
    rep.check(
        all(a < b for a, b in zip(tvs, tvs[1:])),
        "MODEL_TV_TREND",
        f"TV distances {tvs} do not decrease as p decreases",
    )
    return rep
