"""Expected factor counts by exact enumeration, and the conditional factor ratio diagnostic."""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict

from clusterlab_core.errors import InvalidInstanceError
from clusterlab_core.exactprob import ExactProb, Number, exact_sqrt, log_value, require_exact, to_float
from clusterlab_core.graphs import RUniformHypergraph
from clusterlab_distribution.exact import graph_weights, outcome_counts, outcome_edges
from clusterlab_distribution.predicates import PredicateConfig, is_well_behaved
from clusterlab_factors.counting import count_matchings
from clusterlab_stats.moments import sigma_nm

logger = logging.getLogger(__name__)


def _matchings_by_outcome(n: int, r: int, counts) -> Dict[int, int]:
    cache: Dict[int, int] = {}
    for outcome, _ in counts:
        if outcome not in cache:
            cache[outcome] = count_matchings(RUniformHypergraph(n, r, outcome_edges(outcome, n, r)))
    return cache


def expected_factors_exact(n: int, r: int, p: Number, workers: int = 1) -> ExactProb:
    """E[F_r(G(n,p))] summed over every labeled graph."""
    if n % r:
        raise InvalidInstanceError(f"r={r} does not divide n={n}")
    p = require_exact(p)
    counts = outcome_counts(n, r, workers)
    weights = graph_weights(n, p)
    matchings = _matchings_by_outcome(n, r, counts)
    return sum((c * weights[e] * matchings[o] for (o, e), c in counts.items() if matchings[o]), Fraction(0))


@dataclass(frozen=True)
class FactorRatio:
    m: int
    lhs: ExactProb
    rhs: float
    prob_bin_m: ExactProb
    log_ratio: float


def binomial_pmf(N: int, pi: Number, m: int) -> ExactProb:
    return comb(N, m) * pi**m * (1 - pi) ** (N - m)


def conditional_factor_ratio(
    n: int, r: int, p: Number, m: int, cfg: PredicateConfig, workers: int = 1
) -> FactorRatio:
    """
    Compare E[F_r ; H well behaved with m copies] / Pr(Bin(N, pi) = m) with
    Sigma(n, m) exp(-C(k,2)/C(m,2) (Delta_2 - Delta_2^0)), where k = n/r.

    Diagnostic only: both sides are reported, nothing is asserted.
    """
    if n % r:
        raise InvalidInstanceError(f"r={r} does not divide n={n}")
    table = cfg.table
    N = comb(n, r)
    if not 0 <= m <= N:
        raise InvalidInstanceError(f"m={m} outside [0, {N}]")
    window = cfg.omega * to_float(exact_sqrt(table.mu_r))
    if abs(m - to_float(table.mu_r)) > window:
        raise InvalidInstanceError(f"m={m} is outside mu_r +/- omega*sqrt(mu_r)")
    p = require_exact(p)
    counts = outcome_counts(n, r, workers)
    weights = graph_weights(n, p)
    mass: Dict[int, ExactProb] = {}
    for (o, e), c in counts.items():
        if bin(o).count("1") == m:
            mass[o] = mass.get(o, 0) + c * weights[e]
    total: ExactProb = Fraction(0)
    for o, prob in mass.items():
        H = RUniformHypergraph(n, r, outcome_edges(o, n, r))
        if not is_well_behaved(H, cfg):
            continue
        total += prob * count_matchings(H)
    pmf = binomial_pmf(N, table.pi, m)
    lhs = total / pmf
    k = n // r
    pairs_m = comb(m, 2)
    exponent = -comb(k, 2) / pairs_m * to_float(table.lambda_) if pairs_m else 0.0
    rhs = to_float(sigma_nm(n, r, m)) * math.exp(exponent)
    log_ratio = log_value(lhs) - math.log(rhs) if lhs and rhs > 0 else math.nan
    logger.info("conditional factor ratio at m=%d: lhs=%s rhs=%.6g", m, lhs, rhs)
    return FactorRatio(m=m, lhs=lhs, rhs=rhs, prob_bin_m=pmf, log_ratio=log_ratio)
