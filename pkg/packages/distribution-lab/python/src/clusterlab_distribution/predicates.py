"""
Typicality predicates on outcomes H.

Each predicate returns a ``CheckReport`` whose issues name the violated
clauses; the report is truthy exactly when the predicate holds.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Optional

from clusterlab_core.errors import InvalidInstanceError, MissingExpectationsError
from clusterlab_core.exactprob import Number, exact_sqrt, to_float
from clusterlab_core.graphs import RUniformHypergraph, is_clique_realizable
from clusterlab_core.reports import CheckReport
from clusterlab_distribution.distribution import Distribution
from clusterlab_distribution.exact import exact_distribution
from clusterlab_stats.clusters import count_wk, t_counts
from clusterlab_stats.conditional import q2, q3, q4
from clusterlab_stats.legality import c_hat_legal, is_legal
from clusterlab_stats.moments import MomentTable, delta_k_exact
from clusterlab_stats.stars import complex_sum

logger = logging.getLogger(__name__)


def default_omega(n: int) -> float:
    return math.log(math.log(max(n, 3))) + 3


@dataclass
class Expectations:
    q2: Number
    q3: Number
    q4: Number
    c: Number
    c_hat_legal: Number
    delta3: Number
    source: str = "exact"
    stderr: Dict[str, float] = field(default_factory=dict)


@dataclass
class PredicateConfig:
    table: MomentTable
    omega: Optional[float] = None
    plaus_C: float = 1.0
    plaus_delta: float = 0.2
    expectations: Optional[Expectations] = None

    def __post_init__(self):
        if self.omega is None:
            self.omega = default_omega(self.table.n)
        if self.omega <= 0:
            raise InvalidInstanceError(f"omega must be positive, got {self.omega}")
        if self.plaus_C <= 0:
            raise InvalidInstanceError(f"plaus_C must be positive, got {self.plaus_C}")
        if not 0 < self.plaus_delta < 0.25:
            raise InvalidInstanceError(f"plaus_delta must lie in (0, 1/4), got {self.plaus_delta}")

    def require_expectations(self) -> Expectations:
        if self.expectations is None:
            raise MissingExpectationsError("predicate needs expectations (exact or Monte Carlo)")
        return self.expectations

    @property
    def log_factor(self) -> float:
        return math.log(self.table.n) ** self.plaus_C


def _edge_count_window(cfg: PredicateConfig) -> float:
    return cfg.omega * to_float(exact_sqrt(cfg.table.mu_r))


def is_good(H: RUniformHypergraph, cfg: PredicateConfig) -> CheckReport:
    """Realizable, edge count near mu_r, and each Q_i and C within omega times its mean."""
    exp = cfg.require_expectations()
    report = CheckReport()
    realizable = report.check(is_clique_realizable(H), "not_realizable", "not H_r(G)")
    gap = abs(H.e() - to_float(cfg.table.mu_r))
    report.check(
        gap <= _edge_count_window(cfg),
        "edge_count",
        f"|e(H) - mu_r| = {gap:.6g} exceeds omega*sqrt(mu_r)",
    )
    p = cfg.table.p
    for name, value, mean in (
        ("Q2", q2(H), exp.q2),
        ("Q3", q3(H, p), exp.q3),
        ("Q4", q4(H, p), exp.q4),
    ):
        report.check(
            to_float(value) <= cfg.omega * to_float(mean), name, f"{name}(H) exceeds omega*E[{name}]"
        )
    if realizable:
        report.check(
            to_float(complex_sum(H, p)) <= cfg.omega * to_float(exp.c), "C", "C(H) exceeds omega*E[C]"
        )
    return report


def is_plausible(H: RUniformHypergraph, cfg: PredicateConfig) -> CheckReport:
    """Pair counts t_k bounded by (log n)^C nu_k, no mid-size overlaps, edge count within n^(1-delta)."""
    table = cfg.table
    r = H.r
    report = CheckReport()
    t = t_counts(H).t_by_size
    for k in sorted({0, 1, 2, r - 1}):
        report.check(
            t[k] <= cfg.log_factor * to_float(table.nu[k]),
            f"t{k}",
            f"t_{k}(H) = {t[k]} exceeds (log n)^C nu_{k}",
        )
    for k in range(3, r - 1):
        report.check(t[k] == 0, f"t{k}", f"t_{k}(H) = {t[k]} must be zero")
    gap = abs(H.e() - to_float(table.mu_r))
    report.check(
        gap <= table.n ** (1 - cfg.plaus_delta),
        "edge_count",
        f"|e(H) - mu_r| = {gap:.6g} exceeds n^(1-delta)",
    )
    return report


def is_well_behaved(H: RUniformHypergraph, cfg: PredicateConfig) -> CheckReport:
    exp = cfg.require_expectations()
    report = is_good(H, cfg)
    report.check(
        count_wk(H, 3) <= cfg.omega * to_float(exp.delta3), "W3", "W_3(H) exceeds omega*Delta_3"
    )
    return report


def is_reasonable(H: RUniformHypergraph, cfg: PredicateConfig) -> CheckReport:
    exp = cfg.require_expectations()
    report = is_plausible(H, cfg)
    report.check(is_legal(H), "illegal", "H contains an illegal cluster")
    report.check(
        to_float(c_hat_legal(H, cfg.table.p)) <= cfg.log_factor * to_float(exp.c_hat_legal),
        "C_hat_L",
        "C_hat_L(H) exceeds (log n)^C E[C_hat_L]",
    )
    return report


def expectations_exact(
    n: int, r: int, p: Number, dist: Optional[Distribution] = None, workers: int = 1
) -> Expectations:
    """Exact means of Q_2, Q_3, Q_4, C and C_hat_L under the enumerated law, plus Delta_3."""
    if dist is None:
        dist = exact_distribution(n, r, p, workers=workers)
    return Expectations(
        q2=dist.expectation(q2),
        q3=dist.expectation(lambda H: q3(H, p)),
        q4=dist.expectation(lambda H: q4(H, p)),
        c=dist.expectation(lambda H: complex_sum(H, p)),
        c_hat_legal=dist.expectation(lambda H: c_hat_legal(H, p)),
        delta3=delta_k_exact(n, r, p, 3, workers=workers),
        source="exact",
    )
