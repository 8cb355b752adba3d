"""
One function per subcommand. Each takes a validated config, writes its result
file and returns the process exit code.
"""
import logging
import math
from math import comb
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd

from clusterlab_contracts.configs import (
    ExactDistConfig,
    FactorsConfig,
    MomentsConfig,
    ShamirConfig,
    SimulateConfig,
    VerifyConfig,
)
from clusterlab_contracts.records import (
    ClusterReportRecord,
    DistributionRecord,
    FactorReportRecord,
    IdentityIssueRecord,
    MomentTableRecord,
    ShamirStepRecord,
    ShamirSummaryRecord,
    SimulateRecord,
    StatSummaryRow,
    VerifySummaryRecord,
)
from clusterlab_core.errors import InvalidInstanceError
from clusterlab_core.exactprob import format_real
from clusterlab_core.graphs import LabeledGraph, clique_hypergraph
from clusterlab_core.guards import GRAPH_EDGE_BITS, guard_override_enabled
from clusterlab_core.textio import read_structure
from clusterlab_cli.config import probability, resolve_workers
from clusterlab_cli.output import render, write_csv, write_json, write_jsonl
from clusterlab_distribution.exact import exact_distribution
from clusterlab_distribution.montecarlo import (
    DEFAULT_STATISTICS,
    STATISTICS,
    expectations_monte_carlo,
    monte_carlo_stats,
)
from clusterlab_distribution.predicates import PredicateConfig, expectations_exact
from clusterlab_factors.counting import count_factors, count_matchings
from clusterlab_factors.expectation import conditional_factor_ratio, expected_factors_exact
from clusterlab_factors.shamir import shamir_runs
from clusterlab_guardians.suite import run_identity_suite
from clusterlab_stats.clusters import ClusterReport, t_counts
from clusterlab_stats.moments import moment_table, ratio_sigma, sigma_nm, sigma_npi

logger = logging.getLogger(__name__)

PREDICATE_STATISTICS = {"plausible", "good", "well_behaved", "reasonable"}
NEEDS_EXPECTATIONS = {"good", "well_behaved", "reasonable"}


def _enumerable(n: int) -> bool:
    return comb(n, 2) <= GRAPH_EDGE_BITS or guard_override_enabled()


def cmd_moments(cfg: MomentsConfig) -> int:
    p, exact = probability(cfg.p)
    table = moment_table(cfg.n, cfg.r, p)

    def fmt(x):
        return render(x, exact)

    record = MomentTableRecord(
        n=cfg.n,
        r=cfg.r,
        p=fmt(p),
        mode="exact" if exact else "float",
        N=str(table.N),
        pi=fmt(table.pi),
        mu_r=fmt(table.mu_r),
        mu_next=fmt(table.mu_next),
        nu={str(k): fmt(v) for k, v in table.nu.items()},
        nu0={str(k): fmt(v) for k, v in table.nu0.items()},
        delta2=fmt(table.delta2),
        delta2_0=fmt(table.delta2_0),
        lambda_=fmt(table.lambda_),
        lambda_closed=fmt(table.lambda_closed),
        lambda_prime=fmt(table.lambda_prime),
        phi=fmt(table.phi),
        xi=fmt(table.xi),
        xi_main=None if table.xi_main is None else fmt(table.xi_main),
        xi_sqrt=None if table.xi_sqrt is None else fmt(table.xi_sqrt),
        variance_bound=fmt(table.variance_bound),
        q_r=format_real(table.q_r),
        m_r=format_real(table.m_r),
        pi_r=format_real(table.pi_r),
        sigma_npi=None if table.sigma_npi is None else fmt(table.sigma_npi),
    )
    if cfg.format == "csv":
        flat = record.model_dump(by_alias=True, exclude_none=True)
        rows = []
        for key in sorted(flat):
            value = flat[key]
            if isinstance(value, dict):
                rows.extend({"field": f"{key}.{k}", "value": v} for k, v in sorted(value.items()))
            else:
                rows.append({"field": key, "value": str(value)})
        write_csv(pd.DataFrame(rows, columns=["field", "value"]), cfg.out)
    else:
        write_json(record, cfg.out)
    return 0


def cmd_exactdist(cfg: ExactDistConfig) -> int:
    p, exact = probability(cfg.p)
    dist = exact_distribution(cfg.n, cfg.r, p, workers=resolve_workers(cfg.workers))
    records = [
        DistributionRecord(edges=[list(e) for e in H.edges], prob=render(prob, exact)) for H, prob in dist.items()
    ]
    if cfg.format == "csv":
        frame = pd.DataFrame(
            [{"edges": "|".join(" ".join(map(str, e)) for e in r.edges), "prob": r.prob} for r in records],
            columns=["edges", "prob"],
        )
        write_csv(frame, cfg.out)
    else:
        write_jsonl(records, cfg.out)
    return 0


def _predicate_config(cfg: SimulateConfig, p, workers: int, with_expectations: bool) -> PredicateConfig:
    table = moment_table(cfg.n, cfg.r, p)
    if not with_expectations:
        expectations = None
    elif _enumerable(cfg.n):
        expectations = expectations_exact(cfg.n, cfg.r, p, workers=workers)
    else:
        samples = cfg.expectation_samples or cfg.samples
        expectations = expectations_monte_carlo(cfg.n, cfg.r, p, samples, cfg.seed, workers=workers)
    return PredicateConfig(
        table=table,
        omega=cfg.omega,
        plaus_C=cfg.plaus_C,
        plaus_delta=cfg.plaus_delta,
        expectations=expectations,
    )


def cmd_simulate(cfg: SimulateConfig) -> int:
    p, exact = probability(cfg.p)
    workers = resolve_workers(cfg.workers)
    names = tuple(cfg.statistics or DEFAULT_STATISTICS)
    unknown = [s for s in names if s not in STATISTICS]
    if unknown:
        raise InvalidInstanceError(f"unknown statistics {unknown}; choose from {sorted(STATISTICS)}")
    pred_cfg: Optional[PredicateConfig] = None
    if PREDICATE_STATISTICS.intersection(names):
        pred_cfg = _predicate_config(cfg, p, workers, bool(NEEDS_EXPECTATIONS.intersection(names)))
    summary = monte_carlo_stats(cfg.n, cfg.r, p, cfg.samples, cfg.seed, names, cfg=pred_cfg, workers=workers)
    frame = summary.to_frame()
    if cfg.format == "csv":
        write_csv(frame, cfg.out)
        return 0
    record = SimulateRecord(
        n=cfg.n,
        r=cfg.r,
        p=render(p, exact),
        mode="exact" if exact else "float",
        samples=cfg.samples,
        seed=cfg.seed,
        rng=summary.rng,
        stats=[StatSummaryRow(**row) for row in frame.to_dict(orient="records")],
    )
    write_json(record, cfg.out)
    return 0


def _cluster_record(report: ClusterReport) -> ClusterReportRecord:
    return ClusterReportRecord(
        W2=str(report.w[2]),
        W3=str(report.w[3]),
        W4=str(report.w[4]),
        t_s={str(s): str(v) for s, v in report.t_by_size.items()},
        t_iso_s={str(s): str(v) for s, v in report.t_isolated.items()},
        t_total=str(report.t_total),
    )


def cmd_factors(cfg: FactorsConfig) -> int:
    workers = resolve_workers(cfg.workers)
    if cfg.graph is not None:
        obj = read_structure(cfg.graph)
        if isinstance(obj, LabeledGraph):
            H = clique_hypergraph(obj, cfg.r)
            record = FactorReportRecord(
                n=obj.n, r=cfg.r, factors=str(count_factors(obj, cfg.r)), matchings=str(count_matchings(H))
            )
        else:
            H = obj
            record = FactorReportRecord(n=obj.n, r=obj.r, matchings=str(count_matchings(obj)))
        record.clusters = _cluster_record(t_counts(H))
        write_json(record, cfg.out)
        return 0

    n, r = cfg.n, cfg.r
    p, exact = probability(cfg.p)
    table = moment_table(n, r, p) if r >= 3 else None
    pi = p ** comb(r, 2)
    N = comb(n, r)
    # Sigma(n, m) vanishes below n/r edges
    m = cfg.m if cfg.m is not None else max(n // r, min(N, round(float(pi * N))))
    if not n // r <= m <= N:
        raise InvalidInstanceError(f"m={m} outside [{n // r}, {N}]")
    ratio = ratio_sigma(n, r, m)
    record = FactorReportRecord(
        n=n,
        r=r,
        p=render(p, exact),
        sigma_npi=render(sigma_npi(n, r, pi), exact),
        sigma_nm=render(sigma_nm(n, r, m), exact),
        ratio=render(ratio.exact, exact),
        log_ratio=format_real(ratio.log_ratio),
        ratio_leading=format_real(ratio.leading),
    )
    if _enumerable(n):
        record.expected_factors = render(expected_factors_exact(n, r, p, workers=workers), exact)
        if table is not None:
            record.conditional = _conditional(n, r, p, m, cfg, table, workers)
    write_json(record, cfg.out)
    return 0


def _conditional(n, r, p, m, cfg: FactorsConfig, table, workers: int) -> Optional[Dict[str, str]]:
    pred_cfg = PredicateConfig(
        table=table, omega=cfg.omega, expectations=expectations_exact(n, r, p, workers=workers)
    )
    try:
        res = conditional_factor_ratio(n, r, p, m, pred_cfg, workers=workers)
    except InvalidInstanceError as exc:
        logger.warning("conditional factor ratio skipped: %s", exc)
        return None
    return {
        "m": str(res.m),
        "lhs": format_real(res.lhs),
        "rhs": format_real(res.rhs),
        "prob_bin_m": format_real(res.prob_bin_m),
        "log_ratio": format_real(res.log_ratio),
    }


def _summary_path(out: str) -> Path:
    path = Path(out)
    return path.with_name(path.stem + ".summary.json")


def cmd_shamir(cfg: ShamirConfig) -> int:
    workers = resolve_workers(cfg.workers)
    summary = shamir_runs(cfg.n, cfg.r, cfg.seed, cfg.runs, cfg.stop_m, workers=workers)
    record = ShamirSummaryRecord(
        n=summary.n,
        r=summary.r,
        runs=summary.runs,
        stop_m=summary.stop_m,
        seed=summary.seed,
        rng=summary.rng,
        phi0=str(summary.phi0),
        gamma_1=format_real(summary.gamma_1),
        mean_phi_m=format_real(summary.mean_phi_m),
        stderr_phi_m=format_real(summary.stderr_phi_m),
        expected_phi_m=format_real(summary.expected_phi_m),
        recursion_ok=summary.recursion_ok,
        alpha_mean={str(t): format_real(v) for t, v in summary.alpha_mean.items()},
        alpha_stderr={str(t): format_real(v) for t, v in summary.alpha_stderr.items()},
        conjecture_observable=format_real(summary.conjecture_observable),
        conjecture_scale=format_real(summary.conjecture_scale),
    )
    if cfg.format == "csv":
        rows: List[dict] = []
        for run, trace in enumerate(summary.traces):
            for step in trace.steps:
                rows.append(
                    ShamirStepRecord(
                        run=run,
                        t=step.t,
                        removed_edge=" ".join(map(str, step.removed_edge)),
                        Phi=str(step.Phi),
                        xi=render(step.xi, True),
                        gamma=render(step.gamma, True),
                        alpha=render(step.alpha, True),
                    ).model_dump()
                )
        columns = list(ShamirStepRecord.model_fields)
        write_csv(pd.DataFrame(rows, columns=columns), cfg.out)
        if cfg.out:
            write_json(record, str(_summary_path(cfg.out)))
    else:
        write_json(record, cfg.out)
    if not summary.recursion_ok:
        logger.error("Phi recursion failed in at least one run")
        return 1
    return 0


def cmd_verify(cfg: VerifyConfig) -> int:
    rep = run_identity_suite(cfg.grid, workers=resolve_workers(cfg.workers))
    record = VerifySummaryRecord(
        grid=cfg.grid,
        ok=rep.ok,
        checks=rep.checked,
        sections=dict(rep.sections),
        diagnostics={k: format_real(v) for k, v in sorted(rep.diagnostics.items())},
        issues=[IdentityIssueRecord(code=i.code, message=i.message, path=i.path or "") for i in rep.issues],
    )
    write_json(record, cfg.out)
    if not rep.ok:
        first = rep.first_failure
        logger.error("identity failed: [%s] %s @ %s", first.code, first.message, first.path)
        return 1
    return 0
