"""Factor and matching counts, their expectation, and the deletion process."""
import itertools
import logging
from fractions import Fraction
from math import comb

from clusterlab_core.graphs import LabeledGraph, RUniformHypergraph, clique_hypergraph, sample_gnp
from clusterlab_core.rng import RngStream
from clusterlab_factors.counting import count_factors, count_matchings
from clusterlab_factors.expectation import expected_factors_exact
from clusterlab_factors.shamir import conditional_xi_mean, shamir_process, shamir_runs
from clusterlab_guardians.common import HALF, Grid, IdentityReport, within_stderr
from clusterlab_stats.moments import sigma_nm, sigma_npi

logger = logging.getLogger(__name__)

SHAMIR_N, SHAMIR_R, SHAMIR_STOP = 6, 3, 10
# deletion states checked for E[xi | state] = gamma
XI_STATES = 5


def validate_factor_counts(rep: IdentityReport, grid: Grid, workers: int = 1) -> IdentityReport:
    rep.begin("factors")
    for n, expected in ((6, 10), (9, 280)):
        got = count_factors(LabeledGraph.complete(n), 3)
        rep.check(got == expected, "F3_COMPLETE", f"F_3(K_{n}) = {got} != {expected}", f"n={n}")
    rep.check(count_factors(LabeledGraph.cycle(6), 3) == 0, "F3_CYCLE", "F_3(C_6) != 0")
    sigma = sigma_nm(6, 3, 20)
    rep.check(sigma == 10, "SIGMA_NM", f"Sigma(6, 20) = {sigma} != 10")
    for idx in range(grid.factor_graphs):
        n = (6, 9)[idx % 2]
        G = sample_gnp(n, Fraction(7, 10), RngStream(grid.seed + 6, idx))
        a, b = count_factors(G, 3), count_matchings(clique_hypergraph(G, 3))
        rep.check(a == b, "FACTOR_VS_MATCHING", f"{a} != {b}", f"n={n},graph={idx}")
    if grid.factor_expectation:
        got = expected_factors_exact(6, 3, HALF, workers=workers)
        target = sigma_npi(6, 3, HALF**3)
        rep.check(got == target == Fraction(5, 32), "E_FACTORS", f"E[F_3] = {got}, Sigma = {target}", "n=6,p=1/2")
    got = expected_factors_exact(3, 3, HALF, workers=workers)
    rep.check(got == HALF**3, "E_FACTORS", f"E[F_3] = {got} at n = r", "n=3,p=1/2")
    return rep


def validate_shamir(rep: IdentityReport, grid: Grid, workers: int = 1) -> IdentityReport:
    rep.begin("shamir")
    n, r, stop = SHAMIR_N, SHAMIR_R, SHAMIR_STOP
    summary = shamir_runs(n, r, grid.seed, grid.shamir_runs, stop, workers=workers, keep_traces=False)
    at = f"n={n},r={r},runs={grid.shamir_runs}"
    rep.check(summary.recursion_ok, "RECURSION", "Phi_t != Phi_{t-1} (1 - xi_t) in some run", at)
    rep.check(summary.gamma_1 == Fraction(1, 10), "GAMMA_1", f"gamma_1 = {summary.gamma_1}", at)
    rep.check(
        within_stderr(summary.mean_phi_m, summary.expected_phi_m, summary.stderr_phi_m, grid.stderr_k),
        "PHI_MEAN",
        f"mean Phi_{stop} = {float(summary.mean_phi_m):.6g}, exact {float(summary.expected_phi_m):.6g}",
        at,
    )
    for t, mean in summary.alpha_mean.items():
        rep.check(
            within_stderr(mean, 0, summary.alpha_stderr[t], grid.stderr_k),
            "ALPHA_MEAN",
            f"mean alpha_{t} = {float(mean):.6g} (stderr {summary.alpha_stderr[t]:.3g})",
            f"{at},t={t}",
        )
    rep.diagnostics["shamir_conjecture_observable"] = summary.conjecture_observable

    N = comb(n, r)
    trace = shamir_process(n, r, RngStream(grid.seed, grid.shamir_runs), stop_m=N - XI_STATES)
    alive = set(itertools.combinations(range(n), r))
    for step in trace.steps:
        H = RUniformHypergraph.build(n, r, sorted(alive))
        if count_matchings(H):
            mean = conditional_xi_mean(H)
            rep.check(mean == step.gamma, "XI_MEAN", f"E[xi] = {mean} != gamma = {step.gamma}", f"t={step.t}")
        alive.discard(step.removed_edge)
    return rep