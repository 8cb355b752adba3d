"""Closed-form moments against enumeration, and the overlap-sum identity."""
import logging
from math import comb

from clusterlab_core.events import Outcome
from clusterlab_core.graphs import clique_family, hypergraph_of
from clusterlab_core.rng import RngStream
from clusterlab_guardians.common import Grid, IdentityReport
from clusterlab_stats.conditional import l2_sum
from clusterlab_stats.moments import delta_k_exact, moment_table, phi_brute_force

logger = logging.getLogger(__name__)


def validate_moments(rep: IdentityReport, grid: Grid, workers: int = 1) -> IdentityReport:
    rep.begin("moments")
    for n, r in grid.moment_instances:
        for p in grid.probs:
            at = f"n={n},r={r},p={p}"
            table = moment_table(n, r, p)
            enumerated = delta_k_exact(n, r, p, 2, workers=workers)
            rep.check(enumerated == table.delta2, "DELTA2", f"enumerated {enumerated} != {table.delta2}", at)
            rep.check(
                table.lambda_ == table.lambda_closed,
                "LAMBDA_PATHS",
                f"{table.lambda_} != closed form {table.lambda_closed}",
                at,
            )
            rep.check(table.lambda_ >= 0, "LAMBDA_SIGN", f"lambda = {table.lambda_} < 0", at)
            for k in range(2, r):
                rep.check(
                    table.nu0[k] == p ** comb(k, 2) * table.nu[k],
                    "NU0",
                    f"nu0_{k} != p^C({k},2) nu_{k}",
                    at,
                )
            brute = phi_brute_force(n, r, p)
            rep.check(brute == table.phi, "PHI", f"brute force {brute} != {table.phi}", at)
    return rep


def validate_l2(rep: IdentityReport, grid: Grid) -> IdentityReport:
    """L_2(Y) = (2|Y|/mu_r) Delta_2 for random outcomes Y of the complete clique family."""
    rep.begin("l2")
    for n, r in grid.moment_instances:
        family = clique_family(n, r)
        for p in grid.probs:
            table = moment_table(n, r, p)
            for i in range(grid.l2_outcomes):
                keep = RngStream(grid.seed, i).generator().random(family.N) < 0.5
                Y = Outcome(family, tuple(j for j in range(family.N) if keep[j]))
                H = hypergraph_of(Y, n, r)
                lhs = l2_sum(H, p)
                rhs = 2 * len(Y) * table.delta2 / table.mu_r
                rep.check(lhs == rhs, "L2", f"{lhs} != {rhs}", f"n={n},r={r},p={p},Y#{i}")
    return rep
