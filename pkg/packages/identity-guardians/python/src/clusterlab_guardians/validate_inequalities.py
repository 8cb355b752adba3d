"""Pair-count sandwich bounds on sampled clique hypergraphs."""
import logging
from fractions import Fraction

from clusterlab_core.graphs import clique_hypergraph, sample_gnp
from clusterlab_core.rng import RngStream
from clusterlab_guardians.common import HALF, Grid, IdentityReport
from clusterlab_stats.clusters import repeated_edge_bounds, t_counts
from clusterlab_stats.conditional import q3, q3_claim_sum

logger = logging.getLogger(__name__)

SAMPLE_PROBS = (HALF, Fraction(3, 4))


def validate_inequalities(rep: IdentityReport, grid: Grid) -> IdentityReport:
    rep.begin("inequalities")
    for n, r in grid.inequality_instances:
        for idx in range(grid.inequality_samples):
            p = SAMPLE_PROBS[idx % len(SAMPLE_PROBS)]
            H = clique_hypergraph(sample_gnp(n, p, RngStream(grid.seed + n * 100 + r, idx)), r)
            at = f"n={n},r={r},sample={idx}"
            report = t_counts(H)
            for name, (low, middle, high) in repeated_edge_bounds(report, r).items():
                rep.check(
                    low <= middle <= high,
                    name.upper(),
                    f"{name}: {low} <= {middle} <= {high} fails",
                    at,
                )
            for s, iso in report.t_isolated.items():
                total = report.t_by_size[s]
                rep.check(iso <= total, "T_ISOLATED", f"t_{s}^- = {iso} > t_{s} = {total}", at)
            if r == 3:
                claim, full = q3_claim_sum(H, p), q3(H, p)
                rep.check(claim <= full, "Q3_CLAIM", f"claim sum {claim} > Q3 {full}", at)
    return rep
