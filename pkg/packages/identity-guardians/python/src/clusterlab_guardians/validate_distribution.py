"""
The enumerated law of H_r(G(n,p)) against the moments, the conditional
chain, and the complex-term bounds.
"""
import logging
from fractions import Fraction
from math import comb
from typing import Dict

from clusterlab_core.events import conditional_chain, outcome_probability
from clusterlab_core.graphs import clique_family, hypergraph_of, is_clique_realizable, outcome_of
from clusterlab_core.rng import RngStream
from clusterlab_distribution.distribution import Distribution
from clusterlab_distribution.exact import exact_distribution
from clusterlab_guardians.common import HALF, Grid, IdentityReport, Instance
from clusterlab_stats.clusters import count_wk
from clusterlab_stats.legality import c_hat_legal, is_legal
from clusterlab_stats.moments import moment_table
from clusterlab_stats.stars import all_star_clusters, c_hat, complex_sum, expected_c_hat

logger = logging.getLogger(__name__)

# all 2^N outcomes are listed for the converse of realizability up to this N
CONVERSE_MEMBERS = 12


def _distribution(cache: Dict[Instance, Distribution], n: int, r: int, workers: int) -> Distribution:
    if (n, r) not in cache:
        cache[(n, r)] = exact_distribution(n, r, HALF, workers=workers)
    return cache[(n, r)]


def validate_exact_law(
    rep: IdentityReport, grid: Grid, cache: Dict[Instance, Distribution], workers: int = 1
) -> IdentityReport:
    rep.begin("exact_law")
    for n, r in grid.dist_instances:
        at = f"n={n},r={r},p=1/2"
        dist = _distribution(cache, n, r, workers)
        table = moment_table(n, r, HALF)
        rep.check(dist.total() == 1, "MASS", f"total mass {dist.total()}", at)
        mean_e = dist.expectation(lambda H: H.e())
        rep.check(mean_e == table.mu_r, "MEAN_E", f"E[e(H)] = {mean_e} != mu_r = {table.mu_r}", at)
        mean_w2 = dist.expectation(lambda H: count_wk(H, 2))
        rep.check(mean_w2 == table.delta2, "MEAN_W2", f"E[W2] = {mean_w2} != {table.delta2}", at)
        unrealizable = [H.edges for H, prob in dist.items() if not is_clique_realizable(H)]
        rep.check(not unrealizable, "SUPPORT", f"{len(unrealizable)} unrealizable outcomes in support", at)
        family = clique_family(n, r)
        if family.N <= CONVERSE_MEMBERS:
            missing = 0
            for mask in range(1 << family.N):
                H = hypergraph_of([j for j in range(family.N) if mask >> j & 1], n, r)
                if is_clique_realizable(H) and not dist.prob_of(H):
                    missing += 1
            rep.check(missing == 0, "SUPPORT", f"{missing} realizable outcomes with probability 0", at)
    return rep


def validate_chain(
    rep: IdentityReport, grid: Grid, cache: Dict[Instance, Distribution], workers: int = 1
) -> IdentityReport:
    """Chain products equal Pr(I = Y) for every possible Y at n=4 and sampled Y at n=5."""
    rep.begin("chain")
    for n, sampled in ((4, None), (5, grid.chain_sampled)):
        family = clique_family(n, 3)
        dist = _distribution(cache, n, 3, workers)
        support = [H for H, _ in dist.items()]
        gen = RngStream(grid.seed, n).generator()
        if sampled is not None and sampled < len(support):
            picks = sorted(gen.choice(len(support), size=sampled, replace=False))
            support = [support[int(i)] for i in picks]
        for H in support:
            Y = outcome_of(H)
            at = f"n={n},Y={Y.indices}"
            report = conditional_chain(family, Y, HALF)
            exact = dist.prob_of(H)
            rep.check(report.product_prob == exact, "CHAIN", f"{report.product_prob} != {exact}", at)
            brute = outcome_probability(family, Y, HALF)
            rep.check(brute == exact, "OUTCOME_PROB", f"{brute} != {exact}", at)
            rest = Y.complement()
            for _ in range(grid.chain_orders):
                order = tuple(int(rest[i]) for i in gen.permutation(len(rest)))
                other = conditional_chain(family, Y, HALF, order=order).product_prob
                rep.check(other == exact, "CHAIN_ORDER", f"order {order} gives {other}", at)
    return rep


def validate_complex_bounds(
    rep: IdentityReport, grid: Grid, cache: Dict[Instance, Distribution], workers: int = 1
) -> IdentityReport:
    """
    C(H) <= C_hat(H) on every possible H, with C_hat_L between them when H is
    legal, and E[C] <= E[C_hat] = sum of star presence probabilities.
    """
    rep.begin("complex_bounds")
    for n, r in grid.complex_instances:
        at = f"n={n},r={r},p=1/2"
        dist = _distribution(cache, n, r, workers)
        worst = legal_worst = 0
        e_c = e_hat = Fraction(0)
        for H, prob in dist.items():
            c = complex_sum(H, HALF)
            h = c_hat(H, HALF)
            if c > h:
                worst += 1
            if prob and is_legal(H):
                legal = c_hat_legal(H, HALF)
                if not c <= legal <= h:
                    legal_worst += 1
            e_c += prob * c
            e_hat += prob * h
        rep.check(worst == 0, "C_LE_C_HAT", f"C(H) > C_hat(H) on {worst} outcomes", at)
        rep.check(
            legal_worst == 0, "C_HAT_LEGAL", f"C <= C_hat_L <= C_hat fails on {legal_worst} legal outcomes", at
        )
        rep.check(e_c <= e_hat, "EC_LE_ECHAT", f"E[C] = {e_c} > E[C_hat] = {e_hat}", at)
        stars = expected_c_hat(all_star_clusters(n, r), HALF)
        rep.check(stars == e_hat, "EC_HAT", f"E[C_hat] = {e_hat} != sum of pi1 = {stars}", at)
    return rep
