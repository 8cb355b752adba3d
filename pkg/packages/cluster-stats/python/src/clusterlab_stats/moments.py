"""
Closed-form moments of the clique-copy count, and enumeration oracles for them.

Every quantity is evaluated for concrete (n, r, p). With a Fraction p the
polynomial quantities are exact rationals; thresholds involving logarithms
and fractional powers are always reals.
"""
import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

from clusterlab_core.errors import InvalidInstanceError
from clusterlab_core.events import popcount
from clusterlab_core.exactprob import (
    ExactProb,
    Number,
    check_probability,
    exact_sqrt,
    falling_factorial,
    is_exact,
    log_value,
    to_float,
)
from clusterlab_core.graphs import rank_rset, rset_neighbours
from clusterlab_core.guards import DELTA_K_SUBSETS, check_guard
from clusterlab_core.pool import run_partitioned, split_range
from clusterlab_stats.clusters import connected_subsets, pair_mask

logger = logging.getLogger(__name__)


@dataclass
class MomentTable:
    n: int
    r: int
    p: Number
    N: int
    pi: ExactProb
    mu_r: ExactProb
    nu: Dict[int, ExactProb]
    nu0: Dict[int, ExactProb]
    delta2: ExactProb
    delta2_0: ExactProb
    lambda_: ExactProb
    lambda_closed: ExactProb
    lambda_prime: ExactProb
    phi: ExactProb
    xi: Number
    mu_next: ExactProb
    variance_bound: ExactProb
    q_r: float
    m_r: float
    pi_r: float
    xi_main: Optional[ExactProb] = None
    xi_sqrt: Optional[Number] = None
    sigma_npi: Optional[ExactProb] = None
    exact: bool = field(default=True)


def _check_instance(n: int, r: int) -> None:
    if r < 3 or r > n:
        raise InvalidInstanceError(f"need 3 <= r <= n, got n={n}, r={r}")


def nu_k(n: int, r: int, p: Number, k: int) -> ExactProb:
    """Expected number of unordered pairs of copies sharing exactly k vertices."""
    return comb(n, r) * comb(r, k) * comb(n - r, r - k) * p ** (2 * comb(r, 2) - comb(k, 2)) / 2


def lambda_closed_form(n: int, r: int, p: Number) -> ExactProb:
    """Excess of edge-overlapping pairs over the independent-copies count, summed by overlap size."""
    total: ExactProb = 0
    for s in range(2, r):
        total += comb(n, r) * comb(r, s) * comb(n - r, r - s) * p ** (2 * comb(r, 2)) * (
            p ** (-comb(s, 2)) - 1
        )
    return total / 2


def lambda_prime(n: int, r: int, p: Number) -> ExactProb:
    return comb(n, r) * comb(r, 2) * comb(n - r, r - 2) * p ** (2 * comb(r, 2)) * (p ** (-1) - 1) / 2


def mu(n: int, r: int, p: Number) -> ExactProb:
    if r > n:
        return 0
    return comb(n, r) * p ** comb(r, 2)


def phi_value(n: int, r: int, p: Number) -> ExactProb:
    """Largest Pr(A_i | A_j) over distinct copies: overlap in r-1 vertices leaves r-1 new edges."""
    _check_instance(n, r)
    return p ** (r - 1)


def xi_parts(n: int, r: int, p: Number) -> Tuple[Number, Optional[ExactProb], Optional[Number]]:
    """Error scale (total, main part, square-root part); the parts are only split for r = 3."""
    if r == 3:
        main = n**5 * p**7
        root = exact_sqrt(main)
        return main + root, main, root
    if r == 4:
        return n**3 * p**6 + n**8 * p**16, None, None
    return mu(n, r + 1, p), None, None


def thresholds(n: int, r: int) -> Tuple[float, float, float]:
    """(q_r, m_r, pi_r): sharp K_r-factor threshold and perfect matching thresholds."""
    q = ((factorial(r - 1) * math.log(n)) ** (1 / comb(r, 2))) * n ** (-2 / r)
    m = n * math.log(n) / r
    return q, m, m / comb(n, r)


def moment_table(n: int, r: int, p: Number) -> MomentTable:
    _check_instance(n, r)
    check_probability(p, open_interval=True)
    nu = {k: nu_k(n, r, p, k) for k in range(r)}
    nu0 = {k: p ** comb(k, 2) * v for k, v in nu.items()}
    delta2 = sum((nu[k] for k in range(2, r)), 0)
    delta2_0 = sum((nu0[k] for k in range(2, r)), 0)
    xi, xi_main, xi_sqrt = xi_parts(n, r, p)
    q, m, pi_r = thresholds(n, r)
    mu_r = mu(n, r, p)
    table = MomentTable(
        n=n,
        r=r,
        p=p,
        N=comb(n, r),
        pi=p ** comb(r, 2),
        mu_r=mu_r,
        nu=nu,
        nu0=nu0,
        delta2=delta2,
        delta2_0=delta2_0,
        lambda_=delta2 - delta2_0,
        lambda_closed=lambda_closed_form(n, r, p),
        lambda_prime=lambda_prime(n, r, p),
        phi=phi_value(n, r, p),
        xi=xi,
        xi_main=xi_main,
        xi_sqrt=xi_sqrt,
        mu_next=mu(n, r + 1, p),
        variance_bound=mu_r + 2 * delta2,
        q_r=q,
        m_r=m,
        pi_r=pi_r,
        sigma_npi=sigma_npi(n, r, p ** comb(r, 2)) if n % r == 0 else None,
        exact=is_exact(p),
    )
    logger.debug("moment table n=%d r=%d: mu=%s delta2=%s", n, r, mu_r, delta2)
    return table


def phi_brute_force(n: int, r: int, p: Number) -> ExactProb:
    """Max of Pr(A_i | A_j) over all ordered pairs of distinct r-sets of [n]."""
    _check_instance(n, r)
    N = comb(n, r)
    check_guard("delta_k_subsets", N * (N - 1), DELTA_K_SUBSETS)
    masks = [pair_mask(S, n) for S in itertools.combinations(range(n), r)]
    best = min(popcount(a & ~b) for a, b in itertools.permutations(masks, 2))
    return p**best


@lru_cache(maxsize=8)
def _family_overlap(n: int, r: int) -> Tuple[Dict[int, frozenset], Tuple[int, ...]]:
    adj = {}
    masks = []
    for i, S in enumerate(itertools.combinations(range(n), r)):
        adj[i] = frozenset(rank_rset(T, n) for T in rset_neighbours(S, n))
        masks.append(pair_mask(S, n))
    return adj, tuple(masks)


def _cluster_edge_counts(task) -> Dict[int, int]:
    n, r, k, start, stop = task
    adj, masks = _family_overlap(n, r)
    counts: Dict[int, int] = {}
    for subset in connected_subsets(adj, k, roots=range(start, stop)):
        covered = 0
        for i in subset:
            covered |= masks[i]
        c = popcount(covered)
        counts[c] = counts.get(c, 0) + 1
    return counts


def delta_k_exact(n: int, r: int, p: Number, k: int, workers: int = 1) -> ExactProb:
    """E[W_k]: sum over connected k-sets of copies of p to the size of their edge union."""
    if k not in (2, 3, 4):
        raise InvalidInstanceError(f"delta_k_exact supports k in (2, 3, 4), got {k}")
    if r < 2 or r > n:
        raise InvalidInstanceError(f"need 2 <= r <= n, got n={n}, r={r}")
    N = comb(n, r)
    degree = sum(comb(r, s) * comb(n - r, r - s) for s in range(2, r))
    check_guard("delta_k_subsets", N * degree ** (k - 1), DELTA_K_SUBSETS)
    tasks = [(n, r, k, c.start, c.stop) for c in split_range(N, workers)]
    counts: Dict[int, int] = {}
    for part in run_partitioned(_cluster_edge_counts, tasks, workers):
        for c, v in part.items():
            counts[c] = counts.get(c, 0) + v
    return sum((v * p**c for c, v in sorted(counts.items())), 0)


def _blocks(n: int, r: int) -> int:
    if r <= 0 or n % r:
        raise InvalidInstanceError(f"r={r} does not divide n={n}")
    k = n // r
    return factorial(n) // (factorial(r) ** k * factorial(k))


def sigma_nm(n: int, r: int, m: int) -> ExactProb:
    """Expected number of perfect matchings of the uniform random hypergraph with m edges."""
    N = comb(n, r)
    blocks = _blocks(n, r)
    if not 0 <= m <= N:
        raise InvalidInstanceError(f"m={m} outside [0, {N}]")
    k = n // r
    return blocks * Fraction(falling_factorial(m, k), falling_factorial(N, k))


def sigma_npi(n: int, r: int, pi: Number) -> ExactProb:
    """Expected number of perfect matchings of the binomial random hypergraph with density pi."""
    return _blocks(n, r) * pi ** (n // r)


@dataclass(frozen=True)
class RatioReport:
    exact: ExactProb
    log_ratio: float
    leading: float
    log_leading: float


def ratio_sigma(n: int, r: int, m: int) -> RatioReport:
    """Sigma(n, m/N) / Sigma(n, m), with the leading approximation exp(n^2 / (2 r^2 m))."""
    N = comb(n, r)
    if not 0 < m <= N:
        raise InvalidInstanceError(f"m={m} outside (0, {N}]")
    if m < n // r:
        raise InvalidInstanceError(f"m={m} is below n/r={n // r}: no perfect matching fits, Sigma(n, m) = 0")
    exact = sigma_npi(n, r, Fraction(m, N)) / sigma_nm(n, r, m)
    log_leading = n * n / (2 * r * r * m)
    leading = math.exp(log_leading) if log_leading < 700 else math.inf
    return RatioReport(exact=exact, log_ratio=log_value(exact), leading=leading, log_leading=log_leading)


def cluster_growth_diagnostic(n_values: Sequence[int], r: int, workers: int = 1) -> List[Dict[str, float]]:
    """Delta_3 against mu_{r+1} at p = n^(-2/r), for a trend over n (never asserted)."""
    rows = []
    for n in n_values:
        p = n ** (-2 / r)
        d3 = delta_k_exact(n, r, p, 3, workers=workers)
        nxt = mu(n, r + 1, p)
        rows.append(
            {
                "n": n,
                "p": p,
                "delta3": to_float(d3),
                "mu_next": to_float(nxt),
                "ratio": to_float(d3) / to_float(nxt) if nxt else math.inf,
            }
        )
    return rows
