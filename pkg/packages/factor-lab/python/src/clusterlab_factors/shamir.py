"""
The random hyperedge-deletion process.

Start from the complete r-uniform hypergraph on [n] and delete hyperedges one
at a time in uniformly random order. Phi_t is the number of perfect matchings
left after t deletions, xi_t the fraction of matchings killed by deletion t,
gamma_t = (n/r) / (N - t + 1) its conditional mean, and alpha_t = xi_t - gamma_t.
"""
import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from clusterlab_core.errors import InvalidInstanceError
from clusterlab_core.graphs import Edge, RUniformHypergraph
from clusterlab_core.guards import MATCHING_VERTICES, check_guard
from clusterlab_core.pool import run_partitioned, split_range
from clusterlab_core.rng import RNG_VERSION, RngStream
from clusterlab_factors.counting import count_matchings, count_perfect, edge_mask
from clusterlab_stats.moments import sigma_nm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProcessStep:
    t: int
    removed_edge: Edge
    Phi: int
    xi: Fraction
    gamma: Fraction
    alpha: Fraction


@dataclass
class ProcessTrace:
    n: int
    r: int
    N: int
    phi0: int
    steps: List[ProcessStep] = field(default_factory=list)

    @property
    def final_phi(self) -> int:
        return self.steps[-1].Phi if self.steps else self.phi0

    def recursion_holds(self) -> bool:
        """Phi_t = Phi_{t-1} (1 - xi_t) and alpha_t = xi_t - gamma_t at every step."""
        prev = self.phi0
        for step in self.steps:
            if step.Phi != prev * (1 - step.xi) or step.alpha != step.xi - step.gamma:
                return False
            if step.gamma != Fraction(self.n // self.r, self.N - step.t + 1):
                return False
            prev = step.Phi
        return True


def _check(n: int, r: int, stop_m: int) -> int:
    if r < 2 or r > n or n % r:
        raise InvalidInstanceError(f"need 2 <= r <= n with r dividing n, got n={n}, r={r}")
    check_guard("matching_vertices", n, MATCHING_VERTICES)
    N = comb(n, r)
    if not 0 <= stop_m <= N:
        raise InvalidInstanceError(f"stop_m={stop_m} outside [0, {N}]")
    return N


def shamir_process(n: int, r: int, rng: RngStream, stop_m: int = 0) -> ProcessTrace:
    """Delete hyperedges until ``stop_m`` remain, recording Phi_t, xi_t, gamma_t and alpha_t."""
    N = _check(n, r, stop_m)
    edges = list(itertools.combinations(range(n), r))
    order = rng.generator().permutation(N)
    alive = {e: edge_mask(e) for e in edges}
    k = n // r
    phi = count_perfect(n, list(alive.values()))
    trace = ProcessTrace(n=n, r=r, N=N, phi0=phi)
    for t in range(1, N - stop_m + 1):
        e = edges[int(order[t - 1])]
        forced_mask = alive.pop(e)
        forced = count_perfect(n, list(alive.values()), covered=forced_mask) if phi else 0
        xi = Fraction(forced, phi) if phi else Fraction(0)
        gamma = Fraction(k, N - t + 1)
        phi -= forced
        trace.steps.append(ProcessStep(t, e, phi, xi, gamma, xi - gamma))
    return trace


def conditional_xi_mean(H: RUniformHypergraph, phi: Optional[int] = None) -> Fraction:
    """Exact mean of xi over a uniformly random next deletion from H; 0 when H has no matching."""
    if phi is None:
        phi = count_matchings(H)
    if phi == 0 or not H.edges:
        return Fraction(0)
    masks = {e: edge_mask(e) for e in H.edges}
    killed = 0
    for e in H.edges:
        rest = [m for f, m in masks.items() if f != e]
        killed += count_perfect(H.n, rest, covered=masks[e])
    return Fraction(killed, phi * H.e())


def conjecture_observable(phi_values: Sequence[int], n: int, r: int, m: int) -> Tuple[float, float]:
    """
    Mean of log(Phi_m / Sigma(n, m)) over runs with Phi_m > 0, next to the scale n^3 / m^2.

    Reported only; no relation between the two numbers is asserted.
    """
    sigma = sigma_nm(n, r, m)
    logs = [math.log(v) - math.log(sigma) for v in phi_values if v > 0] if sigma else []
    mean = math.fsum(logs) / len(logs) if logs else math.nan
    scale = n**3 / m**2 if m else math.inf
    return mean, scale


@dataclass
class ShamirSummary:
    n: int
    r: int
    runs: int
    stop_m: int
    seed: int
    phi0: int
    gamma_1: Fraction
    mean_phi_m: Fraction
    stderr_phi_m: float
    expected_phi_m: Fraction
    recursion_ok: bool
    alpha_mean: Dict[int, Fraction]
    alpha_stderr: Dict[int, float]
    alpha_count: Dict[int, int]
    conjecture_observable: float
    conjecture_scale: float
    rng: str = RNG_VERSION
    traces: List[ProcessTrace] = field(default_factory=list)


def _run_chunk(task) -> List[ProcessTrace]:
    n, r, seed, stop_m, start, stop = task
    return [shamir_process(n, r, RngStream(seed, i), stop_m) for i in range(start, stop)]


def _stderr(count: int, total, squares) -> float:
    if count < 2:
        return math.inf
    mean = Fraction(total) / count
    var = (Fraction(squares) - count * mean * mean) / (count - 1)
    return math.sqrt(max(float(var), 0.0) / count)


def shamir_runs(
    n: int,
    r: int,
    seed: int,
    runs: int,
    stop_m: int = 0,
    workers: int = 1,
    keep_traces: bool = True,
    progress: bool = False,
) -> ShamirSummary:
    """
    Independent deletion runs (run i uses stream i) with their summary.

    The mean of Phi at ``stop_m`` remaining edges is compared with the exact
    value Phi_0 prod(1 - gamma_t); alpha_t is averaged over the runs that
    still had a matching before step t.
    """
    N = _check(n, r, stop_m)
    if runs < 1:
        raise InvalidInstanceError("runs must be at least 1")
    chunks = split_range(runs, workers * 4 if workers > 1 else 1)
    tasks = [(n, r, seed, stop_m, c.start, c.stop) for c in chunks]
    traces: List[ProcessTrace] = []
    for part in run_partitioned(_run_chunk, tasks, workers, progress=progress, desc="runs"):
        traces.extend(part)

    phi0 = traces[0].phi0
    finals = [tr.final_phi for tr in traces]
    expected = Fraction(phi0)
    for t in range(1, N - stop_m + 1):
        expected *= 1 - Fraction(n // r, N - t + 1)

    sums: Dict[int, List] = {}
    for tr in traces:
        prev = tr.phi0
        for step in tr.steps:
            if prev > 0:
                acc = sums.setdefault(step.t, [0, Fraction(0), Fraction(0)])
                acc[0] += 1
                acc[1] += step.alpha
                acc[2] += step.alpha * step.alpha
            prev = step.Phi

    obs, scale = conjecture_observable(finals, n, r, stop_m)
    summary = ShamirSummary(
        n=n,
        r=r,
        runs=runs,
        stop_m=stop_m,
        seed=seed,
        phi0=phi0,
        gamma_1=Fraction(n // r, N),
        mean_phi_m=Fraction(sum(finals), runs),
        stderr_phi_m=_stderr(runs, sum(finals), sum(v * v for v in finals)),
        expected_phi_m=expected,
        recursion_ok=all(tr.recursion_holds() for tr in traces),
        alpha_mean={t: acc[1] / acc[0] for t, acc in sorted(sums.items())},
        alpha_stderr={t: _stderr(*acc) for t, acc in sorted(sums.items())},
        alpha_count={t: acc[0] for t, acc in sorted(sums.items())},
        conjecture_observable=obs,
        conjecture_scale=scale,
        traces=traces if keep_traces else [],
    )
    logger.info(
        "%d deletion runs: mean Phi_%d = %.6g (exact mean %.6g)",
        runs,
        stop_m,
        float(summary.mean_phi_m),
        float(expected),
    )
    return summary
