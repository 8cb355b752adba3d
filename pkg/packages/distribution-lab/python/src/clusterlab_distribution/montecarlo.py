"""
Seeded Monte Carlo estimates of clique-hypergraph statistics.

Sample ``i`` is drawn from ``RngStream(seed, i)`` and every worker returns
exact rational sums of x and x^2, so summaries are identical for any number
of workers.
"""
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from clusterlab_core.exactprob import Number, format_real, to_float
from clusterlab_core.graphs import RUniformHypergraph, clique_hypergraph, sample_gnp, t_of
from clusterlab_core.pool import run_partitioned, split_range
from clusterlab_core.rng import RNG_VERSION, RngStream
from clusterlab_distribution.distribution import Distribution
from clusterlab_distribution.predicates import (
    Expectations,
    PredicateConfig,
    is_good,
    is_plausible,
    is_reasonable,
    is_well_behaved,
)
from clusterlab_stats.clusters import count_wk
from clusterlab_stats.conditional import q2, q3, q4
from clusterlab_stats.legality import c_hat_legal
from clusterlab_stats.moments import moment_table
from clusterlab_stats.stars import c_hat, complex_sum

logger = logging.getLogger(__name__)

Statistic = Callable[[RUniformHypergraph, Number, Optional[PredicateConfig]], Number]

STATISTICS: Dict[str, Statistic] = {
    "e": lambda H, p, cfg: H.e(),
    "W2": lambda H, p, cfg: count_wk(H, 2),
    "W3": lambda H, p, cfg: count_wk(H, 3),
    "t": lambda H, p, cfg: t_of(H),
    "Q2": lambda H, p, cfg: q2(H),
    "Q3": lambda H, p, cfg: q3(H, p),
    "Q4": lambda H, p, cfg: q4(H, p),
    "C": lambda H, p, cfg: complex_sum(H, p),
    "C_hat": lambda H, p, cfg: c_hat(H, p),
    "C_hat_L": lambda H, p, cfg: c_hat_legal(H, p),
    "plausible": lambda H, p, cfg: int(bool(is_plausible(H, cfg))),
    "good": lambda H, p, cfg: int(bool(is_good(H, cfg))),
    "well_behaved": lambda H, p, cfg: int(bool(is_well_behaved(H, cfg))),
    "reasonable": lambda H, p, cfg: int(bool(is_reasonable(H, cfg))),
}

DEFAULT_STATISTICS = ("e", "W2", "W3", "t")
EXPECTATION_STATISTICS = ("Q2", "Q3", "Q4", "C", "C_hat_L", "W3")
# expectation samples draw from their own streams of the run seed
EXPECTATION_STREAM = 1 << 63


@dataclass(frozen=True)
class StatEstimate:
    mean: Fraction
    stderr: float
    count: int


@dataclass
class MonteCarloSummary:
    n: int
    r: int
    p: Number
    samples: int
    seed: int
    rng: str = RNG_VERSION
    stats: Dict[str, StatEstimate] = field(default_factory=dict)
    references: Dict[str, Number] = field(default_factory=dict)

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for name, est in self.stats.items():
            ref = self.references.get(name)
            rows.append(
                {
                    "statistic": name,
                    "mean": format_real(est.mean),
                    "stderr": format_real(est.stderr),
                    "count": str(est.count),
                    "reference": "" if ref is None else format_real(ref),
                }
            )
        return pd.DataFrame(rows, columns=["statistic", "mean", "stderr", "count", "reference"])


def _sample_chunk(task) -> Dict[str, Tuple[int, Fraction, Fraction]]:
    n, r, p, seed, offset, start, stop, names, cfg = task
    sums = {name: [0, Fraction(0), Fraction(0)] for name in names}
    for i in range(start, stop):
        H = clique_hypergraph(sample_gnp(n, p, RngStream(seed, offset + i)), r)
        for name in names:
            x = Fraction(STATISTICS[name](H, p, cfg))
            acc = sums[name]
            acc[0] += 1
            acc[1] += x
            acc[2] += x * x
    return {name: tuple(acc) for name, acc in sums.items()}


def _estimate(count: int, total: Fraction, squares: Fraction) -> StatEstimate:
    mean = total / count
    if count > 1:
        var = (squares - count * mean * mean) / (count - 1)
        stderr = math.sqrt(max(to_float(var), 0.0) / count)
    else:
        stderr = math.inf
    return StatEstimate(mean=mean, stderr=stderr, count=count)


def monte_carlo_stats(
    n: int,
    r: int,
    p: Number,
    samples: int,
    seed: int,
    statistics: Sequence[str] = DEFAULT_STATISTICS,
    cfg: Optional[PredicateConfig] = None,
    workers: int = 1,
    progress: bool = False,
    stream_offset: int = 0,
) -> MonteCarloSummary:
    """
    Mean, standard error and count of each named statistic of H_r(G(n,p)) over seeded samples.

    Sample i uses stream ``stream_offset + i`` of ``seed``.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    unknown = [s for s in statistics if s not in STATISTICS]
    if unknown:
        raise ValueError(f"unknown statistics: {unknown}")
    names = tuple(statistics)
    chunks = split_range(samples, max(1, workers) * 4 if workers > 1 else 1)
    tasks = [(n, r, p, seed, stream_offset, c.start, c.stop, names, cfg) for c in chunks]
    totals = {name: [0, Fraction(0), Fraction(0)] for name in names}
    for part in run_partitioned(_sample_chunk, tasks, workers, progress=progress, desc="samples"):
        for name, (count, total, squares) in part.items():
            acc = totals[name]
            acc[0] += count
            acc[1] += total
            acc[2] += squares
    summary = MonteCarloSummary(n=n, r=r, p=p, samples=samples, seed=seed)
    for name in names:
        summary.stats[name] = _estimate(*totals[name])
    if 3 <= r <= n and 0 < p < 1:
        table = moment_table(n, r, p)
        summary.references = {"e": table.mu_r, "W2": table.delta2}
    return summary


def _law_chunk(task) -> Counter:
    n, r, p, seed, start, stop = task
    return Counter(clique_hypergraph(sample_gnp(n, p, RngStream(seed, i)), r).edges for i in range(start, stop))


def empirical_distribution(
    n: int, r: int, p: Number, samples: int, seed: int, workers: int = 1, progress: bool = False
) -> Distribution:
    """
    Estimated law of H_r(G(n,p)): outcome frequencies over seeded samples.

    Probabilities are exact frequencies k/samples (they sum to 1 exactly); ``stderr`` holds
    sqrt(q(1 - q) / samples) for each observed frequency q.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    chunks = split_range(samples, max(1, workers) * 4 if workers > 1 else 1)
    tasks = [(n, r, p, seed, c.start, c.stop) for c in chunks]
    counts: Counter = Counter()
    for part in run_partitioned(_law_chunk, tasks, workers, progress=progress, desc="samples"):
        counts.update(part)
    probs = {key: Fraction(k, samples) for key, k in sorted(counts.items())}
    stderr = {key: math.sqrt(to_float(q * (1 - q)) / samples) for key, q in probs.items()}
    logger.info("n=%d r=%d: %d distinct outcomes in %d samples", n, r, len(probs), samples)
    return Distribution(n, r, probs, mode="estimated", stderr=stderr)


def expectations_monte_carlo(
    n: int, r: int, p: Number, samples: int, seed: int, workers: int = 1
) -> Expectations:
    summary = monte_carlo_stats(
        n, r, p, samples, seed, EXPECTATION_STATISTICS, workers=workers, stream_offset=EXPECTATION_STREAM
    )
    s = summary.stats
    return Expectations(
        q2=s["Q2"].mean,
        q3=s["Q3"].mean,
        q4=s["Q4"].mean,
        c=s["C"].mean,
        c_hat_legal=s["C_hat_L"].mean,
        delta3=s["W3"].mean,
        source="monte_carlo",
        stderr={
            "q2": s["Q2"].stderr,
            "q3": s["Q3"].stderr,
            "q4": s["Q4"].stderr,
            "c": s["C"].stderr,
            "c_hat_legal": s["C_hat_L"].stderr,
            "delta3": s["W3"].stderr,
        },
    )


def plausibility_trend(
    n_values: Sequence[int],
    r: int,
    p_of_n: Callable[[int], Number],
    samples: int,
    seed: int,
    plaus_C: float = 1.0,
    plaus_delta: float = 0.2,
    workers: int = 1,
) -> List[Dict[str, object]]:
    """Estimated Pr(plausible) along a grid of n (a trend to inspect, not a pass/fail check)."""
    rows = []
    for n in n_values:
        p = p_of_n(n)
        cfg = PredicateConfig(table=moment_table(n, r, p), plaus_C=plaus_C, plaus_delta=plaus_delta)
        summary = monte_carlo_stats(n, r, p, samples, seed, ("plausible",), cfg=cfg, workers=workers)
        est = summary.stats["plausible"]
        rows.append({"n": n, "p": to_float(p), "plausible": to_float(est.mean), "stderr": est.stderr})
        logger.info("n=%d: Pr(plausible) ~ %.4f", n, to_float(est.mean))
    return rows
