"""
The reweighted binomial model for the clique hypergraph.

Copies are treated as independent with probability pi = p^C(r,2), each
repeated vertex pair is rewarded by a factor 1/p, and the whole law is
scaled by exp(-Lambda). All model quantities are reals (the exponential
correction leaves the rationals).
"""
import itertools
import logging
import math
from dataclasses import dataclass, field
from math import comb
from typing import Dict, Iterable, List, Tuple

from clusterlab_core.errors import InvalidInstanceError
from clusterlab_core.exactprob import exact_sqrt, log_value, to_float
from clusterlab_core.graphs import Edge, RUniformHypergraph, pair_index, t_of
from clusterlab_core.guards import MODEL_MASS_MEMBERS, check_guard
from clusterlab_distribution.distribution import Distribution, tv_distance
from clusterlab_distribution.predicates import PredicateConfig, is_good
from clusterlab_stats.moments import MomentTable

logger = logging.getLogger(__name__)

CORRECTIONS = ("lambda", "lambda_prime")


def _correction(table: MomentTable, correction: str) -> float:
    if correction == "lambda":
        return to_float(table.lambda_)
    if correction == "lambda_prime":
        return to_float(table.lambda_prime)
    raise InvalidInstanceError(f"unknown correction '{correction}', expected one of {CORRECTIONS}")


def _binomial_part(e: int, t: int, table: MomentTable) -> float:
    return e * log_value(table.pi) + (table.N - e) * log_value(1 - table.pi) - t * log_value(table.p)


def model_log_prob(H: RUniformHypergraph, table: MomentTable, correction: str = "lambda") -> float:
    """log of pi^e (1-pi)^(N-e) p^(-t(H)) exp(-Lambda), or with Lambda' in place of Lambda."""
    _check_table(H, table)
    return _binomial_part(H.e(), t_of(H), table) - _correction(table, correction)


def main_bound_log_prob(H: RUniformHypergraph, table: MomentTable) -> float:
    """The size-dependent shape: the correction is (2 e(H) / mu_r - 1) times Lambda."""
    _check_table(H, table)
    scale = 2 * H.e() / to_float(table.mu_r) - 1
    return _binomial_part(H.e(), t_of(H), table) - scale * to_float(table.lambda_)


def _check_table(H: RUniformHypergraph, table: MomentTable) -> None:
    if (H.n, H.r) != (table.n, table.r):
        raise InvalidInstanceError(f"hypergraph is on (n={H.n}, r={H.r}) but table is for (n={table.n}, r={table.r})")


def model_distribution(
    support: Iterable[RUniformHypergraph], table: MomentTable, correction: str = "lambda"
) -> Distribution:
    """Model probabilities restricted to ``support`` and renormalized to total mass one."""
    logs = {H.edges: model_log_prob(H, table, correction) for H in support}
    if not logs:
        return Distribution(table.n, table.r, {}, mode="model")
    top = max(logs.values())
    weights = {k: math.exp(v - top) for k, v in logs.items()}
    total = math.fsum(weights.values())
    return Distribution(table.n, table.r, {k: w / total for k, w in weights.items()}, mode="model")


@dataclass(frozen=True)
class MassSplit:
    realizable: float
    unrealizable: float

    @property
    def total(self) -> float:
        return self.realizable + self.unrealizable


def model_mass_split(n: int, r: int, table: MomentTable, correction: str = "lambda") -> MassSplit:
    """
    Un-normalized model mass on realizable and on unrealizable hypergraphs.

    Walks all 2^N outcomes in Gray-code order, keeping per-pair cover counts,
    the shadow edge count, and the number of absent r-sets whose pairs are
    all covered (such outcomes cannot be H_r of any graph).
    """
    N = comb(n, r)
    check_guard("model_mass_members", N, MODEL_MASS_MEMBERS)
    rsets = list(itertools.combinations(range(n), r))
    member_pairs = [[pair_index(u, v, n) for u, v in itertools.combinations(S, 2)] for S in rsets]
    pair_members: List[List[int]] = [[] for _ in range(comb(n, 2))]
    for j, pairs in enumerate(member_pairs):
        for q in pairs:
            pair_members[q].append(j)
    full_size = comb(r, 2)
    cover = [0] * comb(n, 2)
    full = [0] * N
    member = [False] * N
    bad = shadow = size = 0
    counts: Dict[Tuple[int, int, bool], int] = {(0, 0, True): 1}
    for step in range(1, 1 << N):
        j = (step & -step).bit_length() - 1
        if member[j]:
            member[j] = False
            bad += 1
            size -= 1
            for q in member_pairs[j]:
                cover[q] -= 1
                if cover[q] == 0:
                    shadow -= 1
                    for i in pair_members[q]:
                        if not member[i] and full[i] == full_size:
                            bad -= 1
                        full[i] -= 1
        else:
            for q in member_pairs[j]:
                cover[q] += 1
                if cover[q] == 1:
                    shadow += 1
                    for i in pair_members[q]:
                        full[i] += 1
                        if not member[i] and full[i] == full_size:
                            bad += 1
            member[j] = True
            bad -= 1
            size += 1
        key = (size, full_size * size - shadow, bad == 0)
        counts[key] = counts.get(key, 0) + 1
    shift = _correction(table, correction)
    ok, not_ok = [], []
    for (e, t, realizable), count in counts.items():
        mass = count * math.exp(_binomial_part(e, t, table) - shift)
        (ok if realizable else not_ok).append(mass)
    return MassSplit(realizable=math.fsum(ok), unrealizable=math.fsum(not_ok))


def model_error_budget(table: MomentTable, omega: float) -> float:
    """omega * xi + Delta_2 / sqrt(mu_r) + pi^2 N."""
    return (
        omega * to_float(table.xi)
        + to_float(table.delta2) / to_float(exact_sqrt(table.mu_r))
        + to_float(table.pi) ** 2 * table.N
    )


@dataclass
class ModelRow:
    edges: Tuple[Edge, ...]
    log_exact: float
    log_model: float
    error: float
    ratio: float


@dataclass
class ModelComparison:
    p: float
    budget: float
    tv: float
    rows: List[ModelRow] = field(default_factory=list)

    @property
    def max_ratio(self) -> float:
        return max((row.ratio for row in self.rows), default=0.0)


def model_vs_exact(
    dist: Distribution,
    cfg: PredicateConfig,
    min_prob: float = 1e-12,
    correction: str = "lambda",
) -> ModelComparison:
    """
    Signed log error of the model against the exact law for every good H with
    Pr(H) above ``min_prob``, measured in units of the error budget, plus the
    total variation distance between the exact law and the normalized model.
    """
    table = cfg.table
    budget = model_error_budget(table, cfg.omega)
    model = model_distribution((H for H, prob in dist.items() if prob), table, correction)
    out = ModelComparison(p=to_float(table.p), budget=budget, tv=to_float(tv_distance(dist, model)))
    for H, prob in dist.items():
        if to_float(prob) <= min_prob or not is_good(H, cfg):
            continue
        log_exact = log_value(prob)
        log_model = model_log_prob(H, table, correction)
        error = log_exact - log_model
        out.rows.append(
            ModelRow(H.edges, log_exact, log_model, error, abs(error) / budget if budget else math.inf)
        )
    logger.info("model vs exact at p=%s: %d good outcomes, tv=%.6g", out.p, len(out.rows), out.tv)
    return out
