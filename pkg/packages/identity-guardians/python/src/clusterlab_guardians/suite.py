"""
The identity suite behind ``clusterlab verify``.

Sections run in a fixed order and share one exact distribution cache; the
report lists every failed identity with the section and instance it came from.
"""
import logging
import time
from typing import Dict

from clusterlab_core.errors import InvalidInstanceError
from clusterlab_distribution.distribution import Distribution
from clusterlab_guardians.common import GRIDS, IdentityReport, Instance
from clusterlab_guardians.validate_calibration import validate_model, validate_monte_carlo
from clusterlab_guardians.validate_distribution import validate_chain, validate_complex_bounds, validate_exact_law
from clusterlab_guardians.validate_factors import validate_factor_counts, validate_shamir
from clusterlab_guardians.validate_inequalities import validate_inequalities
from clusterlab_guardians.validate_moments import validate_l2, validate_moments

logger = logging.getLogger(__name__)


def run_identity_suite(grid_name: str = "tiny", workers: int = 1) -> IdentityReport:
    if grid_name not in GRIDS:
        raise InvalidInstanceError(f"unknown grid {grid_name!r}; choose from {sorted(GRIDS)}")
    grid = GRIDS[grid_name]
    rep = IdentityReport(grid=grid_name)
    cache: Dict[Instance, Distribution] = {}
    steps = [
        lambda: validate_moments(rep, grid, workers),
        lambda: validate_l2(rep, grid),
        lambda: validate_exact_law(rep, grid, cache, workers),
        lambda: validate_chain(rep, grid, cache, workers),
        lambda: validate_complex_bounds(rep, grid, cache, workers),
        lambda: validate_inequalities(rep, grid),
        lambda: validate_factor_counts(rep, grid, workers),
        lambda: validate_shamir(rep, grid, workers),
    ]
    if grid.calibration:
        steps.append(lambda: validate_monte_carlo(rep, grid, workers))
        steps.append(lambda: validate_model(rep, grid, workers))
    for step in steps:
        started = time.perf_counter()
        step()
        logger.info("section %s: %.2fs", rep.section, time.perf_counter() - started)
    logger.info("grid %s: %d checks, %d failures", grid_name, rep.checked, len(rep.issues))
    return rep
