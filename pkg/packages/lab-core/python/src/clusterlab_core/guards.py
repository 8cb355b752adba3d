import os

from clusterlab_core.errors import GuardExceededError

GUARD_OVERRIDE_ENV = "CLUSTERLAB_GUARD_OVERRIDE"

# Default limits; every enumeration names the guard it checks.
CHAIN_FREE_BITS = 24
GRAPH_EDGE_BITS = 21
DELTA_K_SUBSETS = 50_000_000
CLUSTER_SIZE = 4
STAR_LEAF_SUBSETS = 1 << 20
MODEL_MASS_MEMBERS = 20
SYMMETRY_GROUND = 8
MATCHING_VERTICES = 30


def guard_override_enabled() -> bool:
    return os.getenv(GUARD_OVERRIDE_ENV, "").strip() in {"1", "true", "yes"}


def check_guard(name: str, value: int, limit: int) -> None:
    if value > limit and not guard_override_enabled():
        raise GuardExceededError(name, value, limit)
