"""Exception hierarchy shared by every clusterlab package."""


class ClusterLabError(Exception):
    """Base class for all laboratory errors."""


class InvalidInstanceError(ClusterLabError, ValueError):
    """An input violates an operation's precondition (r > n, r does not divide n, bad index...)."""


class GuardExceededError(ClusterLabError):
    """An enumeration would exceed its configured size guard."""

    def __init__(self, name: str, value: int, limit: int):
        self.name = name
        self.value = value
        self.limit = limit
        super().__init__(
            f"guard '{name}' exceeded: {value} > {limit} "
            "(set CLUSTERLAB_GUARD_OVERRIDE=1 to lift enumeration guards)"
        )


class ImpossibleOutcomeError(ClusterLabError):
    """The outcome Y has probability zero but the operation needs a possible outcome."""


class InexactProbabilityError(ClusterLabError):
    """A floating point probability reached an operation that only works on exact rationals."""


class MissingExpectationsError(ClusterLabError):
    """A typicality predicate was evaluated without the expectations it compares against."""
