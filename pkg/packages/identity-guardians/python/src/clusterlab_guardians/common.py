from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from clusterlab_core.reports import CheckReport

Instance = Tuple[int, int]


@dataclass
class IdentityReport(CheckReport):
    """A CheckReport that also counts checks per section of the suite."""

    grid: str = "tiny"
    sections: Dict[str, int] = field(default_factory=dict)
    diagnostics: Dict[str, object] = field(default_factory=dict)
    _section: Optional[str] = field(default=None, repr=False)

    def begin(self, name: str) -> None:
        self._section = name
        self.sections.setdefault(name, 0)

    def check(self, condition: bool, code: str, message: str, path: Optional[str] = None) -> bool:
        if self._section is not None:
            self.sections[self._section] += 1
            path = f"{self._section}/{path}" if path else self._section
        return super().check(condition, code, message, path)

    @property
    def section(self) -> Optional[str]:
        return self._section

    @property
    def first_failure(self):
        return self.issues[0] if self.issues else None


@dataclass(frozen=True)
class Grid:
    name: str
    moment_instances: Tuple[Instance, ...]
    probs: Tuple[Fraction, ...]
    l2_outcomes: int
    dist_instances: Tuple[Instance, ...]
    chain_sampled: int
    chain_orders: int
    inequality_instances: Tuple[Instance, ...]
    inequality_samples: int
    complex_instances: Tuple[Instance, ...]
    factor_graphs: int
    factor_expectation: bool
    shamir_runs: int
    calibration: bool = False
    stderr_k: float = 4.0
    seed: int = 20240601


ACCEPTANCE_INSTANCES = ((4, 3), (5, 3), (6, 3), (6, 4), (7, 3))
HALF = Fraction(1, 2)

GRIDS: Dict[str, Grid] = {
    "tiny": Grid(
        name="tiny",
        moment_instances=((4, 3), (5, 3), (6, 4)),
        probs=(HALF,),
        l2_outcomes=10,
        dist_instances=((4, 3),),
        chain_sampled=5,
        chain_orders=2,
        inequality_instances=((8, 3),),
        inequality_samples=20,
        complex_instances=((4, 3),),
        factor_graphs=20,
        factor_expectation=False,
        shamir_runs=200,
    ),
    "small": Grid(
        name="small",
        moment_instances=ACCEPTANCE_INSTANCES,
        probs=(Fraction(1, 4), HALF, Fraction(3, 4)),
        l2_outcomes=100,
        dist_instances=((4, 3), (5, 3), (6, 3), (6, 4)),
        chain_sampled=50,
        chain_orders=10,
        inequality_instances=((8, 3), (8, 4), (10, 5)),
        inequality_samples=200,
        complex_instances=((4, 3), (5, 3), (6, 3)),
        factor_graphs=100,
        factor_expectation=True,
        shamir_runs=5000,
    ),
    "full": Grid(
        name="full",
        moment_instances=ACCEPTANCE_INSTANCES,
        probs=(Fraction(1, 4), HALF, Fraction(3, 4)),
        l2_outcomes=100,
        dist_instances=((4, 3), (5, 3), (6, 3), (6, 4), (7, 3)),
        chain_sampled=50,
        chain_orders=10,
        inequality_instances=((8, 3), (8, 4), (10, 5)),
        inequality_samples=1000,
        complex_instances=((4, 3), (5, 3), (6, 3)),
        factor_graphs=500,
        factor_expectation=True,
        shamir_runs=100_000,
        calibration=True,
        stderr_k=3.0,
    ),
}


def within_stderr(mean, target, stderr: float, k: float) -> bool:
    """|mean - target| <= k standard errors; a zero standard error demands equality."""
    gap = abs(float(mean - target))
    if stderr == 0:
        return gap == 0
    return gap <= k * stderr
