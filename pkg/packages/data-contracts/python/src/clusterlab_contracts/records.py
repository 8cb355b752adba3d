"""
Wire records.

Every numeric field is a string: rationals as "num/den", reals as the shortest
decimal that round-trips. Records are dumped with ``by_alias=True`` and
written with sorted keys.
"""
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class Record(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class MomentTableRecord(Record):
    n: int
    r: int
    p: str
    mode: str
    N: str
    pi: str
    mu_r: str
    mu_next: str
    nu: Dict[str, str]
    nu0: Dict[str, str]
    delta2: str
    delta2_0: str
    lambda_: str = Field(alias="lambda")
    lambda_closed: str
    lambda_prime: str
    phi: str
    xi: str
    xi_main: Optional[str] = None
    xi_sqrt: Optional[str] = None
    variance_bound: str
    q_r: str
    m_r: str
    pi_r: str
    sigma_npi: Optional[str] = None


class ClusterReportRecord(Record):
    W2: str
    W3: str
    W4: str
    t_s: Dict[str, str]
    t_iso_s: Dict[str, str]
    t_total: str


class DistributionRecord(Record):
    edges: List[List[int]]
    prob: str


class StatSummaryRow(Record):
    statistic: str
    mean: str
    stderr: str
    count: str
    reference: str = ""


class SimulateRecord(Record):
    n: int
    r: int
    p: str
    mode: str
    samples: int
    seed: int
    rng: str
    stats: List[StatSummaryRow]


class ShamirStepRecord(Record):
    run: int
    t: int
    removed_edge: str
    Phi: str
    xi: str
    gamma: str
    alpha: str


class ShamirSummaryRecord(Record):
    n: int
    r: int
    runs: int
    stop_m: int
    seed: int
    rng: str
    phi0: str
    gamma_1: str
    mean_phi_m: str
    stderr_phi_m: str
    expected_phi_m: str
    recursion_ok: bool
    alpha_mean: Dict[str, str]
    alpha_stderr: Dict[str, str]
    conjecture_observable: str
    conjecture_scale: str


class FactorReportRecord(Record):
    n: int
    r: int
    p: Optional[str] = None
    factors: Optional[str] = None
    matchings: Optional[str] = None
    expected_factors: Optional[str] = None
    sigma_npi: Optional[str] = None
    sigma_nm: Optional[str] = None
    ratio: Optional[str] = None
    log_ratio: Optional[str] = None
    ratio_leading: Optional[str] = None
    conditional: Optional[Dict[str, str]] = None
    clusters: Optional[ClusterReportRecord] = None


class IdentityIssueRecord(Record):
    code: str
    message: str
    path: str


class VerifySummaryRecord(Record):
    grid: str
    ok: bool
    checks: int
    sections: Dict[str, int] = {}
    diagnostics: Dict[str, str] = {}
    issues: List[IdentityIssueRecord] = []
