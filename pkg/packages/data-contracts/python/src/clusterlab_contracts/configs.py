"""Experiment configurations: one pydantic model per CLI subcommand."""
import re
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

_PROB = re.compile(r"^\s*(?:[+-]?\d+\s*/\s*\d+|[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)\s*$")


class CommonConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    out: Optional[str] = None
    format: Literal["json", "csv"] = "json"
    workers: Optional[int] = Field(None, ge=1)
    log_level: Optional[str] = None


class InstanceConfig(CommonConfig):
    n: int = Field(ge=1)
    r: int = Field(ge=2)
    p: str = "1/2"

    @field_validator("p")
    def probability_literal(cls, v):
        assert _PROB.match(v), "p must be 'a/b' or a decimal"
        return v.strip()

    @model_validator(mode="after")
    def r_at_most_n(self):
        assert self.r <= self.n, f"r={self.r} exceeds n={self.n}"
        return self


class MomentsConfig(InstanceConfig):
    @field_validator("r")
    def r_at_least_three(cls, v):
        assert v >= 3, "moments need r >= 3"
        return v


class ExactDistConfig(InstanceConfig):
    pass


class PredicateSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    omega: Optional[float] = Field(None, gt=0)
    plaus_C: float = Field(1.0, gt=0)
    plaus_delta: float = Field(0.2, gt=0, lt=0.25)


class SimulateConfig(InstanceConfig, PredicateSettings):
    statistics: Optional[List[str]] = None
    expectation_samples: Optional[int] = Field(None, ge=1)
    samples: int = Field(1000, ge=1)
    seed: int = Field(0, ge=0, lt=2**64)


class FactorsConfig(CommonConfig):
    n: Optional[int] = Field(None, ge=1)
    r: int = Field(3, ge=2)
    p: Optional[str] = None
    m: Optional[int] = Field(None, ge=0)
    graph: Optional[str] = None
    omega: Optional[float] = Field(None, gt=0)

    @field_validator("p")
    def probability_literal(cls, v):
        if v is not None:
            assert _PROB.match(v), "p must be 'a/b' or a decimal"
            return v.strip()
        return v

    @model_validator(mode="after")
    def graph_or_instance(self):
        if self.graph is None:
            assert self.n is not None and self.p is not None, "give --graph or both --n and --p"
            assert self.r <= self.n, f"r={self.r} exceeds n={self.n}"
            assert self.n % self.r == 0, f"r={self.r} does not divide n={self.n}"
        return self


class ShamirConfig(CommonConfig):
    n: int = Field(ge=1)
    r: int = Field(ge=2)
    seed: int = Field(0, ge=0, lt=2**64)
    runs: int = Field(1, ge=1)
    stop_m: int = Field(0, ge=0)

    @model_validator(mode="after")
    def divisible(self):
        assert self.r <= self.n, f"r={self.r} exceeds n={self.n}"
        assert self.n % self.r == 0, f"r={self.r} does not divide n={self.n}"
        return self


class VerifyConfig(CommonConfig):
    grid: Literal["tiny", "small", "full"] = "small"
