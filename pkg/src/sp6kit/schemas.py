"""Request and response models for the HTTP service and the CLI client."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator

GroupName = Literal["sp2", "sp4", "sp6"]


class IdealGenRequest(BaseModel):
    g: int = Field(3, ge=1, le=3)


class IdealGenResponse(BaseModel):
    group: GroupName
    count: int
    generators: list[str]


class GroebnerRequest(BaseModel):
    group: GroupName = "sp6"
    use_cache: bool = True
    no_compute: bool = False
    budget_seconds: Optional[float] = Field(None, gt=0)
    include_elements: bool = True
    spair_sample: Optional[int] = Field(None, ge=1)
    seed: int = 0


class GroebnerResponse(BaseModel):
    status: Literal["ok", "budget-exceeded", "missing-cache"]
    group: GroupName
    order: str
    size: int = 0
    from_cache: bool = False
    elapsed_seconds: float = 0.0
    elements: list[str] = []
    cache_file: Optional[str] = None
    spair_checked: Optional[int] = None
    spair_failures: Optional[int] = None
    detail: Optional[str] = None


class ReduceRequest(BaseModel):
    polynomial: str
    group: GroupName = "sp6"
    use_cache: bool = True
    budget_seconds: Optional[float] = Field(None, gt=0)

    @field_validator("polynomial")
    @classmethod
    def _nonempty(cls, v: str) -> str:
        if not v.strip():
            raise ValueError("polynomial must be nonempty")
        return v


class ReduceResponse(BaseModel):
    status: Literal["ok", "budget-exceeded"]
    group: GroupName
    remainder: str = "0"
    is_member: bool = False
    input_terms: int = 0
    remainder_terms: int = 0
    detail: Optional[str] = None


class IdentityCheckModel(BaseModel):
    label: str
    prop: str
    monomial: str
    expected: str
    actual: str
    scalar: Optional[str]
    passed: bool
    strict: bool
    constraints: list[str] = []


class VerifyRequest(BaseModel):
    prop: Literal["arch", "ssing", "ord", "all"] = "all"
    use_cache: bool = True
    cache_file: Optional[str] = None
    budget_seconds: Optional[float] = Field(None, gt=0)
    evidence_trials: int = Field(50, ge=1)
    control_samples: int = Field(1000, ge=0)
    seed: int = 0


class EvidenceModel(BaseModel):
    trials: int
    seed: int
    nonzero_counts: dict[str, int]
    control_samples: int
    control_nonzero: int
    all_relations_nonzero: bool
    control_clean: bool


class VerifyResponse(BaseModel):
    status: Literal["ok", "mismatch", "budget-exceeded", "missing-cache"]
    mode: Literal["identity", "evidence"]
    checks: list[IdentityCheckModel] = []
    evidence: Optional[EvidenceModel] = None
    remainder_terms: dict[str, int] = {}
    structure: dict[str, bool] = {}
    elapsed_seconds: float = 0.0
    detail: Optional[str] = None


class CensusRequest(BaseModel):
    curve1: tuple[int, int]
    curve2: tuple[int, int]
    x_max: int = Field(10000, ge=5)
    checkpoints: int = Field(20, ge=1, le=1000)


class CensusResponse(BaseModel):
    status: Literal["ok"]
    curve1: tuple[int, int]
    curve2: tuple[int, int]
    x_max: int
    checkpoints: list[int]
    single_counts: tuple[list[int], list[int]]
    pair_counts: list[int]
    loglog_ratio: list[float]
    pair_primes_head: list[int]
    pair_count_total: int
    exclusions: str
    csv: str
    elapsed_seconds: float = 0.0
