"""Request/response models for the HTTP surface.

Every numeric field that feeds a determinism guarantee is either an
exact integer or a float produced by a fixed-order computation, so JSON
round-trips are stable.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field


class CharSumRequest(BaseModel):
    p: int
    tuple_: list[int] = Field(alias="tuple")

    model_config = {"populate_by_name": True}


class CharSumResponse(BaseModel):
    p: int
    tuple_: list[int] = Field(alias="tuple", serialization_alias="tuple")
    value: int
    normalized: float
    shifted_normalized: float
    weil_ok: bool | None
    wan_ok: bool | None

    model_config = {"populate_by_name": True}


class CkRequest(BaseModel):
    k: int
    p: int
    mode: Literal["exhaustive", "sampled"] = "exhaustive"
    n: int | None = None
    seed: int = 1729
    workers: int = 1


class CkResponse(BaseModel):
    k: int
    p: int
    mode: str
    c_k: float
    max_value: int
    argmax_tuple: list[int]
    tuples_scanned: int


class HistogramRequest(BaseModel):
    k: int
    p: int
    bins: int = 40
    mode: Literal["exhaustive", "sampled"] = "exhaustive"
    n: int | None = None
    seed: int = 1729
    workers: int = 1


class HistogramResponse(BaseModel):
    k: int
    p: int
    mode: str
    bin_edges: list[float]
    counts: list[int]
    total: int
    statistic_mean: float
    statistic_variance: float
    reference_density: list[float] | None
    discrepancy: float | None


class SweepRequest(BaseModel):
    tuple_: list[int] = Field(alias="tuple")
    p_min: int
    p_max: int
    bins: int = 40

    model_config = {"populate_by_name": True}


class SweepResponse(BaseModel):
    tuple_: list[int] = Field(alias="tuple", serialization_alias="tuple")
    p_min: int
    p_max: int
    bin_edges: list[float]
    counts: list[int]
    total: int
    statistic_mean: float
    statistic_variance: float
    reference_density: list[float] | None
    discrepancy: float
    skipped_primes: list[int]

    model_config = {"populate_by_name": True}


class SumsetRequest(BaseModel):
    p: int
    a: list[int]
    b: list[int]
    theta_values: list[float] = [0.5, 1.0, 2.0]


class SumsetResponse(BaseModel):
    profile: dict
    checks: dict[str, bool]
    moments: dict[str, float]


class BoundsRequest(BaseModel):
    p: int


class SizeRangeModel(BaseModel):
    lower_A: int
    upper_A: int
    product_min: int
    product_max: int
    feasible: bool


class BoundsResponse(BaseModel):
    p: int
    size_range: SizeRangeModel
    feasible_pairs: list[list[int]]
    unique_rep_lower_bound: float
    energy_lower_bound_eta0: float
    size_lower_bound_eta0: float
    ratio_lower_bound_delta1: float
    ratio_upper_bound_delta1: float


class SearchRequest(BaseModel):
    p: int
    min_size_a: int = 2
    min_size_b: int = 2
    use_size_window_pruning: bool = True
    use_min_five_pruning: bool = True
    symmetric_only: bool = False
    node_limit: int = 10**9
    workers: int = 1
    max_size_a: int | None = None
    max_size_b: int | None = None


class SearchResponse(BaseModel):
    report: dict
    verdict: Literal["no-decomposition", "FOUND", "inconclusive"]


class VerifyRangeRequest(BaseModel):
    p_min: int = 3
    p_max: int = 61
    min_size_a: int = 2
    min_size_b: int = 2
    use_size_window_pruning: bool = True
    use_min_five_pruning: bool = True
    node_limit: int = 10**9
    workers: int = 1


class RangeRowModel(BaseModel):
    p: int
    verdict: str
    nodes: int
    seconds: float
    witnesses: list[dict]


class VerifyRangeResponse(BaseModel):
    rows: list[RangeRowModel]
    all_clear: bool


class VerifyLemmasRequest(BaseModel):
    primes: list[int] = [11, 31, 101]
    pairs_per_prime: int = 200
    conditional_primes: list[int] = [31, 101]
    instances_per_prime: int = 100
    energy_check_max_size: int = 12
    seed: int = 1729


class LemmaFailure(BaseModel):
    p: int
    check: str
    detail: str


class VerifyLemmasResponse(BaseModel):
    pairs_checked: int
    instances_checked: int
    failures: list[LemmaFailure]
    passed: bool


class HealthResponse(BaseModel):
    status: str
    version: str
