"""Pydantic request/response models for the voterlab service."""
from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class DegreeSequenceModel(BaseModel):
    kind: Literal["undirected", "directed"]
    deg: Optional[list[int]] = None
    in_deg: Optional[list[int]] = None
    out_deg: Optional[list[int]] = None


class GraphModel(BaseModel):
    n: int = Field(ge=1)
    directed: bool
    edges: list[tuple[int, int, int]]  # (src, dst, multiplicity)


class DegreesRequest(BaseModel):
    alpha: float = Field(gt=0)
    x_min: int = Field(ge=1)
    n: int = Field(ge=1)
    directed: bool = False
    seed: int = 0


class MomentSummaryModel(BaseModel):
    m1: float
    m2: float
    m1_out: Optional[float] = None
    m2_out: Optional[float] = None
    m1_trunc: Optional[float] = None
    m2_trunc: Optional[float] = None
    d_max: int
    frechet_rescaled: Optional[float] = None


class DegreesResponse(BaseModel):
    spec: DegreesRequest
    sequence: DegreeSequenceModel
    moments: MomentSummaryModel


class GraphRequest(BaseModel):
    degrees: DegreeSequenceModel
    seed: int = 0


class GraphResponse(BaseModel):
    graph: GraphModel
    seed: int
    n_components: int
    largest_component: int


class TheoryRequest(BaseModel):
    degrees: DegreeSequenceModel
    u: float = Field(default=0.5, ge=0, le=1)
    n: Optional[int] = Field(default=None, ge=1)


class TheoryResponse(BaseModel):
    delta: Optional[float] = None
    beta: Optional[float] = None
    rho: Optional[float] = None
    gamma: Optional[float] = None
    theta: Optional[float] = None
    chi: Optional[float] = None
    order_m1sq_over_m2: float
    H: float
    predicted_mean: Optional[float] = None
    predicted_meeting: Optional[float] = None


class KingmanRequest(BaseModel):
    u: Optional[float] = None  # None = full coalescence
    k_max: int = Field(default=2000, ge=2)
    draws: int = Field(default=10000, ge=1)


class WalkRequest(BaseModel):
    graph: GraphModel
    seed: int = 0
    meeting: Optional[int] = Field(default=None, ge=1)
    coalesce: Optional[int] = Field(default=None, ge=1)
    kingman: Optional[KingmanRequest] = None
    mixing: bool = False
    max_events: int = Field(default=10**9, ge=1)


class SampleSummary(BaseModel):
    mean: float
    stderr: float
    count: int
    samples: list[float]


class StationaryModel(BaseModel):
    pi_max: float
    pi_delta: float
    residual: float
    method: str


class MixingModel(BaseModel):
    q_max: float
    t_mix: Optional[float]
    t_mix_steps: Optional[int]
    pi_max: float
    directed_condition: float
    ratio_mix_meet: Optional[float]
    pure_skeleton_mixes: bool


class WalkResponse(BaseModel):
    stationary: StationaryModel
    meeting: Optional[SampleSummary] = None
    coalescence: Optional[SampleSummary] = None
    kingman: Optional[SampleSummary] = None
    mixing: Optional[MixingModel] = None


class ObserveRequest(BaseModel):
    mode: Literal["auto", "explicit"] = "auto"
    t_max: Optional[float] = Field(default=None, gt=0)
    points: int = Field(default=200, ge=2)


class VoteRequest(BaseModel):
    graph: GraphModel
    u: float = Field(ge=0, le=1)
    runs: int = Field(ge=1)
    seed: int = 0
    observe: Optional[ObserveRequest] = None
    max_events: int = Field(default=10**12, ge=1)


class VoteRun(BaseModel):
    run_id: int
    consensus_time: float
    final_opinion: int


class VoteObservation(BaseModel):
    run_id: int
    t: float
    density: float
    weighted_density: float
    weighted_discordance: float


class VoteResponse(BaseModel):
    runs: list[VoteRun]
    observations: Optional[list[VoteObservation]] = None


class ExperimentRequest(BaseModel):
    config: dict


class ExperimentResponse(BaseModel):
    rows_csv: str
    summary: dict
    meta: dict


class HealthResponse(BaseModel):
    status: str
    version: str
