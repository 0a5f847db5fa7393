"""Pydantic models for reports and the service boundary.

These are serialization shapes only; the numeric work lives in the core
modules. Matrices cross the boundary in the state-file entry syntax:
each entry a real number or a two-element [re, im] pair.
"""
from __future__ import annotations

from pydantic import BaseModel, Field, model_validator

MatrixEntries = list[list[object]]


class ToleranceModel(BaseModel):
    herm: float = 1e-9
    trace: float = 1e-9
    psd: float = 1e-10
    eig: float = 1e-10
    rank_rel: float = 1e-7
    discord: float = 1e-8


class BlochModel(BaseModel):
    x: list[float]
    y: list[float]
    t: list[list[float]]


class CorrelationModel(BaseModel):
    r: list[list[float]]
    singular_values: list[float]


class DiscordModel(BaseModel):
    side: str
    value: float
    classical_correlations: float
    mutual_information: float
    direction: list[float]


class RspModel(BaseModel):
    fidelity: float
    efficiency: float
    t1_sq: float
    t2_sq: float
    protocol_fidelity: float | None = None
    protocol_label: str | None = None


class VerdictModel(BaseModel):
    kind: str
    l_r: int
    l_t: int | None = None
    discord_value: float


class AnalysisReport(BaseModel):
    digest: str
    tool_version: str
    side: str
    bloch: BlochModel
    correlation: CorrelationModel
    l_r: int
    l_t: int
    discord_a: DiscordModel
    discord_b: DiscordModel
    geometric_discord_a: float
    geometric_discord_b: float
    rsp: RspModel
    verdict: VerdictModel
    tolerances: ToleranceModel
    notes: list[str] = Field(default_factory=list)


class ChannelSpecModel(BaseModel):
    builtin: str | None = None
    param: float | None = None
    kraus: list[MatrixEntries] | None = None

    @model_validator(mode="after")
    def _exactly_one(self):
        if (self.builtin is None) == (self.kraus is None):
            raise ValueError("channel spec needs exactly one of 'builtin' or 'kraus'")
        if self.kraus is not None and self.param is not None:
            raise ValueError("'param' only applies to builtin channels")
        return self


class AnalyzeOptions(BaseModel):
    side: str = "B"
    rank_tol: float | None = None
    disc_tol: float | None = None
    grid: tuple[int, int] | None = None


class AnalyzeRequest(BaseModel):
    state: MatrixEntries
    options: AnalyzeOptions = Field(default_factory=AnalyzeOptions)


class ChannelRequest(BaseModel):
    state: MatrixEntries
    channel_a: ChannelSpecModel
    channel_b: ChannelSpecModel
    options: AnalyzeOptions = Field(default_factory=AnalyzeOptions)


class DeltaModel(BaseModel):
    l_r: int
    l_t: int
    discord: float
    geometric_discord: float
    fidelity: float


class ChannelResponse(BaseModel):
    output_state: MatrixEntries
    before: AnalysisReport
    after: AnalysisReport
    delta: DeltaModel
    cptp_a: bool
    cptp_b: bool


class SigmaFamilyRequest(BaseModel):
    diag: tuple[float, float, float, float]
    c: float
    options: AnalyzeOptions = Field(default_factory=AnalyzeOptions)


class SigmaFamilyResponse(BaseModel):
    state: MatrixEntries
    report: AnalysisReport


class BatchRequest(BaseModel):
    seed: int = 0
    count: int = Field(default=10, ge=1)
    rank: int = Field(default=4, ge=1, le=4)
    channel: ChannelSpecModel | None = None
    options: AnalyzeOptions = Field(default_factory=AnalyzeOptions)


class BatchRow(BaseModel):
    index: int
    l_r: int
    l_t: int
    discord: float
    geometric_discord: float
    fidelity: float
    post_l_r: int | None = None
    post_discord: float | None = None
    post_fidelity: float | None = None
    monotonicity_ok: bool | None = None


class BatchResponse(BaseModel):
    seed: int
    count: int
    rank: int
    rows: list[BatchRow]
    monotonicity_violations: int


class ReproduceRow(BaseModel):
    row_id: str
    description: str
    expected: str
    actual: str
    tolerance: str
    passed: bool
    detail: str = ""


class ReproduceResponse(BaseModel):
    rows: list[ReproduceRow]
    all_passed: bool


class ErrorResponse(BaseModel):
    error: str
    detail: str
