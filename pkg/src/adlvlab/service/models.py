"""Pydantic request/response models for the workbench service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class ParseRequest(BaseModel):
    n: int = Field(ge=2)
    w: str


class ParseResponse(BaseModel):
    canonical: str
    length: int
    newton_point: str
    x_word: list[int]
    mu: list[int]
    y_word: list[int]
    eta_length: int


class ListRequest(BaseModel):
    n: int = Field(ge=2)
    w: str
    budget: int | None = None


class TableEntry(BaseModel):
    nu: str
    dim: int
    irr: int


class ListResponse(BaseModel):
    entries: list[TableEntry]
    lines: list[str]


class QueryRequest(BaseModel):
    n: int = Field(ge=2)
    w: str
    nus: list[str]
    prints: list[str]  # "dim" | "irr", parallel to nus
    budget: int | None = None


class QueryResponse(BaseModel):
    values: list[str]
    line: str


class VerifyBoundRequest(BaseModel):
    n: int = Field(ge=2)
    max_len: int = 0
    budget: int | None = None
    check_witness: bool = True


class VerifyBoundResponse(BaseModel):
    n: int
    max_len: int
    bound: int
    observed_max: int
    attained_count: int
    attained_at: list[str]
    witness_length: int
    witness_delta: int
    witness_ok: bool
    elapsed: float


class EnumerateRequest(BaseModel):
    n: int = Field(ge=2)
    max_len: int
    filter: str = "NONEMPTY"
    schema_name: str = "SEC5_46"
    label: str = "DIM"
    out: str
    workers: int = 1
    budget: int | None = None
    seed: int = 0


class SampleRequest(BaseModel):
    dataset_id: int = Field(ge=1, le=3)
    count: int = Field(ge=1)
    seed: int = 0
    n: int = Field(ge=2)
    schema_name: str = "EXP1"
    label: str = "DIM"
    out: str
    workers: int = 1


class GenerateResponse(BaseModel):
    meta: dict
    rows: int
    path: str


class StatsRequest(BaseModel):
    n: int = Field(ge=2)
    max_len: int
    budget: int | None = None


class StatsResponse(BaseModel):
    delta_histogram: dict[int, int]
    cordiality: dict[int, tuple[int, int]]
    pair_total: int
    element_total: int


class TrainRequest(BaseModel):
    in_path: str
    model: str  # linreg | lasso | l1 | svm | mlp
    out: str | None = None
    layers: int = 1
    width: int = 10
    reg: float = 0.0
    epochs: int | None = None
    seed: int = 0
    split_seed: int = 0
    head: str = "auto"  # regression | classification | auto
    intercept: bool = False
    oversample: bool = False


class MetricsBody(BaseModel):
    accuracy: float
    mean_error: float


class TrainResponse(BaseModel):
    family: str
    train: MetricsBody
    test: MetricsBody
    coefficients: dict[str, float] | None = None
    model_path: str | None = None
    rows_train: int
    rows_test: int


class AnalyzeRequest(BaseModel):
    model_path: str
    data_path: str
    seeds: list[int] | None = None


class AnalyzeResponse(BaseModel):
    features: list[str]
    saliency: list[float]
    table: str


class SelfTestResponse(BaseModel):
    ok: bool
    checks: list[str]
