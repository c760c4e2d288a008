"""Pydantic request/response models for the service endpoints."""

from __future__ import annotations

import datetime as dt
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..ingest import DEFAULT_WINDOW, PanelConfig


class PanelOptions(BaseModel):
    """Panel settings shared by every estimation endpoint."""

    dependent: Literal["wti", "brent"] = "wti"
    variant: Literal["total", "china", "outside_china"] = "total"
    covid_shift: int = 1
    epu_shift: int = -1
    vix_shift: int = 0
    oil_shift: int = 0
    oil_transform: Literal["level", "log"] = "log"
    covid_transform: Literal["level", "log", "log1p"] = "log1p"
    vix_transform: Literal["level", "log"] = "log"
    epu_transform: Literal["level", "log"] = "log"
    window_start: dt.date = DEFAULT_WINDOW[0]
    window_end: dt.date = DEFAULT_WINDOW[1]
    max_lag: int = Field(default=4, ge=0, le=8)
    data_dir: Optional[str] = None

    def panel_config(self) -> PanelConfig:
        return PanelConfig(
            dependent=self.dependent,
            covid_scope=self.variant,
            covid_shift=self.covid_shift,
            epu_shift=self.epu_shift,
            vix_shift=self.vix_shift,
            oil_shift=self.oil_shift,
            transforms={
                "oil": self.oil_transform,
                "covid": self.covid_transform,
                "vix": self.vix_transform,
                "epu": self.epu_transform,
            },
            window_start=self.window_start,
            window_end=self.window_end,
            max_lag=self.max_lag,
            data_dir=self.data_dir,
        )


class ColumnInfo(BaseModel):
    name: str
    transform: str
    shift: int
    role: str


class PanelResponse(BaseModel):
    rows: int
    window: list[str]
    columns: list[ColumnInfo]
    calendar: list[str]
    values: Optional[dict[str, list[float]]] = None


class IngestRequest(PanelOptions):
    include_values: bool = False


class SummaryRequest(PanelOptions):
    pass


class SummaryResponse(BaseModel):
    columns: dict[str, dict[str, Any]]


class UnitRootRequest(PanelOptions):
    variable: Literal["oil", "covid", "vix", "epu"] = "oil"
    test: Literal["pp", "adf"] = "pp"
    spec: Literal["c", "ct", "n"] = "c"
    bandwidth: Optional[int] = None
    adf_max_lag: int = 4
    series_transforms: Literal["level", "config"] = "level"


class UnitRootResponse(BaseModel):
    variable: str
    test: str
    spec: str
    statistic: float
    critical_values: dict[str, float]
    decisions: dict[str, bool]
    nobs: int
    bandwidth: Optional[int] = None
    lags: Optional[int] = None
    classification: str


class BoundsRequest(PanelOptions):
    level: float = Field(default=0.05, gt=0.0, lt=1.0)


class BoundsResponse(BaseModel):
    dependent: str
    variant: str
    f: float
    k: int
    level: float
    lower: float
    upper: float
    conclusion: str
    verdict: str
    table: str
    levels: dict[str, dict[str, Any]]
    selected_lags: dict[str, int]
    nobs: int


class FitRequest(PanelOptions):
    lr_se_method: Literal["delta", "bewley"] = "delta"
    annotate: bool = True


class FitResponse(BaseModel):
    model_config = ConfigDict(protected_namespaces=())

    model: dict[str, Any]
    text: str


class DiagnoseRequest(PanelOptions):
    lags: int = 4


class DiagnoseResponse(BaseModel):
    diagnostics: dict[str, Any]
    cusum_path: Optional[list[float]] = None
    cusum_upper: Optional[list[float]] = None
    cusum_lower: Optional[list[float]] = None


class ExportPlotRequest(BaseModel):
    window_start: dt.date = DEFAULT_WINDOW[0]
    window_end: dt.date = DEFAULT_WINDOW[1]
    data_dir: Optional[str] = None


class ExportPlotResponse(BaseModel):
    csv: str
    outlier_dates: list[str]


class ReplicateRequest(PanelOptions):
    dependents: Optional[list[Literal["wti", "brent"]]] = None
    scopes: Optional[list[Literal["total", "china", "outside_china"]]] = None
    include_text: bool = True


class ReplicateResponse(BaseModel):
    report: dict[str, Any]
    text: Optional[str] = None


class SimulateRequest(BaseModel):
    dgp: str
    test: str
    T: int = Field(default=200, ge=20)
    replications: int = Field(default=500, ge=1)
    seed: int = 0
    level: float = Field(default=0.05, gt=0.0, lt=1.0)
    workers: int = Field(default=1, ge=1, le=32)
    dgp_params: dict[str, float] = Field(default_factory=dict)
    test_params: dict[str, float] = Field(default_factory=dict)


class SimulateResponse(BaseModel):
    dgp: str
    test: str
    T: int
    replications: int
    level: float
    seed: int
    rejection_rate: float
    estimate_mean: Optional[float] = None
    estimate_std: Optional[float] = None
    estimate_q05: Optional[float] = None
    estimate_q50: Optional[float] = None
    estimate_q95: Optional[float] = None
    failures: int


class ErrorResponse(BaseModel):
    error: str
    detail: str


class HealthResponse(BaseModel):
    status: str
    version: str
