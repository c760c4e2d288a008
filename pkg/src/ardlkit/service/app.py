"""FastAPI service wrapping the estimation package.

Every endpoint is a pure computation over the bundled (or caller-supplied)
snapshot files; nothing is fetched from the network and no state is kept
between requests.
"""

from __future__ import annotations

import dataclasses

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__, ardl, diagnostics, ingest, replicate, simulate, unit_root
from ..errors import ArdlkitError
from . import schemas

app = FastAPI(
    title="ardlkit",
    version=__version__,
    description=(
        "ARDL bounds-testing workflow for oil price / COVID-19 / VIX / EPU "
        "daily series: panels, unit-root pretests, conditional-ECM estimation, "
        "bounds F-tests, diagnostics, replication and Monte Carlo simulation."
    ),
)


@app.exception_handler(ArdlkitError)
async def ardlkit_error_handler(_: Request, exc: ArdlkitError) -> JSONResponse:
    return JSONResponse(status_code=422, content={"error": exc.category, "detail": exc.message})


@app.get("/health", response_model=schemas.HealthResponse)
def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(status="ok", version=__version__)


@app.post("/panel", response_model=schemas.PanelResponse)
def build_panel(req: schemas.IngestRequest) -> schemas.PanelResponse:
    ds = ingest.build_dataset(req.panel_config())
    return schemas.PanelResponse(
        rows=ds.nrows,
        window=[ds.calendar[0].isoformat(), ds.calendar[-1].isoformat()],
        columns=[
            schemas.ColumnInfo(name=c.name, transform=c.transform, shift=c.shift, role=c.role)
            for c in ds.columns
        ],
        calendar=[d.isoformat() for d in ds.calendar],
        values={c.name: [float(v) for v in c.series.values] for c in ds.columns}
        if req.include_values
        else None,
    )


@app.post("/summary", response_model=schemas.SummaryResponse)
def summary(req: schemas.SummaryRequest) -> schemas.SummaryResponse:
    return schemas.SummaryResponse(columns=replicate.summary_block(req.panel_config()))


@app.post("/unit-root", response_model=schemas.UnitRootResponse)
def unit_root_endpoint(req: schemas.UnitRootRequest) -> schemas.UnitRootResponse:
    series = replicate.unit_root_series(req.panel_config(), transforms=req.series_transforms)[req.variable]
    if req.test == "pp":
        res = unit_root.pp_test(series, spec=req.spec, bandwidth=req.bandwidth)
    else:
        res = unit_root.adf_test(series, spec=req.spec, max_lag=req.adf_max_lag)
    classification = unit_root.classify(
        series, spec=req.spec, test=req.test, bandwidth=req.bandwidth, max_lag=req.adf_max_lag
    )
    return schemas.UnitRootResponse(
        variable=req.variable,
        test=res.test,
        spec=res.spec,
        statistic=res.statistic,
        critical_values=res.critical_values,
        decisions=res.decisions,
        nobs=res.nobs,
        bandwidth=res.bandwidth,
        lags=res.lags,
        classification=classification,
    )


@app.post("/bounds", response_model=schemas.BoundsResponse)
def bounds(req: schemas.BoundsRequest) -> schemas.BoundsResponse:
    cfg = req.panel_config()
    ds = ingest.build_dataset(cfg)
    spec = ardl.select_lags(ds, max_lag=req.max_lag)
    fit = ardl.fit_conditional_ecm(ds, spec)
    by_level = {lvl: ardl.bounds_f_test(fit, level=lvl) for lvl in (0.01, 0.05, 0.10)}
    at_level = ardl.bounds_f_test(fit, level=req.level)
    dep = spec.dependent
    return schemas.BoundsResponse(
        dependent=req.dependent,
        variant=req.variant,
        f=at_level.f_stat,
        k=at_level.k,
        level=req.level,
        lower=at_level.lower,
        upper=at_level.upper,
        conclusion=at_level.conclusion,
        verdict=replicate.derive_verdict(by_level),
        table=at_level.table,
        levels={
            f"{int(lvl * 100)}%": {
                "lower": res.lower,
                "upper": res.upper,
                "conclusion": res.conclusion,
            }
            for lvl, res in by_level.items()
        },
        selected_lags={
            "oil": spec.dep_lags,
            **{replicate._column_role(r, dep): spec.reg_lags[r] for r in spec.regressors},
        },
        nobs=fit.nobs,
    )


@app.post("/fit", response_model=schemas.FitResponse)
def fit_model(req: schemas.FitRequest) -> schemas.FitResponse:
    model = replicate.run_model(req.panel_config(), max_lag=req.max_lag, lr_se_method=req.lr_se_method)
    if req.annotate:
        replicate._annotate_model(model)
    return schemas.FitResponse(model=replicate._jsonable(model), text=replicate.render_model_text(model))


@app.post("/diagnose", response_model=schemas.DiagnoseResponse)
def diagnose(req: schemas.DiagnoseRequest) -> schemas.DiagnoseResponse:
    cfg = req.panel_config()
    ds = ingest.build_dataset(cfg)
    spec = ardl.select_lags(ds, max_lag=req.max_lag)
    fit = ardl.fit_conditional_ecm(ds, spec)
    model = replicate.run_model(cfg, max_lag=req.max_lag)
    cusum_path = cusum_upper = cusum_lower = None
    try:
        cus = diagnostics.cusum(fit.fit)
        cusum_path = [float(v) for v in cus.path]
        cusum_upper = [float(v) for v in cus.upper]
        cusum_lower = [float(v) for v in cus.lower]
    except ArdlkitError:
        pass
    return schemas.DiagnoseResponse(
        diagnostics=replicate._jsonable(model["diagnostics"]),
        cusum_path=cusum_path,
        cusum_upper=cusum_upper,
        cusum_lower=cusum_lower,
    )


@app.post("/export-plot", response_model=schemas.ExportPlotResponse)
def export_plot(req: schemas.ExportPlotRequest) -> schemas.ExportPlotResponse:
    cfg = ingest.PanelConfig(
        window_start=req.window_start,
        window_end=req.window_end,
        data_dir=req.data_dir,
    )
    levels = ingest.load_level_series(cfg)
    order = ["wti", "brent", "covid_total", "covid_china", "covid_outside_china", "vix", "epu"]
    series = [levels[n] for n in order if n in levels]
    outliers = ingest.flag_outliers(levels["covid_total"])
    return schemas.ExportPlotResponse(
        csv=ingest.plot_export_csv(series),
        outlier_dates=[d.isoformat() for d in outliers],
    )


@app.post("/replicate", response_model=schemas.ReplicateResponse)
def replicate_endpoint(req: schemas.ReplicateRequest) -> schemas.ReplicateResponse:
    cfg = req.panel_config()
    report = replicate.replicate(
        config=cfg,
        max_lag=req.max_lag,
        dependents=tuple(req.dependents) if req.dependents else replicate.DEPENDENTS,
        scopes=tuple(req.scopes) if req.scopes else replicate.MODEL_SCOPES,
    )
    return schemas.ReplicateResponse(
        report=replicate._jsonable(report),
        text=replicate.render_text(report) if req.include_text else None,
    )


@app.post("/simulate", response_model=schemas.SimulateResponse)
def simulate_endpoint(req: schemas.SimulateRequest) -> schemas.SimulateResponse:
    summary = simulate.run_simulation(
        dgp=req.dgp,
        test=req.test,
        T=req.T,
        replications=req.replications,
        seed=req.seed,
        level=req.level,
        workers=req.workers,
        dgp_params=req.dgp_params,
        test_params=req.test_params,
    )
    return schemas.SimulateResponse(**dataclasses.asdict(summary))
