"""Seeded Monte Carlo harness: named DGPs, test procedures, rejection rates.

Every replication draws from its own child of one root SeedSequence, so
results are reproducible from the seed and invariant to how replications are
scheduled across workers.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import ardl, diagnostics, ols, unit_root
from .errors import DataError, UnknownDgpError
from .timeseries import Column, Dataset, Series

_LEVEL_KEYS = {0.01: "1%", 0.05: "5%", 0.10: "10%"}


def _dgp_white_noise(rng, T: int, sigma: float = 1.0):
    return {"y": sigma * rng.standard_normal(T)}


def _dgp_random_walk(rng, T: int, sigma: float = 1.0):
    return {"y": np.cumsum(sigma * rng.standard_normal(T))}


def _dgp_ar1(rng, T: int, rho: float = 0.5, sigma: float = 1.0):
    e = sigma * rng.standard_normal(T)
    y = np.empty(T)
    y[0] = e[0] / np.sqrt(max(1.0 - rho * rho, 1e-12))
    for t in range(1, T):
        y[t] = rho * y[t - 1] + e[t]
    return {"y": y}


def _dgp_cointegrated_pair(rng, T: int, theta: float = 0.8, speed: float = -0.5, sigma: float = 0.5):
    """x is a random walk; y error-corrects toward theta*x at the given speed."""
    x = np.cumsum(rng.standard_normal(T))
    e = sigma * rng.standard_normal(T)
    y = np.empty(T)
    y[0] = theta * x[0] + e[0]
    for t in range(1, T):
        y[t] = y[t - 1] + speed * (y[t - 1] - theta * x[t - 1]) + e[t]
    return {"y": y, "x": x}


def _dgp_coefficient_break(
    rng, T: int, break_frac: float = 0.5, break_size: float = 5.0, sigma: float = 1.0
):
    """Linear model whose intercept jumps by break_size regression standard
    errors at the break fraction; break_size=0 is a stable linear DGP."""
    x = rng.standard_normal(T)
    e = sigma * rng.standard_normal(T)
    beta0 = np.where(np.arange(T) >= int(T * break_frac), break_size * sigma, 0.0)
    y = 1.0 + beta0 + x + e
    return {"y": y, "x": x}


DGPS = {
    "white_noise": _dgp_white_noise,
    "random_walk": _dgp_random_walk,
    "ar1": _dgp_ar1,
    "cointegrated_pair": _dgp_cointegrated_pair,
    "coefficient_break": _dgp_coefficient_break,
}


def _pair_dataset(y: np.ndarray, x: np.ndarray) -> Dataset:
    # Synthetic daily calendar; estimators only care about row order.
    import datetime as dt

    base = dt.date(2000, 1, 1)
    dates = tuple(base + dt.timedelta(days=i) for i in range(len(y)))
    return Dataset(
        calendar=dates,
        columns=(
            Column(series=Series("y", dates, y), role="dependent"),
            Column(series=Series("x", dates, x), role="regressor"),
        ),
    )


def _level_key(level: float) -> str:
    key = _LEVEL_KEYS.get(round(level, 4))
    if key is None:
        raise DataError(f"unsupported significance level {level}")
    return key


def _proc_pp(data, level, params):
    res = unit_root.pp_test(data["y"], spec=params.get("spec", "c"))
    return {"reject": res.rejects(_level_key(level)), "estimate": res.statistic}


def _proc_adf(data, level, params):
    res = unit_root.adf_test(data["y"], spec=params.get("spec", "c"), max_lag=params.get("max_lag", 4))
    return {"reject": res.rejects(_level_key(level)), "estimate": res.statistic}


def _fixed_pair_fit(data, params) -> ardl.ArdlFit:
    spec = ardl.ArdlSpec(
        dependent="y",
        regressors=("x",),
        dep_lags=params.get("dep_lags", 1),
        reg_lags={"x": params.get("reg_lags", 0)},
        max_lag=max(1, params.get("dep_lags", 1), params.get("reg_lags", 0)),
    )
    return ardl.fit_conditional_ecm(_pair_dataset(data["y"], data["x"]), spec)


def _proc_bounds(data, level, params):
    fit = _fixed_pair_fit(data, params)
    res = ardl.bounds_f_test(fit, level=level)
    return {"reject": res.f_stat > res.upper, "estimate": res.f_stat}


def _proc_ecm_theta(data, level, params):
    ds = _pair_dataset(data["y"], data["x"])
    fit = _fixed_pair_fit(data, params)
    res = ardl.fit_ecm(ds, fit)
    return {"reject": res.validated, "estimate": res.theta}


def _proc_long_run_theta(data, level, params):
    fit = _fixed_pair_fit(data, params)
    lr = ardl.long_run(fit)
    return {"reject": not lr.degenerate, "estimate": lr.coefficients["x"]}


def _const_fit(y: np.ndarray) -> ols.OlsFit:
    X = ols.DesignMatrix(names=("const",), values=np.ones((len(y), 1)))
    return ols.fit(X, y)


def _linear_fit(y: np.ndarray, x: np.ndarray) -> ols.OlsFit:
    X = ols.DesignMatrix(names=("const", "x"), values=np.column_stack([np.ones(len(y)), x]))
    return ols.fit(X, y)


def _proc_bg(data, level, params):
    if "x" in data:
        fit = _linear_fit(data["y"], data["x"])
    else:
        fit = _const_fit(data["y"])
    res = diagnostics.breusch_godfrey(fit, lags=params.get("lags", 4))
    return {"reject": res.p < level, "estimate": res.statistic}


def _proc_arch(data, level, params):
    if "x" in data:
        resid = _linear_fit(data["y"], data["x"]).residuals
    else:
        resid = _const_fit(data["y"]).residuals
    res = diagnostics.arch_lm(resid, lags=params.get("lags", 4))
    return {"reject": res.p < level, "estimate": res.statistic}


def _proc_jb(data, level, params):
    if "x" in data:
        resid = _linear_fit(data["y"], data["x"]).residuals
    else:
        resid = _const_fit(data["y"]).residuals
    res = diagnostics.jarque_bera(resid)
    return {"reject": res.p < level, "estimate": res.statistic}


def _proc_reset(data, level, params):
    fit = _linear_fit(data["y"], data["x"])
    res = diagnostics.ramsey_reset(fit)
    return {"reject": res.p < level, "estimate": res.statistic}


def _proc_cusum(data, level, params):
    fit = _linear_fit(data["y"], data["x"])
    res = diagnostics.cusum(fit)
    return {"reject": not res.stable, "estimate": float(np.max(np.abs(res.path)))}


PROCEDURES = {
    "pp": _proc_pp,
    "adf": _proc_adf,
    "bounds": _proc_bounds,
    "ecm_theta": _proc_ecm_theta,
    "long_run_theta": _proc_long_run_theta,
    "bg": _proc_bg,
    "arch": _proc_arch,
    "jb": _proc_jb,
    "reset": _proc_reset,
    "cusum": _proc_cusum,
}


@dataclass(frozen=True)
class SimulationSummary:
    dgp: str
    test: str
    T: int
    replications: int
    level: float
    seed: int
    rejection_rate: float
    estimate_mean: float | None
    estimate_std: float | None
    estimate_q05: float | None
    estimate_q50: float | None
    estimate_q95: float | None
    failures: int


def run_simulation(
    dgp: str,
    test: str,
    T: int = 200,
    replications: int = 500,
    seed: int = 0,
    level: float = 0.05,
    workers: int = 1,
    dgp_params: dict | None = None,
    test_params: dict | None = None,
    generator=None,
) -> SimulationSummary:
    """Run ``replications`` seeded draws of ``dgp`` through ``test``.

    ``generator`` lets tests inject a custom DGP callable; the public surface
    only accepts registry names.
    """
    if replications < 1:
        raise DataError("replications must be >= 1")
    gen = generator
    if gen is None:
        gen = DGPS.get(dgp)
        if gen is None:
            raise UnknownDgpError(f"unknown DGP {dgp!r}; known: {sorted(DGPS)}")
    proc = PROCEDURES.get(test)
    if proc is None:
        raise DataError(f"unknown test procedure {test!r}; known: {sorted(PROCEDURES)}")
    dgp_params = dict(dgp_params or {})
    test_params = dict(test_params or {})

    children = np.random.SeedSequence(seed).spawn(replications)

    def one(i: int) -> tuple[bool, float | None, bool]:
        rng = np.random.default_rng(children[i])
        data = gen(rng, T, **dgp_params)
        try:
            out = proc(data, level, test_params)
        except DataError:
            raise
        except Exception:
            # Degenerate draw (for example a singular candidate design):
            # count it, never let it poison the batch.
            return False, None, True
        est = out.get("estimate")
        return bool(out["reject"]), (None if est is None else float(est)), False

    if workers <= 1:
        results = [one(i) for i in range(replications)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, range(replications)))

    rejects = [r for r, _, bad in results if not bad]
    estimates = np.array([e for _, e, bad in results if not bad and e is not None])
    failures = sum(1 for _, _, bad in results if bad)
    n_ok = len(rejects)
    if n_ok == 0:
        raise DataError("every replication failed; check the DGP/test pairing")

    has_est = estimates.size > 0
    return SimulationSummary(
        dgp=dgp if generator is None else f"custom:{dgp}",
        test=test,
        T=T,
        replications=replications,
        level=level,
        seed=seed,
        rejection_rate=float(np.mean(rejects)),
        estimate_mean=float(np.mean(estimates)) if has_est else None,
        estimate_std=float(np.std(estimates, ddof=1)) if estimates.size > 1 else None,
        estimate_q05=float(np.quantile(estimates, 0.05)) if has_est else None,
        estimate_q50=float(np.quantile(estimates, 0.50)) if has_est else None,
        estimate_q95=float(np.quantile(estimates, 0.95)) if has_est else None,
        failures=failures,
    )
