"""Unit-root pretests: Phillips-Perron and augmented Dickey-Fuller.

Both tests run the Dickey-Fuller regression

    y_t = mu (+ beta*t) + rho*y_{t-1} (+ lagged differences for ADF) + u_t

and evaluate the t-statistic of rho-1 against MacKinnon response-surface
critical values. The PP variant replaces lag augmentation with the
nonparametric Newey-West/Bartlett correction of the t-statistic, with default
bandwidth floor(4*(T/100)^(2/9)) evaluated at the regression's effective
sample size.

These are left-tail tests: reject the unit root when the statistic is below
the critical value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import ols
from .critical_values import DETERMINISTIC_SPECS, dickey_fuller_crit
from .errors import DataError, DegenerateRegressionError, SampleTooSmallError
from .timeseries import Series

MIN_OBS = 15


@dataclass(frozen=True)
class UnitRootResult:
    test: str  # "phillips_perron" | "adf"
    spec: str  # "n" | "c" | "ct"
    statistic: float
    critical_values: dict[str, float]  # {"1%":..., "5%":..., "10%":...}
    decisions: dict[str, bool]  # reject H0 (unit root) per level
    nobs: int
    bandwidth: int | None = None
    lags: int | None = None

    def rejects(self, level: str = "5%") -> bool:
        return self.decisions[level]


def _as_array(x) -> np.ndarray:
    if isinstance(x, Series):
        return np.asarray(x.values, dtype=float)
    return np.asarray(x, dtype=float).reshape(-1)


def _check_series(y: np.ndarray, min_obs: int) -> None:
    if len(y) < min_obs:
        raise SampleTooSmallError(
            f"unit-root test needs at least {min_obs} observations, got {len(y)}"
        )
    if np.ptp(y) == 0.0:
        raise DegenerateRegressionError("series is constant; unit-root regression is degenerate")


def _deterministic(spec: str, n: int) -> tuple[list[str], list[np.ndarray]]:
    if spec not in DETERMINISTIC_SPECS:
        raise DataError(f"unknown deterministic spec {spec!r}")
    names: list[str] = []
    cols: list[np.ndarray] = []
    if spec in ("c", "ct"):
        names.append("const")
        cols.append(np.ones(n))
    if spec == "ct":
        names.append("trend")
        cols.append(np.arange(1.0, n + 1.0))
    return names, cols


def _decide(statistic: float, cvs: dict[str, float]) -> dict[str, bool]:
    return {lvl: bool(statistic < cv) for lvl, cv in cvs.items()}


def default_bandwidth(nobs: int) -> int:
    return int(np.floor(4.0 * (nobs / 100.0) ** (2.0 / 9.0)))


def pp_test(series, spec: str = "c", bandwidth: int | None = None) -> UnitRootResult:
    """Phillips-Perron Z_tau test.

    The correction applied to the Dickey-Fuller t-statistic is

        Z_tau = sqrt(g0/lam2)*t_rho - (lam2-g0)*n*se(rho)/(2*sqrt(lam2)*s)

    with g0 the residual variance (divisor n), lam2 the Bartlett-kernel
    long-run variance of the residuals, and s the regression standard error.
    With bandwidth 0, lam2 = g0 and Z_tau is exactly the DF t-statistic.
    """
    y = _as_array(series)
    _check_series(y, MIN_OBS)

    y_t = y[1:]
    y_lag = y[:-1]
    n = len(y_t)
    names, cols = _deterministic(spec, n)
    X = ols.DesignMatrix(names=tuple(names + ["y_lag"]), values=np.column_stack(cols + [y_lag]))
    reg = ols.fit(X, y_t)

    rho_idx = reg.names.index("y_lag")
    rho = float(reg.beta[rho_idx])
    se_rho = float(reg.se[rho_idx])
    if se_rho <= 0.0:
        raise DegenerateRegressionError("zero standard error on the lag coefficient")
    t_rho = (rho - 1.0) / se_rho

    u = reg.residuals
    q = default_bandwidth(n) if bandwidth is None else int(bandwidth)
    if q < 0:
        raise DataError("bandwidth must be nonnegative")
    g0 = float(u @ u) / n
    lam2 = g0
    for j in range(1, q + 1):
        gamma_j = float(u[j:] @ u[:-j]) / n
        lam2 += 2.0 * (1.0 - j / (q + 1.0)) * gamma_j
    lam2 = max(lam2, 1e-300)
    s = float(np.sqrt(reg.sigma2))

    z_tau = np.sqrt(g0 / lam2) * t_rho - (lam2 - g0) * n * se_rho / (2.0 * np.sqrt(lam2) * s)

    cvs = dickey_fuller_crit(spec, n)
    return UnitRootResult(
        test="phillips_perron",
        spec=spec,
        statistic=float(z_tau),
        critical_values=cvs,
        decisions=_decide(float(z_tau), cvs),
        nobs=n,
        bandwidth=q,
    )


def _adf_design(y: np.ndarray, spec: str, lags: int, offset: int) -> tuple[ols.DesignMatrix, np.ndarray]:
    """ADF regression rows t = offset..end; offset must be >= lags+1."""
    dy = np.diff(y)
    t_idx = np.arange(offset, len(y))  # indices into y for the dependent Δy_t
    lhs = dy[t_idx - 1]
    n = len(t_idx)
    names, cols = _deterministic(spec, n)
    names.append("y_lag")
    cols.append(y[t_idx - 1])
    for i in range(1, lags + 1):
        names.append(f"d_y_lag{i}")
        cols.append(dy[t_idx - 1 - i])
    X = ols.DesignMatrix(names=tuple(names), values=np.column_stack(cols))
    return X, lhs


def adf_test(
    series,
    spec: str = "c",
    max_lag: int = 4,
    criterion: str = "aic",
) -> UnitRootResult:
    """Augmented Dickey-Fuller with AIC lag selection over 0..max_lag.

    Candidate lag orders are compared on the common sample truncated by
    max_lag so the criteria are comparable; the chosen order is then refit on
    its own maximal sample.
    """
    y = _as_array(series)
    if max_lag < 0:
        raise DataError("max_lag must be nonnegative")
    _check_series(y, max_lag + MIN_OBS)
    if criterion.lower() != "aic":
        raise DataError(f"unsupported lag selection criterion {criterion!r}")

    common_offset = max_lag + 1
    best_lag, best_aic = 0, np.inf
    for p in range(0, max_lag + 1):
        X, lhs = _adf_design(y, spec, p, common_offset)
        cand = ols.fit(X, lhs)
        if cand.aic < best_aic - 1e-12:
            best_aic, best_lag = cand.aic, p

    X, lhs = _adf_design(y, spec, best_lag, best_lag + 1)
    reg = ols.fit(X, lhs)
    idx = reg.names.index("y_lag")
    se = float(reg.se[idx])
    if se <= 0.0:
        raise DegenerateRegressionError("zero standard error on the lag coefficient")
    tau = float(reg.beta[idx]) / se

    n = reg.nobs
    cvs = dickey_fuller_crit(spec, n)
    return UnitRootResult(
        test="adf",
        spec=spec,
        statistic=tau,
        critical_values=cvs,
        decisions=_decide(tau, cvs),
        nobs=n,
        lags=best_lag,
    )


def classify(
    series,
    spec: str = "c",
    test: str = "pp",
    level: str = "5%",
    bandwidth: int | None = None,
    max_lag: int = 4,
) -> str:
    """Integration order: "I0" if the level rejects, "I1" if only the first
    difference rejects, "higher" otherwise."""
    y = _as_array(series)
    runner = {
        "pp": lambda v: pp_test(v, spec=spec, bandwidth=bandwidth),
        "adf": lambda v: adf_test(v, spec=spec, max_lag=max_lag),
    }.get(test)
    if runner is None:
        raise DataError(f"unknown unit-root test {test!r}; expected 'pp' or 'adf'")
    if runner(y).rejects(level):
        return "I0"
    if runner(np.diff(y)).rejects(level):
        return "I1"
    return "higher"
