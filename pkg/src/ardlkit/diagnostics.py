"""Post-estimation test battery: serial correlation, ARCH, normality,
functional form, and parameter stability.

Each test returns a small frozen result with the statistic, the p-value and a
5%-level verdict; degenerate inputs (zero-variance residuals, constant fitted
values) are flagged instead of raising where the spec calls for it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from . import ols
from .errors import (
    DegenerateRegressionError,
    DegreesOfFreedomError,
    SampleTooSmallError,
    SingularDesignError,
)

ALPHA = 0.05

# Brown-Durbin-Evans crossing coefficient for the 5% CUSUM boundary.
CUSUM_CRIT_5PCT = 0.948


@dataclass(frozen=True)
class LmTest:
    statistic: float
    p: float
    lags: int
    reject: bool
    degenerate: bool = False


@dataclass(frozen=True)
class JarqueBera:
    statistic: float
    p: float
    skewness: float
    kurtosis: float
    reject: bool
    degenerate: bool = False


@dataclass(frozen=True)
class ResetTest:
    statistic: float
    p: float
    df1: int
    df2: int
    powers: tuple[int, ...]
    reject: bool
    reduced: bool = False  # True when collinear powers were dropped


@dataclass(frozen=True)
class CusumTest:
    path: np.ndarray
    upper: np.ndarray
    lower: np.ndarray
    stable: bool
    sigma: float
    truncated: bool = False
    recursive_residuals: np.ndarray = field(default_factory=lambda: np.empty(0))


@dataclass(frozen=True)
class DiagnosticsReport:
    """Battery results; a field is None when its preconditions failed
    (for example too few residual degrees of freedom for the LM lags)."""

    serial_correlation: LmTest | None
    arch: LmTest | None
    normality: JarqueBera
    reset: ResetTest | None
    cusum: CusumTest | None


def _aux_r2(X: ols.DesignMatrix, y: np.ndarray) -> float:
    return ols.fit(X, y).r2


def breusch_godfrey(fit_result: ols.OlsFit, lags: int = 4) -> LmTest:
    """LM test of residual serial correlation up to ``lags``.

    Auxiliary regression of the residuals on the original regressors plus
    their own lags (initial missing lags set to zero); LM = T*R2_aux is
    chi-square(lags) under the null.
    """
    if lags < 1:
        raise DegreesOfFreedomError("lags must be >= 1")
    u = fit_result.residuals
    T = len(u)
    if T - fit_result.nparams - lags <= 5:
        raise DegreesOfFreedomError(
            f"too few observations for BG with {lags} lags (T={T}, k={fit_result.nparams})"
        )
    if float(np.max(np.abs(u))) < 1e-12 or np.std(u) == 0.0:
        return LmTest(statistic=0.0, p=1.0, lags=lags, reject=False, degenerate=True)

    names = list(fit_result.names)
    cols = [fit_result.design.values[:, i] for i in range(fit_result.nparams)]
    for j in range(1, lags + 1):
        lagged = np.concatenate([np.zeros(j), u[:-j]])
        names.append(f"resid.L{j}")
        cols.append(lagged)
    X = ols.DesignMatrix(names=tuple(names), values=np.column_stack(cols))
    lm = T * _aux_r2(X, u)
    p = float(stats.chi2.sf(lm, lags))
    return LmTest(statistic=float(lm), p=p, lags=lags, reject=p < ALPHA)


def arch_lm(residuals: np.ndarray, lags: int = 4) -> LmTest:
    """Engle's LM test: squared residuals on their own ``lags`` lags."""
    if lags < 1:
        raise DegreesOfFreedomError("lags must be >= 1")
    u = np.asarray(residuals, dtype=float).reshape(-1)
    T = len(u)
    if T - lags - 1 <= 5:
        raise DegreesOfFreedomError(f"too few observations for ARCH LM with {lags} lags")
    u2 = u * u
    if np.std(u2) == 0.0:
        return LmTest(statistic=0.0, p=1.0, lags=lags, reject=False, degenerate=True)

    rows = np.arange(lags, T)
    names = ["const"] + [f"resid2.L{j}" for j in range(1, lags + 1)]
    cols = [np.ones(len(rows))] + [u2[rows - j] for j in range(1, lags + 1)]
    X = ols.DesignMatrix(names=tuple(names), values=np.column_stack(cols))
    lm = len(rows) * _aux_r2(X, u2[rows])
    p = float(stats.chi2.sf(lm, lags))
    return LmTest(statistic=float(lm), p=p, lags=lags, reject=p < ALPHA)


def jarque_bera(residuals: np.ndarray) -> JarqueBera:
    """JB = T/6 * (S^2 + (K-3)^2/4) against chi-square(2)."""
    u = np.asarray(residuals, dtype=float).reshape(-1)
    T = len(u)
    if T < 8:
        raise SampleTooSmallError(f"Jarque-Bera needs at least 8 observations, got {T}")
    c = u - u.mean()
    m2 = float(np.mean(c**2))
    if m2 == 0.0:
        return JarqueBera(0.0, 1.0, 0.0, 3.0, reject=False, degenerate=True)
    s = float(np.mean(c**3)) / m2**1.5
    k = float(np.mean(c**4)) / m2**2
    jb = T / 6.0 * (s**2 + (k - 3.0) ** 2 / 4.0)
    p = float(stats.chi2.sf(jb, 2))
    return JarqueBera(float(jb), p, s, k, reject=p < ALPHA)


def ramsey_reset(fit_result: ols.OlsFit, powers: tuple[int, ...] = (2, 3)) -> ResetTest:
    """Joint F on powers of the fitted values added to the regression."""
    yhat = fit_result.fitted
    if float(np.ptp(yhat)) < 1e-12:
        raise DegenerateRegressionError("fitted values are constant; RESET is undefined")
    # Standardize to keep the powers numerically tame; the F statistic is
    # invariant because the design span is unchanged.
    z = (yhat - yhat.mean()) / np.std(yhat)

    use = tuple(sorted(powers))
    reduced = False
    while use:
        names = list(fit_result.names) + [f"fitted^{pw}" for pw in use]
        cols = [fit_result.design.values[:, i] for i in range(fit_result.nparams)]
        cols += [z**pw for pw in use]
        try:
            X = ols.DesignMatrix(names=tuple(names), values=np.column_stack(cols))
            fit_aug = ols.fit(X, fit_result.y)
            break
        except (SingularDesignError, DegreesOfFreedomError):
            use = use[:-1]
            reduced = True
    else:
        raise DegenerateRegressionError("all RESET power terms are collinear with the design")

    f = ols.wald_f(fit_aug, fit_result, m=len(use))
    return ResetTest(
        statistic=f.f,
        p=f.p,
        df1=f.df1,
        df2=f.df2,
        powers=use,
        reject=f.p < ALPHA,
        reduced=reduced,
    )


def recursive_residuals(y: np.ndarray, X: np.ndarray) -> tuple[np.ndarray, bool]:
    """One-step-ahead standardized prediction errors w_t, t = k+1..T.

    Rank-one Sherman-Morrison updating of (X'X)^-1. Returns (w, truncated);
    truncated=True when a singular update forced an early stop.
    """
    T, k = X.shape
    if T <= k:
        raise DegreesOfFreedomError("need more observations than regressors")
    # The initializing block must be invertible; extend it if the first k rows
    # are collinear (flagged as truncation since the path shortens).
    start = k
    truncated = False
    while start < T:
        Xi = X[:start]
        xtx = Xi.T @ Xi
        if np.linalg.matrix_rank(xtx) == k:
            break
        start += 1
        truncated = True
    if start >= T:
        raise SingularDesignError("no invertible initial block for recursive residuals")

    xtx_inv = np.linalg.inv(X[:start].T @ X[:start])
    beta = xtx_inv @ (X[:start].T @ y[:start])
    w = []
    for t in range(start, T):
        x_t = X[t]
        f_t = 1.0 + x_t @ xtx_inv @ x_t
        if f_t <= 0.0:  # numerically singular update
            truncated = True
            break
        err = y[t] - x_t @ beta
        w.append(err / np.sqrt(f_t))
        v = xtx_inv @ x_t
        xtx_inv = xtx_inv - np.outer(v, v) / f_t
        beta = beta + xtx_inv @ x_t * err
    return np.asarray(w), truncated


def cusum(fit_result: ols.OlsFit) -> CusumTest:
    """Brown-Durbin-Evans CUSUM of recursive residuals at the 5% level.

    path_r = sum_{s<=r} w_s / sigma_w; boundaries
    +/- 0.948*(sqrt(T-k) + 2*(r)/sqrt(T-k)) for r = 1..T-k. Stable iff the
    path never crosses a boundary.
    """
    T, k = fit_result.nobs, fit_result.nparams
    if T <= 2 * k:
        raise SampleTooSmallError(f"CUSUM needs T > 2k (T={T}, k={k})")
    w, truncated = recursive_residuals(fit_result.y, fit_result.design.values)
    n = len(w)
    if n < 2:
        raise SampleTooSmallError("too few recursive residuals for CUSUM")
    sigma = float(np.sqrt(np.sum((w - w.mean()) ** 2) / (n - 1)))
    if sigma <= 0.0:
        path = np.zeros(n)
    else:
        path = np.cumsum(w) / sigma
    r = np.arange(1, n + 1)
    sqrt_n = np.sqrt(n)
    upper = CUSUM_CRIT_5PCT * (sqrt_n + 2.0 * r / sqrt_n)
    lower = -upper
    stable = bool(np.all((path <= upper) & (path >= lower)))
    return CusumTest(
        path=path,
        upper=upper,
        lower=lower,
        stable=stable,
        sigma=sigma,
        truncated=truncated,
        recursive_residuals=w,
    )


def diagnose(fit_result: ols.OlsFit, lags: int = 4) -> DiagnosticsReport:
    """The full battery, degrading per test when preconditions fail."""
    try:
        bg = breusch_godfrey(fit_result, lags=lags)
    except DegreesOfFreedomError:
        bg = None
    try:
        arch = arch_lm(fit_result.residuals, lags=lags)
    except DegreesOfFreedomError:
        arch = None
    try:
        reset = ramsey_reset(fit_result)
    except (DegenerateRegressionError, DegreesOfFreedomError, SingularDesignError):
        reset = None
    try:
        stability = cusum(fit_result)
    except (SampleTooSmallError, SingularDesignError, DegreesOfFreedomError):
        stability = None
    return DiagnosticsReport(
        serial_correlation=bg,
        arch=arch,
        normality=jarque_bera(fit_result.residuals),
        reset=reset,
        cusum=stability,
    )
