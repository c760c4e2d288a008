"""Ordinary least squares with full inferential output.

This is the numerical core under the unit-root tests, the conditional-ECM
estimator and the diagnostics battery. Coefficients are computed through a QR
orthogonalization (never the normal equations); classical homoskedastic
standard errors come from sigma^2 (X'X)^-1.

Conventions, fixed here so information criteria are comparable everywhere:
the Gaussian log-likelihood uses the ML variance SSR/T, and AIC is
-2*loglik + 2k.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy import stats

from .errors import (
    DataError,
    DegreesOfFreedomError,
    SampleMismatchError,
    SingularDesignError,
)

# Columns whose pivoted-QR diagonal falls below RANK_RTOL times the largest
# diagonal count as collinear.
RANK_RTOL = 1e-10

_LOG_2PI = float(np.log(2.0 * np.pi))


@dataclass(frozen=True)
class DesignMatrix:
    """Named T-by-k regressor matrix; may include an intercept column of ones."""

    names: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 2:
            raise DataError("design matrix must be two-dimensional")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "names", tuple(self.names))
        if len(self.names) != vals.shape[1]:
            raise DataError(
                f"{len(self.names)} column names for {vals.shape[1]} columns"
            )
        if len(set(self.names)) != len(self.names):
            raise DataError(f"duplicate design column names: {list(self.names)}")
        if not np.all(np.isfinite(vals)):
            raise DataError("design matrix contains non-finite values")

    @property
    def nobs(self) -> int:
        return self.values.shape[0]

    @property
    def nparams(self) -> int:
        return self.values.shape[1]

    def drop(self, names: list[str] | tuple[str, ...]) -> "DesignMatrix":
        drop = set(names)
        missing = drop - set(self.names)
        if missing:
            raise DataError(f"cannot drop unknown columns {sorted(missing)}")
        keep = [i for i, n in enumerate(self.names) if n not in drop]
        return DesignMatrix(
            names=tuple(self.names[i] for i in keep),
            values=self.values[:, keep],
        )


@dataclass(frozen=True)
class OlsFit:
    """Estimated regression with the pieces downstream consumers need."""

    design: DesignMatrix
    y: np.ndarray
    beta: np.ndarray
    se: np.ndarray
    cov: np.ndarray
    residuals: np.ndarray
    fitted: np.ndarray
    ssr: float
    sigma2: float  # SSR / (T - k)
    loglik: float
    aic: float
    r2: float
    nobs: int
    nparams: int

    @property
    def names(self) -> tuple[str, ...]:
        return self.design.names

    def coef(self, name: str) -> float:
        return float(self.beta[self.names.index(name)])

    def stderr(self, name: str) -> float:
        return float(self.se[self.names.index(name)])

    @property
    def df_resid(self) -> int:
        return self.nobs - self.nparams


@dataclass(frozen=True)
class FStat:
    f: float
    df1: int
    df2: int
    p: float


@dataclass(frozen=True)
class CoefTest:
    name: str
    coef: float
    se: float
    t: float
    p: float
    stars: str


def _rank_check(X: DesignMatrix) -> None:
    # Pivoted QR: |diag(R)| decays with effective rank; ratio below RANK_RTOL
    # flags the pivoted-out columns as collinear.
    _, R, piv = scipy.linalg.qr(X.values, mode="economic", pivoting=True)
    d = np.abs(np.diag(R))
    if d.size == 0 or d[0] == 0.0:
        raise SingularDesignError(f"design is identically zero: {list(X.names)}")
    rank = int(np.sum(d > RANK_RTOL * d[0]))
    if rank < X.nparams:
        bad = sorted(X.names[i] for i in piv[rank:])
        raise SingularDesignError(
            f"design matrix is rank-deficient; collinear columns: {bad}"
        )


def fit(X: DesignMatrix, y: np.ndarray) -> OlsFit:
    """OLS via QR; raises on rank deficiency or too few observations."""
    y = np.asarray(y, dtype=float).reshape(-1)
    T, k = X.values.shape
    if len(y) != T:
        raise SampleMismatchError(f"y has {len(y)} rows but X has {T}")
    if T <= k:
        raise DegreesOfFreedomError(
            f"need more observations than parameters: T={T}, k={k}"
        )
    if not np.all(np.isfinite(y)):
        raise DataError("y contains non-finite values")
    _rank_check(X)

    Q, R = np.linalg.qr(X.values)
    beta = scipy.linalg.solve_triangular(R, Q.T @ y)
    fitted = X.values @ beta
    resid = y - fitted
    ssr = float(resid @ resid)
    df = T - k
    sigma2 = ssr / df
    # (X'X)^-1 = R^-1 R^-T from the same factorization.
    r_inv = scipy.linalg.solve_triangular(R, np.eye(k))
    xtx_inv = r_inv @ r_inv.T
    cov = sigma2 * xtx_inv
    se = np.sqrt(np.maximum(np.diag(cov), 0.0))

    sigma2_ml = max(ssr / T, 1e-300)
    loglik = -0.5 * T * (_LOG_2PI + np.log(sigma2_ml) + 1.0)
    aic = -2.0 * loglik + 2.0 * k

    tss = float(np.sum((y - y.mean()) ** 2))
    if tss > 0.0:
        r2 = 1.0 - ssr / tss
    else:
        r2 = 1.0 if ssr <= 1e-30 else 0.0

    return OlsFit(
        design=X,
        y=y,
        beta=beta,
        se=se,
        cov=cov,
        residuals=resid,
        fitted=fitted,
        ssr=ssr,
        sigma2=sigma2,
        loglik=float(loglik),
        aic=float(aic),
        r2=float(r2),
        nobs=T,
        nparams=k,
    )


def wald_f(fit_u: OlsFit, fit_r: OlsFit, m: int) -> FStat:
    """F-test of m zero restrictions: restricted vs unrestricted SSR.

    Both fits must be estimated on the identical sample rows.
    """
    if fit_u.nobs != fit_r.nobs:
        raise SampleMismatchError(
            f"sample mismatch: unrestricted T={fit_u.nobs}, restricted T={fit_r.nobs}"
        )
    if m < 1:
        raise DataError("restriction count m must be >= 1")
    df2 = fit_u.df_resid
    if df2 < 1:
        raise DegreesOfFreedomError("no residual degrees of freedom for F-test")
    num = max(fit_r.ssr - fit_u.ssr, 0.0) / m
    den = fit_u.ssr / df2
    if den <= 0.0:
        # Perfect unrestricted fit: any restriction with extra SSR is rejected
        # with certainty; equal SSRs give F = 0.
        f = 0.0 if num <= 0.0 else float("inf")
    else:
        f = num / den
    p = float(stats.f.sf(f, m, df2)) if np.isfinite(f) else 0.0
    return FStat(f=float(f), df1=m, df2=df2, p=p)


def significance_stars(p: float) -> str:
    if p < 0.01:
        return "***"
    if p < 0.05:
        return "**"
    if p < 0.10:
        return "*"
    return ""


def t_stats(fit_result: OlsFit) -> list[CoefTest]:
    """Per-coefficient t statistics and two-sided Student-t p-values (T−k df)."""
    df = fit_result.df_resid
    out = []
    for i, name in enumerate(fit_result.names):
        b = float(fit_result.beta[i])
        s = float(fit_result.se[i])
        if s > 0.0:
            t = b / s
            p = 2.0 * float(stats.t.sf(abs(t), df))
        elif b == 0.0:
            t, p = 0.0, 1.0
        else:
            t, p = float(np.sign(b)) * float("inf"), 0.0
        out.append(CoefTest(name=name, coef=b, se=s, t=t, p=p, stars=significance_stars(p)))
    return out
