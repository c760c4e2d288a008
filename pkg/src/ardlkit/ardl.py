"""Conditional-ECM estimation, AIC lag search, bounds F-test, long-run algebra.

The single-equation form estimated here regresses the differenced dependent
variable on an unrestricted intercept, the one-period-lagged levels of every
panel column, lagged differences of the dependent, and current-to-lagged
differences of each regressor:

    dy_t = c + d_y*y_{t-1} + sum_x d_x*x_{t-1}
         + sum_{i=1..p} a_i*dy_{t-i} + sum_x sum_{j=0..q_x} b_xj*dx_{t-j} + e_t

Panel columns are expected to already carry their timing shifts, so the
estimator always sees a uniform one-lag level structure. The bounds F-test
jointly restricts all level coefficients to zero (the intercept stays:
unrestricted-intercept, no-trend case), and the long-run equation normalizes
the level block on the dependent's coefficient.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy import stats

from . import ols
from .critical_values import BoundsPair, bounds_critical_values
from .errors import (
    DataError,
    DegreesOfFreedomError,
    NormalizationError,
    SingularDesignError,
    SpecError,
)
from .timeseries import Dataset

DEFAULT_MAX_LAG = 4

CONCLUSION_COINTEGRATION = "cointegration"
CONCLUSION_NONE = "no cointegration"
CONCLUSION_INCONCLUSIVE = "inconclusive"

# |t| of the dependent's level coefficient below this triggers the degenerate
# normalization warning in long_run(); configurable guardrail, not a paper
# convention.
NORMALIZATION_T_FLOOR = 1.0


@dataclass(frozen=True)
class ArdlSpec:
    """Selected lag structure for the conditional ECM."""

    dependent: str
    regressors: tuple[str, ...]
    dep_lags: int
    reg_lags: dict[str, int]
    max_lag: int = DEFAULT_MAX_LAG

    def __post_init__(self):
        object.__setattr__(self, "regressors", tuple(self.regressors))
        object.__setattr__(self, "reg_lags", dict(self.reg_lags))
        if self.dep_lags < 0 or self.dep_lags > self.max_lag:
            raise SpecError(f"dependent lag order {self.dep_lags} outside 0..{self.max_lag}")
        for name in self.regressors:
            q = self.reg_lags.get(name)
            if q is None:
                raise SpecError(f"no lag order for regressor {name!r}")
            if q < 0 or q > self.max_lag:
                raise SpecError(f"lag order {q} for {name!r} outside 0..{self.max_lag}")

    @property
    def offset(self) -> int:
        """First usable panel row: deepest lag reached back from t."""
        deepest = max([self.dep_lags] + [self.reg_lags[r] for r in self.regressors] + [0])
        return 1 + deepest

    @property
    def n_params(self) -> int:
        return 2 + len(self.regressors) + self.dep_lags + sum(
            self.reg_lags[r] + 1 for r in self.regressors
        )


@dataclass(frozen=True)
class ArdlFit:
    """Conditional-ECM estimate with its coefficient partition.

    ``level_names`` maps panel column -> design column of its lagged level;
    ``short_run_names`` maps panel column -> design columns of its difference
    terms in lag order (the dependent's start at lag 1, regressors' at 0).
    """

    spec: ArdlSpec
    fit: ols.OlsFit
    level_names: dict[str, str]
    short_run_names: dict[str, tuple[str, ...]]
    sample_dates: tuple
    offset: int

    @property
    def nobs(self) -> int:
        return self.fit.nobs

    def level_coef(self, column: str) -> float:
        return self.fit.coef(self.level_names[column])


@dataclass(frozen=True)
class BoundsResult:
    f_stat: float
    k: int
    level: float
    lower: float
    upper: float
    conclusion: str
    table: str
    df1: int
    df2: int


@dataclass(frozen=True)
class LongRunEquation:
    """Normalized long-run coefficients theta_x = -d_x/d_y and intercept -c/d_y."""

    coefficients: dict[str, float]
    standard_errors: dict[str, float]
    intercept: float
    intercept_se: float
    se_method: str
    normalizer: float  # d_y, the dependent's level coefficient
    normalizer_t: float
    degenerate: bool  # |t(d_y)| below the configured floor


@dataclass(frozen=True)
class EcmFit:
    """Second-stage regression of dy_t on the short-run terms and ECT_{t-1}."""

    theta: float
    se: float
    t: float
    p: float
    validated: bool  # theta < 0 and significant at 5%
    fit: ols.OlsFit | None
    ect: np.ndarray
    degenerate: bool = False
    no_cointegration_warning: bool = False


def _panel_arrays(dataset: Dataset) -> tuple[str, list[str], dict[str, np.ndarray]]:
    if dataset.gapped:
        raise DataError("estimators need an intersection-aligned dataset")
    dep = dataset.dependent.name
    regs = [c.name for c in dataset.regressors]
    data = {name: dataset.values(name) for name in (dep, *regs)}
    return dep, regs, data


def build_design(dataset: Dataset, spec: ArdlSpec, offset: int | None = None) -> tuple[ols.DesignMatrix, np.ndarray]:
    """Assemble (X, dy) for the conditional ECM on rows offset..end."""
    dep, regs, data = _panel_arrays(dataset)
    if spec.dependent != dep or tuple(spec.regressors) != tuple(regs):
        raise SpecError(
            f"spec columns ({spec.dependent}, {spec.regressors}) do not match "
            f"dataset columns ({dep}, {tuple(regs)})"
        )
    offset = spec.offset if offset is None else offset
    if offset < spec.offset:
        raise SpecError(f"offset {offset} too small for spec needing {spec.offset}")
    n = dataset.nrows
    if offset >= n:
        raise DegreesOfFreedomError(f"offset {offset} leaves no rows in a {n}-row panel")

    t_idx = np.arange(offset, n)
    d = {name: np.diff(vals) for name, vals in data.items()}  # d[name][t-1] = x_t - x_{t-1}

    names: list[str] = ["const"]
    cols: list[np.ndarray] = [np.ones(len(t_idx))]
    for name in (dep, *regs):
        names.append(f"{name}.L1")
        cols.append(data[name][t_idx - 1])
    for i in range(1, spec.dep_lags + 1):
        names.append(f"d.{dep}.L{i}")
        cols.append(d[dep][t_idx - 1 - i])
    for reg in regs:
        for j in range(0, spec.reg_lags[reg] + 1):
            names.append(f"d.{reg}.L{j}")
            cols.append(d[reg][t_idx - 1 - j])

    X = ols.DesignMatrix(names=tuple(names), values=np.column_stack(cols))
    dy = d[dep][t_idx - 1]
    return X, dy


def fit_conditional_ecm(dataset: Dataset, spec: ArdlSpec, offset: int | None = None) -> ArdlFit:
    dep, regs, _ = _panel_arrays(dataset)
    X, dy = build_design(dataset, spec, offset=offset)
    res = ols.fit(X, dy)
    level_names = {name: f"{name}.L1" for name in (dep, *regs)}
    short_run = {dep: tuple(f"d.{dep}.L{i}" for i in range(1, spec.dep_lags + 1))}
    for reg in regs:
        short_run[reg] = tuple(f"d.{reg}.L{j}" for j in range(0, spec.reg_lags[reg] + 1))
    used_offset = spec.offset if offset is None else offset
    return ArdlFit(
        spec=spec,
        fit=res,
        level_names=level_names,
        short_run_names=short_run,
        sample_dates=tuple(dataset.calendar[used_offset:]),
        offset=used_offset,
    )


def select_lags(dataset: Dataset, max_lag: int = DEFAULT_MAX_LAG) -> ArdlSpec:
    """Exhaustive information-criterion search over per-variable lag orders.

    Every candidate is estimated on the common sample truncated by max_lag so
    the criteria are comparable. Ties break toward fewer parameters, then
    lexicographically on (dependent, regressor...) lag orders.

    The criterion is the small-sample corrected AIC,
    AICc = AIC + 2k(k+1)/(T-k-1). With the samples this search faces
    (T around 30 against candidate dimensions up to 24), plain AIC's
    maximum-likelihood variance makes richer candidates win almost surely
    whatever the data; the correction removes that degeneracy and coincides
    with AIC as T grows.
    """
    dep, regs, _ = _panel_arrays(dataset)
    k = len(regs)
    need = (k + 1) * (max_lag + 1) + 5
    if dataset.nrows <= need:
        raise DegreesOfFreedomError(
            f"panel has {dataset.nrows} rows; lag search with max_lag={max_lag} "
            f"needs more than {need}"
        )
    common_offset = 1 + max_lag
    dep_range = range(1, max_lag + 1) if max_lag >= 1 else [0]

    best: tuple[float, int, tuple[int, ...]] | None = None
    best_spec: ArdlSpec | None = None
    skipped = 0
    for dep_lags in dep_range:
        for qs in itertools.product(range(0, max_lag + 1), repeat=k):
            spec = ArdlSpec(
                dependent=dep,
                regressors=tuple(regs),
                dep_lags=dep_lags,
                reg_lags={r: q for r, q in zip(regs, qs)},
                max_lag=max_lag,
            )
            try:
                X, dy = build_design(dataset, spec, offset=common_offset)
                cand = ols.fit(X, dy)
            except (SingularDesignError, DegreesOfFreedomError):
                skipped += 1
                continue
            if cand.nobs - cand.nparams - 1 <= 0:
                skipped += 1
                continue
            aicc = cand.aic + 2.0 * cand.nparams * (cand.nparams + 1) / (
                cand.nobs - cand.nparams - 1
            )
            key = (aicc, spec.n_params, (dep_lags, *qs))
            if best is None or _key_lt(key, best):
                best, best_spec = key, spec
    if best_spec is None:
        raise SingularDesignError(
            f"all {skipped} lag-search candidates were singular or infeasible"
        )
    return best_spec


def _key_lt(a: tuple, b: tuple) -> bool:
    # AIC comparison with a tolerance so ties fall through to the size and
    # lexicographic rules instead of float noise.
    if a[0] < b[0] - 1e-9:
        return True
    if a[0] > b[0] + 1e-9:
        return False
    return (a[1], a[2]) < (b[1], b[2])


def bounds_f_test(ardl_fit: ArdlFit, level: float = 0.05) -> BoundsResult:
    """Wald F for joint nullity of all level terms, against the two bounds.

    The restricted model drops every lagged level (intercept and short-run
    dynamics stay) and is re-estimated on the identical sample.
    """
    missing = [n for n in ardl_fit.level_names.values() if n not in ardl_fit.fit.names]
    if missing:
        raise SpecError(f"fit is missing level terms {missing}; cannot run bounds test")
    level_cols = list(ardl_fit.level_names.values())
    X_r = ardl_fit.fit.design.drop(level_cols)
    fit_r = ols.fit(X_r, ardl_fit.fit.y)
    m = len(level_cols)
    f = ols.wald_f(ardl_fit.fit, fit_r, m)

    k = len(ardl_fit.spec.regressors)
    pair = bounds_critical_values(k, level, nobs=ardl_fit.nobs)
    if f.f > pair.upper:
        conclusion = CONCLUSION_COINTEGRATION
    elif f.f < pair.lower:
        conclusion = CONCLUSION_NONE
    else:
        conclusion = CONCLUSION_INCONCLUSIVE
    return BoundsResult(
        f_stat=f.f,
        k=k,
        level=level,
        lower=pair.lower,
        upper=pair.upper,
        conclusion=conclusion,
        table=pair.table,
        df1=f.df1,
        df2=f.df2,
    )


def _delta_method_ratio(num: float, den: float, cov: np.ndarray) -> float:
    """Standard error of -num/den given the 2x2 covariance of (num, den)."""
    g = np.array([-1.0 / den, num / den**2])
    var = float(g @ cov @ g)
    return float(np.sqrt(max(var, 0.0)))


def long_run(
    ardl_fit: ArdlFit,
    se_method: str = "delta",
    t_floor: float = NORMALIZATION_T_FLOOR,
) -> LongRunEquation:
    """Normalize the level block: theta_x = -d_x/d_y, intercept -c/d_y.

    Standard errors via the delta method by default; ``se_method="bewley"``
    reruns the normalization as a Bewley-transform instrumental-variable
    regression (identical point estimates, alternative standard errors).
    """
    res = ardl_fit.fit
    dep = ardl_fit.spec.dependent
    d_y = res.coef(ardl_fit.level_names[dep])
    if d_y == 0.0:
        raise NormalizationError("dependent's level coefficient is exactly zero")
    se_y = res.stderr(ardl_fit.level_names[dep])
    t_y = d_y / se_y if se_y > 0 else float("inf")
    degenerate = abs(t_y) < t_floor
    if degenerate:
        warnings.warn(
            f"normalizing on a weak level coefficient (|t|={abs(t_y):.2f} < {t_floor}); "
            "long-run coefficients are unreliable",
            RuntimeWarning,
            stacklevel=2,
        )

    if se_method == "bewley":
        return _bewley_long_run(ardl_fit, d_y, t_y, degenerate)
    if se_method != "delta":
        raise DataError(f"unknown long-run se method {se_method!r}")

    idx_y = res.names.index(ardl_fit.level_names[dep])
    coefs: dict[str, float] = {}
    ses: dict[str, float] = {}
    for reg in ardl_fit.spec.regressors:
        idx_x = res.names.index(ardl_fit.level_names[reg])
        d_x = float(res.beta[idx_x])
        cov = res.cov[np.ix_([idx_x, idx_y], [idx_x, idx_y])]
        coefs[reg] = -d_x / d_y
        ses[reg] = _delta_method_ratio(d_x, d_y, cov)
    idx_c = res.names.index("const")
    c = float(res.beta[idx_c])
    cov_c = res.cov[np.ix_([idx_c, idx_y], [idx_c, idx_y])]
    return LongRunEquation(
        coefficients=coefs,
        standard_errors=ses,
        intercept=-c / d_y,
        intercept_se=_delta_method_ratio(c, d_y, cov_c),
        se_method="delta",
        normalizer=d_y,
        normalizer_t=t_y,
        degenerate=degenerate,
    )


def _bewley_long_run(ardl_fit: ArdlFit, d_y: float, t_y: float, degenerate: bool) -> LongRunEquation:
    """Bewley-transform 2SLS: regress y_{t-1} on levels of x_{t-1} and the
    difference terms (dy_t endogenous), instrumented by the ECM design."""
    res = ardl_fit.fit
    dep = ardl_fit.spec.dependent
    Z = res.design.values  # instruments: the full ECM design
    y_lag = Z[:, res.names.index(f"{dep}.L1")]

    w_names = ["const"]
    w_cols = [np.ones(res.nobs)]
    for reg in ardl_fit.spec.regressors:
        w_names.append(f"{reg}.L1")
        w_cols.append(Z[:, res.names.index(f"{reg}.L1")])
    w_names.append("d.endog")
    w_cols.append(res.y)  # dy_t, the endogenous regressor
    for name in res.names:
        if name.startswith("d."):
            w_names.append(name)
            w_cols.append(Z[:, res.names.index(name)])
    W = np.column_stack(w_cols)

    # 2SLS through the projection onto span(Z).
    Qz, _ = np.linalg.qr(Z)
    W_hat = Qz @ (Qz.T @ W)
    try:
        beta, *_ = scipy.linalg.lstsq(W_hat, y_lag)
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover - lstsq rarely fails
        raise SingularDesignError(f"Bewley projection failed: {exc}") from None
    resid = y_lag - W @ beta
    dof = res.nobs - W.shape[1]
    if dof <= 0:
        raise DegreesOfFreedomError("no residual degrees of freedom in Bewley regression")
    sigma2 = float(resid @ resid) / dof
    whw = W_hat.T @ W_hat
    cov = sigma2 * np.linalg.inv(whw)

    coefs: dict[str, float] = {}
    ses: dict[str, float] = {}
    for reg in ardl_fit.spec.regressors:
        i = w_names.index(f"{reg}.L1")
        coefs[reg] = float(beta[i])
        ses[reg] = float(np.sqrt(max(cov[i, i], 0.0)))
    i0 = w_names.index("const")
    return LongRunEquation(
        coefficients=coefs,
        standard_errors=ses,
        intercept=float(beta[i0]),
        intercept_se=float(np.sqrt(max(cov[i0, i0], 0.0))),
        se_method="bewley",
        normalizer=d_y,
        normalizer_t=t_y,
        degenerate=degenerate,
    )


def fit_ecm(
    dataset: Dataset,
    ardl_fit: ArdlFit,
    bounds: BoundsResult | None = None,
) -> EcmFit:
    """Re-estimate the short-run equation with the error-correction term.

    ECT_t is the deviation of the dependent from the estimated long-run
    equation; the second stage regresses dy_t on the selected short-run terms
    plus ECT_{t-1}. A bounds result that did not conclude cointegration only
    sets a warning flag (exploration stays possible).
    """
    no_coint = bounds is not None and bounds.conclusion != CONCLUSION_COINTEGRATION
    lr = long_run(ardl_fit)
    dep, regs, data = _panel_arrays(dataset)

    ect = data[dep] - lr.intercept - sum(
        lr.coefficients[reg] * data[reg] for reg in regs
    )

    spec = ardl_fit.spec
    offset = ardl_fit.offset
    t_idx = np.arange(offset, dataset.nrows)
    d = {name: np.diff(vals) for name, vals in data.items()}

    names: list[str] = ["const"]
    cols: list[np.ndarray] = [np.ones(len(t_idx))]
    for i in range(1, spec.dep_lags + 1):
        names.append(f"d.{dep}.L{i}")
        cols.append(d[dep][t_idx - 1 - i])
    for reg in regs:
        for j in range(0, spec.reg_lags[reg] + 1):
            names.append(f"d.{reg}.L{j}")
            cols.append(d[reg][t_idx - 1 - j])
    names.append("ect.L1")
    cols.append(ect[t_idx - 1])
    dy = d[dep][t_idx - 1]

    try:
        X = ols.DesignMatrix(names=tuple(names), values=np.column_stack(cols))
        res = ols.fit(X, dy)
    except SingularDesignError:
        # Equilibrium-by-construction data: ECT is (near) constant and clashes
        # with the intercept. Drop it and flag.
        X = ols.DesignMatrix(
            names=tuple(names[:-1]), values=np.column_stack(cols[:-1])
        )
        res = ols.fit(X, dy)
        return EcmFit(
            theta=float("nan"),
            se=float("nan"),
            t=float("nan"),
            p=float("nan"),
            validated=False,
            fit=res,
            ect=ect,
            degenerate=True,
            no_cointegration_warning=no_coint,
        )

    i = res.names.index("ect.L1")
    theta = float(res.beta[i])
    se = float(res.se[i])
    if se > 0:
        t = theta / se
        p = 2.0 * float(stats.t.sf(abs(t), res.df_resid))
    else:
        t, p = float("inf") * np.sign(theta), 0.0
    return EcmFit(
        theta=theta,
        se=se,
        t=float(t),
        p=float(p),
        validated=bool(theta < 0.0 and p < 0.05),
        fit=res,
        ect=ect,
        no_cointegration_warning=no_coint,
    )


def levels_design(dataset: Dataset, spec: ArdlSpec, offset: int | None = None) -> tuple[ols.DesignMatrix, np.ndarray]:
    """The pure levels-ARDL reparameterization of the same model.

    Spanning the identical column space as the conditional ECM, it must
    reproduce the ECM's residuals exactly; used as the dual route in tests.
    """
    dep, regs, data = _panel_arrays(dataset)
    offset = spec.offset if offset is None else offset
    n = dataset.nrows
    t_idx = np.arange(offset, n)

    names: list[str] = ["const"]
    cols: list[np.ndarray] = [np.ones(len(t_idx))]
    for i in range(1, spec.dep_lags + 2):
        names.append(f"{dep}.L{i}")
        cols.append(data[dep][t_idx - i])
    for reg in regs:
        for j in range(0, spec.reg_lags[reg] + 2):
            names.append(f"{reg}.L{j}")
            cols.append(data[reg][t_idx - j])
    X = ols.DesignMatrix(names=tuple(names), values=np.column_stack(cols))
    return X, data[dep][t_idx]
