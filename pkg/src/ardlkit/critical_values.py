"""Critical-value tables for the unit-root tests and the bounds F-test.

Dickey-Fuller/Phillips-Perron tau critical values come from the MacKinnon
(2010) response-surface regressions, cv(T) = b0 + b1/T + b2/T^2 + b3/T^3,
for the no-constant ("n"), constant ("c") and constant+trend ("ct") cases.

Bounds-test critical values live in ``data/bounds_critical_values.csv``:
a small-sample case III (unrestricted intercept, no trend) row for k=3
around n=45 transcribed from Narayan (2005), plus the Pesaran-Shin-Smith
(2001) CI(iii) asymptotic table for k=0..7. Lookup prefers the small-sample
row nearest in n when one exists for the requested k and falls back to the
asymptotic row otherwise.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import DataError

DETERMINISTIC_SPECS = ("n", "c", "ct")

# MacKinnon (2010), table 2, N=1: {spec: {level: (b0, b1, b2, b3)}}.
_MACKINNON_TAU = {
    "n": {
        0.01: (-2.56574, -2.2358, -3.627, 0.0),
        0.05: (-1.94100, -0.2686, -3.365, 31.223),
        0.10: (-1.61682, 0.2656, -2.714, 25.364),
    },
    "c": {
        0.01: (-3.43035, -6.5393, -16.786, -79.433),
        0.05: (-2.86154, -2.8903, -4.234, -40.040),
        0.10: (-2.56677, -1.5384, -2.809, 0.0),
    },
    "ct": {
        0.01: (-3.95877, -9.0531, -28.428, -134.155),
        0.05: (-3.41049, -4.3904, -9.036, -45.374),
        0.10: (-3.12705, -2.5856, -3.925, -22.380),
    },
}

LEVEL_LABELS = {0.01: "1%", 0.05: "5%", 0.10: "10%"}


def dickey_fuller_crit(spec: str, nobs: int) -> dict[str, float]:
    """Tau critical values at 1/5/10% for the given deterministic spec."""
    if spec not in _MACKINNON_TAU:
        raise DataError(f"unknown deterministic spec {spec!r}; expected one of {DETERMINISTIC_SPECS}")
    if nobs < 1:
        raise DataError("effective sample size must be positive")
    out = {}
    for level, (b0, b1, b2, b3) in _MACKINNON_TAU[spec].items():
        out[LEVEL_LABELS[level]] = b0 + b1 / nobs + b2 / nobs**2 + b3 / nobs**3
    return out


@dataclass(frozen=True)
class BoundsPair:
    """Lower (all-I(0)) and upper (all-I(1)) bound for the bounds F-test."""

    level: float
    lower: float
    upper: float
    table: str
    n: float  # inf for asymptotic rows


@lru_cache(maxsize=1)
def _bounds_rows() -> tuple[tuple[str, int, float, float, float, float], ...]:
    rows = []
    path = resources.files("ardlkit").joinpath("data/bounds_critical_values.csv")
    with path.open("r", encoding="utf-8") as fh:
        for rec in csv.DictReader(fh):
            rows.append(
                (
                    rec["table"],
                    int(rec["k"]),
                    float("inf") if rec["n"] == "inf" else float(rec["n"]),
                    float(rec["level"]),
                    float(rec["lower"]),
                    float(rec["upper"]),
                )
            )
    if not rows:
        raise DataError("bounds critical value table is empty")
    return tuple(rows)


def bounds_critical_values(k: int, level: float, nobs: int | None = None) -> BoundsPair:
    """Look up the (lower, upper) bounds for k level regressors.

    Small-sample rows win when available for this k (nearest n to ``nobs``);
    otherwise the asymptotic row is used.
    """
    rows = _bounds_rows()
    small = [r for r in rows if r[0] == "small_sample" and r[1] == k and abs(r[3] - level) < 1e-12]
    if small:
        n_ref = float(nobs) if nobs is not None else 45.0
        best = min(small, key=lambda r: abs(r[2] - n_ref))
        return BoundsPair(level=level, lower=best[4], upper=best[5], table="small_sample", n=best[2])
    asym = [r for r in rows if r[0] == "asymptotic" and r[1] == k and abs(r[3] - level) < 1e-12]
    if asym:
        r = asym[0]
        return BoundsPair(level=level, lower=r[4], upper=r[5], table="asymptotic", n=float("inf"))
    have_k = sorted({r[1] for r in rows})
    have_lv = sorted({r[3] for r in rows if r[1] == k})
    raise DataError(
        f"no bounds critical values for k={k} at level={level}; "
        f"table covers k={have_k}, levels for this k: {have_lv}"
    )
