"""Date-indexed series, aligned panels, and the transforms every estimator consumes.

All types are immutable after construction and all operations are pure
functions returning new objects, so anything here is safe to evaluate in
parallel.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import (
    AlignmentError,
    DataError,
    DiffError,
    ShiftError,
    TransformError,
)

TRANSFORM_TAGS = ("level", "log", "log1p")

ROLE_DEPENDENT = "dependent"
ROLE_REGRESSOR = "regressor"


def _frozen_array(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Series:
    """A named daily series: strictly increasing dates, finite values.

    Missing days are simply absent from ``dates`` (trading-day series have no
    weekend entries); there is no NaN sentinel.
    """

    name: str
    dates: tuple[dt.date, ...]
    values: np.ndarray
    units: str = ""

    def __post_init__(self):
        object.__setattr__(self, "dates", tuple(self.dates))
        object.__setattr__(self, "values", _frozen_array(self.values))
        if len(self.dates) != len(self.values):
            raise DataError(
                f"series {self.name!r}: {len(self.dates)} dates but {len(self.values)} values"
            )
        for a, b in zip(self.dates, self.dates[1:]):
            if a >= b:
                raise DataError(
                    f"series {self.name!r}: dates not strictly increasing at {a} -> {b}"
                )
        if self.values.size and not np.all(np.isfinite(self.values)):
            bad = int(np.flatnonzero(~np.isfinite(self.values))[0])
            raise DataError(
                f"series {self.name!r}: non-finite value at {self.dates[bad]}"
            )

    def __len__(self) -> int:
        return len(self.values)

    def window(self, start: dt.date | None = None, end: dt.date | None = None) -> "Series":
        """Restrict to dates in [start, end] (inclusive; None = open end)."""
        keep = [
            i
            for i, d in enumerate(self.dates)
            if (start is None or d >= start) and (end is None or d <= end)
        ]
        return Series(
            name=self.name,
            dates=tuple(self.dates[i] for i in keep),
            values=self.values[keep] if keep else np.empty(0),
            units=self.units,
        )

    def rename(self, name: str) -> "Series":
        return replace(self, name=name)


@dataclass(frozen=True)
class Column:
    """One panel column: a calendar-restricted series plus its metadata.

    ``shift`` records how the stored values were already displaced (negative =
    lag, positive = lead); it is bookkeeping only and is never applied twice.
    """

    series: Series
    transform: str = "level"
    shift: int = 0
    role: str = ROLE_REGRESSOR

    def __post_init__(self):
        if self.transform not in TRANSFORM_TAGS:
            raise DataError(f"unknown transform tag {self.transform!r}")
        if self.role not in (ROLE_DEPENDENT, ROLE_REGRESSOR):
            raise DataError(f"unknown column role {self.role!r}")

    @property
    def name(self) -> str:
        return self.series.name


@dataclass(frozen=True)
class Dataset:
    """An aligned panel of series on a shared calendar.

    The default (intersection-aligned) form has a value in every cell and
    exactly one dependent column. ``gapped=True`` marks the union-calendar
    form produced by ``align(..., intersect=False)``, which keeps each series
    on its own dates and exists only for plot export; estimators reject it.
    """

    calendar: tuple[dt.date, ...]
    columns: tuple[Column, ...]
    gapped: bool = False

    def __post_init__(self):
        object.__setattr__(self, "calendar", tuple(self.calendar))
        object.__setattr__(self, "columns", tuple(self.columns))
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise DataError(f"duplicate column names in dataset: {names}")
        ndep = sum(1 for c in self.columns if c.role == ROLE_DEPENDENT)
        if ndep != 1:
            raise DataError(f"dataset must have exactly one dependent column, got {ndep}")
        if not self.gapped:
            for col in self.columns:
                if col.series.dates != self.calendar:
                    raise DataError(
                        f"column {col.name!r} is not restricted to the dataset calendar"
                    )

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.columns)

    @property
    def nrows(self) -> int:
        return len(self.calendar)

    @property
    def dependent(self) -> Column:
        return next(c for c in self.columns if c.role == ROLE_DEPENDENT)

    @property
    def regressors(self) -> tuple[Column, ...]:
        return tuple(c for c in self.columns if c.role == ROLE_REGRESSOR)

    def column(self, name: str) -> Column:
        for c in self.columns:
            if c.name == name:
                return c
        raise DataError(f"no column named {name!r}; have {list(self.names)}")

    def values(self, name: str) -> np.ndarray:
        return self.column(name).series.values

    def matrix(self) -> np.ndarray:
        """Panel values as a (rows, columns) array, column order preserved."""
        if self.gapped:
            raise DataError("gapped (union-aligned) datasets have no dense matrix")
        return np.column_stack([c.series.values for c in self.columns])


@dataclass(frozen=True)
class ColumnStats:
    min: float
    max: float
    mean: float
    std: float
    count: int


@dataclass(frozen=True)
class SummaryStats:
    """Per-column min/max/mean/sample std (n−1 divisor)."""

    columns: dict[str, ColumnStats] = field(default_factory=dict)


def align(
    series_list: list[Series] | tuple[Series, ...],
    intersect: bool = True,
    dependent: str | None = None,
    column_meta: dict[str, dict] | None = None,
) -> Dataset:
    """Merge series onto a shared calendar.

    With ``intersect=True`` (default) the calendar is the intersection of all
    series' dates and every column is restricted to it. With False the
    calendar is the union and columns keep their own dates (plot export only).

    ``dependent`` names the dependent column (default: first series).
    ``column_meta`` optionally carries per-name transform/shift tags to record
    on the columns.
    """
    series_list = list(series_list)
    if len(series_list) < 2:
        raise AlignmentError("alignment needs at least two series")
    for s in series_list:
        if len(s) == 0:
            raise AlignmentError(f"series {s.name!r} is empty")
    names = [s.name for s in series_list]
    if dependent is None:
        dependent = names[0]
    if dependent not in names:
        raise AlignmentError(f"dependent {dependent!r} not among series {names}")

    if intersect:
        common = set(series_list[0].dates)
        merged = [series_list[0].name]
        for s in series_list[1:]:
            nxt = common & set(s.dates)
            if not nxt:
                raise AlignmentError(
                    f"empty calendar: series {s.name!r} shares no dates with {merged}"
                )
            common = nxt
            merged.append(s.name)
        calendar = tuple(sorted(common))
    else:
        union: set[dt.date] = set()
        for s in series_list:
            union |= set(s.dates)
        calendar = tuple(sorted(union))

    meta = column_meta or {}
    columns = []
    for s in series_list:
        if intersect:
            keep = [i for i, d in enumerate(s.dates) if d in set(calendar)]
            s = Series(s.name, tuple(calendar), s.values[keep], s.units)
        m = meta.get(s.name, {})
        columns.append(
            Column(
                series=s,
                transform=m.get("transform", "level"),
                shift=int(m.get("shift", 0)),
                role=ROLE_DEPENDENT if s.name == dependent else ROLE_REGRESSOR,
            )
        )
    return Dataset(calendar=calendar, columns=tuple(columns), gapped=not intersect)


def transform(series: Series, tag: str) -> Series:
    """Elementwise transform; ``log`` requires positive values, ``log1p`` > −1.

    ``log1p`` exists for count series with zero-valued days. Transformed
    series get the tag appended to their name; ``level`` is the identity.
    """
    if tag not in TRANSFORM_TAGS:
        raise TransformError(f"unknown transform tag {tag!r}; expected one of {TRANSFORM_TAGS}")
    if tag == "level":
        return series
    if tag == "log":
        bad = np.flatnonzero(series.values <= 0)
        if bad.size:
            raise TransformError(
                f"log transform of {series.name!r}: nonpositive value "
                f"{series.values[bad[0]]} at {series.dates[int(bad[0])]}"
            )
        out = np.log(series.values)
    else:  # log1p
        bad = np.flatnonzero(series.values <= -1)
        if bad.size:
            raise TransformError(
                f"log1p transform of {series.name!r}: value ≤ −1 at {series.dates[int(bad[0])]}"
            )
        out = np.log1p(series.values)
    return Series(f"{series.name}_{tag}", series.dates, out, units=f"{tag}({series.units})")


def shift(series: Series, k: int) -> Series:
    """Displace values along the series' own calendar.

    Output value at position t = input value at position t+k, so k=+1 is a
    one-step lead and k=−1 a one-step lag. Positions with no source
    observation are dropped: the result is shorter by \\|k\\|.
    """
    n = len(series)
    if abs(k) >= n:
        raise ShiftError(f"cannot shift {series.name!r} by {k}: only {n} observations")
    if k == 0:
        return series
    if k > 0:
        dates = series.dates[: n - k]
        values = series.values[k:]
    else:
        dates = series.dates[-k:]
        values = series.values[: n + k]
    return Series(series.name, dates, values, series.units)


def diff(series: Series) -> Series:
    """First difference: out[t] = in[t] − in[t−1]; one observation shorter."""
    if len(series) < 2:
        raise DiffError(f"cannot difference {series.name!r}: need at least 2 observations")
    return Series(
        series.name,
        series.dates[1:],
        np.diff(series.values),
        series.units,
    )


def summarize(dataset: Dataset) -> SummaryStats:
    """Per-column min/max/mean/sample standard deviation over aligned rows."""
    if dataset.nrows == 0:
        raise DataError("cannot summarize an empty panel")
    if dataset.gapped:
        raise DataError("cannot summarize a gapped (union-aligned) dataset")
    out: dict[str, ColumnStats] = {}
    for col in dataset.columns:
        v = col.series.values
        out[col.name] = ColumnStats(
            min=float(np.min(v)),
            max=float(np.max(v)),
            mean=float(np.mean(v)),
            std=float(np.std(v, ddof=1)) if len(v) > 1 else 0.0,
            count=len(v),
        )
    return SummaryStats(columns=out)


def summarize_series(series_list: list[Series]) -> SummaryStats:
    """Summary stats of raw series over their own dates (no alignment).

    This is what the Table-1 style report uses: alignment would drop
    non-trading days and with them the extreme COVID report that the
    published maximum reflects.
    """
    out: dict[str, ColumnStats] = {}
    for s in series_list:
        if len(s) == 0:
            raise DataError(f"series {s.name!r} is empty")
        v = s.values
        out[s.name] = ColumnStats(
            min=float(np.min(v)),
            max=float(np.max(v)),
            mean=float(np.mean(v)),
            std=float(np.std(v, ddof=1)) if len(v) > 1 else 0.0,
            count=len(v),
        )
    return SummaryStats(columns=out)
