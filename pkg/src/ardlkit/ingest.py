"""Snapshot CSV parsing, timing conventions, and estimation-panel assembly.

The four data sources are bundled as fixed-vintage CSV snapshots (live feeds
have been revised since early 2020); ``SOURCE_URLS`` documents where fresh
vintages can be pulled from. Timing conventions are applied as data shifts on
each source's own calendar — the COVID column is led one day (the next
situation report covers today's market session) and the EPU column lagged one
day — before everything is intersected onto the oil price's trading calendar.
"""

from __future__ import annotations

import csv
import datetime as dt
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import DataError, IoError, ParseError, SampleTooSmallError
from .timeseries import Dataset, Series, align, shift, transform

SOURCE_URLS = {
    "who_covid": "https://www.who.int/emergencies/diseases/novel-coronavirus-2019/situation-reports",
    "eia_oil": "https://www.eia.gov/dnav/pet/pet_pri_spt_s1_d.htm",
    "cboe_vix": "https://www.cboe.com/tradable_products/vix/vix_historical_data/",
    "epu_daily": "https://www.policyuncertainty.com/us_daily.html",
}

SOURCE_KINDS = tuple(SOURCE_URLS)

COVID_SCOPES = ("total", "china", "outside_china")

DEFAULT_WINDOW = (dt.date(2020, 1, 21), dt.date(2020, 3, 9))

DEFAULT_TRANSFORMS = {
    "oil": "log",
    "covid": "log1p",
    "vix": "log",
    "epu": "log",
}

_SNAPSHOT_FILES = {
    "wti": ("eia_oil", "eia_wti_daily.csv", {"value": "price_usd_per_barrel"}, "USD/barrel"),
    "brent": ("eia_oil", "eia_brent_daily.csv", {"value": "price_usd_per_barrel"}, "USD/barrel"),
    "covid": ("who_covid", "who_covid_daily.csv", {"total": "new_cases_total", "china": "new_cases_china"}, "persons/day"),
    "vix": ("cboe_vix", "cboe_vix_daily.csv", {"value": "vix_close"}, "index points"),
    "epu": ("epu_daily", "epu_us_daily.csv", {"value": "epu_index"}, "index points"),
}


@dataclass(frozen=True)
class SourceSpec:
    name: str
    kind: str
    path: Path
    value_columns: dict[str, str]
    date_column: str = "date"
    covid_scope: str = "total"
    units: str = ""

    def __post_init__(self):
        if self.kind not in SOURCE_KINDS:
            raise DataError(f"unknown source kind {self.kind!r}; expected one of {SOURCE_KINDS}")
        if self.kind == "who_covid" and self.covid_scope not in COVID_SCOPES:
            raise DataError(f"unknown covid scope {self.covid_scope!r}")
        object.__setattr__(self, "path", Path(self.path))
        object.__setattr__(self, "value_columns", dict(self.value_columns))


@dataclass(frozen=True)
class PanelConfig:
    """Everything needed to build one estimation panel.

    Shift defaults implement the report-timing conventions (COVID led one
    day, EPU lagged one day); ``transforms`` maps the logical roles oil /
    covid / vix / epu to transform tags.
    """

    dependent: str = "wti"
    covid_scope: str = "total"
    covid_shift: int = 1
    epu_shift: int = -1
    vix_shift: int = 0
    oil_shift: int = 0
    transforms: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_TRANSFORMS))
    window_start: dt.date = DEFAULT_WINDOW[0]
    window_end: dt.date = DEFAULT_WINDOW[1]
    max_lag: int = 4
    data_dir: Path | None = None

    def __post_init__(self):
        if self.dependent not in ("wti", "brent"):
            raise DataError(f"dependent must be 'wti' or 'brent', got {self.dependent!r}")
        if self.covid_scope not in COVID_SCOPES:
            raise DataError(f"unknown covid scope {self.covid_scope!r}")
        merged = dict(DEFAULT_TRANSFORMS)
        merged.update(self.transforms)
        object.__setattr__(self, "transforms", merged)
        if self.window_start >= self.window_end:
            raise DataError(
                f"empty sample window {self.window_start}..{self.window_end}"
            )

    @property
    def covid_column(self) -> str:
        return f"covid_{self.covid_scope}"


def packaged_data_dir() -> Path:
    return Path(str(resources.files("ardlkit").joinpath("data")))


def default_sources(data_dir: Path | None = None) -> dict[str, SourceSpec]:
    """SourceSpecs for the bundled snapshots (or a drop-in directory)."""
    base = Path(data_dir) if data_dir is not None else packaged_data_dir()
    out = {}
    for name, (kind, fname, cols, units) in _SNAPSHOT_FILES.items():
        out[name] = SourceSpec(
            name=name, kind=kind, path=base / fname, value_columns=cols, units=units
        )
    return out


def _parse_date(raw: str, path: Path, lineno: int) -> dt.date:
    try:
        return dt.date.fromisoformat(raw.strip())
    except ValueError:
        raise ParseError(f"{path}:{lineno}: unparseable date {raw!r} (expected ISO-8601)") from None


def _parse_value(raw: str, path: Path, lineno: int, column: str) -> float:
    try:
        return float(raw)
    except (TypeError, ValueError):
        raise ParseError(f"{path}:{lineno}: unparseable value {raw!r} in column {column!r}") from None


def _read_rows(spec: SourceSpec) -> list[tuple[dt.date, dict[str, float]]]:
    if not spec.path.exists():
        raise IoError(
            f"snapshot file {spec.path} is missing; regenerate it from {SOURCE_URLS[spec.kind]} "
            f"(see the data README for the schema)"
        )
    rows: list[tuple[dt.date, dict[str, float]]] = []
    with open(spec.path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        needed = [spec.date_column, *spec.value_columns.values()]
        missing = [c for c in needed if c not in header]
        if missing:
            raise ParseError(f"{spec.path}: header is missing columns {missing}; found {header}")
        for lineno, rec in enumerate(reader, start=2):
            d = _parse_date(rec[spec.date_column], spec.path, lineno)
            vals = {
                role: _parse_value(rec[col], spec.path, lineno, col)
                for role, col in spec.value_columns.items()
            }
            rows.append((d, vals))
    if not rows:
        raise ParseError(f"{spec.path}: no data rows")
    return rows


def load_source(spec: SourceSpec) -> Series:
    """Parse one snapshot into a Series in source units.

    For WHO data the requested scope is materialized here: outside-China
    counts are total minus China and must never be negative.
    """
    rows = _read_rows(spec)
    rows.sort(key=lambda r: r[0])
    dates = tuple(r[0] for r in rows)

    if spec.kind == "who_covid":
        total = np.array([r[1]["total"] for r in rows])
        china = np.array([r[1]["china"] for r in rows])
        if spec.covid_scope == "total":
            values = total
        elif spec.covid_scope == "china":
            values = china
        else:
            values = total - china
            neg = np.flatnonzero(values < 0)
            if neg.size:
                i = int(neg[0])
                raise DataError(
                    f"{spec.path}: outside-China count is negative on {dates[i]} "
                    f"(total {total[i]:g} < china {china[i]:g})"
                )
        name = f"covid_{spec.covid_scope}"
    else:
        values = np.array([r[1]["value"] for r in rows])
        name = spec.name
    return Series(name=name, dates=dates, values=values, units=spec.units)


def load_covid_scopes(spec: SourceSpec) -> dict[str, Series]:
    """All three WHO scopes from one file (used by plot export and checks)."""
    return {
        scope: load_source(replace(spec, covid_scope=scope))
        for scope in COVID_SCOPES
    }


def _prepare(series: Series, k: int, tag: str, window: tuple[dt.date, dt.date]) -> Series:
    shifted = shift(series, k) if k != 0 else series
    transformed = transform(shifted, tag).rename(series.name)
    return transformed.window(*window)


def build_dataset(config: PanelConfig, sources: dict[str, SourceSpec] | None = None) -> Dataset:
    """Load, shift, transform and align the four sources into one panel.

    Shifts are applied on each source's own calendar (a one-day COVID lead
    means the next calendar day's report, weekends included) before the
    intersection restricts everything to trading days.
    """
    if sources is None:
        sources = default_sources(config.data_dir)
    window = (config.window_start, config.window_end)

    oil_spec = sources[config.dependent]
    covid_spec = replace(sources["covid"], covid_scope=config.covid_scope)

    oil = _prepare(load_source(oil_spec), config.oil_shift, config.transforms["oil"], window)
    covid = _prepare(load_source(covid_spec), config.covid_shift, config.transforms["covid"], window)
    vix = _prepare(load_source(sources["vix"]), config.vix_shift, config.transforms["vix"], window)
    epu = _prepare(load_source(sources["epu"]), config.epu_shift, config.transforms["epu"], window)

    meta = {
        oil.name: {"transform": config.transforms["oil"], "shift": config.oil_shift},
        covid.name: {"transform": config.transforms["covid"], "shift": config.covid_shift},
        vix.name: {"transform": config.transforms["vix"], "shift": config.vix_shift},
        epu.name: {"transform": config.transforms["epu"], "shift": config.epu_shift},
    }
    panel = align([oil, covid, vix, epu], intersect=True, dependent=oil.name, column_meta=meta)

    floor = config.max_lag + 10
    if panel.nrows < floor:
        raise SampleTooSmallError(
            f"aligned panel has {panel.nrows} rows; need at least {floor} "
            f"for max_lag={config.max_lag}"
        )
    return panel


def load_level_series(config: PanelConfig, sources: dict[str, SourceSpec] | None = None) -> dict[str, Series]:
    """Raw level series restricted to the window (no shifts, no transforms).

    This is the input for summary statistics and plot export; it keeps
    non-trading days, so report-day extremes stay visible.
    """
    if sources is None:
        sources = default_sources(config.data_dir)
    window = (config.window_start, config.window_end)
    out: dict[str, Series] = {}
    for name in ("wti", "brent"):
        out[name] = load_source(sources[name]).window(*window)
    for scope, series in load_covid_scopes(sources["covid"]).items():
        out[f"covid_{scope}"] = series.window(*window)
    out["vix"] = load_source(sources["vix"]).window(*window)
    out["epu"] = load_source(sources["epu"]).window(*window)
    return out


def flag_outliers(series: Series, ratio: float = 5.0) -> tuple[dt.date, ...]:
    """Dates whose value exceeds ``ratio`` times the median of the others.

    Data-driven stand-in for "the report-day spike a plot should omit"; on the
    bundled snapshot it marks exactly the 2020-02-17 reclassification spike.
    """
    if len(series) < 3:
        return ()
    flags = []
    v = series.values
    for i in range(len(v)):
        rest = np.delete(v, i)
        med = float(np.median(rest))
        if med > 0 and v[i] > ratio * med:
            flags.append(series.dates[i])
    return tuple(flags)


def plot_export_csv(series_list: list[Series]) -> str:
    """Union-calendar CSV of level series for external plotting.

    Cells are blank on dates a series does not cover (non-trading days for
    the market series); ``outlier_flag`` is 1 on flagged COVID report dates so
    a plot can drop them. Floats are written with repr so re-importing
    reproduces every value exactly.
    """
    import io

    union = align(series_list, intersect=False)
    outliers: set[dt.date] = set()
    for s in series_list:
        if s.name == "covid_total":
            outliers = set(flag_outliers(s))

    lookup = [{d: v for d, v in zip(s.dates, s.values)} for s in series_list]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["date", *(s.name for s in series_list), "outlier_flag"])
    for d in union.calendar:
        row = [d.isoformat()]
        for table in lookup:
            v = table.get(d)
            row.append(repr(float(v)) if v is not None else "")
        row.append("1" if d in outliers else "0")
        writer.writerow(row)
    return buf.getvalue()


def export_plot_data(series_list: list[Series], path: Path | str) -> Path:
    path = Path(path)
    try:
        path.write_text(plot_export_csv(series_list), encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write plot export to {path}: {exc}") from None
    return path


def read_plot_export(path: Path | str) -> dict[str, Series]:
    """Inverse of export_plot_data (blank cells are skipped)."""
    path = Path(path)
    if not path.exists():
        raise IoError(f"plot export {path} does not exist")
    per_name: dict[str, list[tuple[dt.date, float]]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        names = [c for c in (reader.fieldnames or []) if c not in ("date", "outlier_flag")]
        for lineno, rec in enumerate(reader, start=2):
            d = _parse_date(rec["date"], path, lineno)
            for name in names:
                raw = rec[name]
                if raw != "":
                    per_name.setdefault(name, []).append(
                        (d, _parse_value(raw, path, lineno, name))
                    )
    return {
        name: Series(name, tuple(d for d, _ in obs), np.array([v for _, v in obs]))
        for name, obs in per_name.items()
    }
