"""Plain-text key=value configuration with CLI-flag overrides.

Recognized keys (every one has a CLI flag of the same name):

    dependent        wti | brent
    variant          total | china | outside_china   (alias: covid_scope)
    covid_shift      integer, default +1 (lead)
    epu_shift        integer, default -1 (lag)
    vix_shift        integer, default 0
    oil_shift        integer, default 0
    oil_transform    level | log
    covid_transform  level | log | log1p
    vix_transform    level | log
    epu_transform    level | log
    window_start     ISO date, default 2020-01-21
    window_end       ISO date, default 2020-03-09
    max_lag          integer, default 4
    level            significance level, default 0.05
    format           json | text | csv
    seed             integer, default 0
    workers          integer, default 1
    data_dir         directory with snapshot CSVs (default: bundled)
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError
from .ingest import COVID_SCOPES, DEFAULT_TRANSFORMS, DEFAULT_WINDOW, PanelConfig

_KEY_ALIASES = {"covid_scope": "variant"}

KNOWN_KEYS = (
    "dependent",
    "variant",
    "covid_shift",
    "epu_shift",
    "vix_shift",
    "oil_shift",
    "oil_transform",
    "covid_transform",
    "vix_transform",
    "epu_transform",
    "window_start",
    "window_end",
    "max_lag",
    "level",
    "format",
    "seed",
    "workers",
    "data_dir",
)


@dataclass(frozen=True)
class RunConfig:
    """One resolved run: panel settings plus command-level knobs."""

    dependent: str = "wti"
    variant: str = "total"
    covid_shift: int = 1
    epu_shift: int = -1
    vix_shift: int = 0
    oil_shift: int = 0
    transforms: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_TRANSFORMS))
    window_start: dt.date = DEFAULT_WINDOW[0]
    window_end: dt.date = DEFAULT_WINDOW[1]
    max_lag: int = 4
    level: float = 0.05
    format: str = "json"
    seed: int = 0
    workers: int = 1
    data_dir: str | None = None

    def __post_init__(self):
        if self.dependent not in ("wti", "brent"):
            raise ConfigError(f"dependent must be wti or brent, got {self.dependent!r}")
        if self.variant not in COVID_SCOPES:
            raise ConfigError(f"variant must be one of {COVID_SCOPES}, got {self.variant!r}")
        if self.format not in ("json", "text", "csv"):
            raise ConfigError(f"format must be json, text or csv, got {self.format!r}")
        if not 0.0 < self.level < 1.0:
            raise ConfigError(f"level must be in (0,1), got {self.level}")

    def panel_config(self) -> PanelConfig:
        return PanelConfig(
            dependent=self.dependent,
            covid_scope=self.variant,
            covid_shift=self.covid_shift,
            epu_shift=self.epu_shift,
            vix_shift=self.vix_shift,
            oil_shift=self.oil_shift,
            transforms=dict(self.transforms),
            window_start=self.window_start,
            window_end=self.window_end,
            max_lag=self.max_lag,
            data_dir=Path(self.data_dir) if self.data_dir else None,
        )


def parse_config_file(path: Path | str) -> dict[str, str]:
    """key=value lines; '#' starts a comment; unknown keys are an error."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file {path} does not exist")
    out: dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = _KEY_ALIASES.get(key, key)
        if key not in KNOWN_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}; known keys: {KNOWN_KEYS}")
        out[key] = value
    return out


def _parse_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {value!r}") from None


def _parse_date(key: str, value: str) -> dt.date:
    try:
        return dt.date.fromisoformat(value)
    except ValueError:
        raise ConfigError(f"{key} must be an ISO date, got {value!r}") from None


def build_run_config(values: dict[str, str]) -> RunConfig:
    """Assemble a RunConfig from string key/values (file and/or flags merged)."""
    kwargs: dict = {}
    transforms = dict(DEFAULT_TRANSFORMS)
    for key, value in values.items():
        if value is None:
            continue
        key = _KEY_ALIASES.get(key, key)
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown config key {key!r}")
        if key.endswith("_transform"):
            transforms[key.removesuffix("_transform")] = value
        elif key in ("covid_shift", "epu_shift", "vix_shift", "oil_shift", "max_lag", "seed", "workers"):
            kwargs[key] = _parse_int(key, value)
        elif key in ("window_start", "window_end"):
            kwargs[key] = _parse_date(key, value)
        elif key == "level":
            try:
                kwargs[key] = float(value)
            except ValueError:
                raise ConfigError(f"level must be a number, got {value!r}") from None
        else:
            kwargs[key] = value
    kwargs["transforms"] = transforms
    return RunConfig(**kwargs)


def resolve(config_path: str | None, overrides: dict[str, str | None]) -> RunConfig:
    """File values first, explicit flags override them."""
    values: dict[str, str] = {}
    if config_path:
        values.update(parse_config_file(config_path))
    for key, value in overrides.items():
        if value is not None:
            values[key] = str(value)
    return build_run_config(values)
