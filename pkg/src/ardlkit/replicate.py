"""Replication harness: run every benchmark model from the bundled snapshots
and annotate each result with the published value and a match flag.

The report is a plain JSON-able dict; rendering mirrors the benchmark tables'
layout (long-run block, short-run block, tests block) for eyeball diffing.
"""

from __future__ import annotations

import dataclasses
import datetime as dt
import json
from pathlib import Path

import numpy as np

from . import ardl, benchmarks, diagnostics, ingest, ols, unit_root
from .errors import NormalizationError
from .timeseries import Series, summarize_series, transform

MODEL_SCOPES = ("total", "china", "outside_china")
DEPENDENTS = ("wti", "brent")

SCOPE_TITLES = {
    "total": "COVID-19 Total",
    "china": "COVID-19 China",
    "outside_china": "COVID-19 Outside China",
}

_ROLE_LABELS = {"oil": "Oil", "covid": "COVID-19", "vix": "VIX", "epu": "EPU"}

VERDICTS = (
    "cointegration",
    "cointegration at 10% significance",
    "inconclusive",
    "no cointegration",
)


def _subscript(d: int) -> str:
    if d == 0:
        return "t"
    return f"t+{d}" if d > 0 else f"t-{-d}"


def _column_role(name: str, dependent: str) -> str:
    if name == dependent:
        return "oil"
    if name.startswith("covid"):
        return "covid"
    return name


def _stars_from_decisions(decisions: dict[str, bool]) -> str:
    if decisions.get("1%"):
        return "***"
    if decisions.get("5%"):
        return "**"
    if decisions.get("10%"):
        return "*"
    return ""


def derive_verdict(by_level: dict[float, ardl.BoundsResult]) -> str:
    b5, b10 = by_level[0.05], by_level[0.10]
    if b5.conclusion == ardl.CONCLUSION_COINTEGRATION:
        return "cointegration"
    if b10.conclusion == ardl.CONCLUSION_COINTEGRATION:
        return "cointegration at 10% significance"
    if b5.conclusion == ardl.CONCLUSION_NONE:
        return "no cointegration"
    return "inconclusive"


def run_model(
    panel_config: ingest.PanelConfig,
    sources: dict | None = None,
    max_lag: int = ardl.DEFAULT_MAX_LAG,
    lr_se_method: str = "delta",
) -> dict:
    """Estimate one model end to end; returns a JSON-able dict."""
    ds = ingest.build_dataset(panel_config, sources)
    spec = ardl.select_lags(ds, max_lag=max_lag)
    fit = ardl.fit_conditional_ecm(ds, spec)
    by_level = {lvl: ardl.bounds_f_test(fit, level=lvl) for lvl in (0.01, 0.05, 0.10)}
    verdict = derive_verdict(by_level)

    dep = spec.dependent
    shifts = {c.name: c.shift for c in ds.columns}
    tests = ols.t_stats(fit.fit)
    by_name = {t.name: t for t in tests}

    long_run_rows = []
    try:
        lr = ardl.long_run(fit, se_method=lr_se_method)
        for reg in spec.regressors:
            role = _column_role(reg, dep)
            theta = lr.coefficients[reg]
            se = lr.standard_errors[reg]
            # Normalized coefficients inherit the level term's t/p-value.
            t = theta / se if se > 0 else float("inf")
            lvl_t = by_name[fit.level_names[reg]]
            long_run_rows.append(
                {
                    "role": role,
                    "label": f"{_ROLE_LABELS[role]}[{_subscript(shifts[reg])}]",
                    "coef": float(theta),
                    "se": float(se),
                    "t": float(t),
                    "p": lvl_t.p,
                    "stars": lvl_t.stars,
                }
            )
        c_t = by_name["const"]
        long_run_rows.append(
            {
                "role": "const",
                "label": "c",
                "coef": float(lr.intercept),
                "se": float(lr.intercept_se),
                "t": float(lr.intercept / lr.intercept_se) if lr.intercept_se > 0 else float("inf"),
                "p": c_t.p,
                "stars": c_t.stars,
            }
        )
        lr_meta = {
            "se_method": lr.se_method,
            "normalizer": lr.normalizer,
            "normalizer_t": lr.normalizer_t,
            "degenerate": lr.degenerate,
        }
    except NormalizationError as exc:
        lr_meta = {"error": str(exc)}

    short_run_rows = []
    for col in (dep, *spec.regressors):
        role = _column_role(col, dep)
        for j, design_name in enumerate(fit.short_run_names[col]):
            lag = (j + 1) if col == dep else j
            t = by_name[design_name]
            short_run_rows.append(
                {
                    "role": role,
                    "lag": int(shifts[col] - lag),
                    "label": f"d{_ROLE_LABELS[role]}[{_subscript(shifts[col] - lag)}]",
                    "coef": t.coef,
                    "se": t.se,
                    "t": t.t,
                    "p": t.p,
                    "stars": t.stars,
                }
            )

    ecm = ardl.fit_ecm(ds, fit, bounds=by_level[0.05])
    diag = diagnostics.diagnose(fit.fit)

    level_rows = [
        {
            "role": _column_role(col, dep),
            "name": col,
            "coef": by_name[fit.level_names[col]].coef,
            "se": by_name[fit.level_names[col]].se,
            "stars": by_name[fit.level_names[col]].stars,
        }
        for col in (dep, *spec.regressors)
    ]

    return {
        "dependent": panel_config.dependent,
        "scope": panel_config.covid_scope,
        "nobs": fit.nobs,
        "panel_rows": ds.nrows,
        "sample": [fit.sample_dates[0].isoformat(), fit.sample_dates[-1].isoformat()],
        "selected_lags": {
            "oil": spec.dep_lags,
            **{_column_role(r, dep): spec.reg_lags[r] for r in spec.regressors},
        },
        "aic": fit.fit.aic,
        "r2": fit.fit.r2,
        "sigma": float(np.sqrt(fit.fit.sigma2)),
        "levels": level_rows,
        "bounds": {
            "f": by_level[0.05].f_stat,
            "k": by_level[0.05].k,
            "table": by_level[0.05].table,
            "levels": {
                f"{int(lvl * 100)}%": {
                    "lower": res.lower,
                    "upper": res.upper,
                    "conclusion": res.conclusion,
                }
                for lvl, res in by_level.items()
            },
            "verdict": verdict,
        },
        "long_run": long_run_rows,
        "long_run_meta": lr_meta,
        "short_run": short_run_rows,
        "ect": {
            "label": "ECT[t-1]",
            "coef": ecm.theta,
            "se": ecm.se,
            "t": ecm.t,
            "p": ecm.p,
            "stars": ols.significance_stars(ecm.p) if np.isfinite(ecm.p) else "",
            "validated": ecm.validated,
            "degenerate": ecm.degenerate,
            "no_cointegration_warning": ecm.no_cointegration_warning,
        },
        "diagnostics": {
            "serial_correlation": None
            if diag.serial_correlation is None
            else {
                "statistic": diag.serial_correlation.statistic,
                "p": diag.serial_correlation.p,
                "lags": diag.serial_correlation.lags,
                "verdict": "YES" if diag.serial_correlation.reject else "NO",
            },
            "arch": None
            if diag.arch is None
            else {
                "statistic": diag.arch.statistic,
                "p": diag.arch.p,
                "lags": diag.arch.lags,
                "verdict": "YES" if diag.arch.reject else "NO",
            },
            "normality": {
                "statistic": diag.normality.statistic,
                "p": diag.normality.p,
                "verdict": "NO" if diag.normality.reject else "YES",
            },
            "reset": None
            if diag.reset is None
            else {
                "statistic": diag.reset.statistic,
                "p": diag.reset.p,
                "verdict": "YES" if not diag.reset.reject else "NO",
            },
            "cusum": None
            if diag.cusum is None
            else {"stable": diag.cusum.stable, "verdict": "YES" if diag.cusum.stable else "NO"},
        },
    }


def _annotate_model(model: dict) -> None:
    """Attach benchmark values and match flags in place."""
    key = (model["dependent"], model["scope"])
    bt = benchmarks.BOUNDS_TARGETS[key]
    model["bounds"]["benchmark_f"] = bt["f"]
    model["bounds"]["benchmark_verdict"] = bt["verdict"]
    model["bounds"]["f_match"] = benchmarks.match_relative(
        model["bounds"]["f"], bt["f"], benchmarks.TOL_F_REL
    )
    model["bounds"]["verdict_match"] = model["bounds"]["verdict"] == bt["verdict"]

    at = benchmarks.ARDL_TARGETS[key]
    for row in model["long_run"]:
        cell = at["long_run"].get(row["role"])
        if cell is not None:
            row.update(benchmarks.compare_cell(row["coef"], row["stars"], cell))
    for row in model["short_run"]:
        cell = at["short_run"].get((row["role"], row["lag"]))
        if cell is not None:
            row.update(benchmarks.compare_cell(row["coef"], row["stars"], cell))

    ect_cell = at["ect"]
    model["ect"]["benchmark"] = ect_cell.coef
    model["ect"]["benchmark_stars"] = ect_cell.stars
    if np.isfinite(model["ect"]["coef"]):
        model["ect"]["sign_match"] = benchmarks.match_sign(model["ect"]["coef"], ect_cell.coef)
        model["ect"]["stars_match"] = benchmarks.match_stars(model["ect"]["stars"], ect_cell.stars)
        model["ect"]["magnitude_match"] = benchmarks.match_absolute(
            model["ect"]["coef"], ect_cell.coef, benchmarks.TOL_ECT_ABS
        )
    tests_match = {}
    for test, target in at["tests"].items():
        if test == "stability":
            cell = model["diagnostics"]["cusum"]
        else:
            cell = model["diagnostics"][test]
        got = None if cell is None else cell["verdict"]
        tests_match[test] = {"benchmark": target, "value": got, "match": got == target}
    model["tests_match"] = tests_match


def _unit_root_block(series_by_role: dict[str, Series], spec: str, test: str = "pp") -> dict:
    block = {}
    for role, s in series_by_role.items():
        if test == "pp":
            lvl = unit_root.pp_test(s, spec=spec)
            dif = unit_root.pp_test(np.diff(s.values), spec=spec)
        else:
            lvl = unit_root.adf_test(s, spec=spec)
            dif = unit_root.adf_test(np.diff(s.values), spec=spec)
        cls = "I0" if lvl.rejects("5%") else ("I1" if dif.rejects("5%") else "higher")
        block[role] = {
            "level": {"statistic": lvl.statistic, "stars": _stars_from_decisions(lvl.decisions)},
            "diff": {"statistic": dif.statistic, "stars": _stars_from_decisions(dif.decisions)},
            "classification": cls,
            "nobs": lvl.nobs,
        }
    return block


def _annotate_unit_root(block: dict) -> None:
    for role, row in block.items():
        tgt = benchmarks.UNIT_ROOT_TARGETS[role]
        for part in ("level", "diff"):
            row[part]["benchmark"] = tgt[part]
            row[part]["benchmark_stars"] = tgt[f"{part}_stars"]
            row[part]["stars_match"] = benchmarks.match_stars(
                row[part]["stars"], tgt[f"{part}_stars"]
            )
            if benchmarks.UNIT_ROOT_STAT_COMPARABLE[(role, part)]:
                row[part]["statistic_match"] = benchmarks.match_absolute(
                    row[part]["statistic"], tgt[part], benchmarks.TOL_UNIT_ROOT_ABS
                )
            else:
                row[part]["statistic_match"] = None
        row["benchmark_classification"] = benchmarks.CLASSIFICATION_TARGETS[role]
        row["classification_match"] = (
            row["classification"] == benchmarks.CLASSIFICATION_TARGETS[role]
        )


def unit_root_series(
    config: ingest.PanelConfig,
    sources: dict | None = None,
    transforms: str = "level",
) -> dict[str, Series]:
    """Series per role for the unit-root pretests, on their own calendars.

    The default tests the series as reported (level units), matching the
    benchmark's pretest table; ``transforms="config"`` tests the estimation
    transforms instead.
    """
    levels = ingest.load_level_series(config, sources)
    if transforms == "config":
        tags = config.transforms
    else:
        tags = {k: "level" for k in config.transforms}
    out = {}
    out["oil"] = transform(levels[config.dependent], tags["oil"])
    out["covid"] = transform(levels["covid_total"], tags["covid"])
    out["vix"] = transform(levels["vix"], tags["vix"])
    out["epu"] = transform(levels["epu"], tags["epu"])
    return out


def summary_block(config: ingest.PanelConfig, sources: dict | None = None) -> dict:
    levels = ingest.load_level_series(config, sources)
    wanted = ["wti", "brent", "covid_total", "covid_china", "covid_outside_china", "vix", "epu"]
    stats = summarize_series([levels[n] for n in wanted if n in levels])
    block = {}
    for name, st in stats.columns.items():
        row = {
            "min": st.min,
            "max": st.max,
            "mean": st.mean,
            "std": st.std,
            "count": st.count,
        }
        tgt = benchmarks.SUMMARY_TARGETS.get(name)
        if tgt is not None:
            row["benchmark"] = dict(tgt)
            row["match"] = {
                k: benchmarks.match_relative(row[k], tgt[k], benchmarks.TOL_SUMMARY_REL)
                for k in ("min", "max", "mean", "std")
            }
        block[name] = row
    return block


def replicate(
    config: ingest.PanelConfig | None = None,
    sources: dict | None = None,
    max_lag: int = ardl.DEFAULT_MAX_LAG,
    dependents: tuple[str, ...] = DEPENDENTS,
    scopes: tuple[str, ...] = MODEL_SCOPES,
) -> dict:
    """Regenerate the benchmark tables from the bundled snapshots."""
    base = config if config is not None else ingest.PanelConfig()

    report: dict = {
        "window": [base.window_start.isoformat(), base.window_end.isoformat()],
        "transforms": dict(base.transforms),
        "max_lag": max_lag,
    }
    report["summary_stats"] = summary_block(base, sources)

    ur_series = unit_root_series(base, sources)
    report["unit_root"] = {
        "pp_constant": _unit_root_block(ur_series, "c"),
        "pp_constant_trend": _unit_root_block(ur_series, "ct"),
        "adf_constant": _unit_root_block(ur_series, "c", test="adf"),
    }
    _annotate_unit_root(report["unit_root"]["pp_constant"])

    report["models"] = {}
    for dep in dependents:
        report["models"][dep] = {}
        for scope in scopes:
            cfg = dataclasses.replace(base, dependent=dep, covid_scope=scope)
            model = run_model(cfg, sources, max_lag=max_lag)
            _annotate_model(model)
            report["models"][dep][scope] = model

    # Open question on transforms: the all-levels alternative ships alongside
    # the default; bounds conclusions only.
    alt = {}
    level_transforms = {k: "level" for k in base.transforms}
    for dep in dependents:
        alt[dep] = {}
        for scope in scopes:
            cfg = dataclasses.replace(
                base, dependent=dep, covid_scope=scope, transforms=level_transforms
            )
            model_ds = ingest.build_dataset(cfg, sources)
            spec = ardl.select_lags(model_ds, max_lag=max_lag)
            fit = ardl.fit_conditional_ecm(model_ds, spec)
            by_level = {lvl: ardl.bounds_f_test(fit, level=lvl) for lvl in (0.01, 0.05, 0.10)}
            alt[dep][scope] = {
                "f": by_level[0.05].f_stat,
                "verdict": derive_verdict(by_level),
            }
    report["alternate_transforms"] = {"transforms": level_transforms, "bounds": alt}
    return report


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (dt.date, dt.datetime)):
        return obj.isoformat()
    if isinstance(obj, float) and not np.isfinite(obj):
        return None
    return obj


def to_json(report: dict) -> str:
    """Canonical JSON: sorted keys, stable float repr, no timestamps."""
    return json.dumps(_jsonable(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _flag(ok) -> str:
    if ok is None:
        return " ?"
    return " ok" if ok else " MISMATCH"


def _fmt(x, width: int = 10, prec: int = 4) -> str:
    if x is None or (isinstance(x, float) and not np.isfinite(x)):
        return " " * (width - 3) + "nan"
    return f"{x:>{width}.{prec}f}"


def render_model_text(model: dict) -> str:
    lines = []
    title = f"Model: {model['dependent'].upper()} / {SCOPE_TITLES[model['scope']]}"
    lines.append(title)
    lines.append("=" * len(title))
    lines.append(
        f"sample {model['sample'][0]}..{model['sample'][1]}  T={model['nobs']}  "
        f"lags {model['selected_lags']}  R2={model['r2']:.4f}"
    )
    b = model["bounds"]
    lines.append(
        f"Bounds F = {b['f']:.3f}  (5% bounds {b['levels']['5%']['lower']:.2f}/"
        f"{b['levels']['5%']['upper']:.2f}, 10% {b['levels']['10%']['lower']:.2f}/"
        f"{b['levels']['10%']['upper']:.2f})  verdict: {b['verdict']}"
    )
    if "benchmark_verdict" in b:
        lines.append(
            f"  benchmark F = {b['benchmark_f']:.3f} [{_flag(b['f_match']).strip()}], "
            f"verdict: {b['benchmark_verdict']} [{_flag(b['verdict_match']).strip()}]"
        )
    lines.append("")
    lines.append("Long-run equation")
    for row in model["long_run"]:
        cell = f"  {row['label']:<16}{_fmt(row['coef'])}{row['stars']:<3} [{_fmt(row['se'], 8)}]"
        if "benchmark" in row:
            cell += (
                f"   | benchmark {_fmt(row['benchmark'], 8)}{row['benchmark_stars']:<3}"
                f" sign{_flag(row['sign_match'])}, stars{_flag(row['stars_match'])},"
                f" magnitude{_flag(row['magnitude_match'])}"
            )
        lines.append(cell)
    lines.append("")
    lines.append("Short-run equation")
    for row in model["short_run"]:
        cell = f"  {row['label']:<16}{_fmt(row['coef'])}{row['stars']:<3} [{_fmt(row['se'], 8)}]"
        if "benchmark" in row:
            cell += (
                f"   | benchmark {_fmt(row['benchmark'], 8)}{row['benchmark_stars']:<3}"
                f" sign{_flag(row['sign_match'])}, stars{_flag(row['stars_match'])},"
                f" magnitude{_flag(row['magnitude_match'])}"
            )
        lines.append(cell)
    e = model["ect"]
    cell = f"  {e['label']:<16}{_fmt(e['coef'])}{e['stars']:<3} [{_fmt(e['se'], 8)}]"
    if "benchmark" in e:
        cell += (
            f"   | benchmark {_fmt(e['benchmark'], 8)}{e['benchmark_stars']:<3}"
            f" sign{_flag(e.get('sign_match'))}, magnitude{_flag(e.get('magnitude_match'))}"
        )
    lines.append(cell)
    lines.append("")
    lines.append("Tests")
    d = model["diagnostics"]

    def _verdict(cell) -> str:
        return "n/a" if cell is None else cell["verdict"]

    def _pval(cell, tag: str) -> str:
        return "" if cell is None else f"{tag} p={cell['p']:.3f}"

    rows = [
        ("Serial correlation", _verdict(d["serial_correlation"]), _pval(d["serial_correlation"], "LM")),
        ("ARCH effects", _verdict(d["arch"]), _pval(d["arch"], "LM")),
        ("Stability", _verdict(d["cusum"]), _pval(d["reset"], "RESET")),
    ]
    tm = model.get("tests_match", {})
    key_by_title = {
        "Serial correlation": "serial_correlation",
        "ARCH effects": "arch",
        "Stability": "stability",
    }
    for title_, verdict, extra in rows:
        line = f"  {title_:<20}{verdict:<4} {extra}"
        k = key_by_title[title_]
        if k in tm:
            line += f"   | benchmark {tm[k]['benchmark']}{_flag(tm[k]['match'])}"
        lines.append(line)
    lines.append("")
    return "\n".join(lines)


def render_text(report: dict) -> str:
    lines = []
    lines.append(f"Replication report  (window {report['window'][0]}..{report['window'][1]})")
    lines.append("")
    lines.append("Summary statistics (level units)")
    header = f"  {'column':<22}{'min':>10}{'max':>11}{'mean':>11}{'std':>10}   benchmark match"
    lines.append(header)
    for name, row in report["summary_stats"].items():
        line = (
            f"  {name:<22}{row['min']:>10.2f}{row['max']:>11.2f}"
            f"{row['mean']:>11.2f}{row['std']:>10.3f}"
        )
        if "match" in row:
            flags = ",".join(k for k, ok in row["match"].items() if not ok) or "all"
            line += f"   {flags if flags != 'all' else 'all within ±2%'}"
        lines.append(line)
    lines.append("")
    lines.append("Unit-root tests (Phillips-Perron, constant)")
    lines.append(
        f"  {'variable':<10}{'level':>10}{'':<4}{'diff':>10}{'':<4}{'class':>7}"
        f"   benchmark level/diff/class"
    )
    for role, row in report["unit_root"]["pp_constant"].items():
        line = (
            f"  {role:<10}{row['level']['statistic']:>10.3f}{row['level']['stars']:<4}"
            f"{row['diff']['statistic']:>10.3f}{row['diff']['stars']:<4}"
            f"{row['classification']:>7}"
        )
        if "benchmark" in row["level"]:
            line += (
                f"   | {row['level']['benchmark']:.3f}/{row['diff']['benchmark']:.3f}"
                f"/{row['benchmark_classification']}"
                f"  stat{_flag(row['level']['statistic_match'])},"
                f" class{_flag(row['classification_match'])}"
            )
        lines.append(line)
    lines.append("")
    lines.append("Unit-root tests (Phillips-Perron, constant+trend)")
    for role, row in report["unit_root"]["pp_constant_trend"].items():
        lines.append(
            f"  {role:<10}{row['level']['statistic']:>10.3f}{row['level']['stars']:<4}"
            f"{row['diff']['statistic']:>10.3f}{row['diff']['stars']:<4}"
            f"{row['classification']:>7}"
        )
    lines.append("")
    lines.append("Unit-root tests (ADF, constant, AIC lags)")
    for role, row in report["unit_root"]["adf_constant"].items():
        lines.append(
            f"  {role:<10}{row['level']['statistic']:>10.3f}{row['level']['stars']:<4}"
            f"{row['diff']['statistic']:>10.3f}{row['diff']['stars']:<4}"
            f"{row['classification']:>7}"
        )
    lines.append("")
    lines.append("Bounds tests")
    lines.append(f"  {'model':<34}{'F':>8}   verdict")
    for dep, scopes in report["models"].items():
        for scope, model in scopes.items():
            b = model["bounds"]
            line = (
                f"  {dep.upper() + ' / ' + SCOPE_TITLES[scope]:<34}{b['f']:>8.3f}"
                f"   {b['verdict']}"
            )
            if "benchmark_verdict" in b:
                line += f"   | benchmark {b['benchmark_f']:.3f} {b['benchmark_verdict']}{_flag(b['verdict_match'])}"
            lines.append(line)
    lines.append("")
    for dep, scopes in report["models"].items():
        for scope, model in scopes.items():
            lines.append(render_model_text(model))
    alt = report.get("alternate_transforms")
    if alt:
        lines.append("Appendix: bounds tests under all-level transforms")
        for dep, scopes in alt["bounds"].items():
            for scope, row in scopes.items():
                lines.append(
                    f"  {dep.upper() + ' / ' + SCOPE_TITLES[scope]:<34}{row['f']:>8.3f}   {row['verdict']}"
                )
        lines.append("")
    return "\n".join(lines) + "\n"


def write_bundle(report: dict, outdir: Path | str) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    json_path = outdir / "report.json"
    text_path = outdir / "tables.txt"
    json_path.write_text(to_json(report), encoding="utf-8")
    text_path.write_text(render_text(report), encoding="utf-8")
    return [json_path, text_path]
