"""Thin command-line client for the service.

By default commands run against an in-process instance of the FastAPI app, so
no server needs to be running; ``--server URL`` points them at a live one and
``ardlkit serve`` starts one. Every config-file key has a flag of the same
name (see ``ardlkit --help`` and the config module docstring).
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import httpx

from . import __version__, config as config_mod, replicate as replicate_mod
from .errors import ArdlkitError

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_TRANSPORT = 2

CONFIG_KEYS_HELP = """\
Config file keys (plain key=value lines, '#' comments), each overridable by
the flag of the same name: dependent, variant, covid_shift, epu_shift,
vix_shift, oil_shift, oil_transform, covid_transform, vix_transform,
epu_transform, window_start, window_end, max_lag, level, format, seed,
workers, data_dir.
"""


def _client(server: str | None):
    if server:
        return httpx.Client(base_url=server, timeout=300.0)
    from fastapi.testclient import TestClient

    from .service.app import app

    return TestClient(app)


def _fail(category: str, detail: str, code: int = EXIT_ERROR) -> None:
    click.echo(f"error:{category}: {detail}", err=True)
    sys.exit(code)


def _post(ctx: click.Context, path: str, payload: dict) -> dict:
    server = ctx.obj.get("server")
    try:
        with _client(server) as client:
            resp = client.post(path, json=payload)
    except httpx.HTTPError as exc:
        _fail("transport", f"cannot reach service at {server}: {exc}", EXIT_TRANSPORT)
    if resp.status_code != 200:
        try:
            body = resp.json()
            _fail(body.get("error", "http"), body.get("detail", resp.text))
        except json.JSONDecodeError:
            _fail("http", f"status {resp.status_code}: {resp.text[:200]}")
    return resp.json()


def _resolve_config(ctx: click.Context, overrides: dict) -> config_mod.RunConfig:
    try:
        return config_mod.resolve(ctx.obj.get("config_path"), overrides)
    except ArdlkitError as exc:
        _fail(exc.category, exc.message)


def _panel_payload(rc: config_mod.RunConfig) -> dict:
    return {
        "dependent": rc.dependent,
        "variant": rc.variant,
        "covid_shift": rc.covid_shift,
        "epu_shift": rc.epu_shift,
        "vix_shift": rc.vix_shift,
        "oil_shift": rc.oil_shift,
        "oil_transform": rc.transforms["oil"],
        "covid_transform": rc.transforms["covid"],
        "vix_transform": rc.transforms["vix"],
        "epu_transform": rc.transforms["epu"],
        "window_start": rc.window_start.isoformat(),
        "window_end": rc.window_end.isoformat(),
        "max_lag": rc.max_lag,
        "data_dir": rc.data_dir,
    }


def _emit_json(data) -> None:
    click.echo(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False))


def panel_options(fn):
    """Flags mirroring the panel-level config keys."""
    opts = [
        click.option("--dependent", type=click.Choice(["wti", "brent"]), default=None),
        click.option(
            "--variant",
            type=click.Choice(["total", "china", "outside_china"]),
            default=None,
            help="COVID scope (config key: variant).",
        ),
        click.option("--covid-shift", "covid_shift", type=int, default=None),
        click.option("--epu-shift", "epu_shift", type=int, default=None),
        click.option("--vix-shift", "vix_shift", type=int, default=None),
        click.option("--oil-shift", "oil_shift", type=int, default=None),
        click.option("--oil-transform", "oil_transform", type=click.Choice(["level", "log"]), default=None),
        click.option(
            "--covid-transform",
            "covid_transform",
            type=click.Choice(["level", "log", "log1p"]),
            default=None,
        ),
        click.option("--vix-transform", "vix_transform", type=click.Choice(["level", "log"]), default=None),
        click.option("--epu-transform", "epu_transform", type=click.Choice(["level", "log"]), default=None),
        click.option("--window-start", "window_start", default=None, help="ISO date."),
        click.option("--window-end", "window_end", default=None, help="ISO date."),
        click.option("--max-lag", "max_lag", type=int, default=None),
        click.option("--data-dir", "data_dir", default=None, help="Snapshot directory (default: bundled)."),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


@click.group(help=__doc__, epilog=CONFIG_KEYS_HELP)
@click.version_option(__version__)
@click.option("--server", default=None, help="Base URL of a running service (default: in-process).")
@click.option("--config", "config_path", default=None, type=click.Path(), help="key=value config file.")
@click.pass_context
def main(ctx: click.Context, server: str | None, config_path: str | None) -> None:
    ctx.ensure_object(dict)
    ctx.obj["server"] = server
    ctx.obj["config_path"] = config_path


@main.command(help="Build the aligned estimation panel and print its shape.")
@panel_options
@click.option("--include-values/--no-include-values", default=False)
@click.option("--out", type=click.Path(), default=None, help="Also write the panel as CSV.")
@click.pass_context
def ingest(ctx: click.Context, include_values: bool, out: str | None, **overrides) -> None:
    rc = _resolve_config(ctx, overrides)
    payload = _panel_payload(rc)
    payload["include_values"] = include_values or out is not None
    data = _post(ctx, "/panel", payload)
    if out:
        names = [c["name"] for c in data["columns"]]
        lines = [",".join(["date", *names])]
        for i, d in enumerate(data["calendar"]):
            lines.append(",".join([d, *(repr(data["values"][n][i]) for n in names)]))
        Path(out).write_text("\n".join(lines) + "\n", encoding="utf-8")
        click.echo(f"wrote {out}", err=True)
    if not include_values:
        data.pop("values", None)
        data.pop("calendar", None)
    _emit_json(data)


@main.command(help="Summary statistics of the level series over the window.")
@panel_options
@click.pass_context
def summary(ctx: click.Context, **overrides) -> None:
    rc = _resolve_config(ctx, overrides)
    _emit_json(_post(ctx, "/summary", _panel_payload(rc)))


@main.command("unit-root", help="Unit-root test for one variable.")
@panel_options
@click.option("--var", "variable", type=click.Choice(["oil", "covid", "vix", "epu"]), required=True)
@click.option("--test", type=click.Choice(["pp", "adf"]), default="pp", show_default=True)
@click.option("--spec", type=click.Choice(["c", "ct", "n"]), default="c", show_default=True)
@click.option("--bandwidth", type=int, default=None, help="Newey-West bandwidth (pp only).")
@click.option("--adf-max-lag", "adf_max_lag", type=int, default=4, show_default=True)
@click.option("--series-transforms", "series_transforms", type=click.Choice(["level", "config"]),
              default="level", show_default=True,
              help="Test the reported level series or the estimation transforms.")
@click.pass_context
def unit_root_cmd(
    ctx: click.Context,
    variable: str,
    test: str,
    spec: str,
    bandwidth: int | None,
    adf_max_lag: int,
    series_transforms: str,
    **overrides,
) -> None:
    rc = _resolve_config(ctx, overrides)
    payload = _panel_payload(rc)
    payload.update(
        variable=variable, test=test, spec=spec, bandwidth=bandwidth,
        adf_max_lag=adf_max_lag, series_transforms=series_transforms,
    )
    _emit_json(_post(ctx, "/unit-root", payload))


@main.command(help="Bounds F-test for one model variant.")
@panel_options
@click.option("--model", "variant_alias", type=click.Choice(["total", "china", "outside"]), default=None,
              help="Alias for --variant (outside = outside_china).")
@click.option("--level", type=float, default=None)
@click.pass_context
def bounds(ctx: click.Context, variant_alias: str | None, level: float | None, **overrides) -> None:
    if variant_alias and not overrides.get("variant"):
        overrides["variant"] = "outside_china" if variant_alias == "outside" else variant_alias
    if level is not None:
        overrides["level"] = level
    rc = _resolve_config(ctx, overrides)
    payload = _panel_payload(rc)
    payload["level"] = rc.level
    _emit_json(_post(ctx, "/bounds", payload))


@main.command(help="Full conditional-ECM estimate: long-run, short-run, ECT, diagnostics.")
@panel_options
@click.option("--model", "variant_alias", type=click.Choice(["total", "china", "outside"]), default=None)
@click.option("--lr-se-method", type=click.Choice(["delta", "bewley"]), default="delta", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default=None)
@click.pass_context
def fit(ctx: click.Context, variant_alias: str | None, lr_se_method: str, fmt: str | None, **overrides) -> None:
    if variant_alias and not overrides.get("variant"):
        overrides["variant"] = "outside_china" if variant_alias == "outside" else variant_alias
    if fmt is not None:
        overrides["format"] = fmt
    rc = _resolve_config(ctx, overrides)
    payload = _panel_payload(rc)
    payload["lr_se_method"] = lr_se_method
    data = _post(ctx, "/fit", payload)
    if rc.format == "text":
        click.echo(data["text"])
    else:
        _emit_json(data["model"])


@main.command(help="Post-estimation diagnostics for one model variant.")
@panel_options
@click.option("--cusum-csv", type=click.Path(), default=None, help="Write the CUSUM path as CSV.")
@click.pass_context
def diagnose(ctx: click.Context, cusum_csv: str | None, **overrides) -> None:
    rc = _resolve_config(ctx, overrides)
    data = _post(ctx, "/diagnose", _panel_payload(rc))
    if cusum_csv:
        if not data.get("cusum_path"):
            _fail("sample_too_small", "CUSUM path unavailable for this model")
        lines = ["index,path,lower,upper"]
        for i, (p, lo, up) in enumerate(
            zip(data["cusum_path"], data["cusum_lower"], data["cusum_upper"])
        ):
            lines.append(f"{i + 1},{p!r},{lo!r},{up!r}")
        Path(cusum_csv).write_text("\n".join(lines) + "\n", encoding="utf-8")
        click.echo(f"wrote {cusum_csv}", err=True)
    _emit_json(data["diagnostics"])


@main.command("export-plot", help="Export level series as a plot-ready CSV (outliers flagged).")
@click.option("--window-start", "window_start", default=None)
@click.option("--window-end", "window_end", default=None)
@click.option("--data-dir", "data_dir", default=None)
@click.option("--out", type=click.Path(), default=None, help="Output file (default: stdout).")
@click.pass_context
def export_plot(ctx: click.Context, out: str | None, **overrides) -> None:
    rc = _resolve_config(ctx, overrides)
    payload = {
        "window_start": rc.window_start.isoformat(),
        "window_end": rc.window_end.isoformat(),
        "data_dir": rc.data_dir,
    }
    data = _post(ctx, "/export-plot", payload)
    if out:
        Path(out).write_text(data["csv"], encoding="utf-8")
        click.echo(f"wrote {out} (outliers flagged: {', '.join(data['outlier_dates']) or 'none'})", err=True)
    else:
        click.echo(data["csv"], nl=False)


@main.command(help="Regenerate every benchmark table from the bundled snapshots.")
@panel_options
@click.option("--out", type=click.Path(), default="replication", show_default=True,
              help="Output directory for report.json and tables.txt.")
@click.option("--only-dependent", type=click.Choice(["wti", "brent"]), default=None)
@click.option("--only-variant", type=click.Choice(["total", "china", "outside_china"]), default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default=None)
@click.pass_context
def replicate(
    ctx: click.Context,
    out: str,
    only_dependent: str | None,
    only_variant: str | None,
    fmt: str | None,
    **overrides,
) -> None:
    if fmt is not None:
        overrides["format"] = fmt
    rc = _resolve_config(ctx, overrides)
    payload = _panel_payload(rc)
    payload["dependents"] = [only_dependent] if only_dependent else None
    payload["scopes"] = [only_variant] if only_variant else None
    payload["include_text"] = True
    data = _post(ctx, "/replicate", payload)
    paths = []
    outdir = Path(out)
    outdir.mkdir(parents=True, exist_ok=True)
    report_path = outdir / "report.json"
    report_path.write_text(replicate_mod.to_json(data["report"]), encoding="utf-8")
    paths.append(report_path)
    text_path = outdir / "tables.txt"
    text_path.write_text(data["text"], encoding="utf-8")
    paths.append(text_path)
    click.echo(f"wrote {', '.join(str(p) for p in paths)}", err=True)
    if rc.format == "text":
        click.echo(data["text"])


@main.command(help="Seeded Monte Carlo: rejection rates and estimate summaries.")
@click.option("--dgp", required=True,
              help="white_noise | random_walk | ar1 | cointegrated_pair | coefficient_break")
@click.option("--test", required=True,
              help="pp | adf | bounds | ecm_theta | long_run_theta | bg | arch | jb | reset | cusum")
@click.option("-T", "--nobs", "t_obs", type=int, default=200, show_default=True)
@click.option("--replications", type=int, default=500, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--level", type=float, default=None)
@click.option("--workers", type=int, default=None)
@click.option("--dgp-param", "dgp_params", multiple=True, help="name=value, repeatable.")
@click.option("--test-param", "test_params", multiple=True, help="name=value, repeatable.")
@click.pass_context
def simulate(
    ctx: click.Context,
    dgp: str,
    test: str,
    t_obs: int,
    replications: int,
    seed: int | None,
    level: float | None,
    workers: int | None,
    dgp_params: tuple[str, ...],
    test_params: tuple[str, ...],
) -> None:
    overrides: dict = {}
    if seed is not None:
        overrides["seed"] = seed
    if level is not None:
        overrides["level"] = level
    if workers is not None:
        overrides["workers"] = workers
    rc = _resolve_config(ctx, overrides)

    def parse_params(pairs: tuple[str, ...]) -> dict[str, float]:
        out = {}
        for pair in pairs:
            if "=" not in pair:
                _fail("config", f"expected name=value, got {pair!r}")
            name, value = pair.split("=", 1)
            try:
                out[name.strip()] = float(value)
            except ValueError:
                _fail("config", f"parameter {name!r} must be numeric, got {value!r}")
        return out

    payload = {
        "dgp": dgp,
        "test": test,
        "T": t_obs,
        "replications": replications,
        "seed": rc.seed,
        "level": rc.level,
        "workers": rc.workers,
        "dgp_params": parse_params(dgp_params),
        "test_params": parse_params(test_params),
    }
    _emit_json(_post(ctx, "/simulate", payload))


@main.command(help="Run the service with uvicorn.")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
