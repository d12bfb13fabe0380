"""Command-line front end.

Subcommands: ingest, compute, contributions, classify,
sensitivity envelope|simulate, counterfactual, profiles-check,
elicit build-scale|build-weights|check, plot, serve.

Every run that writes artifacts also writes a manifest with output
digests; identical inputs and seed reproduce byte-identical CSVs.
Failures exit non-zero with a machine-readable JSON report on stderr.
"""

from __future__ import annotations

import functools
import json
import os
import sys
from datetime import date
from pathlib import Path

import click

from . import __version__, deck, plots, valuefunc
from .errors import PaciError, SchemaError
from .manifest import write_manifest
from .model import (
    ModelConfig,
    classify as classify_value,
    default_config,
    reference_profiles_check,
    run_series,
)
from .robustness import (
    MODE_AROUND_NOMINAL,
    MODE_FULL_SIMPLEX,
    PerturbationSpec,
    envelope_from_matrix,
    monte_carlo_from_matrix,
)
from .series import (
    MATRIX_HEADER,
    RAW_HEADER,
    CriteriaMatrix,
    RawSeries,
    compute_performances,
)
from .vaccination import CounterfactualSpec, counterfactual_matrix, write_comparison_csv

CONFIG_ENV = "PACI_CONFIG"


def _guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except PaciError as exc:
            click.echo(json.dumps(exc.to_dict()), err=True)
            sys.exit(2)
        except FileNotFoundError as exc:
            click.echo(
                json.dumps({"error": "io", "message": str(exc), "details": {}}),
                err=True,
            )
            sys.exit(2)

    return wrapper


def _load_config(config_path: str | None) -> tuple[ModelConfig, str | None]:
    path = config_path or os.environ.get(CONFIG_ENV)
    if path:
        return ModelConfig.load(path), path
    return default_config(), None


def _load_matrix(input_path: str) -> CriteriaMatrix:
    """Accept a raw series CSV or an already-transformed criteria CSV."""
    with open(input_path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
    if header == ",".join(RAW_HEADER):
        return compute_performances(RawSeries.from_csv(input_path))
    if header == ",".join(MATRIX_HEADER):
        return CriteriaMatrix.from_csv(input_path)
    raise SchemaError(
        f"unrecognised header {header!r}; expected a raw series or criteria CSV"
    )


def _clip_series(matrix: CriteriaMatrix, date_from: str | None,
                 date_to: str | None) -> CriteriaMatrix:
    if not date_from and not date_to:
        return matrix
    try:
        lo = date.fromisoformat(date_from) if date_from else matrix.dates[0]
        hi = date.fromisoformat(date_to) if date_to else matrix.dates[-1]
    except ValueError as exc:
        raise SchemaError(f"bad date range bound: {exc}") from None
    keep = [i for i, d in enumerate(matrix.dates) if lo <= d <= hi]
    if not keep:
        raise SchemaError(f"no rows between {lo} and {hi}")
    return CriteriaMatrix(
        dates=tuple(matrix.dates[i] for i in keep),
        x=matrix.x[keep],
        flags=tuple(matrix.flags[i] for i in keep),
    )


def _out_dir(path: str) -> Path:
    p = Path(path)
    p.mkdir(parents=True, exist_ok=True)
    return p


input_option = click.option("--input", "input_path", required=True,
                            type=click.Path(exists=True),
                            help="raw series CSV (or a criteria CSV)")
config_option = click.option("--config", "config_path", default=None,
                             type=click.Path(exists=True),
                             help=f"model config JSON (falls back to ${CONFIG_ENV})")
outdir_option = click.option("--out-dir", default=".", show_default=True,
                             help="directory for emitted artifacts")
format_option = click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                             default="csv", show_default=True)
range_options = [
    click.option("--from", "date_from", default=None, help="first date (YYYY-MM-DD)"),
    click.option("--to", "date_to", default=None, help="last date (YYYY-MM-DD)"),
]


def _add_options(options):
    def deco(fn):
        for opt in reversed(options):
            fn = opt(fn)
        return fn

    return deco


@click.group()
@click.version_option(__version__, prog_name="paci")
def main():
    """Pandemic impact indicator: compute, elicit, stress, plot, serve."""


@main.command()
@input_option
@outdir_option
@_guarded
def ingest(input_path, out_dir):
    """Validate a raw series CSV and store the validated copy."""
    raw = RawSeries.from_csv(input_path)
    out = _out_dir(out_dir)
    target = out / "raw_validated.csv"
    raw.to_csv(target)
    write_manifest(out, "ingest", sys.argv[1:], [target], input_path=input_path)
    click.echo(json.dumps({
        "days": len(raw),
        "start": raw.dates[0].isoformat(),
        "end": raw.dates[-1].isoformat(),
        "validated": str(target),
    }))


def _compute_series(input_path, config_path, date_from, date_to):
    cfg, cfg_path = _load_config(config_path)
    matrix = _clip_series(_load_matrix(input_path), date_from, date_to)
    return matrix, run_series(matrix, cfg), cfg, cfg_path


@main.command()
@input_option
@config_option
@_add_options(range_options)
@outdir_option
@format_option
@_guarded
def compute(input_path, config_path, date_from, date_to, out_dir, fmt):
    """Transform a raw series and score every evaluable day."""
    matrix, series, cfg, cfg_path = _compute_series(
        input_path, config_path, date_from, date_to)
    out = _out_dir(out_dir)
    matrix_path = out / "criteria.csv"
    matrix.to_csv(matrix_path)
    outputs = [matrix_path]
    if fmt == "json":
        series_path = out / "indicator.json"
        with open(series_path, "w", encoding="utf-8") as fh:
            json.dump(series.to_dicts(), fh, indent=2)
            fh.write("\n")
    else:
        series_path = out / "indicator.csv"
        series.to_csv(series_path)
    outputs.append(series_path)
    write_manifest(out, "compute", sys.argv[1:], outputs,
                   input_path=input_path, config_path=cfg_path)
    click.echo(json.dumps({
        "days": len(series),
        "indicator": str(series_path),
        "criteria": str(matrix_path),
        "max_overall": float(series.overall.max()),
        "last_state": series.states[-1],
    }))


@main.command()
@input_option
@config_option
@_add_options(range_options)
@outdir_option
@_guarded
def contributions(input_path, config_path, date_from, date_to, out_dir):
    """Emit per-criterion weighted contributions for every day."""
    _, series, _, cfg_path = _compute_series(
        input_path, config_path, date_from, date_to)
    out = _out_dir(out_dir)
    path = out / "contributions.csv"
    series.to_csv(path)
    write_manifest(out, "contributions", sys.argv[1:], [path],
                   input_path=input_path, config_path=cfg_path)
    click.echo(json.dumps({"days": len(series), "contributions": str(path)}))


@main.command("classify")
@click.option("--value", type=float, required=True, help="indicator value to classify")
@click.option("--previous", default=None, help="previous state label (hysteresis)")
@config_option
@_guarded
def classify_cmd(value, previous, config_path):
    """Map an indicator value to its chromatic state."""
    cfg, _ = _load_config(config_path)
    state = classify_value(value, cfg.state_scale, previous)
    click.echo(json.dumps({
        "value": value,
        "state": state,
        "color": cfg.state_scale.color(state),
    }))


@main.group()
def sensitivity():
    """Robustness analyses over an input series."""


@sensitivity.command("envelope")
@input_option
@config_option
@click.option("--delta-perf", type=float, default=0.10, show_default=True)
@click.option("--delta-value", type=float, default=0.10, show_default=True)
@click.option("--delta-weight", type=float, default=0.10, show_default=True)
@_add_options(range_options)
@outdir_option
@_guarded
def envelope_cmd(input_path, config_path, delta_perf, delta_value, delta_weight,
                 date_from, date_to, out_dir):
    """Exact per-day min/max envelope over the weight polyhedron."""
    cfg, cfg_path = _load_config(config_path)
    matrix = _clip_series(_load_matrix(input_path), date_from, date_to)
    spec = PerturbationSpec(perf_delta=delta_perf, value_delta=delta_value,
                            weight_delta=delta_weight)
    env = envelope_from_matrix(matrix, cfg, spec)
    out = _out_dir(out_dir)
    path = out / "envelope.csv"
    env.to_csv(path)
    write_manifest(out, "sensitivity-envelope", sys.argv[1:], [path],
                   input_path=input_path, config_path=cfg_path)
    click.echo(json.dumps({
        "days": len(env.dates),
        "envelope": str(path),
        "mean_spread": env.mean_spread,
        "sd_spread": env.sd_spread,
    }))


@sensitivity.command("simulate")
@input_option
@config_option
@click.option("--samples", type=int, default=10_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--delta-weight", type=float, default=0.10, show_default=True)
@click.option("--mode", type=click.Choice([MODE_FULL_SIMPLEX, MODE_AROUND_NOMINAL]),
              default=MODE_FULL_SIMPLEX, show_default=True)
@_add_options(range_options)
@outdir_option
@_guarded
def simulate_cmd(input_path, config_path, samples, seed, delta_weight, mode,
                 date_from, date_to, out_dir):
    """Monte-Carlo weight simulation; deterministic for a given seed."""
    cfg, cfg_path = _load_config(config_path)
    matrix = _clip_series(_load_matrix(input_path), date_from, date_to)
    spec = PerturbationSpec(weight_delta=delta_weight, rng_seed=seed,
                            sample_count=samples)
    sim = monte_carlo_from_matrix(matrix, cfg, spec, mode)
    out = _out_dir(out_dir)
    path = out / "simulation.csv"
    sim.to_csv(path)
    write_manifest(out, "sensitivity-simulate", sys.argv[1:], [path],
                   input_path=input_path, config_path=cfg_path, seed=seed)
    click.echo(json.dumps({
        "samples": samples,
        "days": len(sim.dates),
        "simulation": str(path),
    }))


@main.command("counterfactual")
@input_option
@config_option
@click.option("--pivot-day", type=int, default=None,
              help="row index in the computed series")
@click.option("--pivot-date", default=None, help="pivot date (YYYY-MM-DD)")
@outdir_option
@_guarded
def counterfactual_cmd(input_path, config_path, pivot_day, pivot_date, out_dir):
    """No-vaccination lower bound with severity frozen at the pivot."""
    if (pivot_day is None) == (pivot_date is None):
        raise SchemaError("give exactly one of --pivot-day or --pivot-date")
    cfg, cfg_path = _load_config(config_path)
    matrix = _load_matrix(input_path)
    if pivot_date is not None:
        try:
            target = date.fromisoformat(pivot_date)
        except ValueError as exc:
            raise SchemaError(f"bad pivot date: {exc}") from None
        try:
            pivot_day = matrix.dates.index(target)
        except ValueError:
            raise SchemaError(f"{target} not in the evaluable range") from None
    spec = CounterfactualSpec(pivot_day=pivot_day)
    actual = run_series(matrix, cfg)
    cf = run_series(counterfactual_matrix(matrix, spec), cfg)
    out = _out_dir(out_dir)
    path = out / "counterfactual.csv"
    write_comparison_csv(path, actual, cf)
    write_manifest(out, "counterfactual", sys.argv[1:], [path],
                   input_path=input_path, config_path=cfg_path)
    click.echo(json.dumps({
        "pivot_day": pivot_day,
        "pivot_date": matrix.dates[pivot_day].isoformat(),
        "counterfactual": str(path),
    }))


@main.command("profiles-check")
@config_option
@format_option
@outdir_option
@_guarded
def profiles_check_cmd(config_path, fmt, out_dir):
    """Evaluate the reference profiles against their cut-off values."""
    cfg, _ = _load_config(config_path)
    rows = reference_profiles_check(cfg)
    if fmt == "json":
        click.echo(json.dumps(rows, indent=2))
        return
    out = _out_dir(out_dir)
    path = out / "profiles.csv"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("profile,expected,computed,deviation\n")
        for r in rows:
            fh.write(f"{r['profile']},{r['expected']:.10g},"
                     f"{r['computed']:.10g},{r['deviation']:.10g}\n")
    click.echo(json.dumps({
        "profiles": str(path),
        "max_abs_deviation": max(abs(r["deviation"]) for r in rows),
    }))


@main.group()
def elicit():
    """Deck-of-cards elicitation helpers."""


@elicit.command("build-scale")
@click.option("--judgements", "judgements_path", required=True,
              type=click.Path(exists=True), help="scale judgements JSON")
@click.option("--cap", type=float, default=180.0, show_default=True)
@_guarded
def build_scale_cmd(judgements_path, cap):
    """Interval scale (and capped value function) from card judgements."""
    seq, cards = deck.scale_judgements_from_dict(deck.load_json(judgements_path))
    scale = deck.build_interval_scale(seq, cards)
    fn = valuefunc.from_dcm(scale, cap, seq)
    click.echo(json.dumps({
        "scale": scale.to_dict(),
        "function": fn.to_dict(),
    }))


@elicit.command("build-weights")
@click.option("--ranking", "ranking_path", required=True,
              type=click.Path(exists=True), help="swing ranking JSON")
@_guarded
def build_weights_cmd(ranking_path):
    """Normalised criterion weights from a swing ranking."""
    ranking = deck.ranking_from_dict(deck.load_json(ranking_path))
    weights = deck.build_weights(ranking)
    click.echo(json.dumps({"weights": [float(w) for w in weights]}))


@elicit.command("check")
@click.option("--judgements", "judgements_path", required=True,
              type=click.Path(exists=True),
              help="scale judgements JSON, optionally with a `table` list")
@_guarded
def check_cmd(judgements_path):
    """Consistency report for a pairwise table."""
    doc = deck.load_json(judgements_path)
    seq, cards = deck.scale_judgements_from_dict(doc)
    table = deck.fill_pairwise_table(cards)
    entries = dict(table.entries)
    for item in doc.get("table", []):
        entries[(int(item["i"]), int(item["j"]))] = int(item["cards"])
    table = deck.PairwiseTable(size=table.size, entries=entries)
    violations = deck.check_consistency(table)
    click.echo(json.dumps({
        "consistent": not violations,
        "violations": [v.to_dict() for v in violations],
    }))


@main.command("plot")
@input_option
@config_option
@click.option("--kind", type=click.Choice(
    ["evolution", "contributions", "envelope", "counterfactual"]),
    default="evolution", show_default=True)
@click.option("--pivot-day", type=int, default=None, help="counterfactual pivot")
@click.option("--delta-perf", type=float, default=0.10, show_default=True)
@click.option("--delta-value", type=float, default=0.10, show_default=True)
@click.option("--delta-weight", type=float, default=0.10, show_default=True)
@click.option("--samples", type=int, default=400, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@_add_options(range_options)
@outdir_option
@_guarded
def plot_cmd(input_path, config_path, kind, pivot_day, delta_perf, delta_value,
             delta_weight, samples, seed, date_from, date_to, out_dir):
    """Emit an SVG figure plus the CSV it was drawn from."""
    cfg, cfg_path = _load_config(config_path)
    matrix = _clip_series(_load_matrix(input_path), date_from, date_to)
    out = _out_dir(out_dir)
    svg = out / f"{kind}.svg"
    outputs = [svg]
    if kind == "evolution":
        series = run_series(matrix, cfg)
        csv_path = out / "indicator.csv"
        series.to_csv(csv_path)
        plots.plot_evolution(series, cfg.state_scale, svg)
    elif kind == "contributions":
        series = run_series(matrix, cfg)
        csv_path = out / "contributions.csv"
        series.to_csv(csv_path)
        plots.plot_contributions(series, svg)
    elif kind == "envelope":
        spec = PerturbationSpec(perf_delta=delta_perf, value_delta=delta_value,
                                weight_delta=delta_weight, rng_seed=seed,
                                sample_count=samples)
        env = envelope_from_matrix(matrix, cfg, spec)
        sim = monte_carlo_from_matrix(matrix, cfg, spec, MODE_AROUND_NOMINAL)
        csv_path = out / "envelope.csv"
        env.to_csv(csv_path)
        plots.plot_envelope(env, svg, simulation=sim)
    else:
        if pivot_day is None:
            raise SchemaError("--pivot-day is required for the counterfactual plot")
        actual = run_series(matrix, cfg)
        cf = run_series(
            counterfactual_matrix(matrix, CounterfactualSpec(pivot_day)), cfg)
        csv_path = out / "counterfactual.csv"
        write_comparison_csv(csv_path, actual, cf)
        plots.plot_counterfactual(actual, cf, svg)
    outputs.append(csv_path)
    write_manifest(out, f"plot-{kind}", sys.argv[1:], outputs,
                   input_path=input_path, config_path=cfg_path, seed=seed)
    click.echo(json.dumps({"figure": str(svg), "data": str(csv_path)}))


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8040, show_default=True)
@click.option("--input", "input_path", default=None, type=click.Path(exists=True),
              help="raw series served at /series and /envelope")
@config_option
@click.option("--store", default=None, type=click.Path(),
              help="path where committed configs are persisted")
@_guarded
def serve_cmd(host, port, input_path, config_path, store):
    """Run the HTTP/JSON preview API for the elicitation UI."""
    import uvicorn

    from .api import create_app

    app = create_app(config_path=config_path, input_path=input_path, store_path=store)
    uvicorn.run(app, host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
