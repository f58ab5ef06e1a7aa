"""Command-line front end.

Subcommands: fit, scan-lag, scan-break, diagnose, forecast, plot, fetch.
Artifacts go to the --out directory (created if absent); inputs are never
mutated. Exit codes: 0 success, 1 data/model error, 2 usage error.

Model specs can be given as a JSON file (--spec, the canonical form, echoed
into outputs) or assembled from inline flags. All stored values are
fractions; percent shows up only in chart labels.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import diagnose as diag
from . import estimate, forecast, ingest, svg
from .errors import LfphillipsError, InputError
from .series import AnnualSeries, align


class UsageError(LfphillipsError):
    """Command invoked with missing or malformed flags (exit code 2)."""


def _parse_window(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(":")
        return int(a), int(b)
    except ValueError as exc:
        raise InputError(f"bad window {text!r}; expected Y1:Y2") from exc


def _parse_range(text: str) -> range:
    try:
        a, b = text.split(":")
        return range(int(a), int(b) + 1)
    except ValueError as exc:
        raise InputError(f"bad range {text!r}; expected A:B") from exc


def _spec_from_args(args) -> estimate.LinkSpec:
    if args.spec:
        doc = json.loads(Path(args.spec).read_text(encoding="utf-8"))
        predictors = tuple(
            estimate.Predictor(p["name"], int(p.get("lag", 0))) for p in doc["predictors"]
        )
        window = tuple(doc["window"]) if doc.get("window") else None
        spec = estimate.LinkSpec(
            response=doc["response"],
            predictors=predictors,
            estimator=doc.get("estimator", "ols"),
            break_year=doc.get("break_year"),
            shared=tuple(doc.get("shared", ())),
            window=window,
        )
    else:
        if not args.response or not args.predictor:
            raise UsageError("give --spec FILE, or --response with at least one --predictor")
        predictors = []
        for p in args.predictor:
            name, _, lag = p.partition(":")
            predictors.append(estimate.Predictor(name, int(lag) if lag else 0))
        spec = estimate.LinkSpec(
            response=args.response,
            predictors=tuple(predictors),
            estimator=args.estimator,
            break_year=args.break_year,
            shared=tuple(args.share or ()),
        )
    if args.window:
        spec = estimate.LinkSpec(
            response=spec.response,
            predictors=spec.predictors,
            estimator=spec.estimator,
            break_year=spec.break_year,
            shared=spec.shared,
            window=_parse_window(args.window),
        )
    return spec


def _spec_echo(spec: estimate.LinkSpec) -> dict:
    return {
        "response": spec.response,
        "predictors": [{"name": p.name, "lag": p.lag} for p in spec.predictors],
        "estimator": spec.estimator,
        "break_year": spec.break_year,
        "shared": list(spec.shared),
        "window": list(spec.window) if spec.window else None,
    }


def _load_data(args) -> dict[str, AnnualSeries]:
    if not args.manifest:
        raise UsageError("--manifest is required for this command")
    manifest = ingest.load_manifest(args.manifest)
    cache = Path(args.cache_dir) if args.cache_dir else None
    return ingest.load_all(manifest, cache=cache)


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _fit_document(result: estimate.FitResult) -> dict:
    return {
        "spec": _spec_echo(result.spec),
        "window": list(result.window),
        "segments": [
            {
                "first_year": seg.first_year,
                "last_year": seg.last_year,
                "intercept": seg.intercept,
                "slopes": seg.slopes,
            }
            for seg in result.segments
        ],
        "coefficients": result.coefficient_table(),
        "stderr": result.stderr,
        "pvalues": result.pvalues,
        "r2_annual": result.r2_annual,
        "r2_cumulative": result.r2_cumulative,
        "sigma": result.sigma,
        "sse_annual": result.sse_annual,
        "sse_cumulative": result.sse_cumulative,
    }


def _write_json(path: Path, doc) -> None:
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def cmd_fit(args) -> int:
    data = _load_data(args)
    spec = _spec_from_args(args)
    result = estimate.fit(spec, data)
    out = _out_dir(args)
    _write_json(out / "fit.json", _fit_document(result))
    ingest.write_csv_series(result.residuals, out / "residuals.csv")
    print(f"fit written to {out / 'fit.json'}")
    return 0


def cmd_scan_lag(args) -> int:
    data = _load_data(args)
    spec = _spec_from_args(args)
    results, best = estimate.scan_lag(spec, data, lag_range=_parse_range(args.lags))
    out = _out_dir(args)
    lines = ["lag,r2_annual,r2_cumulative,sse,best"]
    for lag, res in results:
        lines.append(
            f"{lag},{res.r2_annual!r},{res.r2_cumulative!r},{res.objective_sse!r},"
            f"{'*' if lag == best else ''}"
        )
    (out / "scan_lag.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"best lag: {best}")
    return 0


def cmd_scan_break(args) -> int:
    data = _load_data(args)
    spec = _spec_from_args(args)
    profile, best = estimate.scan_break(spec, data, candidate_years=_parse_range(args.years))
    out = _out_dir(args)
    lines = ["year,sse,best"]
    for year, sse in profile:
        lines.append(f"{year},{sse!r},{'*' if year == best else ''}")
    (out / "scan_break.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"best break year: {best}")
    return 0


def cmd_diagnose(args) -> int:
    data = _load_data(args)
    spec = _spec_from_args(args)
    result = estimate.fit(spec, data)
    adf = diag.adf_test(result.residuals, lag_order=args.adf_lags)
    out = _out_dir(args)
    doc = _fit_document(result)
    doc["adf"] = {
        "statistic": adf.statistic,
        "lag_order": adf.lag_order,
        "n_obs": adf.n_obs,
        "critical_values": {str(k): v for k, v in adf.critical_values.items()},
        "rejects_unit_root": {str(k): v for k, v in adf.rejects.items()},
    }
    _write_json(out / "diagnose.json", doc)
    print(f"ADF statistic {adf.statistic:.3f}; "
          f"unit root rejected at 5%: {adf.rejects_unit_root(0.05)}")
    return 0


def cmd_forecast(args) -> int:
    scenario = forecast.load_scenario(args.scenario)
    models = []
    for name in args.models.split(","):
        name = name.strip()
        if name not in forecast.MODEL_REGISTRY:
            raise InputError(
                f"unknown model {name!r}; registry has {sorted(forecast.MODEL_REGISTRY)}"
            )
        models.append(forecast.MODEL_REGISTRY[name])
    report = forecast.forecast_report(models, scenario)
    out = _out_dir(args)
    formats = set((args.format or "csv,json").split(","))
    if "csv" in formats:
        (out / "report.csv").write_text(forecast.report_to_csv(report), encoding="utf-8")
    if "json" in formats:
        (out / "report.json").write_text(forecast.report_to_json(report), encoding="utf-8")
    if "svg" in formats:
        paths = list(report.all_paths().values())
        if paths:
            style = svg.ChartStyle(title="forecast", y_label="rate", percent_axis=True)
            # inflation and unemployment carry different unit tags; chart each group
            for group, tag in (
                (list(report.inflation.items()), "inflation"),
                (list(report.unemployment.items()), "unemployment"),
            ):
                if group:
                    doc = svg.line_chart([s.relabel(k) for k, s in group], style=style)
                    (out / f"forecast_{tag}.svg").write_text(doc, encoding="utf-8")
    (out / "scenario.csv").write_text(forecast.scenario_to_csv(scenario), encoding="utf-8")
    print(f"forecast written to {out}")
    return 0


def cmd_plot(args) -> int:
    data = _load_data(args)
    names = [n.strip() for n in args.series.split(",")]
    missing = [n for n in names if n not in data]
    if missing:
        raise InputError(f"series not in manifest: {missing}")
    chosen = [data[n] for n in names]
    if args.window:
        w = _parse_window(args.window)
        chosen = [s.window(max(w[0], s.start_year), min(w[1], s.end_year)) for s in chosen]
    style = svg.ChartStyle(title=args.title or ",".join(names), percent_axis=True)
    regression = None
    if args.mode == "scatter" and args.regression:
        xs, ys, _ = align(chosen[0], chosen[1])
        X = np.column_stack([np.ones(len(xs)), xs])
        beta, *_ = np.linalg.lstsq(X, np.asarray(ys), rcond=None)
        regression = (float(beta[0]), float(beta[1]))
    doc = svg.line_chart(chosen, style=style, scatter=args.mode == "scatter",
                         regression=regression)
    out = _out_dir(args)
    target = out / (args.name or "chart.svg")
    target.write_text(doc, encoding="utf-8")
    print(f"chart written to {target}")
    return 0


def cmd_fetch(args) -> int:
    if not args.manifest:
        raise UsageError("--manifest is required for this command")
    manifest = ingest.load_manifest(args.manifest)
    cache = Path(args.cache_dir) if args.cache_dir else None
    names = [n.strip() for n in args.series.split(",")] if args.series else manifest.names()
    fetched = 0
    for name in names:
        entry = manifest.entries.get(name)
        if entry is None:
            raise InputError(f"series {name!r} not in manifest")
        if entry.remote is None:
            continue
        ingest.fetch_remote(entry.remote, entry.kind, entry.units, label=name,
                            cache=cache, timeout=args.timeout, force=args.force)
        fetched += 1
    print(f"fetched {fetched} remote series")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lfphillips",
        description="Labor-force-driven Phillips curve estimation and forecasting",
    )
    parser.add_argument("--manifest", help="dataset manifest JSON")
    parser.add_argument("--out", default="out", help="output directory (default: out)")
    parser.add_argument("--format", help="comma-separated output formats: csv,json,svg")
    parser.add_argument("--window", help="restrict to years Y1:Y2")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for any synthetic generation")
    parser.add_argument("--cache-dir", help="override the remote-fetch cache directory")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_spec_flags(p):
        p.add_argument("--spec", help="model spec JSON file (canonical form)")
        p.add_argument("--response", help="response series name")
        p.add_argument("--predictor", action="append",
                       help="predictor as name or name:lag (repeatable)")
        p.add_argument("--estimator", choices=["ols", "cumulative"], default="ols")
        p.add_argument("--break-year", type=int, dest="break_year")
        p.add_argument("--share", action="append",
                       help="coefficient shared across break segments (repeatable)")

    p_fit = sub.add_parser("fit", help="fit one lagged linear link")
    add_spec_flags(p_fit)
    p_fit.set_defaults(func=cmd_fit)

    p_lag = sub.add_parser("scan-lag", help="exhaustive lag scan")
    add_spec_flags(p_lag)
    p_lag.add_argument("--lags", default="-5:5", help="lag range A:B (default -5:5)")
    p_lag.set_defaults(func=cmd_scan_lag)

    p_brk = sub.add_parser("scan-break", help="exhaustive break-year scan")
    add_spec_flags(p_brk)
    p_brk.add_argument("--years", required=True, help="candidate break years A:B")
    p_brk.set_defaults(func=cmd_scan_break)

    p_diag = sub.add_parser("diagnose", help="fit plus residual diagnostics")
    add_spec_flags(p_diag)
    p_diag.add_argument("--adf-lags", type=int, default=0)
    p_diag.set_defaults(func=cmd_diagnose)

    p_fc = sub.add_parser("forecast", help="propagate a labor-force scenario")
    p_fc.add_argument("--scenario", required=True, help="scenario JSON file")
    p_fc.add_argument("--models", default="eq8,eq9",
                      help="comma-separated registry model ids (default eq8,eq9)")
    p_fc.set_defaults(func=cmd_forecast)

    p_plot = sub.add_parser("plot", help="chart manifest series as SVG")
    p_plot.add_argument("--series", required=True, help="comma-separated series names")
    p_plot.add_argument("--mode", choices=["line", "scatter"], default="line")
    p_plot.add_argument("--regression", action="store_true",
                        help="overlay an OLS line in scatter mode")
    p_plot.add_argument("--title", help="chart title")
    p_plot.add_argument("--name", help="output file name (default chart.svg)")
    p_plot.set_defaults(func=cmd_plot)

    p_fetch = sub.add_parser("fetch", help="warm the cache for remote manifest entries")
    p_fetch.add_argument("--series", help="comma-separated names (default: all remote)")
    p_fetch.add_argument("--force", action="store_true", help="refetch even on a warm cache")
    p_fetch.add_argument("--timeout", type=float, default=30.0, help="HTTP timeout seconds")
    p_fetch.set_defaults(func=cmd_fetch)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    except LfphillipsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
