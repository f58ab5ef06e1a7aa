"""Labor-force scenarios and long-horizon inflation/unemployment paths.

The registry freezes the printed Japan models as constants, kept separate
from anything refitted on data, so "reproduce the published numbers" and
"refit on current data" stay distinguishable. The causal chain runs one way:
labor force drives inflation and unemployment, with no feedback.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .errors import InputError
from .series import AnnualSeries, log_growth


@dataclass(frozen=True)
class Scenario:
    """A labor-force projection and the horizon to forecast over."""

    labor_force: AnnualSeries
    growth: AnnualSeries
    horizon: tuple[int, int]


def build_scenario(
    labor_force: AnnualSeries | None = None,
    horizon: tuple[int, int] | None = None,
    population: AnnualSeries | None = None,
    participation: float | None = None,
) -> Scenario:
    """Build a scenario from a direct LF path or population x participation.

    The path must cover the horizon plus the preceding year, since growth at
    the first horizon year is a backward log-difference.
    """
    if horizon is None or horizon[0] > horizon[1]:
        raise InputError(f"bad horizon {horizon}")
    if labor_force is None:
        if population is None or participation is None:
            raise InputError("provide labor_force, or population with a participation rate")
        from .ingest import participation_labor_force

        labor_force = participation_labor_force(population, participation)
    elif population is not None:
        raise InputError("give either labor_force or population, not both")
    if labor_force.start_year > horizon[0] - 1 or labor_force.end_year < horizon[1]:
        raise InputError(
            f"labor-force path {labor_force.start_year}..{labor_force.end_year} must cover "
            f"{horizon[0] - 1}..{horizon[1]}"
        )
    growth = log_growth(labor_force)
    return Scenario(labor_force=labor_force, growth=growth, horizon=horizon)


@dataclass(frozen=True)
class ModelRegistryEntry:
    """One frozen published model, segment coefficients keyed by year range.

    ``segments`` maps (first_year, last_year) -> {"intercept", "l", "u", "pi"}
    coefficient dicts; open ends use None.
    """

    identifier: str
    response: str  # "cpi-inflation" | "dgdp-inflation" | "unemployment"
    segments: tuple[tuple[tuple[int | None, int | None], dict[str, float]], ...]
    break_year: int | None = None
    needs_unemployment: bool = False

    def coefficients_for(self, year: int) -> dict[str, float]:
        for (first, last), coeff in self.segments:
            if (first is None or year >= first) and (last is None or year <= last):
                return coeff
        raise InputError(f"model {self.identifier} has no segment for year {year}")


# Printed Japan models, fractions throughout.
MODEL_REGISTRY: dict[str, ModelRegistryEntry] = {
    # unemployment on contemporaneous CPI inflation, post-1981
    "eq6": ModelRegistryEntry(
        identifier="eq6",
        response="unemployment",
        segments=((((None, None)), {"intercept": 0.044, "pi": -1.10}),),
        needs_unemployment=False,
    ),
    # CPI inflation on labor-force growth, zero lag
    "eq7": ModelRegistryEntry(
        identifier="eq7",
        response="cpi-inflation",
        segments=((((None, None)), {"intercept": 0.0007, "l": 1.31}),),
    ),
    # GDP-deflator inflation on labor-force growth, zero lag
    "eq8": ModelRegistryEntry(
        identifier="eq8",
        response="dgdp-inflation",
        segments=((((None, None)), {"intercept": -0.0084, "l": 1.90}),),
    ),
    # unemployment on labor-force growth with the 1977 break, shared intercept
    "eq9": ModelRegistryEntry(
        identifier="eq9",
        response="unemployment",
        segments=(
            ((None, 1976), {"intercept": 0.0432, "l": -0.179}),
            ((1977, None), {"intercept": 0.0432, "l": -1.556}),
        ),
        break_year=1977,
    ),
    # generalized inflation model on growth and unemployment, 1982 break
    "eq10": ModelRegistryEntry(
        identifier="eq10",
        response="dgdp-inflation",
        segments=(
            ((None, 1981), {"intercept": 0.161, "l": -10.0, "u": 0.9}),
            ((1982, None), {"intercept": -0.0392, "l": 2.80, "u": 0.9}),
        ),
        break_year=1982,
        needs_unemployment=True,
    ),
}


def _evaluate(model: ModelRegistryEntry, scenario: Scenario,
              unemployment: AnnualSeries | None) -> AnnualSeries:
    first, last = scenario.horizon
    values = []
    for year in range(first, last + 1):
        coeff = model.coefficients_for(year)
        total = coeff.get("intercept", 0.0)
        if "l" in coeff:
            total += coeff["l"] * scenario.growth.value(year)
        if "u" in coeff:
            if unemployment is None:
                raise InputError(
                    f"model {model.identifier} needs a companion unemployment path"
                )
            total += coeff["u"] * unemployment.value(year)
        if "pi" in coeff:
            raise InputError(
                f"model {model.identifier} is inflation-driven; it cannot run from a "
                "labor-force scenario alone"
            )
        values.append(total)
    units = "fraction" if model.response == "unemployment" else "fraction-per-year"
    return AnnualSeries(first, tuple(values), label=model.identifier, units=units)


def forecast_unemployment(model: ModelRegistryEntry, scenario: Scenario) -> AnnualSeries:
    """Unemployment path from scenario growth; segments selected by calendar year."""
    if model.response != "unemployment":
        raise InputError(f"model {model.identifier} does not predict unemployment")
    return _evaluate(model, scenario, unemployment=None)


def forecast_inflation(
    model: ModelRegistryEntry,
    scenario: Scenario,
    unemployment: AnnualSeries | None = None,
) -> AnnualSeries:
    """Inflation path from scenario growth (plus an unemployment path for eq10-style models)."""
    if model.response == "unemployment":
        raise InputError(f"model {model.identifier} predicts unemployment, not inflation")
    if model.needs_unemployment and unemployment is None:
        raise InputError(f"model {model.identifier} needs a companion unemployment path")
    return _evaluate(model, scenario, unemployment=unemployment)


@dataclass(frozen=True)
class ForecastResult:
    scenario: Scenario
    inflation: dict[str, AnnualSeries]
    unemployment: dict[str, AnnualSeries]

    def all_paths(self) -> dict[str, AnnualSeries]:
        out = {f"inflation[{k}]": v for k, v in self.inflation.items()}
        out.update({f"unemployment[{k}]": v for k, v in self.unemployment.items()})
        return out


def forecast_report(
    models: Sequence[ModelRegistryEntry],
    scenario: Scenario,
) -> ForecastResult:
    """Run every model against the scenario and bundle the paths.

    Unemployment models run first so that generalized inflation models can
    consume the resulting path; with several unemployment models the first
    one listed feeds the inflation side.
    """
    if not models:
        raise InputError("no models given")
    unemployment: dict[str, AnnualSeries] = {}
    for m in models:
        if m.response == "unemployment":
            unemployment[m.identifier] = forecast_unemployment(m, scenario)
    companion = next(iter(unemployment.values()), None)
    inflation: dict[str, AnnualSeries] = {}
    for m in models:
        if m.response != "unemployment":
            inflation[m.identifier] = forecast_inflation(m, scenario, unemployment=companion)
    return ForecastResult(scenario=scenario, inflation=inflation, unemployment=unemployment)


def report_to_csv(report: ForecastResult) -> str:
    """One row per horizon year; columns are the model paths, fractions."""
    paths = report.all_paths()
    names = sorted(paths)
    lines = ["year," + ",".join(names)]
    first, last = report.scenario.horizon
    for year in range(first, last + 1):
        row = [str(year)] + [repr(paths[n].value(year)) for n in names]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def report_to_json(report: ForecastResult) -> str:
    paths = report.all_paths()
    doc = {
        "horizon": list(report.scenario.horizon),
        "labor_force": {
            "start_year": report.scenario.labor_force.start_year,
            "values": list(report.scenario.labor_force.values),
        },
        "paths": {
            name: {"start_year": s.start_year, "units": s.units, "values": list(s.values)}
            for name, s in sorted(paths.items())
        },
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def scenario_to_csv(scenario: Scenario) -> str:
    lines = ["year,labor_force,growth"]
    for year in scenario.labor_force.years:
        g = ""
        if scenario.growth.start_year <= year <= scenario.growth.end_year:
            g = repr(scenario.growth.value(year))
        lines.append(f"{year},{scenario.labor_force.value(year)!r},{g}")
    return "\n".join(lines) + "\n"


def load_scenario(path) -> Scenario:
    """Read a scenario description from JSON.

    Schema: {"horizon": [y1, y2], "labor_force_csv": "...", "units": "..."} or
    {"horizon": ..., "population_csv": "...", "units": ..., "participation": r} or
    {"horizon": ..., "linear": {"start_year": y, "end_year": y, "start": v, "end": v}}.
    """
    from .ingest import read_csv_series

    p = Path(path)
    try:
        doc = json.loads(p.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read scenario {p}: {exc}") from exc
    horizon = doc.get("horizon")
    if not (isinstance(horizon, list) and len(horizon) == 2):
        raise InputError("scenario needs a two-element 'horizon'")
    horizon = (int(horizon[0]), int(horizon[1]))
    units = doc.get("units", "persons")
    if "labor_force_csv" in doc:
        lf = read_csv_series(_resolve(p, doc["labor_force_csv"]), "labor-force", units,
                             label="labor force")
        return build_scenario(labor_force=lf, horizon=horizon)
    if "population_csv" in doc:
        pop = read_csv_series(_resolve(p, doc["population_csv"]), "population", units,
                              label="population")
        return build_scenario(population=pop, participation=float(doc["participation"]),
                              horizon=horizon)
    if "linear" in doc:
        lin = doc["linear"]
        y0, y1 = int(lin["start_year"]), int(lin["end_year"])
        v0, v1 = float(lin["start"]), float(lin["end"])
        if y1 <= y0:
            raise InputError("linear path needs end_year > start_year")
        n = y1 - y0
        values = tuple(v0 + (v1 - v0) * i / n for i in range(n + 1))
        lf = AnnualSeries(y0, values, label="labor force", units="persons")
        return build_scenario(labor_force=lf, horizon=horizon)
    raise InputError("scenario needs 'labor_force_csv', 'population_csv', or 'linear'")


def _resolve(manifest_path: Path, rel: str) -> Path:
    q = Path(rel)
    return q if q.is_absolute() else manifest_path.parent / q
