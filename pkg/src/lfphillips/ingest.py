"""Loading series from CSV files, JSON manifests, and cached HTTP endpoints.

On-disk format is a two-column CSV with header ``year,value`` and strictly
consecutive years. A manifest is a JSON file mapping series names to a local
path or remote descriptor plus a kind and units declaration; units are never
sniffed from the data. Remote fetches are cache-first: the raw payload is
written verbatim to the cache directory on first fetch and all later loads
are offline.
"""

from __future__ import annotations

import io
import json
import os
import urllib.error
import urllib.request
from dataclasses import dataclass
from pathlib import Path

from .errors import InputError, ParseError, RetrievalError
from .series import AnnualSeries

CACHE_DIR_ENV = "LFPHILLIPS_CACHE_DIR"
DEFAULT_CACHE_DIR = Path.home() / ".cache" / "lfphillips"

KINDS = ("cpi-inflation", "dgdp-inflation", "unemployment", "labor-force", "population")
SOURCE_UNITS = ("fraction", "percent", "persons", "thousands")

# internal units tag per series kind
_KIND_UNITS = {
    "cpi-inflation": "fraction-per-year",
    "dgdp-inflation": "fraction-per-year",
    "unemployment": "fraction",
    "labor-force": "persons",
    "population": "persons",
}

# multiplier applied to raw values on load
_UNIT_SCALE = {
    "fraction": 1.0,
    "percent": 0.01,
    "persons": 1.0,
    "thousands": 1000.0,
}


@dataclass(frozen=True)
class RemoteDescriptor:
    """Location of a series on an agency-style HTTP endpoint.

    The payload at ``{base_url}/{dataset}/{key}.csv`` must be the same
    ``year,value`` CSV used on disk. ``cache_path`` overrides the derived
    cache location when set.
    """

    base_url: str
    dataset: str
    key: str
    cache_path: str | None = None

    @property
    def url(self) -> str:
        return f"{self.base_url.rstrip('/')}/{self.dataset}/{self.key}.csv"

    def cache_file(self, cache_dir: Path) -> Path:
        if self.cache_path:
            return Path(self.cache_path)
        return cache_dir / f"{self.dataset}__{self.key}.csv"


@dataclass(frozen=True)
class ManifestEntry:
    name: str
    kind: str
    units: str
    path: str | None = None
    remote: RemoteDescriptor | None = None


@dataclass(frozen=True)
class DatasetManifest:
    entries: dict[str, ManifestEntry]
    base_dir: Path

    def names(self) -> list[str]:
        return sorted(self.entries)


def read_csv_series(source, kind: str, units: str, label: str = "") -> AnnualSeries:
    """Parse a ``year,value`` CSV into an AnnualSeries in internal units.

    ``source`` is a path, a file object, or the CSV text itself.
    """
    if kind not in KINDS:
        raise InputError(f"unknown series kind {kind!r}")
    if units not in SOURCE_UNITS:
        raise InputError(f"unknown units {units!r}")
    text = _read_text(source)
    lines = text.replace("\r\n", "\n").strip("\n").split("\n")
    if not lines or lines[0].strip().lower() != "year,value":
        raise InputError("row 1: expected header 'year,value'")
    scale = _UNIT_SCALE[units]
    years: list[int] = []
    values: list[float] = []
    for rownum, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise InputError(f"row {rownum}: expected 'year,value', got {line!r}")
        try:
            year = int(parts[0].strip())
            value = float(parts[1].strip())
        except ValueError as exc:
            raise InputError(f"row {rownum}: unparsable row {line!r}") from exc
        if years:
            if year == years[-1]:
                raise InputError(f"row {rownum}: duplicate year {year}")
            if year != years[-1] + 1:
                raise InputError(f"row {rownum}: gap in years, missing year {years[-1] + 1}")
        years.append(year)
        values.append(value * scale)
    if not years:
        raise InputError("no data rows")
    return AnnualSeries(years[0], tuple(values), label=label, units=_KIND_UNITS[kind])


def _read_text(source) -> str:
    if isinstance(source, (str, Path)) and "\n" not in str(source):
        return Path(source).read_text(encoding="utf-8")
    if isinstance(source, str):
        return source
    if isinstance(source, io.IOBase) or hasattr(source, "read"):
        data = source.read()
        return data.decode("utf-8") if isinstance(data, bytes) else data
    raise InputError(f"unsupported source {type(source).__name__}")


def cache_dir() -> Path:
    override = os.environ.get(CACHE_DIR_ENV)
    return Path(override) if override else DEFAULT_CACHE_DIR


def fetch_remote(
    desc: RemoteDescriptor,
    kind: str,
    units: str,
    label: str = "",
    cache: Path | None = None,
    timeout: float = 30.0,
    force: bool = False,
) -> AnnualSeries:
    """Load a remote series, hitting the network only on a cold cache.

    The raw payload is cached verbatim so repeat loads are reproducible and
    offline-safe. ``force=True`` refreshes the cache from the network.
    """
    payload = fetch_payload(desc, cache=cache, timeout=timeout, force=force)
    try:
        return read_csv_series(payload, kind, units, label=label)
    except InputError as exc:
        raise ParseError(f"malformed payload from {desc.url}: {exc}") from exc


def fetch_payload(
    desc: RemoteDescriptor,
    cache: Path | None = None,
    timeout: float = 30.0,
    force: bool = False,
) -> str:
    target = desc.cache_file(cache if cache is not None else cache_dir())
    if target.exists() and not force:
        return target.read_text(encoding="utf-8")
    try:
        with urllib.request.urlopen(desc.url, timeout=timeout) as resp:
            payload = resp.read().decode("utf-8")
    except (urllib.error.URLError, OSError) as exc:
        if target.exists():
            return target.read_text(encoding="utf-8")
        raise RetrievalError(f"fetch of {desc.url} failed and no cache present: {exc}") from exc
    target.parent.mkdir(parents=True, exist_ok=True)
    tmp = target.with_suffix(target.suffix + ".tmp")
    tmp.write_text(payload, encoding="utf-8")
    os.replace(tmp, target)  # atomic: concurrent fetchers of one key converge
    return payload


def load_manifest(path) -> DatasetManifest:
    """Parse a manifest JSON file; relative series paths resolve against it."""
    p = Path(path)
    try:
        doc = json.loads(p.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read manifest {p}: {exc}") from exc
    series = doc.get("series")
    if not isinstance(series, dict) or not series:
        raise InputError(f"manifest {p} has no 'series' table")
    entries: dict[str, ManifestEntry] = {}
    for name, raw in series.items():
        kind = raw.get("kind")
        units = raw.get("units")
        if kind not in KINDS:
            raise InputError(f"series {name!r}: unknown kind {kind!r}")
        if units not in SOURCE_UNITS:
            raise InputError(f"series {name!r}: unknown units {units!r}")
        if "path" in raw:
            entries[name] = ManifestEntry(name=name, kind=kind, units=units, path=raw["path"])
        elif "remote" in raw:
            r = raw["remote"]
            try:
                desc = RemoteDescriptor(
                    base_url=r["base_url"],
                    dataset=r["dataset"],
                    key=r["key"],
                    cache_path=r.get("cache"),
                )
            except (KeyError, TypeError) as exc:
                raise InputError(f"series {name!r}: bad remote descriptor") from exc
            entries[name] = ManifestEntry(name=name, kind=kind, units=units, remote=desc)
        else:
            raise InputError(f"series {name!r}: needs 'path' or 'remote'")
    return DatasetManifest(entries=entries, base_dir=p.parent)


def load_series(manifest: DatasetManifest, name: str, cache: Path | None = None) -> AnnualSeries:
    entry = manifest.entries.get(name)
    if entry is None:
        raise InputError(f"series {name!r} not in manifest (have {manifest.names()})")
    if entry.path is not None:
        path = Path(entry.path)
        if not path.is_absolute():
            path = manifest.base_dir / path
        return read_csv_series(path, entry.kind, entry.units, label=name)
    assert entry.remote is not None
    return fetch_remote(entry.remote, entry.kind, entry.units, label=name, cache=cache)


def load_all(
    manifest: DatasetManifest,
    cache: Path | None = None,
    derive_growth: bool = True,
) -> dict[str, AnnualSeries]:
    """Load every manifest series; labor-force entries also get a derived
    ``<name>_growth`` series (annual log-difference) for use as a predictor."""
    from .series import log_growth

    data = {name: load_series(manifest, name, cache=cache) for name in manifest.names()}
    if derive_growth:
        for name, entry in manifest.entries.items():
            if entry.kind == "labor-force" and len(data[name]) >= 2:
                data[f"{name}_growth"] = log_growth(data[name]).relabel(f"{name}_growth")
    return data


def participation_labor_force(population: AnnualSeries, rate: float) -> AnnualSeries:
    """Labor force implied by a total-population path under a fixed participation rate."""
    if not 0.0 <= rate <= 1.0:
        raise InputError(f"participation rate {rate} outside [0, 1]")
    if population.units != "persons":
        raise InputError(f"expected persons-level population, got units {population.units!r}")
    return AnnualSeries(
        population.start_year,
        tuple(rate * v for v in population.values),
        label=f"{population.label} x {rate}" if population.label else "labor force",
        units="persons",
    )


def write_csv_series(s: AnnualSeries, path, percent: bool = False) -> None:
    """Write back in the on-disk CSV format (repr round-trips floats exactly)."""
    scale = 100.0 if percent else 1.0
    lines = ["year,value"]
    for year, value in zip(s.years, s.values):
        lines.append(f"{year},{value * scale!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
