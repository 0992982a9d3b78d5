"""Scenario configuration: defaults, JSON schema, catalog resolution.

A scenario file is one JSON document; any omitted key falls back to the
default experiment (two 0.02 mm antennas 0.1 mm apart in a 20 x 1 mm
package, humid-air medium, 296 K, 1 atm, 100 GHz band around 1 THz split
64 ways, 1 uW budget). The catalog path resolves in order: explicit
argument, THZ_CATALOG environment variable, bundled sample catalog.
"""

from __future__ import annotations

import json
import os
from importlib import resources

from .absorption import Environment
from .capacity import BandPlan
from .errors import ConfigError
from .propagation import LinkGeometry
from .spectro import SpectralLine, load_medium, parse_line_catalog
from .sweep import Scenario

CATALOG_ENV_VAR = "THZ_CATALOG"
BUNDLED_CATALOG = "thz_lines.par"

DEFAULT_SCENARIO = {
    "geometry": {
        "d": 1.0e-4,
        "h_t": 2.0e-5,
        "h_r": 2.0e-5,
        "g_t": 1.0,
        "g_r": 1.0,
        "d_c": 0.02,
        "h": 1.0e-3,
    },
    "environment": {
        "t_s": 296.0,
        "p": 1.0,
    },
    "medium": {
        "epsilon_r": 1.0,
        "composition": [
            {"gas_id": 1, "iso_id": 1, "q": 0.25},
            {"gas_id": 7, "iso_id": 1, "q": 0.21},
        ],
    },
    "band": {
        "center": 1.0e12,
        "bandwidth": 1.0e11,
        "subbands": 64,
    },
    "p_t": 1.0e-6,
    "baseline": False,
}


def read_bundled_catalog() -> str:
    return (resources.files("thzlink") / "data" / BUNDLED_CATALOG).read_text()


def read_catalog(path: str | None = None) -> str:
    """Catalog text from the explicit path, $THZ_CATALOG, or the bundle."""
    if path is None:
        path = os.environ.get(CATALOG_ENV_VAR) or None
    if path is None:
        return read_bundled_catalog()
    try:
        with open(path, encoding="ascii") as handle:
            return handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read catalog {path!r}: {exc}") from exc


def read_scenario_doc(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read scenario {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"scenario {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"scenario {path!r} must hold a JSON object")
    return doc


def _merged(doc: dict) -> dict:
    known = set(DEFAULT_SCENARIO)
    unknown = set(doc) - known
    if unknown:
        raise ConfigError(
            f"unknown scenario keys {sorted(unknown)}; expected a subset "
            f"of {sorted(known)}")
    merged = {}
    for key, default in DEFAULT_SCENARIO.items():
        value = doc.get(key, default)
        if isinstance(default, dict) and key != "medium":
            extra = set(value) - set(default)
            if extra:
                raise ConfigError(
                    f"unknown keys {sorted(extra)} in scenario section "
                    f"{key!r}")
            merged[key] = {**default, **value}
        else:
            merged[key] = value
    return merged


def build_scenario(doc: dict, catalog: list[SpectralLine]) -> Scenario:
    """Assemble a Scenario from a (possibly partial) config document."""
    merged = _merged(doc)
    medium = load_medium(merged["medium"], catalog)
    geometry = merged["geometry"]
    band = merged["band"]
    return Scenario(
        geom=LinkGeometry(**geometry),
        medium=medium,
        env=Environment(**merged["environment"]),
        band=BandPlan.centered(float(band["center"]),
                               float(band["bandwidth"]),
                               int(band["subbands"])),
        p_t=float(merged["p_t"]),
        baseline=bool(merged["baseline"]),
    )


def scenario_species(doc: dict) -> set[tuple[int, int]]:
    """Species the scenario needs from the catalog (parse-time filter)."""
    merged = _merged(doc)
    return {(int(entry["gas_id"]), int(entry["iso_id"]))
            for entry in merged["medium"].get("composition", [])
            if isinstance(entry, dict) and {"gas_id", "iso_id"} <= set(entry)}


def load_scenario(scenario_path: str | None = None,
                  catalog_path: str | None = None) -> Scenario:
    """Fail-fast loader: read and parse everything before computing."""
    doc = read_scenario_doc(scenario_path)
    raw = read_catalog(catalog_path)
    catalog = parse_line_catalog(raw, scenario_species(doc))
    return build_scenario(doc, catalog)


__all__ = [
    "CATALOG_ENV_VAR", "DEFAULT_SCENARIO", "read_bundled_catalog",
    "read_catalog", "read_scenario_doc", "build_scenario",
    "scenario_species", "load_scenario",
]
