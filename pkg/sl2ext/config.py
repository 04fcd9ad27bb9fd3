"""Configuration loading helpers for sl2ext."""

from __future__ import annotations

import copy
import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Mapping, Tuple

try:  # pragma: no cover - exercised at runtime
    import yaml  # type: ignore
except ImportError:  # pragma: no cover - optional dependency in dev env
    yaml = None  # type: ignore

CONFIG_FILE_NAMES = ("sl2ext.config.yml", "sl2ext.config.yaml")
PROJECT_MARKERS = (".git", "pyproject.toml", *CONFIG_FILE_NAMES)

logger = logging.getLogger(__name__)

DEFAULT_CONFIG: Dict[str, Any] = {
    "engine": {
        "memoize": True,
    },
    "specseq": {
        "modulus": 32003,
        "retry_budget": 25,
        "max_cell_dim": 5,
        "shape": [6, 6],
    },
    "verify": {
        "primes": [2, 3, 5, 7],
        "max_weight": 60,
        "trials": 200,
        "seed": 7,
        "pages": 6,
    },
    "table": {
        "max_cells": 10_000,
    },
    "cache": {
        "path": ".sl2ext/cache.jsonl",
    },
    "output": {
        "format": "text",
    },
}


class ConfigError(ValueError):
    """Raised for configuration values that cannot be used."""


@dataclass(slots=True)
class Sl2extConfig:
    """Effective configuration for one CLI run."""

    project_root: Path
    data: Dict[str, Any]
    config_path: Path | None = None

    def get(self, key: str, default: Any | None = None) -> Any:
        return self.data.get(key, default)

    def section(self, name: str) -> Dict[str, Any]:
        value = self.data.get(name, {})
        return value if isinstance(value, dict) else {}

    @property
    def cache_path(self) -> Path:
        raw = Path(str(self.section("cache").get("path", DEFAULT_CONFIG["cache"]["path"])))
        return raw if raw.is_absolute() else self.project_root / raw


def get_config(
    project_root: Path | None = None,
    cli_overrides: Mapping[str, Any] | None = None,
    config_path: str | Path | None = None,
) -> Sl2extConfig:
    """Return the effective configuration: defaults, file, environment, CLI flags."""
    root = project_root or _discover_project_root(Path.cwd())
    file_layer, config_file = _file_layer(root, config_path)
    layers = (
        ("file", file_layer),
        ("environment", _environment_layer()),
        ("cli", dict(cli_overrides or {})),
    )
    data: Dict[str, Any] = copy.deepcopy(DEFAULT_CONFIG)
    for name, layer in layers:
        if layer:
            logger.debug("Applying %s configuration layer: %s", name, ", ".join(sorted(layer)))
            _merge_into(data, layer)
    return Sl2extConfig(project_root=root, data=data, config_path=config_file)


def _discover_project_root(start: Path) -> Path:
    """Nearest directory holding a project marker, else ``start`` itself."""
    here = start.resolve()
    for folder in (here, *here.parents):
        if any((folder / marker).exists() for marker in PROJECT_MARKERS):
            return folder
    return here


def _file_layer(root: Path, explicit: str | Path | None) -> Tuple[Dict[str, Any], Path | None]:
    if explicit:
        location = Path(explicit)
        location = (location if location.is_absolute() else root / location).resolve()
        if not location.is_file():
            raise FileNotFoundError(f"Configuration file not found: {location}")
        return _parse_config_file(location), location
    for name in CONFIG_FILE_NAMES:
        location = root / name
        if location.is_file():
            return _parse_config_file(location), location
    return {}, None


def _parse_config_file(location: Path) -> Dict[str, Any]:
    """YAML when PyYAML is importable, JSON otherwise; an empty file is an empty layer."""
    text = location.read_text(encoding="utf-8")
    if yaml is None:
        loader, failure = json.loads, json.JSONDecodeError
    else:
        loader, failure = yaml.safe_load, yaml.YAMLError
    try:
        data = loader(text)
    except failure as exc:
        raise ConfigError(f"Cannot parse {location}: {exc}") from exc
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"{location} must hold a mapping of sections, got {type(data).__name__}")
    return data


_ENVIRONMENT = (
    ("SL2EXT_CACHE", "cache", "path", str),
    ("SL2EXT_MODULUS", "specseq", "modulus", int),
    ("SL2EXT_FORMAT", "output", "format", str),
)


def _environment_layer() -> Dict[str, Any]:
    layer: Dict[str, Any] = {}
    for variable, section, key, convert in _ENVIRONMENT:
        raw = os.environ.get(variable)
        if not raw:
            continue
        try:
            layer.setdefault(section, {})[key] = convert(raw)
        except ValueError as exc:
            raise ConfigError(f"{variable} must be {convert.__name__}-valued, got {raw!r}") from exc
    return layer


def _merge_into(target: Dict[str, Any], layer: Mapping[str, Any]) -> None:
    """Merge ``layer`` into ``target`` section by section; scalars and lists replace."""
    for key, value in layer.items():
        current = target.get(key)
        if isinstance(current, dict) and isinstance(value, Mapping):
            _merge_into(current, value)
        else:
            target[key] = copy.deepcopy(value)
