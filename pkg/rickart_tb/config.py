"""Configuration loading utilities."""
from __future__ import annotations

import dataclasses
import json
import os
import pathlib
import tomllib
from collections.abc import Mapping
from typing import Any, Optional


class ConfigError(RuntimeError):
    """Raised when configuration loading fails."""


@dataclasses.dataclass(frozen=True)
class Settings:
    """Limits and knobs shared by deciders, constructions and the harness."""

    exhaustive_cap: int = 2**20
    decider_cap: int = 2**14
    baer_cap: int = 2**12
    ideal_cap: int = 2**8
    artinian_cap: int = 2**6
    involution_pair_cap: int = 2**10
    random_pairs: int = 100_000
    sample_size: int = 4096
    seed: int = 0
    workers: int = 1
    power_range: int = 8
    closure_check_cap: int = 2**22

    def replace(self, **changes: Any) -> "Settings":
        return dataclasses.replace(self, **changes)


_ENV_OVERRIDES = {
    "RICKART_TB_CAP": "exhaustive_cap",
    "RICKART_TB_WORKERS": "workers",
    "RICKART_TB_SEED": "seed",
}


def load_config(path: str | pathlib.Path) -> dict[str, Any]:
    """Load a configuration file (TOML or JSON)."""
    path_obj = pathlib.Path(path)
    if not path_obj.exists():
        raise ConfigError(f"Config path does not exist: {path_obj}")

    suffix = path_obj.suffix.lower()
    if suffix == ".toml":
        with path_obj.open("rb") as handle:
            return tomllib.load(handle)
    if suffix == ".json":
        with path_obj.open("r", encoding="utf-8") as handle:
            return json.load(handle)

    raise ConfigError(f"Unsupported config format: {path_obj.suffix}")


def load_settings(
    path: Optional[str | pathlib.Path] = None,
    *,
    environ: Optional[Mapping[str, str]] = None,
) -> Settings:
    """Build settings from defaults, an optional config file and env overrides.

    Keys may sit at the top level or under a ``[limits]`` table.
    """
    values: dict[str, Any] = {}
    if path is not None:
        raw = load_config(path)
        values.update({k: v for k, v in raw.items() if not isinstance(v, dict)})
        values.update(raw.get("limits", {}))

    env = os.environ if environ is None else environ
    for var, field in _ENV_OVERRIDES.items():
        if env.get(var):
            values[field] = env[var]

    return _coerce(values)


def _coerce(values: Mapping[str, Any]) -> Settings:
    known = {field.name for field in dataclasses.fields(Settings)}
    unknown = sorted(set(values) - known)
    if unknown:
        raise ConfigError(f"Unknown settings: {unknown}")

    coerced: dict[str, int] = {}
    for name, value in values.items():
        try:
            number = int(value)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"Invalid value for {name}: {value!r}") from exc
        if number < 0 or (number == 0 and name != "seed"):
            raise ConfigError(f"Setting {name} must be positive, got {number}")
        coerced[name] = number
    return Settings(**coerced)
