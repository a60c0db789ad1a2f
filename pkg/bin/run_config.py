"""
Run configuration for `jetspace`: one frozen `RunConfig`, validated before anything is computed.

Values are layered, later layers winning:

  1. built-in defaults (DEFAULTS below)
  2. JETSPACE_* environment variables, after `.env` in the working directory has been loaded
  3. a JSON5 config file (`--config PATH`)
  4. explicit command-line flags

The config file is an object with any of the keys in DEFAULTS, or `base` as {"p", "e", "eisenstein"}; anything else is a
ConfigError, as is any value of the wrong shape. `n` is an integer or an inclusive range "a..b".
`algebras` is either a path to a JSON5 catalog or an inline catalog object; absent, the built-in
catalog for the base is used.
"""

from __future__ import annotations

import os
import random
from collections.abc import Mapping
from dataclasses import dataclass, field, fields, replace
from functools import cached_property
from pathlib import Path
from typing import Any

import json5
from dotenv import load_dotenv

from finite_algebras import InvalidAlgebra, NilpotentTestAlgebra, catalog_from_data, default_catalog, load_catalog
from padic_base import BaseContext, InvalidBase, JetspaceError, make_base
from torsion_lab import SIZE_LIMIT
from witt_core import MAX_COMPONENTS

SUITES = ("witt", "shifted", "jets", "appendix", "fgl", "main", "njet", "ga-torsion")
SUITE_ALIASES = {"main-theorem": "main"}
FORMATS = ("json", "text")

ENVIRONMENT = {
    "JETSPACE_P": "p",
    "JETSPACE_E": "e",
    "JETSPACE_D": "D",
    "JETSPACE_N": "n",
    "JETSPACE_SEED": "seed",
    "JETSPACE_FORMAT": "format",
    "JETSPACE_WORKERS": "workers",
    "JETSPACE_SIZE_LIMIT": "size_limit",
}


class ConfigError(JetspaceError):
    """A config value that cannot be used; raised before any computation starts."""

    def __init__(self, message: str, key: str | None = None):
        super().__init__(message)
        self.key = key


@dataclass(frozen=True)
class RunConfig:
    p: int = 3
    e: int = 1
    eisenstein: tuple[int, ...] | None = None
    D: int = 24
    n: tuple[int, int] = (1, 2)
    seed: int = 0
    suites: tuple[str, ...] = SUITES
    algebras: Any = None
    format: str = "text"
    report: str | None = None
    workers: int = 1
    size_limit: int = SIZE_LIMIT
    law: str = "Gm"
    _sources: tuple[str, ...] = field(default=(), compare=False, repr=False)

    @cached_property
    def base(self) -> BaseContext:
        try:
            return make_base(self.p, self.e, self.eisenstein)
        except InvalidBase as bad:
            raise ConfigError(str(bad), "base") from bad

    @cached_property
    def catalog(self) -> tuple[NilpotentTestAlgebra, ...]:
        try:
            if self.algebras is None:
                return tuple(default_catalog(self.base))
            if isinstance(self.algebras, Mapping):
                return tuple(catalog_from_data(self.base, self.algebras))
            return tuple(load_catalog(self.base, self.algebras))
        except InvalidAlgebra as bad:
            raise ConfigError(f"algebras: {bad}", "algebras") from bad

    @property
    def orders(self) -> range:
        return range(self.n[0], self.n[1] + 1)

    def rng(self, salt: str = "") -> random.Random:
        """A generator seeded by `seed` and `salt`, so every task draws the same samples on every run."""
        return random.Random(f"{self.seed}:{salt}")

    def header(self) -> dict[str, Any]:
        """Every value that can change a report, in a fixed order."""
        base = self.base
        return {
            "p": base.p,
            "e": base.e,
            "E": list(base.eisenstein),
            "D": self.D,
            "n": f"{self.n[0]}..{self.n[1]}",
            "seed": self.seed,
            "suites": list(self.suites),
            "algebras": [C.name for C in self.catalog],
            "size_limit": self.size_limit,
        }


DEFAULTS = {f.name: f.default for f in fields(RunConfig) if not f.name.startswith("_")}
FILE_KEYS = set(DEFAULTS) | {"base"}


# ── value parsing ────────────────────────────────────────────────────────────


def parse_range(value: Any, key: str = "n") -> tuple[int, int]:
    """`2` → (2, 2); `"1..3"` → (1, 3)."""
    if isinstance(value, bool):
        raise ConfigError(f"{key}={value!r} is not an order or a range", key)
    if isinstance(value, int):
        return value, value
    if isinstance(value, (list, tuple)) and len(value) == 2:
        low, high = value
    elif isinstance(value, str):
        low, sep, high = value.partition("..")
        if not sep:
            high = low
    else:
        raise ConfigError(f"{key}={value!r} is not an order or a range", key)
    try:
        return int(low), int(high)
    except (TypeError, ValueError) as bad:
        raise ConfigError(f"{key}={value!r} is not an order or a range a..b", key) from bad


def _integer(key: str, value: Any, minimum: int | None = None) -> int:
    if isinstance(value, bool):
        raise ConfigError(f"{key}={value!r} must be an integer", key)
    try:
        number = int(value)
    except (TypeError, ValueError) as bad:
        raise ConfigError(f"{key}={value!r} must be an integer", key) from bad
    if isinstance(value, float) and number != value:
        raise ConfigError(f"{key}={value!r} must be an integer", key)
    if minimum is not None and number < minimum:
        raise ConfigError(f"{key}={number} must be at least {minimum}", key)
    return number


def _suites(value: Any) -> tuple[str, ...]:
    names = value.split(",") if isinstance(value, str) else list(value)
    out: list[str] = []
    for name in names:
        name = str(name).strip()
        name = SUITE_ALIASES.get(name, name)
        if name == "all":
            out.extend(SUITES)
        elif name in SUITES:
            out.append(name)
        else:
            raise ConfigError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)} or all", "suites")
    if not out:
        raise ConfigError("no suites selected", "suites")
    return tuple(dict.fromkeys(out))


def coerce_value(key: str, value: Any) -> Any:
    """Validate one config value and bring it to its RunConfig type."""
    if key in ("p", "e"):
        return _integer(key, value, 1)
    if key == "D":
        return _integer(key, value, 2)
    if key == "seed":
        return _integer(key, value)
    if key in ("workers", "size_limit"):
        return _integer(key, value, 1)
    if key == "n":
        low, high = parse_range(value)
        if not 0 <= low <= high <= MAX_COMPONENTS:
            raise ConfigError(f"n={low}..{high} must satisfy 0 ≤ a ≤ b ≤ {MAX_COMPONENTS}", key)
        return low, high
    if key == "eisenstein":
        if value is None:
            return None
        if isinstance(value, str):
            value = value.split(",")
        try:
            return tuple(int(c) for c in value)
        except (TypeError, ValueError) as bad:
            raise ConfigError(f"eisenstein={value!r} must be a list of integers", key) from bad
    if key == "suites":
        return _suites(value)
    if key == "format":
        if value not in FORMATS:
            raise ConfigError(f"format={value!r}; expected one of {', '.join(FORMATS)}", key)
        return value
    if key in ("report", "law"):
        return None if value is None else str(value)
    if key == "algebras":
        if value is None or isinstance(value, (str, Mapping)):
            return value
        raise ConfigError("algebras must be a catalog path or an inline catalog object", key)
    raise ConfigError(f"unknown config key {key!r}", key)


# ── layers ───────────────────────────────────────────────────────────────────


def environment_layer(environ: Mapping[str, str] | None = None) -> dict[str, Any]:
    environ = os.environ if environ is None else environ
    return {key: environ[name] for name, key in ENVIRONMENT.items() if environ.get(name)}


def file_layer(path: str | Path) -> dict[str, Any]:
    """The key/value pairs of a JSON5 config file; `base` is flattened into p, e and eisenstein."""
    try:
        data = json5.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as bad:
        raise ConfigError(f"cannot read config {path}: {bad}", "config") from bad
    except ValueError as bad:
        raise ConfigError(f"config {path} is not valid JSON5: {bad}", "config") from bad
    if not isinstance(data, Mapping):
        raise ConfigError(f"config {path} must be an object", "config")
    unknown = sorted(set(data) - FILE_KEYS)
    if unknown:
        raise ConfigError(f"config {path} has unknown keys {unknown}", unknown[0])
    layer = {key: value for key, value in data.items() if key != "base"}
    base = data.get("base")
    if base is not None:
        if not isinstance(base, Mapping) or set(base) - {"p", "e", "eisenstein"}:
            raise ConfigError('base must be an object with keys among "p", "e", "eisenstein"', "base")
        layer.update(base)
    if isinstance(layer.get("algebras"), str):
        # catalog paths are relative to the config file
        layer["algebras"] = str(Path(path).parent / layer["algebras"])
    return layer


def build_config(*layers: Mapping[str, Any], sources: tuple[str, ...] = ()) -> RunConfig:
    """Fold layers over the defaults, validating every value, then resolve the base and catalog."""
    values = dict(DEFAULTS)
    for layer in layers:
        for key, value in layer.items():
            if value is None and key not in ("eisenstein", "algebras", "report"):
                continue
            values[key] = coerce_value(key, value)
    config = RunConfig(**values, _sources=sources)
    # resolving the catalog resolves the base too; either raises ConfigError here, before any run
    if not config.catalog:
        raise ConfigError("the algebra catalog is empty", "algebras")
    return config


def load_config(flags: Mapping[str, Any] | None = None, config_path: str | None = None, dotenv: bool = True) -> RunConfig:
    """defaults < environment (.env included) < config file < flags; flags set to None are absent."""
    if dotenv:
        load_dotenv(Path.cwd() / ".env", override=False)
    layers = [environment_layer()]
    sources = ["environment"]
    if config_path:
        layers.append(file_layer(config_path))
        sources.append(str(config_path))
    if flags:
        layers.append({key: value for key, value in flags.items() if value is not None})
        sources.append("flags")
    return build_config(*layers, sources=tuple(sources))


def with_overrides(config: RunConfig, **changes: Any) -> RunConfig:
    """A copy of `config` with validated changes."""
    checked = {key: coerce_value(key, value) for key, value in changes.items()}
    return replace(config, **checked)
