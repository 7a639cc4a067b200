import os
import logging
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Tuple

import yaml

script_directory = os.path.dirname(os.path.abspath(__file__))
default_config_path = os.path.join(
    os.path.dirname(script_directory), "torus_descent_configs", "default.yaml"
)


@dataclass(frozen=True)
class RepcheckConfig:
    max_rank: int = 4
    max_dimension: int = 1_000_000


@dataclass(frozen=True)
class DescentConfig:
    max_rank: int = 8
    orbit_cap: int = 10000
    repcheck: RepcheckConfig = field(default_factory=RepcheckConfig)
    verify_types: Tuple[str, ...] = ()
    log_level: str = "WARNING"


_TOP_LEVEL_KEYS = {"max_rank", "orbit_cap", "repcheck", "verify_types", "log_level"}
_REPCHECK_KEYS = {"max_rank", "max_dimension"}


def _positive_int(config, key, where):
    value = config[key]
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ValueError(f"{where}{key} must be a positive integer, got {value!r}")
    return value


def load_config(config_path: Optional[str] = None) -> DescentConfig:
    """Read a YAML configuration file into a DescentConfig.

    Missing keys fall back to the dataclass defaults; unknown keys are rejected.
    """
    config_path = config_path or default_config_path
    with open(config_path, "r") as file:
        config = yaml.safe_load(file) or {}
    if not isinstance(config, dict):
        raise ValueError(f"{config_path}: expected a mapping at the top level")

    unknown = set(config) - _TOP_LEVEL_KEYS
    if unknown:
        raise ValueError(f"{config_path}: unknown config keys {sorted(unknown)}")

    kwargs = {}
    for key in ("max_rank", "orbit_cap"):
        if key in config:
            kwargs[key] = _positive_int(config, key, "")

    repcheck_config = config.get("repcheck") or {}
    unknown = set(repcheck_config) - _REPCHECK_KEYS
    if unknown:
        raise ValueError(f"{config_path}: unknown repcheck keys {sorted(unknown)}")
    kwargs["repcheck"] = RepcheckConfig(
        **{key: _positive_int(repcheck_config, key, "repcheck.") for key in repcheck_config}
    )

    if "verify_types" in config:
        kwargs["verify_types"] = tuple(str(name) for name in config["verify_types"])
    if "log_level" in config:
        level = str(config["log_level"]).upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"{config_path}: unknown log_level {config['log_level']!r}")
        kwargs["log_level"] = level

    logging.debug(f"loaded config from {config_path}")
    return DescentConfig(**kwargs)


@lru_cache(maxsize=None)
def default_config() -> DescentConfig:
    return load_config(default_config_path)


_active_config: ContextVar[Optional[DescentConfig]] = ContextVar("torus_descent_config", default=None)


@contextmanager
def use_config(config: Optional[DescentConfig]):
    """Read library defaults from ``config`` inside the ``with`` block.

    The setting is local to the current thread or task; None means the file default.
    """
    token = _active_config.set(config)
    try:
        yield active_config()
    finally:
        _active_config.reset(token)


def active_config() -> DescentConfig:
    return _active_config.get() or default_config()
