"""
Engine configuration - defaults from engine/config/horn_engine.yaml
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

import yaml

from .algebra import MtlAlgebra, get_algebra
from .errors import AlgebraError, ConfigError
from .saturation import SaturationConfig

_logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config" / "horn_engine.yaml"

_FORMATS = ("text", "machine")
_LEVELS = ("debug", "info", "warning", "error")


@dataclass(frozen=True)
class EngineConfig:
    algebra_name: str = "lukasiewicz"
    chain_size: int = 5
    saturation: SaturationConfig = field(default_factory=SaturationConfig)
    herbrand_depth: int = 2
    output_format: str = "text"
    decimal: bool = False
    log_level: str = "info"

    def algebra(self, name: Optional[str] = None) -> MtlAlgebra:
        return get_algebra(name or self.algebra_name, self.chain_size)


def _set_dotted(data: Dict[str, Any], dotted: str, value: Any) -> None:
    section, _, key = dotted.partition(".")
    if not key:
        raise ConfigError(f"override keys look like section.key, got {dotted!r}")
    target = data.setdefault(section, {})
    if not isinstance(target, dict):
        raise ConfigError(f"config section {section} is not a mapping")
    target[key] = value


def _frozen(value: Any) -> Union[int, tuple]:
    if isinstance(value, bool):
        raise ConfigError("saturation.frozen_vars must be a count or a list of names")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        value = [part.strip() for part in value.split(",") if part.strip()]
    if isinstance(value, (list, tuple)) and all(isinstance(v, str) for v in value):
        return tuple(value)
    raise ConfigError(f"saturation.frozen_vars must be a count or a list of names, got {value!r}")


def _integer(section: Mapping[str, Any], key: str, default: int, minimum: int = 0) -> int:
    value = section.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ConfigError(f"{key} must be an integer >= {minimum}, got {value!r}")
    return value


def load_config(path: Optional[Union[str, Path]] = None, overrides: Optional[Mapping[str, Any]] = None) -> EngineConfig:
    """
    Load engine configuration

    Args:
        path: YAML file; engine/config/horn_engine.yaml when omitted
        overrides: dotted keys (e.g. {"saturation.depth": 3}); None values
            are ignored

    Returns:
        Validated EngineConfig
    """
    file_path = Path(path) if path else DEFAULT_CONFIG_PATH
    if not file_path.exists():
        raise FileNotFoundError(f"Config file not found: {file_path}")

    with open(file_path, "r") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ConfigError(f"config file {file_path} must hold a mapping")

    for dotted, value in (overrides or {}).items():
        if value is not None:
            _set_dotted(data, dotted, value)

    algebra = data.get("algebra") or {}
    saturation = data.get("saturation") or {}
    herbrand = data.get("herbrand") or {}
    output = data.get("output") or {}
    logging_section = data.get("logging") or {}

    seed = saturation.get("shuffle_seed")
    if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int)):
        raise ConfigError(f"saturation.shuffle_seed must be an integer or null, got {seed!r}")

    config = EngineConfig(
        algebra_name=str(algebra.get("default", "lukasiewicz")),
        chain_size=_integer(algebra, "chain_size", 5, minimum=2),
        saturation=SaturationConfig(
            depth=_integer(saturation, "depth", 2),
            frozen_vars=_frozen(saturation.get("frozen_vars", 1)),
            max_rounds=_integer(saturation, "max_rounds", 1000, minimum=1),
            max_terms=_integer(saturation, "max_terms", 5000, minimum=1),
            shuffle_seed=seed,
        ),
        herbrand_depth=_integer(herbrand, "depth", 2),
        output_format=str(output.get("format", "text")),
        decimal=bool(output.get("decimal", False)),
        log_level=str(logging_section.get("level", "info")).lower(),
    )

    if config.output_format not in _FORMATS:
        raise ConfigError(f"output.format must be one of {_FORMATS}, got {config.output_format!r}")
    if config.log_level not in _LEVELS:
        raise ConfigError(f"logging.level must be one of {_LEVELS}, got {config.log_level!r}")
    try:
        config.algebra()
    except AlgebraError as exc:
        raise ConfigError(f"algebra.default: {exc}") from None

    _logger.debug(f"Loaded config from {file_path}")
    return config
