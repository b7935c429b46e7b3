"""
Run configuration.
Handles YAML config loading with inheritance support.
"""

import copy
import warnings
from pathlib import Path
from typing import Any

import yaml

from bracelit.constants import (
    AUTOMORPHISM_BOUND,
    ENUMERATION_BOUND,
    ISOMORPHISM_BOUND,
    SPOT_CHECKS,
    SUB_BRACE_BOUND,
)

DEFAULT_CONFIG: dict[str, dict[str, Any]] = {
    "bounds": {
        "automorphisms": AUTOMORPHISM_BOUND,
        "enumeration": ENUMERATION_BOUND,
        "sub_braces": SUB_BRACE_BOUND,
        "isomorphism": ISOMORPHISM_BOUND,
    },
    "scan": {
        "max_order": ENUMERATION_BOUND,
    },
    "solver": {
        "spot_checks": SPOT_CHECKS,
        "seed": 0,
    },
}


def default_config() -> dict[str, Any]:
    """Return a fresh copy of the built-in configuration."""
    return copy.deepcopy(DEFAULT_CONFIG)


def load_config(config_path: str | Path | None = None) -> dict[str, Any]:
    """
    Load a YAML configuration file on top of the defaults.

    Args:
        config_path: Path to the YAML configuration file, or None for defaults only.

    Returns:
        Configuration dictionary with every section of DEFAULT_CONFIG present.

    Raises:
        FileNotFoundError: If the config file doesn't exist.
        ValueError: If the YAML root is not a mapping.
        yaml.YAMLError: If the YAML is invalid.
    """
    if config_path is None:
        return default_config()
    return _merge_configs(default_config(), _read_config(Path(config_path)))


def _read_config(config_file: Path) -> dict[str, Any]:
    if not config_file.exists():
        raise FileNotFoundError(f"Config file not found: {config_file}")

    with open(config_file) as f:
        config = yaml.safe_load(f)

    # Handle empty file
    if config is None:
        config = {}
    if not isinstance(config, dict):
        raise ValueError(f"Config root must be a mapping: {config_file}")

    # Handle inheritance
    if "extends" in config:
        parent_path = Path(config.pop("extends"))
        # Resolve relative paths
        if not parent_path.is_absolute():
            parent_path = config_file.parent / parent_path
        config = _merge_configs(_read_config(parent_path), config)

    for key in list(config):
        if key not in DEFAULT_CONFIG:
            warnings.warn(f"Unknown config section '{key}' in {config_file} is ignored", UserWarning, stacklevel=2)
            del config[key]

    return config


def _merge_configs(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    """
    Merge two configurations with override taking precedence.

    Sections are merged key by key; values inside a section are replaced.

    Args:
        base: Base configuration.
        override: Override configuration.

    Returns:
        Merged configuration.
    """
    result = copy.deepcopy(base)
    for section, values in override.items():
        if isinstance(values, dict) and isinstance(result.get(section), dict):
            result[section].update(values)
        else:
            result[section] = values
    return result
