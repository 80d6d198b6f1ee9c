"""
Layered TOML configuration for the sharpening toolkit.

config/default.toml is read first and config/<APP_ENV>.toml is merged over it
(APP_ENV defaults to ``dev``). Any dotted key can be overridden from the
environment: ``coxeter.order_cap`` by ``COXETER_ORDER_CAP``.
"""

import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

logger = logging.getLogger(__name__)

_TRUE_STRINGS = {"1", "true", "yes", "on"}
_FALSE_STRINGS = {"0", "false", "no", "off"}

DEFAULT_CONFIG_DIR = Path(__file__).resolve().parents[2] / "config"


class ConfigReader:
    """Merged view of default.toml and the environment file, with env overrides."""

    def __init__(self, config_dir: Optional[Path] = None, env: Optional[str] = None, delimiter: str = "."):
        self.config_dir = Path(config_dir) if config_dir else DEFAULT_CONFIG_DIR
        self.env = env or os.getenv("APP_ENV") or "dev"
        self.delimiter = delimiter
        self._config: Dict[str, Any] = {}

    @staticmethod
    def _merge(src: Dict[str, Any], target: Dict[str, Any]) -> None:
        for key, value in src.items():
            if isinstance(value, dict) and isinstance(target.get(key), dict):
                ConfigReader._merge(value, target[key])
            else:
                target[key] = value

    def _load(self, name: str) -> Dict[str, Any]:
        path = self.config_dir / name
        if not path.exists():
            logger.warning(f"[CONFIG] {path} not found")
            return {}
        logger.debug(f"[CONFIG] Reading {path}")
        with open(path, "rb") as fp:
            return tomllib.load(fp)

    def read_config(self) -> "ConfigReader":
        merged = self._load("default.toml")
        self._merge(self._load(f"{self.env}.toml"), merged)
        self._config = merged
        return self

    def env_name(self, key: str) -> str:
        return key.replace(self.delimiter, "_").upper()

    def get(self, key: str, default: Any = None) -> Any:
        """Environment first, then the merged files, then ``default``."""
        override = os.getenv(self.env_name(key))
        if override is not None:
            return override
        node: Any = self._config
        for part in key.split(self.delimiter):
            if not isinstance(node, dict) or part not in node:
                return default
            node = node[part]
        return node

    def get_int(self, key: str, default: int) -> int:
        value = self.get(key, default)
        try:
            number = int(value)
        except (TypeError, ValueError) as e:
            raise ValueError(f"config key {key} must be an integer, got {value!r}") from e
        if number < 1:
            raise ValueError(f"config key {key} must be positive, got {number}")
        return number

    def get_bool(self, key: str, default: bool) -> bool:
        value = self.get(key, default)
        if isinstance(value, bool):
            return value
        text = str(value).strip().lower()
        if text in _TRUE_STRINGS:
            return True
        if text in _FALSE_STRINGS:
            return False
        raise ValueError(f"config key {key} must be a boolean, got {value!r}")

    def section(self, name: str) -> Dict[str, Any]:
        node = self._config.get(name, {})
        return dict(node) if isinstance(node, dict) else {}


_config_reader: Optional[ConfigReader] = None


def get_config() -> ConfigReader:
    global _config_reader
    if _config_reader is None:
        _config_reader = ConfigReader().read_config()
    return _config_reader


def reset_config() -> None:
    """Forget the cached reader so the next lookup re-reads APP_ENV and the files."""
    global _config_reader
    _config_reader = None


def get_config_value(key: str, default: Any = None) -> Any:
    return get_config().get(key, default)


def get_config_int(key: str, default: int) -> int:
    return get_config().get_int(key, default)


def get_config_bool(key: str, default: bool) -> bool:
    return get_config().get_bool(key, default)
