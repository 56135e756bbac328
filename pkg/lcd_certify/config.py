"""Run configuration: budgets, seed, workers and the fixture location.

Values are layered as defaults < config file < environment < flags.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any

from lcd_certify.util import LOGGER

FIXTURES_ENV = "LCD_CERTIFY_FIXTURES"
DEFAULT_FIXTURE_DIR = Path(__file__).parent / "fixtures"


class ConfigError(Exception):
    """Base class for configuration errors."""


class ConfigParseError(ConfigError):
    """Raised for a malformed configuration line."""

    def __init__(self, path: Path, line_no: int, reason: str) -> None:
        """Initialize the error."""
        super().__init__(f"{path}:{line_no}: {reason}")


@dataclass(frozen=True)
class Config:
    """Settings shared by every command."""

    node_budget: int | None = None
    time_budget: float | None = None
    seed: int = 0
    workers: int = 1
    fixture_dir: Path | None = None
    cross_check: bool = False
    witness_restarts: int = 8
    witness_node_budget: int = 200_000
    max_labeled: int = 200_000

    def with_overrides(self, **overrides: Any) -> Config:  # noqa: ANN401
        """Return a copy with every non-`None` override applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def fixtures(self) -> Path:
        """Return the directory holding the table fixtures."""
        return self.fixture_dir or DEFAULT_FIXTURE_DIR


def _parse_bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    msg = f"not a boolean: {text!r}"
    raise ValueError(msg)


def _optional(convert: type) -> Any:  # noqa: ANN401
    def parse(text: str) -> Any:  # noqa: ANN401
        return None if text.lower() in ("", "none") else convert(text)

    return parse


_PARSERS = {
    "node_budget": _optional(int),
    "time_budget": _optional(float),
    "seed": int,
    "workers": int,
    "fixture_dir": _optional(Path),
    "cross_check": _parse_bool,
    "witness_restarts": int,
    "witness_node_budget": int,
    "max_labeled": int,
}


def parse_config(path: Path) -> dict[str, Any]:
    """Read `key=value` lines; `#` starts a comment."""
    known = {f.name for f in fields(Config)}
    values: dict[str, Any] = {}
    for line_no, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigParseError(path, line_no, "expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in known:
            raise ConfigParseError(path, line_no, f"unknown key {key!r}")
        try:
            values[key] = _PARSERS[key](value)
        except ValueError as err:
            raise ConfigParseError(path, line_no, str(err)) from err
    return values


def load_config(path: Path | None = None, **flags: Any) -> Config:  # noqa: ANN401
    """Build a `Config` from an optional file, the environment and flags."""
    config = Config()
    if path is not None:
        LOGGER.info("Reading configuration from %s", path)
        config = replace(config, **parse_config(path))
    if FIXTURES_ENV in os.environ:
        config = replace(config, fixture_dir=Path(os.environ[FIXTURES_ENV]))
    return config.with_overrides(**flags)
