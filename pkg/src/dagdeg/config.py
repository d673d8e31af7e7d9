"""Configuration loading and management."""

import logging
import os
import tomllib
from importlib import resources
from pathlib import Path
from textwrap import dedent
from typing import TypedDict

from . import APP_NAME

logger = logging.getLogger(__name__)

WORKERS_ENV = "DAGDEG_WORKERS"

OUTPUT_FORMATS = ("text", "json")
SETTINGS = ("untwisted", "twisted")
LOG_LEVELS = ("debug", "info", "warning", "error")


class OptionsDict(TypedDict):
    """Type hints for configuration options."""

    workers: int
    output_format: str
    setting: str
    log_level: str
    fixtures_dir: str


def default_config_dir() -> Path:
    if os.name == "nt":
        base = os.environ.get("APPDATA") or (Path.home() / "AppData" / "Roaming")
        return Path(base) / APP_NAME
    xdg = os.environ.get("XDG_CONFIG_HOME")
    return (Path(xdg) if xdg else Path.home() / ".config") / APP_NAME


DEFAULT_CONFIG_DIR = default_config_dir()
DEFAULT_CONFIG_PATH = DEFAULT_CONFIG_DIR / "config.toml"


DEFAULT_OPTIONS: OptionsDict = {
    "workers": 0,
    "output_format": "text",
    "setting": "untwisted",
    "log_level": "warning",
    "fixtures_dir": "",
}


def _get_embedded_file(filename: str) -> str:
    """Get embedded default file content"""
    try:
        pkg = f"{__package__}._embedded"
        return resources.files(pkg).joinpath(filename).read_text(encoding="utf-8")
    except Exception:
        if filename == "config.toml":
            return _minimal_config()
        return ""


def _minimal_config() -> str:
    """Minimal fallback config"""
    return dedent(
        """
        [options]
        workers = 0
        output_format = "text"
        setting = "untwisted"
        log_level = "warning"
        fixtures_dir = ""
        """
    )


def _parse_choice(name: str, raw, choices: tuple[str, ...]) -> str:
    value = str(raw).strip().lower()
    if value not in choices:
        raise ValueError(f"Option '{name}' must be one of {', '.join(choices)} (got {raw!r})")
    return value


def _parse_workers(raw) -> int:
    """Worker count; bools are rejected even though they are ints."""
    message = f"Option 'workers' must be a non-negative integer (got {raw!r})"
    if isinstance(raw, bool):
        raise ValueError(message)
    try:
        value = int(raw)
    except (TypeError, ValueError):
        raise ValueError(message) from None
    if value < 0:
        raise ValueError(message)
    return value


class Config:
    """Configuration manager"""

    def __init__(self, config_path: str | None = None):
        """Initialize configuration"""
        self.path = Path(config_path) if config_path else DEFAULT_CONFIG_PATH
        self.options: OptionsDict = DEFAULT_OPTIONS.copy()

    def exists(self) -> bool:
        """Check if config file exists"""
        return self.path.exists()

    def create_default(self, force: bool = False) -> None:
        """
        Create the default configuration file

        Args:
            force: Overwrite an existing file
        """
        self.path.parent.mkdir(parents=True, exist_ok=True)

        if self.path.exists() and not force:
            print(f"Config already exists: {self.path}")
            print("Use --force to overwrite")
            return

        self.path.write_text(_get_embedded_file("config.toml"), encoding="utf-8")
        print(f"Created config: {self.path}")
        print(f"\nEdit this file to configure {APP_NAME}:")
        print(f"  Config:   {self.path}")

    def load(self) -> None:
        """Load configuration from TOML file; a missing file leaves the defaults."""
        if not self.path.exists():
            logger.debug("no config at %s, using defaults", self.path)
            return

        try:
            content = self.path.read_text(encoding="utf-8")
            data = tomllib.loads(content)
        except tomllib.TOMLDecodeError as exc:
            raise ValueError(f"Invalid TOML in config: {exc}") from None

        if "options" in data:
            if not isinstance(data["options"], dict):
                raise ValueError("Config section [options] must be a table")
            self.options = self._parse_options(data["options"])

    @property
    def fixtures_dir(self) -> Path | None:
        raw = self.options["fixtures_dir"]
        return Path(raw).expanduser() if raw else None

    def _parse_options(self, opts: dict) -> OptionsDict:
        """Parse options from TOML data with type conversion."""
        return {
            "workers": _parse_workers(opts.get("workers", DEFAULT_OPTIONS["workers"])),
            "output_format": _parse_choice(
                "output_format",
                opts.get("output_format", DEFAULT_OPTIONS["output_format"]),
                OUTPUT_FORMATS,
            ),
            "setting": _parse_choice(
                "setting", opts.get("setting", DEFAULT_OPTIONS["setting"]), SETTINGS
            ),
            "log_level": _parse_choice(
                "log_level", opts.get("log_level", DEFAULT_OPTIONS["log_level"]), LOG_LEVELS
            ),
            "fixtures_dir": str(opts.get("fixtures_dir", DEFAULT_OPTIONS["fixtures_dir"])),
        }
