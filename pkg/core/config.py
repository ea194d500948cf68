"""
config.py - Load config.yaml into validated settings and set up logging
"""
import logging
import os
from pathlib import Path
from typing import Optional

import yaml
from pydantic import BaseModel, Field, ValidationError

from core.errors import GallaiInputError

THREADS_ENV_VAR = "GALLAI_THREADS"


class SearchSettings(BaseModel):
    """Budgets and work splitting for the exhaustive search"""
    node_budget: int = Field(default=3 ** 15, gt=0)
    time_budget_seconds: Optional[float] = Field(default=None, gt=0)
    shard_depth: int = Field(default=3, ge=1)
    workers: int = Field(default=1, ge=1)


class LoggingSettings(BaseModel):
    level: str = "WARNING"
    format: str = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class OutputSettings(BaseModel):
    json_indent: bool = True
    sort_keys: bool = False


class StabilitySettings(BaseModel):
    """Threshold for the n precondition and the default sweep range"""
    min_n: int = Field(default=22, ge=1)
    sweep_n_min: int = Field(default=28, ge=1)
    sweep_n_max: int = Field(default=40, ge=1)


class ToolkitConfig(BaseModel):
    """Top-level configuration, one attribute per config.yaml section"""
    search: SearchSettings = Field(default_factory=SearchSettings)
    stability: StabilitySettings = Field(default_factory=StabilitySettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)
    output: OutputSettings = Field(default_factory=OutputSettings)


def load_config(config_path: str = "config.yaml") -> ToolkitConfig:
    """
    Load and validate the toolkit configuration

    Args:
        config_path: Path to the YAML configuration file

    Returns:
        ToolkitConfig with defaults filled in for anything missing
    """
    path = Path(config_path)
    if not path.exists():
        return ToolkitConfig()

    try:
        with open(path, 'r') as f:
            raw = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise GallaiInputError(f"Could not parse {config_path}: {e}") from e

    if not isinstance(raw, dict):
        raise GallaiInputError(f"{config_path} must contain a mapping at the top level")

    try:
        return ToolkitConfig.model_validate(raw)
    except ValidationError as e:
        raise GallaiInputError(f"Invalid configuration in {config_path}: {e}") from e


def configure_logging(settings: LoggingSettings, verbose: bool = False, debug: bool = False) -> None:
    """Configure the root logger once for the command-line process"""
    level = logging.DEBUG if debug else logging.INFO if verbose else getattr(
        logging, settings.level.upper(), logging.WARNING
    )
    logging.basicConfig(level=level, format=settings.format, force=True)


def resolve_workers(flag: Optional[int], config: ToolkitConfig) -> int:
    """--threads wins, then GALLAI_THREADS, then the config file"""
    if flag is not None:
        workers = flag
    elif os.getenv(THREADS_ENV_VAR):
        try:
            workers = int(os.environ[THREADS_ENV_VAR])
        except ValueError as e:
            raise GallaiInputError(f"{THREADS_ENV_VAR} must be an integer") from e
    else:
        workers = config.search.workers

    if workers < 1:
        raise GallaiInputError("worker count must be at least 1")
    return workers
