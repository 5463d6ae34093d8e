"""
Configuration management for extreme-delaunay.

Defaults live in ``Settings``; each CLI invocation builds a validated
``RunConfig`` from them plus its flags. Runs must be reproducible from the
command line alone, so neither environment variables nor ``.env`` files are
read.
"""

import logging
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict
from rich.console import Console
from rich.logging import RichHandler

from extreme_delaunay.models.enums import IsometryMode


class Settings(BaseSettings):
    """Exploration and output defaults."""

    model_config = SettingsConfigDict(extra="ignore")

    # Exploration budgets
    budget_iters: int = 1000
    budget_nodes: int = 10**8
    threads: int = 1

    # Extra search on candidates without a positive definite Gram matrix
    cut_search_bound: int = 2
    cut_search_cap: int = 100_000

    # Output
    verbosity: int = 0
    isometry_mode: IsometryMode = IsometryMode.STRICT
    report_suffix_log: str = ".log"
    report_suffix_classes: str = ".classes"

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings,)


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get the global settings instance."""
    return settings


class RunConfig(BaseModel):
    """One CLI invocation: inputs, output stem, budgets and verbosity."""

    subcommand: str
    inputs: list[Path] = Field(default_factory=list)
    out: Optional[Path] = None
    budget_iters: int = Field(default_factory=lambda: settings.budget_iters, gt=0)
    budget_nodes: int = Field(default_factory=lambda: settings.budget_nodes, gt=0)
    threads: int = Field(default_factory=lambda: settings.threads, gt=0)
    brute_force_bound: Optional[int] = Field(default=None, gt=0)
    verbosity: int = Field(default_factory=lambda: settings.verbosity, ge=0)

    @field_validator("inputs")
    @classmethod
    def inputs_exist(cls, paths: list[Path]) -> list[Path]:
        for path in paths:
            if not path.is_file():
                raise ValueError(f"input file not found: {path}")
        return paths

    @field_validator("out")
    @classmethod
    def out_directory_exists(cls, out: Optional[Path]) -> Optional[Path]:
        if out is not None and not out.parent.is_dir():
            raise ValueError(f"output directory does not exist: {out.parent}")
        return out

    def report_paths(self) -> tuple[Path, Path]:
        if self.out is None:
            raise ValueError("no output stem given")
        return (
            self.out.with_name(self.out.name + settings.report_suffix_log),
            self.out.with_name(self.out.name + settings.report_suffix_classes),
        )


def configure_logging(verbosity: int = 0) -> None:
    """Send log records to stderr through rich: -v for INFO, -vv for DEBUG."""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )
