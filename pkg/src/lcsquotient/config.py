"""Configuration definition."""

from __future__ import annotations

from pathlib import Path
from typing import Annotated

from pydantic import Field
from pydantic_settings import BaseSettings
from safir.logging import LogLevel, Profile

__all__ = ["DEFAULT_CATALOG_PATH", "Config", "config"]

DEFAULT_CATALOG_PATH = Path(__file__).parent / "data" / "catalog.yaml"
"""Location of the built-in catalog shipped with the package."""


class Config(BaseSettings):
    """lcsquotient configuration.

    Only logging, the catalog location and scheduling are configurable;
    no computed value depends on these settings.
    """

    profile: Annotated[Profile, Field(alias="SAFIR_PROFILE")] = (
        Profile.development
    )

    log_level: Annotated[LogLevel, Field(alias="SAFIR_LOG_LEVEL")] = (
        LogLevel.WARNING
    )

    logger_name: Annotated[
        str,
        Field(
            description=(
                "The root name of the Python logger, which is also the name "
                "of the root Python module"
            )
        ),
    ] = "lcsquotient"

    catalog_path: Annotated[
        Path,
        Field(
            alias="LCSQUOTIENT_CATALOG_PATH",
            description=(
                "Path to the YAML catalog of spaces and presentations run by "
                "the ``catalog`` command."
            ),
        ),
    ] = DEFAULT_CATALOG_PATH

    max_concurrent_jobs: Annotated[
        int,
        Field(
            alias="LCSQUOTIENT_MAX_CONCURRENT_JOBS",
            ge=1,
            description=(
                "The maximum number of catalog entries computed concurrently "
                "when the catalog runs with ``--parallel``."
            ),
        ),
    ] = 4

    selftest_seed: Annotated[
        int,
        Field(
            alias="LCSQUOTIENT_SELFTEST_SEED",
            description="Default random seed for the ``selftest`` command.",
        ),
    ] = 20140101


config = Config()
"""Configuration for lcsquotient."""
