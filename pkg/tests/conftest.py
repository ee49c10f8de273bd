"""Test fixtures for lcsquotient tests."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from lcsquotient.catalog import CatalogEntry, load_catalog
from lcsquotient.config import DEFAULT_CATALOG_PATH


@pytest.fixture
def rng() -> random.Random:
    """Return a seeded random number generator."""
    return random.Random(20140101)


@pytest.fixture
def data_dir() -> Path:
    """Return the directory of the packaged catalog data."""
    return DEFAULT_CATALOG_PATH.parent


@pytest.fixture
def catalog_entries() -> dict[str, CatalogEntry]:
    """Return the built-in catalog, keyed by entry name."""
    return {entry.name: entry for entry in load_catalog(DEFAULT_CATALOG_PATH)}
