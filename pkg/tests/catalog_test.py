"""Tests for the built-in catalog and the catalog runner."""

from __future__ import annotations

from pathlib import Path

import pytest

from lcsquotient.catalog import (
    CatalogConfigModel,
    CatalogEntry,
    CrossValidation,
    EntryKind,
    Provenance,
    load_catalog,
    run_catalog,
    run_entry,
)
from lcsquotient.exceptions import InputError, ParseError
from lcsquotient.lattice import AbelianGroup, IntMatrix
from lcsquotient.nilpotent import GroupPresentation
from lcsquotient.second_quotient import Exactness, SpaceData

ORACLE_CHECKED = [
    "heisenberg",
    "surface_genus_1",
    "surface_genus_2",
    "surface_genus_3",
    "torus",
    "wedge_2_circles",
    "wedge_3_circles",
    "wedge_4_circles",
]


def test_catalog_contents(catalog_entries: dict[str, CatalogEntry]) -> None:
    assert sorted(catalog_entries) == sorted(
        [*ORACLE_CHECKED, "klein_bottle", "fano_surface"]
    )
    fano = catalog_entries["fano_surface"]
    assert fano.kind is EntryKind.fano
    assert fano.space is None
    assert fano.provenance is Provenance.published
    for name in ORACLE_CHECKED:
        assert catalog_entries[name].presentation is not None


@pytest.mark.parametrize("name", ORACLE_CHECKED)
def test_formula_equals_oracle(
    catalog_entries: dict[str, CatalogEntry], name: str
) -> None:
    result = run_entry(catalog_entries[name])
    assert result.cross_validation is CrossValidation.agree
    assert result.oracle == result.formula.group
    assert result.formula.group == catalog_entries[name].expected
    assert result.passed


def test_klein_bottle(catalog_entries: dict[str, CatalogEntry]) -> None:
    result = run_entry(catalog_entries["klein_bottle"])
    assert result.cross_validation is CrossValidation.not_applicable
    assert result.formula.group.is_trivial
    assert result.formula.exactness is Exactness.up_to_finite_kernel
    assert result.oracle == AbelianGroup(torsion=(2,))
    assert [check.name for check in result.checks] == [
        "oracle_equals_expected"
    ]
    assert result.passed


def test_fano_entry(catalog_entries: dict[str, CatalogEntry]) -> None:
    result = run_entry(catalog_entries["fano_surface"])
    assert result.formula.group == AbelianGroup(torsion=(2,))
    assert result.cross_validation is CrossValidation.no_presentation
    assert result.passed
    assert "fano_surface: Coker μ = Z/2, exact" in result.render()


def test_disagreement_fails() -> None:
    entry = CatalogEntry(
        name="bad torus",
        space=SpaceData.from_mu(
            "bad torus", IntMatrix.from_rows([[2]]), h1_rank=2
        ),
        presentation=GroupPresentation(
            generators=2, relators=[[1, 2, -1, -2]]
        ),
        expected=AbelianGroup(),
    )
    result = run_entry(entry)
    assert result.cross_validation is CrossValidation.disagree
    assert not result.passed
    assert {check.name for check in result.failures} == {
        "formula_equals_oracle",
        "formula_equals_expected",
    }


def test_mismatched_presentation() -> None:
    entry = CatalogEntry(
        name="mismatch",
        space=SpaceData.from_mu(
            "torus", IntMatrix.from_rows([[1]]), h1_rank=2
        ),
        presentation=GroupPresentation.free(3),
    )
    with pytest.raises(InputError):
        run_entry(entry)


def test_space_entry_needs_space() -> None:
    with pytest.raises(ValueError, match="has no space"):
        CatalogEntry(name="empty")


@pytest.mark.asyncio
async def test_run_catalog(catalog_entries: dict[str, CatalogEntry]) -> None:
    entries = list(catalog_entries.values())
    serial = await run_catalog(entries)
    parallel = await run_catalog(
        list(reversed(entries)), parallel=True, max_concurrent_jobs=3
    )
    assert serial.passed
    assert serial == parallel
    assert [result.name for result in serial.results] == sorted(
        catalog_entries
    )
    assert serial.failures == []


@pytest.mark.asyncio
async def test_run_catalog_empty() -> None:
    catalog_run = await run_catalog([], parallel=True)
    assert catalog_run.results == []
    assert catalog_run.passed


def test_catalog_yaml_errors(tmp_path: Path) -> None:
    path = tmp_path / "catalog.yaml"
    path.write_text("- name: [unclosed\n")
    with pytest.raises(ParseError):
        CatalogConfigModel.from_yaml(path)

    path.write_text("- kind: space\n")
    with pytest.raises(ParseError, match="field 0.name"):
        CatalogConfigModel.from_yaml(path)


def test_catalog_relative_paths(tmp_path: Path) -> None:
    (tmp_path / "spaces").mkdir()
    (tmp_path / "spaces" / "s.json").write_text(
        '{"name": "s", "h1_rank": 2, "h1_torsion_free": true, '
        '"h2_rank": 0, "mu": [[]]}'
    )
    path = tmp_path / "catalog.yaml"
    path.write_text(
        "- name: s\n"
        "  space: spaces/s.json\n"
        "  expected:\n"
        "    free_rank: 1\n"
        "  provenance: trivial\n"
    )
    entries = load_catalog(path)
    assert len(entries) == 1
    assert entries[0].space is not None
    assert entries[0].space.h1_rank == 2
    assert run_entry(entries[0]).passed
