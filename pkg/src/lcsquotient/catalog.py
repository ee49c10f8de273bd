"""The catalog of spaces with known second lower central quotients."""

from __future__ import annotations

import asyncio
from enum import StrEnum
from pathlib import Path
from typing import Annotated, Self

import structlog
import yaml
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    RootModel,
    ValidationError,
    model_validator,
)

from .exceptions import InputError, NotApplicableError, ParseError
from .fano import fano_second_quotient
from .inputs import load_presentation, load_space
from .lattice import AbelianGroup
from .nilpotent import GroupPresentation, cross_validate, gamma2_mod_gamma3
from .reports import CheckResult
from .second_quotient import (
    Exactness,
    SecondQuotientResult,
    SpaceData,
    second_lcs_quotient,
)

__all__ = [
    "CatalogConfigModel",
    "CatalogEntry",
    "CatalogEntryModel",
    "CatalogResult",
    "CatalogRun",
    "CrossValidation",
    "EntryKind",
    "Provenance",
    "load_catalog",
    "run_catalog",
    "run_entry",
]

logger = structlog.get_logger(__name__)


class EntryKind(StrEnum):
    """How a catalog entry is computed."""

    space = "space"
    """From SpaceData, optionally cross-validated against a presentation."""

    fano = "fano"
    """From the recorded Fano surface constants."""


class Provenance(StrEnum):
    """Where an expected value in the catalog comes from."""

    trivial = "trivial"
    """Forced analytically (free groups, abelian groups)."""

    derived = "derived"
    """Computed by the presentation oracle before being recorded."""

    published = "published"
    """Taken from the published computation."""


class CatalogEntryModel(BaseModel):
    """An entry of the catalog YAML file.

    ``space`` and ``presentation`` are paths to JSON documents, relative to
    the directory holding the catalog file.
    """

    name: Annotated[str, Field(description="Name of the entry.")]

    kind: Annotated[
        EntryKind, Field(description="How the entry is computed.")
    ] = EntryKind.space

    space: Annotated[
        str | None, Field(description="Path to a SpaceData document.")
    ] = None

    presentation: Annotated[
        str | None,
        Field(description="Path to a GroupPresentation document."),
    ] = None

    expected: Annotated[
        AbelianGroup | None,
        Field(description="The known value of D/(D,G)."),
    ] = None

    provenance: Annotated[
        Provenance | None,
        Field(description="Where the expected value comes from."),
    ] = None

    @model_validator(mode="after")
    def check_space(self) -> Self:
        if self.kind is EntryKind.space and self.space is None:
            raise ValueError(f"entry {self.name} of kind space has no space")
        return self

    def resolve(self, base: Path) -> CatalogEntry:
        """Load the referenced documents."""
        return CatalogEntry(
            name=self.name,
            kind=self.kind,
            space=load_space(base / self.space) if self.space else None,
            presentation=(
                load_presentation(base / self.presentation)
                if self.presentation
                else None
            ),
            expected=self.expected,
            provenance=self.provenance,
        )


class CatalogConfigModel(RootModel):
    """Model for the catalog YAML file."""

    root: list[CatalogEntryModel]

    @classmethod
    def from_yaml(cls, path: Path) -> Self:
        """Load the catalog file.

        Raises
        ------
        ParseError
            Raised if the file cannot be read or does not match the schema.
        """
        try:
            data = yaml.safe_load(path.read_text())
            return cls.model_validate(data)
        except (OSError, yaml.YAMLError, ValidationError) as e:
            raise ParseError.from_exception(e, path=path) from e


class CatalogEntry(BaseModel):
    """A catalog entry with its documents loaded."""

    model_config = ConfigDict(frozen=True)

    name: Annotated[str, Field(description="Name of the entry.")]

    kind: Annotated[
        EntryKind, Field(description="How the entry is computed.")
    ] = EntryKind.space

    space: Annotated[
        SpaceData | None, Field(description="Homological data.")
    ] = None

    presentation: Annotated[
        GroupPresentation | None,
        Field(description="A presentation of the fundamental group."),
    ] = None

    expected: Annotated[
        AbelianGroup | None,
        Field(description="The known value of D/(D,G)."),
    ] = None

    provenance: Annotated[
        Provenance | None,
        Field(description="Where the expected value comes from."),
    ] = None

    @model_validator(mode="after")
    def check_space(self) -> Self:
        if self.kind is EntryKind.space and self.space is None:
            raise ValueError(f"entry {self.name} of kind space has no space")
        return self


def load_catalog(path: Path) -> list[CatalogEntry]:
    """Load a catalog file and every document it references.

    Raises
    ------
    ParseError
        Raised if the catalog or any referenced document is malformed.
    """
    document = CatalogConfigModel.from_yaml(path)
    return [entry.resolve(path.parent) for entry in document.root]


class CrossValidation(StrEnum):
    """Verdict of comparing Coker μ with the presentation oracle."""

    agree = "agree"
    disagree = "disagree"
    not_applicable = "not_applicable"
    no_presentation = "no_presentation"


class CatalogResult(BaseModel):
    """The outcome of running one catalog entry."""

    name: Annotated[str, Field(description="Name of the entry.")]

    kind: Annotated[EntryKind, Field(description="Kind of the entry.")]

    formula: Annotated[
        SecondQuotientResult,
        Field(description="D/(D,G) from the cokernel formula."),
    ]

    oracle: Annotated[
        AbelianGroup | None,
        Field(description="γ₂/γ₃ computed from the presentation."),
    ] = None

    cross_validation: Annotated[
        CrossValidation, Field(description="Formula against oracle.")
    ] = CrossValidation.no_presentation

    expected: Annotated[
        AbelianGroup | None, Field(description="The recorded value.")
    ] = None

    provenance: Annotated[
        Provenance | None,
        Field(description="Where the recorded value comes from."),
    ] = None

    checks: Annotated[
        list[CheckResult], Field(description="Checks run for the entry.")
    ] = []

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def render(self) -> str:
        lines = [f"{self.name}: Coker μ = {self.formula.render()}"]
        if self.oracle is not None:
            lines.append(f"  γ₂/γ₃ = {self.oracle.render()}")
        lines.append(f"  cross-validation: {self.cross_validation.value}")
        if self.expected is not None:
            tag = f" [{self.provenance.value}]" if self.provenance else ""
            lines.append(f"  expected: {self.expected.render()}{tag}")
        lines.extend(f"  {check.render()}" for check in self.checks)
        return "\n".join(lines)


class CatalogRun(BaseModel):
    """The results of a catalog run, sorted by entry name."""

    results: Annotated[
        list[CatalogResult], Field(description="Per-entry results.")
    ]

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failures(self) -> list[str]:
        return [
            f"{result.name}: {check.name}"
            for result in self.results
            for check in result.failures
        ]

    def render(self) -> str:
        return "\n".join(result.render() for result in self.results)


def _run_space_entry(entry: CatalogEntry, space: SpaceData) -> CatalogResult:
    formula = second_lcs_quotient(space)
    checks: list[CheckResult] = []
    oracle = None
    verdict = CrossValidation.no_presentation
    if entry.presentation is not None:
        oracle = gamma2_mod_gamma3(entry.presentation)
        try:
            agree = cross_validate(space, entry.presentation)
        except NotApplicableError:
            verdict = CrossValidation.not_applicable
        else:
            verdict = (
                CrossValidation.agree if agree else CrossValidation.disagree
            )
            checks.append(
                CheckResult(
                    name="formula_equals_oracle",
                    passed=agree,
                    detail=f"{formula.group} vs {oracle}",
                )
            )
    if entry.expected is not None:
        # Off a torsion-free H₁ only the oracle sees D/(D,G) itself.
        if formula.exactness is Exactness.exact:
            checks.append(
                CheckResult(
                    name="formula_equals_expected",
                    passed=formula.group == entry.expected,
                    detail=f"{formula.group} vs {entry.expected}",
                )
            )
        if oracle is not None:
            checks.append(
                CheckResult(
                    name="oracle_equals_expected",
                    passed=oracle == entry.expected,
                    detail=f"{oracle} vs {entry.expected}",
                )
            )
    return CatalogResult(
        name=entry.name,
        kind=entry.kind,
        formula=formula,
        oracle=oracle,
        cross_validation=verdict,
        expected=entry.expected,
        provenance=entry.provenance,
        checks=checks,
    )


def _run_fano_entry(entry: CatalogEntry) -> CatalogResult:
    formula = fano_second_quotient()
    checks = []
    if entry.expected is not None:
        checks.append(
            CheckResult(
                name="formula_equals_expected",
                passed=formula.group == entry.expected,
                detail=f"{formula.group} vs {entry.expected}",
            )
        )
    return CatalogResult(
        name=entry.name,
        kind=entry.kind,
        formula=formula,
        expected=entry.expected,
        provenance=entry.provenance,
        checks=checks,
    )


def run_entry(entry: CatalogEntry) -> CatalogResult:
    """Compute one catalog entry and check it against its recorded values.

    Raises
    ------
    InputError
        Raised if the presentation does not match the space data.
    FanoInconsistencyError
        Raised if the Fano derivation fails.
    """
    log = logger.bind(task="catalog", entry=entry.name)
    log.debug("Running catalog entry", kind=entry.kind.value)
    if entry.kind is EntryKind.fano:
        result = _run_fano_entry(entry)
    elif entry.space is not None:
        result = _run_space_entry(entry, entry.space)
    else:
        raise InputError(f"{entry.name}: no space data")
    log.info(
        "Ran catalog entry",
        result=result.formula.render(),
        cross_validation=result.cross_validation.value,
        passed=result.passed,
    )
    return result


async def run_catalog(
    entries: list[CatalogEntry],
    *,
    parallel: bool = False,
    max_concurrent_jobs: int = 4,
) -> CatalogRun:
    """Run every catalog entry.

    With ``parallel``, entries run in worker threads, at most
    ``max_concurrent_jobs`` at a time. Results are sorted by entry name, so
    the run does not depend on scheduling.
    """
    if not parallel:
        results = [run_entry(entry) for entry in entries]
    else:
        semaphore = asyncio.Semaphore(max_concurrent_jobs)

        async def run_one(entry: CatalogEntry) -> CatalogResult:
            async with semaphore:
                return await asyncio.to_thread(run_entry, entry)

        results = list(
            await asyncio.gather(*(run_one(entry) for entry in entries))
        )
    logger.info(
        "Catalog run complete",
        entries=len(results),
        parallel=parallel,
    )
    return CatalogRun(results=sorted(results, key=lambda r: r.name))
