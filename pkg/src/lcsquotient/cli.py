"""Command-line interface.

Exit status is 0 when every check passes, 1 when a check fails and 2 when
the input is malformed or inconsistent.
"""

from __future__ import annotations

import argparse
import asyncio
import sys
from collections.abc import Sequence
from enum import StrEnum
from pathlib import Path
from typing import Annotated

import structlog
from pydantic import BaseModel, Field
from safir.logging import configure_logging

from .catalog import load_catalog, run_catalog
from .config import config
from .exceptions import (
    DimensionError,
    FanoInconsistencyError,
    InputError,
    LcsQuotientError,
)
from .fano import fano_report
from .inputs import load_presentation, load_space
from .lattice import AbelianGroup
from .nilpotent import abelianization, gamma2_mod_gamma3
from .properties import run_selftest
from .second_quotient import second_lcs_quotient

__all__ = [
    "OutputFormat",
    "PresentationSummary",
    "build_parser",
    "main",
    "run",
]

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2

logger = structlog.get_logger(__name__)


class OutputFormat(StrEnum):
    """Output document format."""

    text = "text"
    json = "json"


class PresentationSummary(BaseModel):
    """The output of the ``nilquot`` command."""

    abelianization: Annotated[
        AbelianGroup, Field(description="G/(G,G).")
    ]

    gamma2_mod_gamma3: Annotated[
        AbelianGroup, Field(description="γ₂(G)/γ₃(G).")
    ]

    def render(self) -> str:
        return (
            f"H1 = {self.abelianization.render()}\n"
            f"gamma2/gamma3 = {self.gamma2_mod_gamma3.render()}"
        )


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser for the lcsquotient command."""
    parser = argparse.ArgumentParser(
        prog="lcsquotient",
        description=(
            "Compute the second lower central quotient D/(D,G) of a "
            "fundamental group from homological data."
        ),
    )
    parser.add_argument(
        "--format",
        type=OutputFormat,
        choices=list(OutputFormat),
        default=OutputFormat.text,
        help="Output format (default: text).",
    )
    parser.add_argument(
        "--catalog",
        type=Path,
        default=None,
        help=(
            "Catalog YAML file for the catalog command (default: "
            "$LCSQUOTIENT_CATALOG_PATH or the built-in catalog)."
        ),
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    cokermu = subparsers.add_parser(
        "cokermu", help="Compute Coker μ from a SpaceData document."
    )
    cokermu.add_argument("file", type=Path, help="SpaceData JSON file.")

    nilquot = subparsers.add_parser(
        "nilquot",
        help="Compute γ₂/γ₃ from a GroupPresentation document.",
    )
    nilquot.add_argument(
        "file", type=Path, help="GroupPresentation JSON file."
    )

    subparsers.add_parser(
        "fano", help="Run the Fano surface computation and its checks."
    )

    catalog = subparsers.add_parser(
        "catalog", help="Run every catalog entry and cross-validate."
    )
    catalog.add_argument(
        "--parallel",
        action="store_true",
        help="Run entries concurrently in worker threads.",
    )

    selftest = subparsers.add_parser(
        "selftest", help="Run the randomized property suites."
    )
    selftest.add_argument(
        "--seed",
        type=int,
        default=None,
        help="Random seed (default: $LCSQUOTIENT_SELFTEST_SEED).",
    )
    selftest.add_argument(
        "--scale",
        type=float,
        default=0.1,
        help="Fraction of the full case counts to run (default: 0.1).",
    )
    return parser


def _emit(document: BaseModel, text: str, fmt: OutputFormat) -> None:
    if fmt is OutputFormat.json:
        print(document.model_dump_json(indent=2))
    else:
        print(text)


def _report_failures(failures: Sequence[str]) -> int:
    for failure in failures:
        print(f"check failed: {failure}", file=sys.stderr)
    return EXIT_CHECK_FAILED if failures else EXIT_OK


def _cokermu(args: argparse.Namespace) -> int:
    space = load_space(args.file)
    result = second_lcs_quotient(space)
    _emit(result, f"{space.name}: {result.render()}", args.format)
    return EXIT_OK


def _nilquot(args: argparse.Namespace) -> int:
    pres = load_presentation(args.file)
    summary = PresentationSummary(
        abelianization=abelianization(pres),
        gamma2_mod_gamma3=gamma2_mod_gamma3(pres),
    )
    _emit(summary, summary.render(), args.format)
    return EXIT_OK


def _fano(args: argparse.Namespace) -> int:
    report = fano_report()
    _emit(report, report.render(), args.format)
    return _report_failures([check.name for check in report.failures])


def _catalog(args: argparse.Namespace) -> int:
    path = args.catalog or config.catalog_path
    entries = load_catalog(path)
    catalog_run = asyncio.run(
        run_catalog(
            entries,
            parallel=args.parallel,
            max_concurrent_jobs=config.max_concurrent_jobs,
        )
    )
    _emit(catalog_run, catalog_run.render(), args.format)
    return _report_failures(catalog_run.failures)


def _selftest(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else config.selftest_seed
    report = run_selftest(seed, scale=args.scale)
    _emit(report, report.render(), args.format)
    return _report_failures([check.name for check in report.failures])


_COMMANDS = {
    "cokermu": _cokermu,
    "nilquot": _nilquot,
    "fano": _fano,
    "catalog": _catalog,
    "selftest": _selftest,
}


def run(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return the exit status."""
    args = build_parser().parse_args(argv)
    configure_logging(
        profile=config.profile,
        log_level=config.log_level,
        name=config.logger_name,
    )
    log = logger.bind(task=args.command)
    try:
        status = _COMMANDS[args.command](args)
    except (InputError, DimensionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except FanoInconsistencyError as e:
        print(f"check failed: {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except LcsQuotientError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    log.info("Command complete", status=status)
    return status


def main() -> None:
    """Console script entry point."""
    sys.exit(run())
