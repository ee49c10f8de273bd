"""Exceptions for the lcsquotient package."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Self

from pydantic import ValidationError

__all__ = [
    "DimensionError",
    "FanoInconsistencyError",
    "InputError",
    "LcsQuotientError",
    "NotApplicableError",
    "ParseError",
]


class LcsQuotientError(Exception):
    """Base class for lcsquotient exceptions."""


class DimensionError(LcsQuotientError, ValueError):
    """Error raised when shapes, degrees or ranks of operands do not match."""


class InputError(LcsQuotientError, ValueError):
    """Error raised when input data violates a consistency constraint.

    The message names the constraint that was violated.
    """


class ParseError(InputError):
    """Error raised when an input document cannot be parsed."""

    # JSON and pydantic errors carry their diagnostics in different shapes.
    # from_exception flattens either one into a single message naming the
    # file, and the line/column or field location.

    @classmethod
    def from_exception(
        cls, exc: Exception, *, path: Path | str | None = None
    ) -> Self:
        source = str(path) if path is not None else "<input>"
        if isinstance(exc, json.JSONDecodeError):
            return cls(
                f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
            )
        if isinstance(exc, ValidationError):
            details = []
            for error in exc.errors():
                location = ".".join(str(part) for part in error["loc"])
                where = location or "<root>"
                details.append(f"  field {where}: {error['msg']}")
            return cls(f"{source}: invalid document\n" + "\n".join(details))
        return cls(f"{source}: {exc!s}")


class NotApplicableError(LcsQuotientError):
    """Error raised when an operation's hypotheses do not hold.

    Cross-validation refuses spaces with torsion in H₁, since the formula only
    determines the second quotient up to a finite kernel there.
    """


class FanoInconsistencyError(LcsQuotientError):
    """Error raised when the Fano surface derivation chain is inconsistent."""
