"""Reading SpaceData and GroupPresentation documents."""

from __future__ import annotations

import json
from pathlib import Path

from pydantic import BaseModel, ValidationError

from .exceptions import ParseError
from .nilpotent import GroupPresentation
from .second_quotient import SpaceData

__all__ = [
    "load_presentation",
    "load_space",
    "parse_presentation",
    "parse_space",
]


def _parse[T: BaseModel](
    model: type[T], text: str, source: Path | str | None
) -> T:
    # Decoding separately keeps the line and column of syntax errors, which
    # model_validate_json reports only as a generic json_invalid error.
    try:
        data = json.loads(text)
        return model.model_validate(data)
    except (json.JSONDecodeError, ValidationError) as e:
        raise ParseError.from_exception(e, path=source) from e


def _read(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as e:
        raise ParseError.from_exception(e, path=path) from e


def parse_space(text: str, *, source: Path | str | None = None) -> SpaceData:
    """Parse a SpaceData JSON document.

    Raises
    ------
    ParseError
        Raised if the document is not valid JSON or violates the schema,
        including the shape constraints between ``h1_rank``, ``h2_rank`` and
        the matrix.
    """
    return _parse(SpaceData, text, source)


def parse_presentation(
    text: str, *, source: Path | str | None = None
) -> GroupPresentation:
    """Parse a GroupPresentation JSON document.

    Raises
    ------
    ParseError
        Raised if the document is not valid JSON or violates the schema.
    """
    return _parse(GroupPresentation, text, source)


def load_space(path: Path) -> SpaceData:
    """Read a space document from a file."""
    return parse_space(_read(path), source=path)


def load_presentation(path: Path) -> GroupPresentation:
    """Read a presentation document from a file."""
    return parse_presentation(_read(path), source=path)
