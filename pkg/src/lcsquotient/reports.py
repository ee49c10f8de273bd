"""Check reports shared by the fano, catalog and selftest commands."""

from __future__ import annotations

from typing import Annotated

from pydantic import BaseModel, Field

__all__ = ["CheckReport", "CheckResult"]


class CheckResult(BaseModel):
    """The outcome of a single named check."""

    name: Annotated[str, Field(description="Name of the check.")]

    passed: Annotated[bool, Field(description="Whether the check passed.")]

    detail: Annotated[
        str | None,
        Field(description="Additional information about the outcome."),
    ] = None

    def render(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        suffix = f": {self.detail}" if self.detail else ""
        return f"[{status}] {self.name}{suffix}"


class CheckReport(BaseModel):
    """A titled collection of computed values and check results."""

    title: Annotated[str, Field(description="Title of the report.")]

    values: Annotated[
        dict[str, str],
        Field(description="Computed values, keyed by name."),
    ] = {}

    checks: Annotated[
        list[CheckResult], Field(description="Check results, in order.")
    ] = []

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def check(
        self,
        name: str,
        passed: bool,  # noqa: FBT001
        detail: str | None = None,
    ) -> bool:
        """Record a check result and return whether it passed."""
        self.checks.append(
            CheckResult(name=name, passed=passed, detail=detail)
        )
        return passed

    def extend(self, other: CheckReport) -> None:
        """Append the values and checks of another report."""
        self.values.update(other.values)
        self.checks.extend(other.checks)

    def render(self) -> str:
        lines = [self.title, "=" * len(self.title)]
        lines.extend(f"{key} = {value}" for key, value in self.values.items())
        lines.extend(check.render() for check in self.checks)
        return "\n".join(lines)
