"""The second lower central quotient D/(D,G) as the cokernel of μ.

For a space X with G = π₁(X) and D = (G,G), the quotient D/(D̃,G) is the
cokernel of μ: H₂(X,ℤ) → Alt²(H¹(X,ℤ)), μ(σ)(α,β) = σ⌢(α∧β). When H₁(X,ℤ)
is torsion free D̃ = D and this is D/(D,G) itself; otherwise D/(D,G)
surjects onto it with a finite kernel.
"""

from __future__ import annotations

import math
from enum import StrEnum
from typing import Annotated, Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .exceptions import InputError
from .lattice import AbelianGroup, IntMatrix, cokernel, rank, rank_mod_p

__all__ = [
    "Exactness",
    "SecondQuotientResult",
    "SpaceData",
    "cup_matrix",
    "ker_cup_dim",
    "ker_cup_dim_mod_p",
    "mu_from_cup",
    "mu_matrix",
    "rational_rank",
    "second_lcs_quotient",
]


class SpaceData(BaseModel):
    """Homological data of a space.

    Exactly one of ``mu`` and ``cup`` is given. Rows of ``mu`` (and columns
    of ``cup``) follow the lexicographic Λ² basis of
    `lcsquotient.exterior.alt2_basis`.
    """

    model_config = ConfigDict(frozen=True)

    name: Annotated[str, Field(description="Name of the space.")]

    h1_rank: Annotated[
        int,
        Field(ge=0, description="Rank of H₁(X,ℤ) modulo torsion."),
    ]

    h1_torsion_free: Annotated[
        bool, Field(description="Whether H₁(X,ℤ) is torsion free.")
    ]

    h2_rank: Annotated[
        int, Field(ge=0, description="Rank of H₂(X,ℤ) modulo torsion.")
    ]

    mu: Annotated[
        list[list[int]] | None,
        Field(
            description=(
                "Matrix of μ: H₂ → Alt²(H¹), with C(h1_rank, 2) rows and "
                "h2_rank columns."
            )
        ),
    ] = None

    cup: Annotated[
        list[list[int]] | None,
        Field(
            description=(
                "Matrix of the cup product Λ²H¹ → H², with h2_rank rows and "
                "C(h1_rank, 2) columns."
            )
        ),
    ] = None

    @model_validator(mode="after")
    def check_dimensions(self) -> Self:
        """Validate that exactly one matrix is given, with the shape implied
        by ``h1_rank`` and ``h2_rank``.
        """
        if (self.mu is None) == (self.cup is None):
            raise ValueError("exactly one of mu and cup must be given")
        if self.mu is not None:
            _check_shape("mu", self.mu, self.lambda2_rank, self.h2_rank)
        if self.cup is not None:
            _check_shape("cup", self.cup, self.h2_rank, self.lambda2_rank)
        return self

    @classmethod
    def from_mu(
        cls,
        name: str,
        mu: IntMatrix,
        *,
        h1_rank: int,
        h1_torsion_free: bool = True,
    ) -> Self:
        """Create space data from a matrix of μ."""
        return cls(
            name=name,
            h1_rank=h1_rank,
            h1_torsion_free=h1_torsion_free,
            h2_rank=mu.cols,
            mu=mu.tolist(),
        )

    @classmethod
    def from_cup(
        cls,
        name: str,
        cup: IntMatrix,
        *,
        h1_rank: int,
        h1_torsion_free: bool = True,
    ) -> Self:
        """Create space data from a matrix of the cup product."""
        return cls(
            name=name,
            h1_rank=h1_rank,
            h1_torsion_free=h1_torsion_free,
            h2_rank=cup.rows,
            cup=cup.tolist(),
        )

    @property
    def lambda2_rank(self) -> int:
        """Rank of Λ²H¹, C(h1_rank, 2)."""
        return math.comb(self.h1_rank, 2)


def _check_shape(
    field: str, table: list[list[int]], rows: int, cols: int
) -> None:
    if len(table) != rows:
        raise ValueError(
            f"{field} must have {rows} rows (got {len(table)})"
        )
    for i, row in enumerate(table):
        if len(row) != cols:
            raise ValueError(
                f"{field} row {i} must have {cols} entries (got {len(row)})"
            )


class Exactness(StrEnum):
    """How the computed group relates to D/(D,G)."""

    exact = "exact"
    """The group is D/(D,G) (H₁ is torsion free)."""

    up_to_finite_kernel = "up_to_finite_kernel"
    """D/(D,G) surjects onto the group with a finite kernel."""


class SecondQuotientResult(BaseModel):
    """The computed second lower central quotient."""

    model_config = ConfigDict(frozen=True)

    group: Annotated[AbelianGroup, Field(description="Coker μ.")]

    exactness: Annotated[
        Exactness,
        Field(description="Whether the group is exactly D/(D,G)."),
    ]

    def render(self) -> str:
        """Render as ``Z^r x Z/d1 x …, exactness``.

        The trivial group reads ``trivial group`` here, where
        `AbelianGroup.render` gives ``0``.
        """
        group = (
            "trivial group" if self.group.is_trivial else self.group.render()
        )
        return f"{group}, {self.exactness.value}"


def mu_from_cup(space: SpaceData) -> IntMatrix:
    """Compute the matrix of μ as the transpose of the cup product matrix.

    Raises
    ------
    InputError
        Raised if the space data carries no cup product matrix.
    """
    if space.cup is None:
        raise InputError(f"{space.name}: no cup product matrix given")
    cup = IntMatrix.from_rows(space.cup, cols=space.lambda2_rank)
    return cup.transpose()


def mu_matrix(space: SpaceData) -> IntMatrix:
    """The matrix of μ, taken directly or transposed from the cup product."""
    if space.mu is not None:
        return IntMatrix.from_rows(space.mu, cols=space.h2_rank)
    return mu_from_cup(space)


def cup_matrix(space: SpaceData) -> IntMatrix:
    """The matrix of the cup product, taken directly or transposed from μ."""
    if space.cup is not None:
        return IntMatrix.from_rows(space.cup, cols=space.lambda2_rank)
    return mu_matrix(space).transpose()


def second_lcs_quotient(space: SpaceData) -> SecondQuotientResult:
    """Compute D/(D,G) as the cokernel of μ.

    When H₁ is not torsion free the result is tagged
    `Exactness.up_to_finite_kernel`: it is then the image of the canonical
    surjection from D/(D,G), whose kernel is finite but not determined.
    """
    return SecondQuotientResult(
        group=cokernel(mu_matrix(space)),
        exactness=(
            Exactness.exact
            if space.h1_torsion_free
            else Exactness.up_to_finite_kernel
        ),
    )


def rational_rank(space: SpaceData) -> int:
    """Compute the rank of D/(D,G) ⊗ ℚ, that is C(h1_rank, 2) − rank_ℚ(μ)."""
    return space.lambda2_rank - rank(mu_matrix(space))


def ker_cup_dim(space: SpaceData) -> int:
    """Compute dim_ℚ Ker(c_ℚ: Λ²H¹ → H²)."""
    return space.lambda2_rank - rank(cup_matrix(space))


def ker_cup_dim_mod_p(space: SpaceData, p: int) -> int:
    """Compute dim Ker(c: Λ²H¹(X,𝔽_p) → H²(X,𝔽_p)).

    With H₁ torsion free this is the dimension of Hom(D/(D,G), 𝔽_p).

    Raises
    ------
    InputError
        Raised if ``p`` is not a prime.
    """
    return space.lambda2_rank - rank_mod_p(cup_matrix(space), p)
