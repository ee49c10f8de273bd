"""Exterior algebra over a based lattice ℤ^m.

Elements are stored as coefficient tables on strictly increasing index
tuples. For a symplectic lattice of genus g the ambient basis is ordered
ε₁, δ₁, ε₂, δ₂, …, ε_g, δ_g, so εᵢ is ambient index 2i−1 and δᵢ is 2i, and
the orientation form is ε₁∧δ₁∧…∧ε_g∧δ_g = e₁∧e₂∧…∧e_{2g}.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Self

from .exceptions import DimensionError
from .lattice import IntMatrix

__all__ = [
    "BasisKind",
    "ExtElement",
    "SymplecticBasisLabel",
    "alt2_basis",
    "basis_elements",
    "lambda_basis",
    "pairing_matrix",
    "pd_pair",
    "power",
    "theta",
    "theta_divided",
    "top_key",
    "wedge",
]

Key = tuple[int, ...]


def _sort_with_sign(indices: Sequence[int]) -> tuple[int, Key]:
    """Sort an index tuple, returning the sign of the sorting permutation.

    The sign is 0 when an index repeats.
    """
    if len(set(indices)) != len(indices):
        return 0, ()
    inversions = sum(
        1
        for x, y in itertools.combinations(range(len(indices)), 2)
        if indices[x] > indices[y]
    )
    return (-1 if inversions % 2 else 1), tuple(sorted(indices))


@dataclass(frozen=True)
class ExtElement:
    """A homogeneous element of Λᵏ(ℤ^m).

    Zero coefficients are never stored, so equality of two elements is
    equality of their coefficient tables. A product whose degree exceeds the
    ambient rank is the zero element of that degree.
    """

    ambient_rank: int
    """The rank m of the lattice."""

    degree: int
    """The degree k."""

    coeffs: Mapping[Key, int] = field(default_factory=dict)
    """Coefficients on strictly increasing index tuples in 1..m."""

    def __post_init__(self) -> None:
        if self.ambient_rank < 0 or self.degree < 0:
            raise DimensionError(
                f"Invalid rank {self.ambient_rank} or degree {self.degree}"
            )
        clean: dict[Key, int] = {}
        for key, value in self.coeffs.items():
            if len(key) != self.degree:
                raise DimensionError(
                    f"Key {key} in an element of degree {self.degree}"
                )
            if any(a >= b for a, b in itertools.pairwise(key)):
                raise DimensionError(f"Key {key} is not strictly increasing")
            if key and not (1 <= key[0] and key[-1] <= self.ambient_rank):
                raise DimensionError(
                    f"Key {key} out of range for rank {self.ambient_rank}"
                )
            if value:
                clean[key] = int(value)
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def zero(cls, ambient_rank: int, degree: int) -> Self:
        return cls(ambient_rank=ambient_rank, degree=degree)

    @classmethod
    def unit(cls, ambient_rank: int) -> Self:
        """The multiplicative unit, 1 ∈ Λ⁰."""
        return cls(ambient_rank=ambient_rank, degree=0, coeffs={(): 1})

    @classmethod
    def monomial(cls, ambient_rank: int, indices: Sequence[int]) -> Self:
        """The product e_{i₁}∧…∧e_{i_k} in the given (unsorted) order."""
        sign, key = _sort_with_sign(indices)
        return cls(
            ambient_rank=ambient_rank,
            degree=len(indices),
            coeffs={key: sign} if sign else {},
        )

    @classmethod
    def generator(cls, ambient_rank: int, index: int) -> Self:
        return cls.monomial(ambient_rank, [index])

    def coefficient(self, key: Sequence[int]) -> int:
        return self.coeffs.get(tuple(key), 0)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __iter__(self) -> Iterator[tuple[Key, int]]:
        return iter(sorted(self.coeffs.items()))

    def __len__(self) -> int:
        return len(self.coeffs)

    def _check_compatible(self, other: ExtElement) -> None:
        if (self.ambient_rank, self.degree) != (
            other.ambient_rank,
            other.degree,
        ):
            raise DimensionError(
                f"Cannot add Λ^{self.degree}(ℤ^{self.ambient_rank}) and "
                f"Λ^{other.degree}(ℤ^{other.ambient_rank})"
            )

    def __add__(self, other: ExtElement) -> ExtElement:
        self._check_compatible(other)
        coeffs = dict(self.coeffs)
        for key, value in other.coeffs.items():
            coeffs[key] = coeffs.get(key, 0) + value
        return ExtElement(self.ambient_rank, self.degree, coeffs)

    def __neg__(self) -> ExtElement:
        return -1 * self

    def __sub__(self, other: ExtElement) -> ExtElement:
        return self + (-other)

    def __rmul__(self, scalar: int) -> ExtElement:
        return ExtElement(
            self.ambient_rank,
            self.degree,
            {key: scalar * value for key, value in self.coeffs.items()},
        )

    def __xor__(self, other: ExtElement) -> ExtElement:
        return wedge(self, other)


class BasisKind(StrEnum):
    """The two halves of a symplectic basis."""

    epsilon = "epsilon"
    delta = "delta"


@dataclass(frozen=True)
class SymplecticBasisLabel:
    """A vector εᵢ or δᵢ of a symplectic basis of genus g."""

    genus: int
    index: int
    kind: BasisKind

    def __post_init__(self) -> None:
        if not 1 <= self.index <= self.genus:
            raise DimensionError(
                f"Index {self.index} out of range for genus {self.genus}"
            )

    @classmethod
    def from_ambient_index(cls, genus: int, ambient_index: int) -> Self:
        kind = BasisKind.epsilon if ambient_index % 2 else BasisKind.delta
        return cls(genus, (ambient_index + 1) // 2, kind)

    @property
    def ambient_index(self) -> int:
        if self.kind is BasisKind.epsilon:
            return 2 * self.index - 1
        return 2 * self.index

    def element(self) -> ExtElement:
        return ExtElement.generator(2 * self.genus, self.ambient_index)

    def __str__(self) -> str:
        symbol = "ε" if self.kind is BasisKind.epsilon else "δ"
        return f"{symbol}{self.index}"


def wedge(a: ExtElement, b: ExtElement) -> ExtElement:
    """Compute the wedge product a∧b.

    Raises
    ------
    DimensionError
        Raised if the ambient ranks differ.
    """
    if a.ambient_rank != b.ambient_rank:
        raise DimensionError(
            f"Wedge of elements over ℤ^{a.ambient_rank} and "
            f"ℤ^{b.ambient_rank}"
        )
    m = a.ambient_rank
    degree = a.degree + b.degree
    if degree > m:
        return ExtElement.zero(m, degree)
    coeffs: dict[Key, int] = {}
    for key_a, value_a in a.coeffs.items():
        for key_b, value_b in b.coeffs.items():
            sign, key = _sort_with_sign(key_a + key_b)
            if sign:
                coeffs[key] = coeffs.get(key, 0) + sign * value_a * value_b
    return ExtElement(m, degree, coeffs)


def power(a: ExtElement, k: int) -> ExtElement:
    """Compute the k-fold wedge power a∧…∧a (the unit for k = 0)."""
    if k < 0:
        raise DimensionError(f"Negative exponent {k}")
    result = ExtElement.unit(a.ambient_rank)
    for _ in range(k):
        result = wedge(result, a)
    return result


def theta(g: int) -> ExtElement:
    """Compute θ = Σᵢ εᵢ∧δᵢ on the symplectic lattice of genus g."""
    if g < 0:
        raise DimensionError(f"Negative genus {g}")
    return ExtElement(
        2 * g, 2, {(2 * i - 1, 2 * i): 1 for i in range(1, g + 1)}
    )


def theta_divided(g: int, k: int) -> ExtElement:
    """Compute the divided power θᵏ/k!.

    It is the sum over k-subsets S of {1..g} of ∧_{i∈S} εᵢ∧δᵢ, so every
    coefficient is 1. Above the top degree (k > g) it is zero.
    """
    if g < 0 or k < 0:
        raise DimensionError(f"Invalid genus {g} or exponent {k}")
    coeffs = {
        tuple(
            itertools.chain.from_iterable((2 * i - 1, 2 * i) for i in subset)
        ): 1
        for subset in itertools.combinations(range(1, g + 1), k)
    }
    return ExtElement(2 * g, 2 * k, coeffs)


def top_key(ambient_rank: int) -> Key:
    """The key of the orientation form e₁∧…∧e_m."""
    return tuple(range(1, ambient_rank + 1))


def pd_pair(a: ExtElement, b: ExtElement) -> int:
    """Compute the Poincaré duality pairing of a and b.

    This is the coefficient of the orientation form in a∧b.

    Raises
    ------
    DimensionError
        Raised if the ambient ranks differ or the degrees do not add up to
        the ambient rank.
    """
    if a.ambient_rank != b.ambient_rank:
        raise DimensionError(
            f"Pairing elements over ℤ^{a.ambient_rank} and "
            f"ℤ^{b.ambient_rank}"
        )
    if a.degree + b.degree != a.ambient_rank:
        raise DimensionError(
            f"Degrees {a.degree} + {b.degree} do not add up to "
            f"{a.ambient_rank}"
        )
    return wedge(a, b).coefficient(top_key(a.ambient_rank))


def lambda_basis(m: int, k: int) -> list[Key]:
    """The lexicographically ordered basis of Λᵏ(ℤ^m)."""
    return list(itertools.combinations(range(1, m + 1), k))


def alt2_basis(m: int) -> list[tuple[int, int]]:
    """The C(m,2) index pairs (i, j), i < j, in lexicographic order.

    This ordering fixes the coordinates of every matrix over Λ² in the
    package.
    """
    return [(i, j) for i, j in lambda_basis(m, 2)]


def basis_elements(m: int, keys: Iterable[Key]) -> list[ExtElement]:
    """The unit monomials with the given sorted index keys."""
    return [ExtElement(m, len(key), {key: 1}) for key in keys]


def pairing_matrix(g: int, k: int) -> IntMatrix:
    """The matrix of the pairing Λᵏ × Λ^{2g−k} → ℤ in lexicographic bases."""
    m = 2 * g
    left = basis_elements(m, lambda_basis(m, k))
    right = basis_elements(m, lambda_basis(m, m - k))
    return IntMatrix.from_rows(
        [[pd_pair(a, b) for b in right] for a in left], cols=len(right)
    )
