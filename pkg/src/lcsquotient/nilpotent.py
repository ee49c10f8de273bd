"""γ₂/γ₃ of a finitely presented group, computed in the free class-2
nilpotent group.

Elements of F/γ₃(F), F free on x₁…x_n, have the unique normal form

    x₁^{a₁}⋯x_n^{a_n} · ∏_{i<j} [xᵢ,xⱼ]^{b_ij}

with central commutators [u,v] = u·v·u⁻¹·v⁻¹. The commutator coordinates b
follow the lexicographic pair order of `lcsquotient.exterior.alt2_basis`.
Since x_j·xᵢ = xᵢ·x_j·[xᵢ,x_j]⁻¹ for i < j, collecting a product gives the
bilinear correction Corr(a, a')_ij = −a_j·a'ᵢ.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Annotated, Self

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    field_validator,
    model_validator,
)

from .exceptions import DimensionError, InputError, NotApplicableError
from .exterior import alt2_basis
from .lattice import AbelianGroup, IntMatrix, cokernel, kernel_basis
from .second_quotient import SpaceData, second_lcs_quotient

__all__ = [
    "Class2Element",
    "GroupPresentation",
    "abelianization",
    "bracket_vectors",
    "collection_correction",
    "cross_validate",
    "eval_word",
    "exterior_product",
    "gamma2_mod_gamma3",
    "nf_commutator",
    "nf_inverse",
    "nf_mul",
    "nf_power",
]

Word = Sequence[int]
"""A word in signed generator indices: +i for xᵢ, −i for xᵢ⁻¹."""


class GroupPresentation(BaseModel):
    """A finite presentation ⟨x₁,…,x_n | r₁,…,r_k⟩."""

    model_config = ConfigDict(frozen=True)

    generators: Annotated[
        int, Field(ge=0, description="Number of generators n.")
    ]

    relators: Annotated[
        list[list[int]],
        Field(
            description=(
                "Relator words as signed generator indices (+i for xᵢ, "
                "−i for its inverse)."
            )
        ),
    ] = []

    @field_validator("relators")
    @classmethod
    def check_letters(cls, v: list[list[int]]) -> list[list[int]]:
        if any(letter == 0 for word in v for letter in word):
            raise ValueError("generator index 0 is not allowed")
        return v

    @model_validator(mode="after")
    def check_generator_range(self) -> Self:
        for k, word in enumerate(self.relators):
            for letter in word:
                if abs(letter) > self.generators:
                    raise ValueError(
                        f"relator {k} uses generator {abs(letter)} but only "
                        f"{self.generators} generators exist"
                    )
        return self

    @classmethod
    def free(cls, n: int) -> Self:
        """The free group of rank n."""
        return cls(generators=n, relators=[])


@dataclass(frozen=True)
class Class2Element:
    """An element of the free class-2 nilpotent group in normal form."""

    a: tuple[int, ...]
    """Exponent sums, the image in F/γ₂(F) ≅ ℤⁿ."""

    b: tuple[int, ...]
    """Coefficients on the basic commutators [xᵢ,xⱼ], i < j."""

    def __post_init__(self) -> None:
        if len(self.b) != math.comb(len(self.a), 2):
            raise DimensionError(
                f"Commutator part of length {len(self.b)} for rank "
                f"{len(self.a)}"
            )

    @property
    def n(self) -> int:
        return len(self.a)

    @classmethod
    def identity(cls, n: int) -> Self:
        return cls(a=(0,) * n, b=(0,) * math.comb(n, 2))

    @classmethod
    def generator(cls, n: int, letter: int) -> Self:
        """The normal form of xᵢ (letter = i) or xᵢ⁻¹ (letter = −i)."""
        if letter == 0 or abs(letter) > n:
            raise InputError(f"Generator index {letter} out of range 1..{n}")
        a = [0] * n
        a[abs(letter) - 1] = 1 if letter > 0 else -1
        return cls(a=tuple(a), b=(0,) * math.comb(n, 2))

    @property
    def is_identity(self) -> bool:
        return not any(self.a) and not any(self.b)


def _check_rank(x: Class2Element, y: Class2Element) -> None:
    if x.n != y.n:
        raise DimensionError(f"Elements of ranks {x.n} and {y.n}")


def collection_correction(
    a: Sequence[int], c: Sequence[int]
) -> tuple[int, ...]:
    """The commutator part produced by collecting x^a · x^c."""
    return tuple(-a[j - 1] * c[i - 1] for i, j in alt2_basis(len(a)))


def exterior_product(a: Sequence[int], c: Sequence[int]) -> tuple[int, ...]:
    """The coordinates of a∧c in the lexicographic Λ² basis."""
    return tuple(
        a[i - 1] * c[j - 1] - a[j - 1] * c[i - 1]
        for i, j in alt2_basis(len(a))
    )


def _add(*vectors: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(column) for column in zip(*vectors, strict=True))


def nf_mul(x: Class2Element, y: Class2Element) -> Class2Element:
    """Multiply two normal forms."""
    _check_rank(x, y)
    return Class2Element(
        a=_add(x.a, y.a),
        b=_add(x.b, y.b, collection_correction(x.a, y.a)),
    )


def nf_inverse(x: Class2Element) -> Class2Element:
    """Invert a normal form: (a, b) ↦ (−a, −b + Corr(a, a))."""
    corr = collection_correction(x.a, x.a)
    return Class2Element(
        a=tuple(-v for v in x.a),
        b=tuple(c - v for v, c in zip(x.b, corr, strict=True)),
    )


def nf_power(x: Class2Element, m: int) -> Class2Element:
    """Raise a normal form to an integer power.

    x^m = (m·a, m·b + C(m,2)·Corr(a, a)), which also holds for negative m
    with C(m,2) = m(m−1)/2.
    """
    corr = collection_correction(x.a, x.a)
    half = m * (m - 1) // 2
    return Class2Element(
        a=tuple(m * v for v in x.a),
        b=tuple(m * v + half * c for v, c in zip(x.b, corr, strict=True)),
    )


def nf_commutator(x: Class2Element, y: Class2Element) -> Class2Element:
    """Compute the commutator x·y·x⁻¹·y⁻¹, which is (0, a_x∧a_y)."""
    return nf_mul(nf_mul(nf_mul(x, y), nf_inverse(x)), nf_inverse(y))


def eval_word(word: Word, n: int) -> Class2Element:
    """Evaluate a word in the free class-2 nilpotent group of rank n.

    Raises
    ------
    InputError
        Raised if a letter is out of range.
    """
    result = Class2Element.identity(n)
    for letter in word:
        result = nf_mul(result, Class2Element.generator(n, letter))
    return result


def bracket_vectors(a: Sequence[int]) -> list[tuple[int, ...]]:
    """The commutator parts a∧eᵢ of [r, xᵢ] for r with abelian part a."""
    n = len(a)
    return [
        exterior_product(a, [1 if k == i else 0 for k in range(n)])
        for i in range(n)
    ]


def abelianization(pres: GroupPresentation) -> AbelianGroup:
    """Compute G/(G,G) as the cokernel of the exponent-sum matrix."""
    n = pres.generators
    columns = [eval_word(word, n).a for word in pres.relators]
    return cokernel(IntMatrix.from_columns(columns, rows=n))


def gamma2_mod_gamma3(pres: GroupPresentation) -> AbelianGroup:
    """Compute γ₂(G)/γ₃(G) for a finitely presented group G.

    The normal closure of the relators in F/γ₃(F), intersected with the
    commutator subgroup, is generated by the bracket vectors aₖ∧eᵢ of every
    relator and the commutator parts of the products ∏ₖ rₖ^{cₖ} (taken in
    ascending k) for c running over a basis of the relations Σ cₖ·aₖ = 0.
    The result is ℤ^{C(n,2)} modulo that lattice.
    """
    n = pres.generators
    evaluated = [eval_word(word, n) for word in pres.relators]

    vectors: list[tuple[int, ...]] = []
    for relator in evaluated:
        vectors.extend(bracket_vectors(relator.a))

    relations = kernel_basis(
        IntMatrix.from_columns([r.a for r in evaluated], rows=n)
    )
    for c in relations.columns():
        product = Class2Element.identity(n)
        for relator, exponent in zip(evaluated, c, strict=True):
            product = nf_mul(product, nf_power(relator, exponent))
        if any(product.a):
            raise AssertionError("relation combination left an abelian part")
        vectors.append(product.b)

    return cokernel(IntMatrix.from_columns(vectors, rows=math.comb(n, 2)))


def cross_validate(space: SpaceData, pres: GroupPresentation) -> bool:
    """Compare Coker μ with γ₂/γ₃ computed from a presentation.

    Raises
    ------
    NotApplicableError
        Raised if H₁ has torsion, where the formula determines D/(D,G) only
        up to a finite kernel.
    InputError
        Raised if the presentation's abelianization does not have the
        rank of H₁ recorded in the space data.
    """
    if not space.h1_torsion_free:
        raise NotApplicableError(
            f"{space.name}: H₁ has torsion, cross-validation not applicable"
        )
    h1 = abelianization(pres)
    if h1.torsion:
        raise NotApplicableError(
            f"{space.name}: the presentation has torsion abelianization {h1}"
        )
    if h1.free_rank != space.h1_rank:
        raise InputError(
            f"{space.name}: presentation has H₁ of rank {h1.free_rank}, "
            f"space data has h1_rank {space.h1_rank}"
        )
    return gamma2_mod_gamma3(pres) == second_lcs_quotient(space).group
