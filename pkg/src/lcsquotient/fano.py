"""The Fano surface of a smooth cubic threefold.

F embeds in its Albanese variety A, a principally polarized abelian
fivefold. With H¹(A,ℤ) ≅ ℤ¹⁰ in a symplectic basis, H²(A,ℤ) = Λ²H¹ has rank
45, and the composite a_*∘a*: H²(A) → H²(F) → H⁸(A) is cup product with the
class [F] = θ³/3!. Under Poincaré duality it becomes the symmetric form
b(α, β) = α∧β∧θ³/3!, whose discriminant is 4. Since |det a*| = |det a_*|,
both maps have index 2, and D/(D,G) ≅ Coker a_* ≅ ℤ/2.

Geometric inputs are recorded in `FanoConstants` and never derived.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from functools import cache
from typing import Annotated

import structlog
from pydantic import BaseModel, ConfigDict, Field
from sympy import isprime

from .exceptions import DimensionError, FanoInconsistencyError
from .exterior import (
    BasisKind,
    ExtElement,
    SymplecticBasisLabel,
    alt2_basis,
    basis_elements,
    pd_pair,
    power,
    theta,
    theta_divided,
    wedge,
)
from .lattice import AbelianGroup, IntMatrix, det, det_abs
from .reports import CheckReport
from .second_quotient import Exactness, SecondQuotientResult

__all__ = [
    "FANO",
    "FanoConstants",
    "b_form",
    "build_b_matrix",
    "cup_sequence_check",
    "det_f",
    "fano_report",
    "fano_second_quotient",
    "image_index",
    "m_basis",
    "m_block",
    "m_dual_basis",
    "n_basis",
    "parity_check",
    "rank1_det_formula",
    "rank1_det_identity",
    "verify_block_decomposition",
]

logger = structlog.get_logger(__name__)

LabelledElement = tuple[str, ExtElement]


class FanoConstants(BaseModel):
    """Facts about the Fano surface taken from the literature."""

    model_config = ConfigDict(frozen=True)

    genus: Annotated[
        int,
        Field(
            ge=2,
            description="Dimension of A; H¹(A,ℤ) has rank 2·genus.",
        ),
    ] = 5

    det_astar_equals_det_alower: Annotated[
        bool,
        Field(
            description=(
                "|det a*| = |det a_*| ≠ 0 (Clemens–Griffiths)."
            )
        ),
    ] = True

    c_self_intersection: Annotated[
        int,
        Field(
            description=(
                "(C²) for the curve C of lines meeting a fixed line: the "
                "number of lines meeting two skew lines on a cubic surface."
            )
        ),
    ] = 5

    class_of_f_power: Annotated[
        int,
        Field(
            description=(
                "k with [F] = θᵏ/k! in H⁶(A,ℤ) (Clemens–Griffiths)."
            )
        ),
    ] = 3

    a_push_c_multiple: Annotated[
        int,
        Field(
            description=(
                "m with a_*[C] = m·θ⁴/4! in H⁸(A,ℤ) "
                "(Clemens–Griffiths)."
            )
        ),
    ] = 2

    h1_torsion_free: Annotated[
        bool,
        Field(description="H₁(F,ℤ) is torsion free (Collino)."),
    ] = True

    def class_of_f(self) -> ExtElement:
        """The class [F] = θ³/3!."""
        return theta_divided(self.genus, self.class_of_f_power)

    def a_push_c(self) -> ExtElement:
        """The class a_*[C] = 2·θ⁴/4!, in general m·θ^(g−1)/(g−1)!."""
        return self.a_push_c_multiple * theta_divided(
            self.genus, self.genus - 1
        )

    @property
    def rank(self) -> int:
        """Rank of H¹(A,ℤ)."""
        return 2 * self.genus


FANO = FanoConstants()
"""The recorded Fano surface constants."""


def _pair(
    genus: int, first: tuple[BasisKind, int], second: tuple[BasisKind, int]
) -> LabelledElement:
    u = SymplecticBasisLabel(genus, first[1], first[0])
    v = SymplecticBasisLabel(genus, second[1], second[0])
    return f"{u}∧{v}", wedge(u.element(), v.element())


def b_form(
    u: ExtElement, v: ExtElement, constants: FanoConstants = FANO
) -> int:
    """Evaluate b(u, v) = pd(u∧v∧[F]) on two elements of H²(A,ℤ)."""
    if u.degree != 2 or v.degree != 2:
        raise DimensionError("b is defined on degree-2 elements")
    return pd_pair(wedge(u, v), constants.class_of_f())


def _gram(
    left: list[ExtElement],
    right: list[ExtElement],
    constants: FanoConstants = FANO,
) -> IntMatrix:
    f_class = constants.class_of_f()
    return IntMatrix.from_rows(
        [[pd_pair(wedge(u, v), f_class) for v in right] for u in left],
        cols=len(right),
    )


@cache
def build_b_matrix(constants: FanoConstants = FANO) -> IntMatrix:
    """Build the 45×45 matrix of b in the lexicographic basis of Λ²(ℤ¹⁰)."""
    basis = basis_elements(constants.rank, alt2_basis(constants.rank))
    return _gram(basis, basis, constants)


def m_basis(genus: int = FANO.genus) -> list[LabelledElement]:
    """The spanning family of M: εᵢ∧εⱼ, δᵢ∧δⱼ (i < j), εᵢ∧δⱼ (i ≠ j)."""
    eps, dlt = BasisKind.epsilon, BasisKind.delta
    indices = range(1, genus + 1)
    family = [
        _pair(genus, (eps, i), (eps, j))
        for i in indices
        for j in indices
        if i < j
    ]
    family += [
        _pair(genus, (dlt, i), (dlt, j))
        for i in indices
        for j in indices
        if i < j
    ]
    family += [
        _pair(genus, (eps, i), (dlt, j))
        for i in indices
        for j in indices
        if i != j
    ]
    return family


def m_dual_basis(genus: int = FANO.genus) -> list[LabelledElement]:
    """The b-dual family of `m_basis`: −δᵢ∧δⱼ, −εᵢ∧εⱼ, −εⱼ∧δᵢ."""
    eps, dlt = BasisKind.epsilon, BasisKind.delta
    indices = range(1, genus + 1)
    family = [
        _pair(genus, (dlt, i), (dlt, j))
        for i in indices
        for j in indices
        if i < j
    ]
    family += [
        _pair(genus, (eps, i), (eps, j))
        for i in indices
        for j in indices
        if i < j
    ]
    family += [
        _pair(genus, (eps, j), (dlt, i))
        for i in indices
        for j in indices
        if i != j
    ]
    return [(f"−{label}", -element) for label, element in family]


def n_basis(genus: int = FANO.genus) -> list[LabelledElement]:
    """The basis εᵢ∧δᵢ of N."""
    return [
        _pair(genus, (BasisKind.epsilon, i), (BasisKind.delta, i))
        for i in range(1, genus + 1)
    ]


def _elements(family: list[LabelledElement]) -> list[ExtElement]:
    return [element for _, element in family]


def m_block(constants: FanoConstants = FANO) -> IntMatrix:
    """The Gram matrix of b on the M spanning family."""
    m = _elements(m_basis(constants.genus))
    return _gram(m, m, constants)


def n_block(constants: FanoConstants = FANO) -> IntMatrix:
    """The Gram matrix of b on the N spanning family, equal to E−I."""
    n = _elements(n_basis(constants.genus))
    return _gram(n, n, constants)


def det_f(constants: FanoConstants = FANO) -> int:
    """Compute |det f|, the absolute discriminant of b."""
    return det_abs(build_b_matrix(constants))


def rank1_det_formula(
    u: Sequence[int], v: Sequence[int]
) -> tuple[int, int]:
    """Compare det(u·vᵀ − I) with the formula (−1)ⁿ(1 − vᵀu).

    Returns the signed direct determinant and the signed formula.

    Raises
    ------
    DimensionError
        Raised if u and v are empty or of different lengths.
    """
    n = len(u)
    if n < 1 or len(v) != n:
        raise DimensionError(
            f"Need two nonempty vectors of equal length, got {n} and {len(v)}"
        )
    outer = IntMatrix.from_columns([u], rows=n) @ IntMatrix.from_rows([v])
    trace = sum(a * b for a, b in zip(u, v, strict=True))
    return det(outer - IntMatrix.identity(n)), (-1) ** n * (1 - trace)


def rank1_det_identity(n: int) -> tuple[int, int]:
    """Compare det(E−I) with the rank-1 formula (−1)ⁿ(1 − Tr E).

    E is the n×n matrix of ones. Returns the absolute values of the direct
    determinant and of the formula, which must agree.
    """
    if n < 1:
        raise DimensionError(f"Matrix size must be at least 1, got {n}")
    direct, formula = rank1_det_formula([1] * n, [1] * n)
    return abs(direct), abs(formula)


def verify_block_decomposition(
    constants: FanoConstants = FANO,
) -> CheckReport:
    """Check the orthogonal decomposition H²(A,ℤ) = M ⊕ N under b."""
    report = CheckReport(title="Block decomposition of b")
    m = _elements(m_basis(constants.genus))
    n = _elements(n_basis(constants.genus))
    dual = _elements(m_dual_basis(constants.genus))

    cross = _gram(m, n, constants)
    report.check(
        "cross_block_orthogonal",
        all(x == 0 for row in cross.entries for x in row),
        f"{cross.rows}×{cross.cols} cross block",
    )

    pairing = _gram(m, dual, constants)
    report.check(
        "m_dual_basis_identity",
        pairing == IntMatrix.identity(len(m)),
        "b(M basis, claimed dual family) is the identity",
    )

    n_matrix = n_block(constants)
    expected = IntMatrix.all_ones(len(n)) - IntMatrix.identity(len(n))
    report.check("n_block_is_e_minus_i", n_matrix == expected)

    det_m = det_abs(m_block(constants))
    det_n = det_abs(n_matrix)
    report.values["det(M-block)"] = str(det_m)
    report.values["det(N-block)"] = str(det_n)
    report.check("m_block_unimodular", det_m == 1, f"|det| = {det_m}")
    report.check("n_block_det", det_n == 4, f"|det| = {det_n}")
    total = det_f(constants)
    report.check(
        "block_product_equals_det_f",
        det_m * det_n == total,
        f"{det_m} × {det_n} = {total}",
    )
    return report


def image_index(constants: FanoConstants = FANO) -> int:
    """Compute the index of the images of a* and a_*.

    Raises
    ------
    FanoInconsistencyError
        Raised if |det a*| = |det a_*| is not recorded or det_f is not the
        square of an integer.
    """
    if not constants.det_astar_equals_det_alower:
        raise FanoInconsistencyError("|det a*| = |det a_*| is not recorded")
    total = det_f(constants)
    index = math.isqrt(total)
    if total == 0 or index * index != total:
        raise FanoInconsistencyError(
            f"det_f = {total} is not a nonzero perfect square"
        )
    return index


def fano_second_quotient(
    constants: FanoConstants = FANO,
) -> SecondQuotientResult:
    """Derive D/(D,G) ≅ ℤ/2 for the Fano surface.

    det_f = 4 and |det a*| = |det a_*| give |det a_*| = 2, so Coker a_*, which
    is Coker μ, has order 2 and is cyclic.

    Raises
    ------
    FanoInconsistencyError
        Raised if any step of the derivation fails.
    """
    total = det_f(constants)
    if total != 4:
        raise FanoInconsistencyError(f"det_f = {total}, expected 4")
    index = image_index(constants)
    if not isprime(index):
        raise FanoInconsistencyError(
            f"Coker a_* has order {index}, cyclicity is not forced"
        )
    logger.debug("Derived Fano cokernel order", det_f=total, index=index)
    return SecondQuotientResult(
        group=AbelianGroup(torsion=(index,)),
        exactness=(
            Exactness.exact
            if constants.h1_torsion_free
            else Exactness.up_to_finite_kernel
        ),
    )


def parity_check(constants: FanoConstants = FANO) -> CheckReport:
    """Check the parity facts behind image(a*) = Ker d."""
    report = CheckReport(title="Parity of a_*[C]")
    basis = basis_elements(constants.rank, alt2_basis(constants.rank))
    push = constants.a_push_c()
    odd = [
        key
        for key, alpha in zip(alt2_basis(constants.rank), basis, strict=True)
        if pd_pair(alpha, push) % 2
    ]
    report.check(
        "pairing_with_a_push_c_even",
        not odd,
        f"{len(basis)} basis elements, odd pairings at {odd}",
    )
    report.check(
        "c_self_intersection_odd",
        constants.c_self_intersection % 2 == 1,
        f"(C²) = {constants.c_self_intersection}",
    )
    k = constants.genus - 1
    divided = theta_divided(constants.genus, k)
    report.check(
        "theta4_divided_integral",
        set(divided.coeffs.values()) == {1}
        and len(divided) == math.comb(constants.genus, k)
        and math.factorial(k) * divided == power(theta(constants.genus), k),
        f"{len(divided)} unit coefficients",
    )
    return report


def cup_sequence_check(constants: FanoConstants = FANO) -> CheckReport:
    """Check 0 → Λ²H¹(F) → H²(F) → ℤ/2 → 0, with d(α) = (α·[C]) mod 2.

    The image of c = a* has index `image_index`; d is onto ℤ/2 because (C²)
    is odd, and vanishes on the image because a_*[C] is even.
    """
    report = CheckReport(title="Cup product sequence")
    parity = parity_check(constants)
    try:
        index = image_index(constants)
    except FanoInconsistencyError as e:
        report.check("index_is_two", False, str(e))
    else:
        report.values["index of image(c)"] = str(index)
        report.check("index_is_two", index == 2, f"index {index}")
    report.check(
        "d_vanishes_on_image",
        all(
            check.passed
            for check in parity.checks
            if check.name == "pairing_with_a_push_c_even"
        ),
    )
    report.check(
        "d_surjective", constants.c_self_intersection % 2 == 1
    )
    return report


def fano_report(constants: FanoConstants = FANO) -> CheckReport:
    """Run the complete Fano surface computation."""
    log = logger.bind(task="fano")
    report = CheckReport(title="Fano surface of a cubic threefold")

    b = build_b_matrix(constants)
    total = det_f(constants)
    report.values["det_f"] = str(total)
    report.check(
        "b_symmetric", b == b.transpose(), f"{b.rows}×{b.cols} matrix"
    )
    report.check("det_f_is_four", total == 4)
    log.info("Computed discriminant of b", det_f=total)

    report.extend(verify_block_decomposition(constants))

    direct, formula = rank1_det_identity(constants.genus)
    report.values[f"det(E-I), n={constants.genus}"] = str(direct)
    report.check(
        "rank1_det_identity", direct == formula == 4, f"{direct} = {formula}"
    )

    try:
        result = fano_second_quotient(constants)
    except FanoInconsistencyError as e:
        report.check("fano_second_quotient", False, str(e))
    else:
        report.values["|det a*| = |det a_*|"] = str(image_index(constants))
        report.values["D/(D,G)"] = result.group.render()
        report.values["exactness"] = result.exactness.value
        report.check(
            "fano_second_quotient",
            result.group == AbelianGroup(torsion=(2,)),
            result.render(),
        )

    report.extend(parity_check(constants))
    report.extend(cup_sequence_check(constants))
    log.info("Fano report complete", passed=report.passed)
    return report
