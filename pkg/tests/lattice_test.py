"""Tests for the integer lattice module."""

from __future__ import annotations

import random

import pytest
from pydantic import ValidationError

from lcsquotient.exceptions import DimensionError, InputError
from lcsquotient.lattice import (
    AbelianGroup,
    IntMatrix,
    cokernel,
    det,
    det_abs,
    is_unimodular,
    kernel_basis,
    nearest_quotient,
    rank,
    rank_mod_p,
    snf,
)
from lcsquotient.properties import (
    cokernel_invariance_suite,
    kernel_suite,
    random_matrix,
    snf_suite,
)
from tests.support.oracle import cokernel_by_minors


def test_snf_known_matrix() -> None:
    a = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    form = snf(a)
    assert form.invariants == (2, 6, 12)
    assert form.U @ a @ form.V == form.D
    assert form.D == IntMatrix.diagonal([2, 6, 12])
    assert is_unimodular(form.U)
    assert is_unimodular(form.V)


def test_snf_divisibility_needs_row_fix() -> None:
    # diag(2, 3) is diagonal but not in Smith form.
    form = snf(IntMatrix.diagonal([2, 3]))
    assert form.invariants == (1, 6)
    assert form.U @ IntMatrix.diagonal([2, 3]) @ form.V == form.D


def test_snf_negative_and_rectangular() -> None:
    a = IntMatrix.from_rows([[0, -4, 0], [0, 0, -6]])
    form = snf(a)
    assert form.invariants == (2, 12)
    assert form.D.shape == (2, 3)
    assert form.U @ a @ form.V == form.D
    assert form.rank == 2


def test_snf_empty_shapes() -> None:
    for rows, cols in [(0, 0), (0, 3), (3, 0)]:
        a = IntMatrix.zeros(rows, cols)
        form = snf(a)
        assert form.invariants == ()
        assert form.U == IntMatrix.identity(rows)
        assert form.V == IntMatrix.identity(cols)


@pytest.mark.parametrize(
    ("rows", "expected"),
    [
        ([[1]], AbelianGroup()),
        ([[2, 0], [0, 3]], AbelianGroup(torsion=(6,))),
        ([[2, 0], [0, 4]], AbelianGroup(torsion=(2, 4))),
        ([[0, 0], [0, 0], [0, 0]], AbelianGroup(free_rank=3)),
        ([[2], [0]], AbelianGroup(free_rank=1, torsion=(2,))),
        ([[1, 2], [2, 4]], AbelianGroup(free_rank=1)),
    ],
)
def test_cokernel(rows: list[list[int]], expected: AbelianGroup) -> None:
    assert cokernel(IntMatrix.from_rows(rows)) == expected


def test_cokernel_without_columns() -> None:
    assert cokernel(IntMatrix.zeros(4, 0)) == AbelianGroup(free_rank=4)
    assert cokernel(IntMatrix.zeros(0, 4)).is_trivial


def test_cokernel_matches_determinantal_divisors(rng: random.Random) -> None:
    for _ in range(60):
        a = random_matrix(
            rng,
            rng.randint(1, 4),
            rng.randint(1, 4),
            deficient=rng.random() < 0.3,
        )
        assert cokernel(a) == cokernel_by_minors(a), a


def test_det_abs() -> None:
    assert det_abs(IntMatrix.from_rows([[1, 2], [3, 4]])) == 2
    assert det_abs(IntMatrix.from_rows([[1, 2], [2, 4]])) == 0
    assert det_abs(IntMatrix.identity(0)) == 1
    with pytest.raises(DimensionError):
        det_abs(IntMatrix.zeros(2, 3))


def test_det() -> None:
    assert det(IntMatrix.from_rows([[1, 2], [3, 4]])) == -2
    assert det(IntMatrix.from_rows([[0, 1], [1, 0]])) == -1
    assert det(IntMatrix.diagonal([2, -3, 5])) == -30
    assert det(IntMatrix.identity(0)) == 1
    with pytest.raises(DimensionError):
        det(IntMatrix.zeros(3, 2))


@pytest.mark.parametrize(
    ("a", "b", "expected"),
    [(7, 2, 3), (-7, 2, -4), (5, 3, 2), (4, 3, 1), (-5, 3, -2), (9, -4, -2)],
)
def test_nearest_quotient(a: int, b: int, expected: int) -> None:
    assert nearest_quotient(a, b) == expected


def test_nearest_quotient_remainder_bound(rng: random.Random) -> None:
    for _ in range(500):
        b = rng.choice([-1, 1]) * rng.randint(1, 50)
        a = rng.randint(-1000, 1000)
        q = nearest_quotient(a, b)
        assert 2 * abs(a - q * b) <= abs(b)


def test_snf_transform_entries_stay_small() -> None:
    # Consecutive Fibonacci columns drive a long Euclidean chain.
    a = IntMatrix.from_rows([[987, 610]])
    form = snf(a)
    assert form.U @ a @ form.V == form.D
    assert form.invariants == (1,)
    assert sorted(map(abs, form.V.column(1))) == [610, 987]
    assert is_unimodular(form.U)
    assert is_unimodular(form.V)
    entries = [abs(x) for row in form.V.tolist() for x in row]
    assert max(entries) <= 987


def test_kernel_basis() -> None:
    a = IntMatrix.from_rows([[2, 4]])
    k = kernel_basis(a)
    assert k.shape == (2, 1)
    assert a @ k == IntMatrix.zeros(1, 1)
    # Primitive: ±(−2, 1), not a multiple of it.
    assert abs(k[1, 0]) == 1
    assert abs(k[0, 0]) == 2

    assert kernel_basis(IntMatrix.identity(3)).shape == (3, 0)
    assert kernel_basis(IntMatrix.zeros(2, 3)).cols == 3


def test_rank() -> None:
    assert rank(IntMatrix.from_rows([[2, 4], [1, 2]])) == 1
    assert rank(IntMatrix.zeros(0, 5)) == 0
    assert rank_mod_p(IntMatrix.diagonal([2, 2]), 2) == 0
    assert rank_mod_p(IntMatrix.diagonal([2, 2]), 3) == 2
    with pytest.raises(InputError):
        rank_mod_p(IntMatrix.identity(2), 4)


def test_is_unimodular() -> None:
    assert is_unimodular(IntMatrix.from_rows([[2, 1], [1, 1]]))
    assert not is_unimodular(IntMatrix.from_rows([[2, 0], [0, 1]]))
    assert not is_unimodular(IntMatrix.zeros(1, 2))


def test_matrix_shape_errors() -> None:
    with pytest.raises(DimensionError):
        IntMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(DimensionError):
        IntMatrix.identity(2) @ IntMatrix.identity(3)
    with pytest.raises(DimensionError):
        IntMatrix.from_columns([[1, 2]], rows=3)


def test_matrix_algebra() -> None:
    a = IntMatrix.from_rows([[1, 2], [3, 4]])
    assert a.transpose() == IntMatrix.from_rows([[1, 3], [2, 4]])
    assert a.apply([1, -1]) == (-1, -1)
    assert a - a == IntMatrix.zeros(2, 2)
    assert -a + a == IntMatrix.zeros(2, 2)
    assert a.hstack(IntMatrix.zeros(2, 1)).shape == (2, 3)
    assert IntMatrix.from_columns(list(a.columns()), rows=2) == a
    assert a @ IntMatrix.identity(2) == a
    assert a @ a == IntMatrix.from_rows([[7, 10], [15, 22]])
    empty = IntMatrix.zeros(0, 2)
    product = IntMatrix.zeros(2, 0) @ IntMatrix.zeros(0, 3)
    assert product == IntMatrix.zeros(2, 3)
    assert empty + empty == empty
    with pytest.raises(DimensionError):
        a + IntMatrix.zeros(2, 3)


def test_abelian_group_validation() -> None:
    with pytest.raises(ValidationError):
        AbelianGroup(torsion=(2, 3))
    with pytest.raises(ValidationError):
        AbelianGroup(torsion=(1, 2))
    with pytest.raises(ValidationError):
        AbelianGroup(free_rank=-1)


def test_abelian_group_properties() -> None:
    group = AbelianGroup(free_rank=2, torsion=(2, 4))
    assert group.render() == "Z^2 x Z/2 x Z/4"
    assert str(group) == "Z^2 x Z/2 x Z/4"
    assert group.order is None
    assert group.hom_rank_mod_p(2) == 4
    assert group.hom_rank_mod_p(3) == 2
    assert AbelianGroup(torsion=(2, 4)).order == 8
    assert AbelianGroup().render() == "0"
    assert AbelianGroup().order == 1
    assert AbelianGroup().is_trivial


def test_abelian_group_json() -> None:
    group = AbelianGroup(free_rank=1, torsion=(3,))
    assert AbelianGroup.model_validate_json(group.model_dump_json()) == group


def test_property_suites(rng: random.Random) -> None:
    for report in (
        snf_suite(rng, 40, max_dim=8),
        cokernel_invariance_suite(rng, 30, max_dim=6),
        kernel_suite(rng, 30, max_dim=6),
    ):
        assert report.passed, report.render()
