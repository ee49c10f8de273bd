"""Tests for the Fano surface computation."""

from __future__ import annotations

import random

import pytest

from lcsquotient.exceptions import DimensionError, FanoInconsistencyError
from lcsquotient.exterior import ExtElement, theta_divided
from lcsquotient.fano import (
    FANO,
    FanoConstants,
    b_form,
    build_b_matrix,
    cup_sequence_check,
    det_f,
    fano_report,
    fano_second_quotient,
    image_index,
    m_basis,
    m_block,
    m_dual_basis,
    n_basis,
    n_block,
    parity_check,
    rank1_det_formula,
    rank1_det_identity,
    verify_block_decomposition,
)
from lcsquotient.lattice import (
    AbelianGroup,
    IntMatrix,
    cokernel,
    det_abs,
    snf,
)
from lcsquotient.properties import random_unimodular, rank1_suite
from tests.support.oracle import cokernel_by_minors
from lcsquotient.second_quotient import Exactness


def test_b_matrix() -> None:
    b = build_b_matrix()
    assert b.shape == (45, 45)
    assert b == b.transpose()
    assert det_f() == 4
    # The discriminant group is cyclic, from the N-block E−I.
    assert cokernel(b) == AbelianGroup(torsion=(4,))


def test_b_form() -> None:
    e1d1 = ExtElement(10, 2, {(1, 2): 1})
    e2d2 = ExtElement(10, 2, {(3, 4): 1})
    e1e2 = ExtElement(10, 2, {(1, 3): 1})
    d1d2 = ExtElement(10, 2, {(2, 4): 1})
    assert b_form(e1d1, e1d1) == 0
    assert b_form(e1d1, e2d2) == 1
    assert b_form(e1e2, d1d2) == -1
    with pytest.raises(DimensionError):
        b_form(ExtElement.unit(10), e1d1)


def test_bases() -> None:
    assert len(m_basis()) == 40
    assert len(m_dual_basis()) == 40
    assert len(n_basis()) == 5
    labels = [label for label, _ in m_basis()]
    assert labels[0] == "ε1∧ε2"
    assert "ε1∧δ2" in labels
    assert "ε1∧δ1" not in labels
    assert [label for label, _ in n_basis()][0] == "ε1∧δ1"
    assert m_dual_basis()[0][0] == "−δ1∧δ2"


def test_block_decomposition() -> None:
    report = verify_block_decomposition()
    assert report.passed, report.render()
    names = {check.name for check in report.checks}
    assert {
        "cross_block_orthogonal",
        "m_dual_basis_identity",
        "n_block_is_e_minus_i",
        "m_block_unimodular",
        "n_block_det",
    } <= names


@pytest.mark.parametrize("n", range(1, 9))
def test_rank1_det_identity(n: int) -> None:
    direct, formula = rank1_det_identity(n)
    assert direct == formula == abs(1 - n)


def test_rank1_det_identity_genus() -> None:
    assert rank1_det_identity(5) == (4, 4)
    with pytest.raises(DimensionError):
        rank1_det_identity(0)
    assert rank1_suite().passed


def test_fano_second_quotient() -> None:
    result = fano_second_quotient()
    assert result.group == AbelianGroup(torsion=(2,))
    assert result.exactness is Exactness.exact
    assert image_index() == 2


def test_inconsistent_constants() -> None:
    constants = FanoConstants(det_astar_equals_det_alower=False)
    with pytest.raises(FanoInconsistencyError):
        image_index(constants)
    with pytest.raises(FanoInconsistencyError):
        fano_second_quotient(constants)


def test_constants() -> None:
    assert FANO.rank == 10
    assert FANO.class_of_f() == theta_divided(5, 3)
    assert FANO.a_push_c() == 2 * theta_divided(5, 4)
    assert len(FANO.class_of_f()) == 10


def test_parity_check() -> None:
    report = parity_check()
    assert report.passed, report.render()

    odd = parity_check(FanoConstants(c_self_intersection=4))
    assert not odd.passed
    assert [check.name for check in odd.failures] == [
        "c_self_intersection_odd"
    ]

    halved = parity_check(FanoConstants(a_push_c_multiple=1))
    assert [check.name for check in halved.failures] == [
        "pairing_with_a_push_c_even"
    ]


def test_cup_sequence_check() -> None:
    report = cup_sequence_check()
    assert report.passed, report.render()
    assert report.values["index of image(c)"] == "2"


def test_fano_report() -> None:
    report = fano_report()
    assert report.passed, report.render()
    assert report.values["det_f"] == "4"
    assert report.values["D/(D,G)"] == "Z/2"
    text = report.render()
    assert "det_f = 4" in text
    assert "D/(D,G) = Z/2" in text


def test_n_block_is_e_minus_i() -> None:
    assert n_block() == IntMatrix.all_ones(5) - IntMatrix.identity(5)


def test_n_block_factors() -> None:
    assert snf(n_block()).invariants == (1, 1, 1, 1, 4)
    assert cokernel_by_minors(n_block()) == AbelianGroup(torsion=(4,))


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_det_f_basis_invariant(seed: int) -> None:
    rng = random.Random(seed)
    u = random_unimodular(rng, 45, steps=40)
    b = build_b_matrix()
    assert det_abs(u.transpose() @ b @ u) == 4


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_m_block_ordering(seed: int) -> None:
    rng = random.Random(seed)
    family = [element for _, element in m_basis()]
    order = list(range(len(family)))
    rng.shuffle(order)
    shuffled = [family[k] for k in order]
    gram = IntMatrix.from_rows(
        [[b_form(u, v) for v in shuffled] for u in shuffled]
    )
    block = m_block()
    assert all(
        gram[i, j] == block[order[i], order[j]]
        for i in range(len(order))
        for j in range(len(order))
    )
    assert det_abs(gram) == 1


@pytest.mark.parametrize(
    ("u", "v", "expected"),
    [
        ([1, 1, 1], [1, 1, 1], 2),
        ([2, -1], [3, 4], -1),
        ([0, 0, 0, 0], [1, 2, 3, 4], 1),
        ([-3], [2], -7),
    ],
)
def test_rank1_det_formula(u: list[int], v: list[int], expected: int) -> None:
    assert rank1_det_formula(u, v) == (expected, expected)


def test_rank1_det_formula_random(rng: random.Random) -> None:
    for _ in range(100):
        n = rng.randint(1, 7)
        u = [rng.randint(-5, 5) for _ in range(n)]
        v = [rng.randint(-5, 5) for _ in range(n)]
        direct, formula = rank1_det_formula(u, v)
        assert direct == formula
    with pytest.raises(DimensionError):
        rank1_det_formula([1, 2], [1])
    assert rank1_suite(rng, 100).passed


def test_constants_are_used() -> None:
    # Genus 4 with [F] = θ²/2! gives N = E−I of size 4, so det_f = 3.
    other = FanoConstants(genus=4, class_of_f_power=2)
    assert det_f(other) == 3
    assert n_block(other) == IntMatrix.all_ones(4) - IntMatrix.identity(4)
    assert verify_block_decomposition(other).values["det(N-block)"] == "3"
    with pytest.raises(FanoInconsistencyError):
        image_index(other)
    with pytest.raises(FanoInconsistencyError):
        fano_second_quotient(other)
    report = fano_report(other)
    assert not report.passed
    assert report.values["det_f"] == "3"
    failed = {check.name for check in report.failures}
    assert {"det_f_is_four", "fano_second_quotient", "index_is_two"} <= failed
