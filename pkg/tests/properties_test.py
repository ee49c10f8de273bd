"""Tests for the randomized property suites."""

from __future__ import annotations

import random

from lcsquotient.lattice import AbelianGroup, IntMatrix, is_unimodular
from lcsquotient.properties import (
    duality_suite,
    random_cup_space,
    random_matrix,
    random_presentation,
    random_space,
    random_unimodular,
    run_selftest,
)
from lcsquotient.second_quotient import SpaceData, second_lcs_quotient


def test_run_selftest() -> None:
    report = run_selftest(3, scale=0.01)
    assert report.passed, report.render()
    assert report.values == {"seed": "3", "scale": "0.01"}
    names = {check.name for check in report.checks}
    assert {
        "transform_identity",
        "divisibility_chain",
        "rank1_det_identity",
        "divided_power_integrality",
        "pairing_unimodular",
        "rational_rank_equals_ker_cup_dim",
        "cup_and_mu_agree",
        "associativity",
        "tietze_invariance",
    } <= names


def test_run_selftest_is_deterministic() -> None:
    assert run_selftest(11, scale=0.01) == run_selftest(11, scale=0.01)


def test_generators(rng: random.Random) -> None:
    for _ in range(20):
        assert is_unimodular(random_unimodular(rng, rng.randint(0, 6)))
        a = random_matrix(rng, 3, 4, bound=2)
        assert a.shape == (3, 4)
        assert all(abs(x) <= 2 for row in a.tolist() for x in row)
        space = random_space(rng, max_h1_rank=4, max_h2_rank=3)
        assert space.h1_rank <= 4
        assert space.h2_rank <= 3
        pres = random_presentation(rng)
        assert 1 <= pres.generators <= 3


def test_random_cup_space(rng: random.Random) -> None:
    for _ in range(20):
        space = random_cup_space(rng, max_h1_rank=6, max_h2_rank=4)
        assert space.mu is None
        assert space.cup is not None
        assert len(space.cup) == space.h2_rank
        assert all(len(row) == space.lambda2_rank for row in space.cup)


def test_duality_suite_covers_cup_spaces(rng: random.Random) -> None:
    report = duality_suite(rng, 40, max_h1_rank=6, max_h2_rank=6)
    assert report.passed, report.render()
    assert {check.name for check in report.checks} == {
        "cup_and_mu_agree",
        "rational_rank_equals_ker_cup_dim",
        "ker_cup_mod_p_equals_hom_rank",
        "change_of_basis_invariance",
        "zero_column_robustness",
    }


def test_symplectic_cup_space() -> None:
    # One H² class cutting out ε₁∧δ₁ + ε₂∧δ₂, as for a genus-2 surface.
    space = SpaceData.from_cup(
        "genus 2",
        IntMatrix.from_rows([[1, 0, 0, 0, 0, 1]]),
        h1_rank=4,
    )
    assert second_lcs_quotient(space).group == AbelianGroup(free_rank=5)
