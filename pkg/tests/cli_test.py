"""Tests for the command-line interface."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from lcsquotient.cli import main, run


def test_cokermu(data_dir: Path, capsys: pytest.CaptureFixture[str]) -> None:
    status = run(["cokermu", str(data_dir / "spaces/torus.json")])
    assert status == 0
    assert capsys.readouterr().out == "torus: trivial group, exact\n"


def test_cokermu_json(
    data_dir: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    path = data_dir / "spaces/surface_genus_2.json"
    status = run(["--format", "json", "cokermu", str(path)])
    assert status == 0
    data = json.loads(capsys.readouterr().out)
    assert data == {
        "group": {"free_rank": 5, "torsion": []},
        "exactness": "exact",
    }


def test_nilquot(data_dir: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = data_dir / "presentations/heisenberg.json"
    assert run(["nilquot", str(path)]) == 0
    out = capsys.readouterr().out
    assert "gamma2/gamma3 = Z^1" in out
    assert "H1 = Z^2" in out


def test_nilquot_json(
    data_dir: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    path = data_dir / "presentations/klein_bottle.json"
    assert run(["--format", "json", "nilquot", str(path)]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["gamma2_mod_gamma3"] == {"free_rank": 0, "torsion": [2]}
    assert data["abelianization"] == {"free_rank": 1, "torsion": [2]}


def test_fano(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["fano"]) == 0
    out = capsys.readouterr().out
    assert "det_f = 4" in out
    assert "D/(D,G) = Z/2" in out
    assert "[FAIL]" not in out


def test_catalog(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["catalog"]) == 0
    serial = capsys.readouterr().out
    assert "heisenberg: Coker μ = Z^1, exact" in serial
    assert "cross-validation: not_applicable" in serial

    assert run(["catalog", "--parallel"]) == 0
    assert capsys.readouterr().out == serial


def test_catalog_failure(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    (tmp_path / "s.json").write_text(
        '{"name": "s", "h1_rank": 2, "h1_torsion_free": true, '
        '"h2_rank": 1, "mu": [[2]]}'
    )
    catalog = tmp_path / "catalog.yaml"
    catalog.write_text(
        "- name: wrong\n"
        "  space: s.json\n"
        "  expected:\n"
        "    free_rank: 0\n"
    )
    assert run(["--catalog", str(catalog), "catalog"]) == 1
    err = capsys.readouterr().err
    assert "check failed: wrong: formula_equals_expected" in err


def test_selftest(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["selftest", "--seed", "7", "--scale", "0.02"]) == 0
    out = capsys.readouterr().out
    assert "seed = 7" in out
    assert "[PASS] tietze_invariance" in out


def test_malformed_input(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    path = tmp_path / "bad.json"
    path.write_text('{"generators": 2,')
    assert run(["nilquot", str(path)]) == 2
    assert "line 1" in capsys.readouterr().err


def test_inconsistent_input(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    path = tmp_path / "space.json"
    path.write_text(
        '{"name": "x", "h1_rank": 3, "h1_torsion_free": true, '
        '"h2_rank": 1, "mu": [[1]]}'
    )
    assert run(["cokermu", str(path)]) == 2
    assert "mu must have 3 rows" in capsys.readouterr().err


def test_missing_file(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["cokermu", "/nonexistent/space.json"]) == 2
    assert "error:" in capsys.readouterr().err


def test_usage_error() -> None:
    with pytest.raises(SystemExit) as excinfo:
        run(["frobnicate"])
    assert excinfo.value.code == 2


def test_main(
    monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]
) -> None:
    monkeypatch.setattr("sys.argv", ["lcsquotient", "fano"])
    with pytest.raises(SystemExit) as excinfo:
        main()
    assert excinfo.value.code == 0
    assert "D/(D,G) = Z/2" in capsys.readouterr().out
