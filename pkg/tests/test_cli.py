import json

import pytest
from typer.testing import CliRunner

from app.cli import EXIT_MALFORMED, EXIT_VIOLATION, app
from app.models.verification import CheckResult, CheckStatus, VerificationSummary

runner = CliRunner()


def test_tableau_prints_both_tableaux():
    result = runner.invoke(app, ["tableau", "1,2,1"])
    assert result.exit_code == 0
    assert "T(inf):" in result.stdout
    assert "(2)" in result.stdout
    assert "precedence: 4 2 3 1" in result.stdout


def test_tableau_accepts_space_separated_parts():
    result = runner.invoke(app, ["tableau", "2", "1"])
    assert result.exit_code == 0
    assert "composition map: (3, 2, 0)" in result.stdout


def test_single_column_has_no_repeats():
    result = runner.invoke(app, ["tableau", "5"])
    assert result.exit_code == 0
    assert "(1)" not in result.stdout


@pytest.mark.parametrize("arg", ["1,0,2", "a,b", "1,-3"])
def test_malformed_composition(arg):
    result = runner.invoke(app, ["tableau", arg])
    assert result.exit_code == EXIT_MALFORMED


def test_section_json():
    result = runner.invoke(app, ["section", "1,1,1", "--json"])
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert payload["section"]["e"] == [[1, 3]]
    assert payload["section"]["v"] == [[1, 2], [2, 3]]


def test_section_text():
    result = runner.invoke(app, ["section", "1,2,4,3,2,3,4,1,1,2"])
    assert result.exit_code == 0
    assert "(5, 9, 12, 14)" in result.stdout
    assert "e_VS extras: [(9, 14), (9, 18), (20, 22)]" in result.stdout


def test_lines_text():
    result = runner.invoke(app, ["lines", "1,1"])
    assert result.exit_code == 0
    assert "1 -> 2" in result.stdout


def test_verify_passes():
    result = runner.invoke(app, ["verify", "1,2,4,3,2,3,4,1,1,2", "--no-rank", "--json"])
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert all(c["status"] in ("pass", "skipped") for c in payload["verification"]["checks"])
    assert "timing" not in payload


def test_verify_with_rank_and_timing():
    result = runner.invoke(app, ["verify", "2,1,1,2", "--trials", "1", "--json", "--timing"])
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert set(payload["timing"]) == {"analysis", "verification"}


def test_verify_rejects_bad_prime():
    result = runner.invoke(app, ["verify", "1,1,1", "--prime", "8"])
    assert result.exit_code == EXIT_MALFORMED


def test_verify_exits_on_violation(mocker):
    failing = VerificationSummary(
        composition=[1, 1],
        checks=[CheckResult(name="chain_covers", status=CheckStatus.FAIL, clause="cover count")],
    )
    mocker.patch("app.cli.verification_service.run_suite", return_value=failing)
    result = runner.invoke(app, ["verify", "1,1", "--no-rank"])
    assert result.exit_code == EXIT_VIOLATION


def test_render_tikz_to_file(tmp_path):
    target = tmp_path / "figure.tex"
    result = runner.invoke(
        app, ["render", "1,2,4,3,2,3,4,1,1,2", "-f", "tikz", "-s", "tinf", "-o", str(target)]
    )
    assert result.exit_code == 0
    text = target.read_text(encoding="utf-8")
    assert text.count("\\draw[linevs]") == 3


def test_render_matrix_ascii():
    result = runner.invoke(app, ["render", "1,1,1", "--style", "matrix"])
    assert result.exit_code == 0
    assert result.stdout.splitlines()[0].startswith(".|*|1")


def test_sweep_small():
    result = runner.invoke(app, ["sweep", "--n", "3", "--workers", "1"])
    assert result.exit_code == 0
    assert "compositions: 7" in result.stdout
    assert "violations: 0" in result.stdout


def test_sweep_rejects_large_n():
    result = runner.invoke(app, ["sweep", "--n", "40"])
    assert result.exit_code == EXIT_MALFORMED


@pytest.mark.parametrize("workers", ["-1", "0"])
def test_sweep_rejects_bad_worker_count(workers):
    result = runner.invoke(app, ["sweep", "--n", "2", "--workers", workers])
    assert result.exit_code == EXIT_MALFORMED


def test_render_to_missing_directory(tmp_path):
    target = tmp_path / "missing" / "figure.tex"
    result = runner.invoke(app, ["render", "1,1,1", "-f", "tikz", "-o", str(target)])
    assert result.exit_code == EXIT_MALFORMED
    assert not target.exists()


def test_verify_skips_rank_above_matrix_cap(mocker):
    mocker.patch("app.services.verification.settings.rank_max_cells", 10)
    result = runner.invoke(app, ["verify", "2,1,3", "--json"])
    assert result.exit_code == 0
    checks = {c["name"]: c for c in json.loads(result.stdout)["verification"]["checks"]}
    assert checks["rank"]["status"] == "skipped"
    assert checks["rank"]["clause"] == "matrix too large"
