"""Command-line surface: formats, exit codes, and output determinism."""

import csv
import io
import json

import pytest
from click.testing import CliRunner

from qudit_mermin import cli as cli_module
from qudit_mermin.cli import cli


@pytest.fixture()
def runner():
    return CliRunner()


def test_table1_human(runner):
    result = runner.invoke(cli, ["table1", "--n-min", "3", "--n-max", "7"])
    assert result.exit_code == 0
    assert "225" in result.stdout and "336" in result.stdout


def test_table1_json_matches_reference(runner):
    result = runner.invoke(
        cli, ["table1", "--n-min", "3", "--n-max", "7", "--format", "json"]
    )
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert payload["command"] == "table1"
    rows = payload["results"]["rows"]
    assert [r["M_Q"] for r in rows] == [9, 27, 81, 243, 729]
    assert [r["M_C"] for r in rows] == [6, 15, 36, 90, 225]
    assert [r["N_GHZ"] for r in rows] == [2, 8, 30, 102, 336]
    for row, want in zip(rows, (1.5, 1.8, 2.25, 2.70, 3.24)):
        assert abs(row["ratio"] - want) < 0.005


def test_table1_small_n_rows(runner):
    result = runner.invoke(
        cli, ["table1", "--n-min", "1", "--n-max", "2", "--format", "json"]
    )
    rows = json.loads(result.stdout)["results"]["rows"]
    assert rows[0]["M_Q"] == 1 and rows[0]["M_C"] == 1 and rows[0]["N_GHZ"] == 0
    assert rows[1]["M_Q"] == 3 and rows[1]["M_C"] == 3 and rows[1]["ratio"] == 1.0


def test_table1_csv(runner):
    result = runner.invoke(
        cli, ["table1", "--n-min", "3", "--n-max", "4", "--format", "csv"]
    )
    rows = list(csv.DictReader(io.StringIO(result.stdout)))
    assert rows[0]["M_Q"] == "9" and rows[1]["M_C"] == "15"


def test_table2_json(runner):
    result = runner.invoke(cli, ["table2", "--format", "json"])
    assert result.exit_code == 0
    rows = json.loads(result.stdout)["results"]["rows"]
    assert len(rows) == 9
    first = {(r["R"], r["S"]): r for r in rows}[("1", "1")]
    assert first["A"] == "A" and first["C"] == "-C"
    assert abs(first["C_phase_deg"] - 180.0) < 1e-9


def test_verify_pass(runner):
    result = runner.invoke(cli, ["verify", "--n", "5", "--format", "json"])
    assert result.exit_code == 0
    res = json.loads(result.stdout)["results"]
    assert res["eigenvalue"] == 81 and res["match"] is True


def test_verify_human_message(runner):
    result = runner.invoke(cli, ["verify", "--n", "5"])
    assert result.exit_code == 0
    assert "eigenvalue 81 = 3^4" in result.stdout and "PASS" in result.stdout


def test_verify_d5(runner):
    result = runner.invoke(cli, ["verify", "--n", "2", "--d", "5", "--format", "json"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["results"]["eigenvalue"] == 5


def test_verify_mismatch_exit_code(runner, monkeypatch):
    monkeypatch.setattr(cli_module, "verify_eigenvalue", lambda op: 17)
    result = runner.invoke(cli, ["verify", "--n", "3"])
    assert result.exit_code == 1
    assert "mismatch" in result.stderr


def test_identity_command(runner):
    result = runner.invoke(cli, ["identity", "--n", "3", "--format", "json"])
    assert result.exit_code == 0
    res = json.loads(result.stdout)["results"]
    assert res["matches"] is True and res["n_surviving"] == 9


def test_search_json(runner):
    result = runner.invoke(cli, ["search", "--n", "3", "--format", "json"])
    assert result.exit_code == 0
    res = json.loads(result.stdout)["results"]
    assert res["max_magnitude"] == 6.0
    assert res["max_equals_uniform"] is True
    assert res["num_maximizers"] == 27
    assert res["argmax_ratios"][0] == ["1", "1"]


def test_search_full_mode(runner):
    result = runner.invoke(
        cli, ["search", "--n", "3", "--mode", "full", "--format", "json"]
    )
    assert result.exit_code == 0
    res = json.loads(result.stdout)["results"]
    assert res["assignments_scanned"] == 27**3
    assert res["ratio_agreement_max_abs_dev"] <= 1e-9


def test_search_worker_count_does_not_change_bytes(runner):
    outputs = []
    for workers in ("1", "2", "8"):
        result = runner.invoke(
            cli,
            ["search", "--n", "3", "--workers", workers, "--format", "json"],
        )
        assert result.exit_code == 0
        outputs.append(result.stdout.encode("utf-8"))
    assert outputs[0] == outputs[1] == outputs[2]


def test_witness_command(runner):
    result = runner.invoke(cli, ["witness", "--n", "3", "--format", "json"])
    assert result.exit_code == 0
    res = json.loads(result.stdout)["results"]
    assert res["count"] == 2 and res["expected_count"] == 2
    words = {row["word"]: row for row in res["rows"]}
    assert words["YYY"]["quantum"] == "w^1"
    assert words["VVV"]["quantum"] == "w^2"
    assert all(row["contradicts"] for row in res["rows"])


def test_general_command(runner):
    result = runner.invoke(
        cli, ["general", "--d", "5", "--n", "2", "--format", "json"]
    )
    assert result.exit_code == 0
    res = json.loads(result.stdout)["results"]
    assert res["eigenvalue"] == 5 and res["term_count"] == 5
    assert abs(res["largest_factor"] - 4.6898) < 1e-3


def test_scaling_csv(runner):
    result = runner.invoke(cli, ["scaling", "--n-max", "7", "--format", "csv"])
    assert result.exit_code == 0
    rows = list(csv.DictReader(io.StringIO(result.stdout)))
    assert rows[-1]["N"] == "7"
    assert abs(float(rows[-1]["ratio"]) - 3.24) < 0.005
    assert abs(float(rows[-1]["two_setting_M_Q"]) - 2**7 / 3) < 1e-3
    assert abs(float(rows[-1]["ratio_prior"]) - 729 / (2**7 / 3)) < 1e-3
    assert set(rows[0]) == {
        "N",
        "M_Q",
        "M_C",
        "ratio",
        "two_setting_M_Q",
        "ratio_prior",
        "asymptote_three_setting",
        "asymptote_two_setting",
    }


def test_usage_errors_exit_2(runner):
    assert runner.invoke(cli, ["search", "--n", "3", "--mode", "greedy"]).exit_code == 2
    assert runner.invoke(cli, ["search", "--n", "99"]).exit_code == 2
    assert runner.invoke(cli, ["table1", "--n-min", "5", "--n-max", "3"]).exit_code == 2
    assert runner.invoke(cli, ["verify", "--n", "2", "--d", "4"]).exit_code == 2
    assert runner.invoke(cli, ["identity", "--n", "9"]).exit_code == 2


def test_out_writes_file(runner, tmp_path):
    target = tmp_path / "report.json"
    result = runner.invoke(
        cli, ["verify", "--n", "3", "--format", "json", "--out", str(target)]
    )
    assert result.exit_code == 0
    payload = json.loads(target.read_text())
    assert payload["results"]["eigenvalue"] == 9


def test_repeated_invocations_identical(runner):
    first = runner.invoke(cli, ["scaling", "--n-max", "9", "--format", "json"])
    second = runner.invoke(cli, ["scaling", "--n-max", "9", "--format", "json"])
    assert first.stdout.encode("utf-8") == second.stdout.encode("utf-8")


def test_workers_env_override_and_flag_precedence(runner, monkeypatch):
    from qudit_mermin._enumeration import WORKERS_ENV_VAR, resolve_workers

    monkeypatch.setenv(WORKERS_ENV_VAR, "3")
    assert resolve_workers(None) == 3
    assert resolve_workers(5) == 5  # explicit flag wins over the environment
    result = runner.invoke(cli, ["search", "--n", "2", "--format", "json"])
    assert result.exit_code == 0
    baseline = runner.invoke(
        cli, ["search", "--n", "2", "--workers", "1", "--format", "json"]
    )
    assert result.stdout.encode("utf-8") == baseline.stdout.encode("utf-8")
