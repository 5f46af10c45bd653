"""
Tests for the plc-bounds command line.
"""
import json
import math
from unittest.mock import patch

from app.cli import cli
from app.cli.common import EXIT_BUDGET, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE
from app.core.exceptions import GuaranteeViolationError, ResourceBudgetExceeded

GOLDEN_CONJUGATE = (math.sqrt(5) - 1) / 2


def test_q_command(runner):
    result = runner.invoke(cli, ["q", "3", "2"])
    assert result.exit_code == EXIT_OK
    payload = json.loads(result.stdout)
    assert payload["command"] == "q"
    assert abs(payload["results"]["q"] - GOLDEN_CONJUGATE) <= 1e-9
    assert payload["results"]["polynomial_text"] == "1 - x - x^2"


def test_q_command_invalid_parameters(runner):
    result = runner.invoke(cli, ["q", "2", "2"])
    assert result.exit_code == EXIT_USAGE


def test_q_command_perturbation_fails_checks(runner):
    result = runner.invoke(cli, ["q", "3", "2", "--perturb-q", "0.01"])
    assert result.exit_code == EXIT_CHECK_FAILED


def test_q_command_csv(runner):
    result = runner.invoke(cli, ["q", "5", "2", "--format", "csv"])
    assert result.exit_code == EXIT_OK
    header, row = result.stdout.strip().splitlines()
    assert header == "s,t,q,bracket_lo,bracket_hi,lower,upper"
    assert row.startswith("5,2,0.3738")


def test_ratio_command_csv(runner):
    result = runner.invoke(cli, ["ratio", "--s-max", "6", "--format", "csv"])
    assert result.exit_code == EXIT_OK
    lines = result.stdout.strip().splitlines()
    assert lines[0] == "s,t,q,ratio"
    assert len(lines) == 1 + sum(range(1, 6))


def test_ratio_command_table(runner):
    result = runner.invoke(cli, ["ratio", "--s-max", "5", "--format", "table"])
    assert result.exit_code == EXIT_OK
    assert "limit_min" in result.stdout


def test_lambda_command(runner):
    result = runner.invoke(cli, ["lambda", "--family", "cycle", "--n", "5", "--t", "2"])
    assert result.exit_code == EXIT_OK
    assert json.loads(result.stdout)["results"]["lambda_t"] == 4


def test_lambda_command_budget_exhausted(runner):
    result = runner.invoke(
        cli, ["lambda", "--family", "cycle", "--n", "5", "--t", "2", "--budget", "10"]
    )
    assert result.exit_code == EXIT_BUDGET


def test_budget_error_from_any_command_maps_to_exit_3(runner):
    with patch(
        "app.services.verification.exact_solvers.chi_ell",
        side_effect=ResourceBudgetExceeded(11, 10),
    ):
        result = runner.invoke(cli, ["chi-ell", "--family", "complete", "--n", "3"])
    assert result.exit_code == EXIT_BUDGET


def test_graph_source_must_be_unique(runner, tmp_path):
    graph_file = tmp_path / "k3.col"
    graph_file.write_text("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    result = runner.invoke(
        cli, ["chi-ell", "--graph", str(graph_file), "--family", "complete", "--n", "3"]
    )
    assert result.exit_code == EXIT_USAGE


def test_chi_ell_command_from_dimacs(runner, tmp_path):
    graph_file = tmp_path / "k3.col"
    graph_file.write_text("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    result = runner.invoke(cli, ["chi-ell", "--graph", str(graph_file)])
    assert result.exit_code == EXIT_OK
    assert json.loads(result.stdout)["results"]["chi_ell"] == 3


def test_malformed_dimacs_is_a_usage_error(runner, tmp_path):
    graph_file = tmp_path / "bad.col"
    graph_file.write_text("p edge 2 1\ne 1 3\n")
    result = runner.invoke(cli, ["chi-ell", "--graph", str(graph_file)])
    assert result.exit_code == EXIT_USAGE


def test_choosable_command(runner):
    result = runner.invoke(
        cli, ["choosable", "--family", "complete_bipartite", "--n", "3", "--m", "3", "--s", "2"]
    )
    assert result.exit_code == EXIT_OK
    assert json.loads(result.stdout)["results"]["choosable"] is False


def test_color_command_writes_coloring(runner, tmp_path):
    output = tmp_path / "coloring.json"
    result = runner.invoke(
        cli,
        ["color", "--family", "cycle", "--n", "5", "--random-lists", "2", "--palette", "4",
         "--output", str(output)],
    )
    assert result.exit_code == EXIT_OK
    colors = json.loads(output.read_text())["colors"]
    assert sum(c is not None for c in colors.values()) >= 4


def test_color_command_with_lists_file(runner, tmp_path):
    lists_file = tmp_path / "lists.json"
    lists_file.write_text(json.dumps(
        {"t": 2, "lists": {"1": [1, 2], "2": [1, 2], "3": [1, 2], "4": [1, 2], "5": [1, 2]}}
    ))
    result = runner.invoke(
        cli, ["color", "--family", "cycle", "--n", "5", "--lists", str(lists_file), "--s", "3"]
    )
    assert result.exit_code == EXIT_OK
    assert json.loads(result.stdout)["results"]["colored_count"] == 4


def test_color_command_missing_lists_file(runner, tmp_path):
    result = runner.invoke(
        cli, ["color", "--family", "cycle", "--n", "5", "--lists", str(tmp_path / "missing.json")]
    )
    assert result.exit_code == EXIT_USAGE


def test_color_command_scheme_inapplicable(runner):
    """K3 is not 2-choosable, so augmenting 1-lists to s = 2 can fail."""
    result = runner.invoke(
        cli,
        ["color", "--family", "complete", "--n", "3", "--random-lists", "1", "--palette", "1",
         "--s", "2"],
    )
    assert result.exit_code == EXIT_USAGE


def test_color_command_monte_carlo(runner):
    result = runner.invoke(
        cli,
        ["color", "--family", "cycle", "--n", "5", "--random-lists", "2", "--mode", "mc",
         "--trials", "500"],
    )
    assert result.exit_code == EXIT_OK
    assert json.loads(result.stdout)["results"]["trials"] == 500


def test_verify_paper_negative_control(runner):
    with patch("app.cli.routes.paper.verification.paper_report") as mock_report:
        from app.schemas.report import VerificationReport

        report = VerificationReport(command="verify-paper", version="test")
        report.add_check("claim", 1, 2, False)
        mock_report.return_value = report
        result = runner.invoke(cli, ["verify-paper", "--quick", "--perturb-q", "0.01"])

    assert result.exit_code == EXIT_CHECK_FAILED
    mock_report.assert_called_once_with(quick=True, q_perturbation=0.01)


def test_non_utf8_dimacs_is_a_usage_error(runner, tmp_path):
    graph_file = tmp_path / "latin1.col"
    graph_file.write_bytes(b"c \xff\xfe\np edge 3 0\n")
    result = runner.invoke(cli, ["chi-ell", "--graph", str(graph_file)])
    assert result.exit_code == EXIT_USAGE


def test_color_command_on_empty_graph(runner, tmp_path):
    graph_file = tmp_path / "empty.col"
    graph_file.write_text("p edge 0 0\n")
    for mode in ("derand", "mc"):
        result = runner.invoke(
            cli, ["color", "--graph", str(graph_file), "--random-lists", "2", "--mode", mode]
        )
        assert result.exit_code == EXIT_USAGE, mode


def test_guarantee_violation_maps_to_check_failed(runner):
    with patch(
        "app.services.verification.theorem_engine.derandomize",
        side_effect=GuaranteeViolationError("colored 3 < 4"),
    ):
        result = runner.invoke(cli, ["color", "--family", "cycle", "--n", "5", "--random-lists", "2"])
    assert result.exit_code == EXIT_CHECK_FAILED
    assert result.exception is None or isinstance(result.exception, SystemExit)


def test_lambda_command_reports_six_sevenths_ceiling(runner):
    result = runner.invoke(cli, ["lambda", "--family", "cycle", "--n", "5", "--t", "2"])
    assert result.exit_code == EXIT_OK
    results = json.loads(result.stdout)["results"]
    assert results["six_sevenths_bound"] == 3
    assert results["theorem_bound"] == 4
