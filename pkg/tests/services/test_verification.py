"""
Tests for the verification service.
"""
import math

import pytest

from app.core.exceptions import InvalidParametersError
from app.services import graph_core, verification

GOLDEN_CONJUGATE = (math.sqrt(5) - 1) / 2


def _check(report, prefix):
    return next(check for check in report.checks if check.label.startswith(prefix))


def test_q_report_3_2():
    report = verification.q_report(3, 2)
    assert report.passed
    assert report.results["q"] == pytest.approx(GOLDEN_CONJUGATE, abs=1e-9)
    assert report.results["polynomial"] == [1, -1, -1]
    assert _check(report, "Corollary").passed


def test_q_report_t_1_has_no_polynomial():
    report = verification.q_report(4, 1)
    assert report.passed
    assert "polynomial" not in report.results


def test_q_report_perturbation_fails():
    """Shifting q by 0.01 must break the golden ratio check."""
    report = verification.q_report(3, 2, q_perturbation=0.01)
    assert not report.passed
    assert not _check(report, "Corollary").passed


def test_q_report_invalid():
    with pytest.raises(InvalidParametersError):
        verification.q_report(2, 2)


def test_ratio_report_small_grid():
    report = verification.ratio_report(20)
    assert report.passed
    assert report.results["ratio_3_2"] == pytest.approx(GOLDEN_CONJUGATE * 3 / 2, abs=1e-9)
    assert _check(report, "grid minimum").kind == "info"
    assert len(report.results["grid"]) == sum(range(1, 20))


def test_lambda_report_c5(c5):
    report = verification.lambda_report(c5, 2)
    assert report.passed
    assert report.results["lambda_t"] == 4
    assert report.results["chi_ell"] == 3
    assert report.results["theorem_bound"] == 4
    conjecture = _check(report, "Conjecture")
    assert conjecture.kind == "conjecture"
    assert conjecture.passed


def test_lambda_report_t_1_checks_independence(k3):
    report = verification.lambda_report(k3, 1)
    assert report.passed
    assert report.results["independence_number"] == 1


def test_chi_ell_report(k3):
    report = verification.chi_ell_report(k3)
    assert report.passed
    assert report.results["chi_ell"] == 3
    assert report.results["bad_assignment"]["t"] == 2


def test_choosable_report(k33):
    report = verification.choosable_report(k33, 2)
    assert report.passed
    assert report.results["choosable"] is False
    assert report.results["bad_assignment"] is not None


def test_color_report_derand(c5, c5_lists):
    report, coloring = verification.color_report(c5, c5_lists)
    assert report.passed
    assert report.inputs["s"] == 3
    assert report.results["colored_count"] >= 4
    assert coloring.colored_count == report.results["colored_count"]


def test_color_report_monte_carlo(c5, c5_lists):
    report, coloring = verification.color_report(c5, c5_lists, mode="mc", trials=2000, seed=1)
    assert coloring is None
    assert report.results["trials"] == 2000
    assert report.passed


def test_color_report_rejects_unknown_mode(c5, c5_lists):
    with pytest.raises(InvalidParametersError):
        verification.color_report(c5, c5_lists, mode="greedy")


def test_default_s(petersen):
    assert verification.default_s(petersen, 2) == 4
    assert verification.default_s(petersen, 5) == 6


def test_paper_report_quick():
    report = verification.paper_report(quick=True)
    failed = [check.label for check in report.checks if check.kind == "primary" and not check.passed]
    assert failed == []
    assert report.results["checks_total"] >= 20


def test_paper_report_negative_control():
    report = verification.paper_report(quick=True, q_perturbation=0.01)
    assert not report.passed
    assert not _check(report, "Corollary: q_{3,2}").passed


def test_report_serializes_to_json(c5):
    report = verification.chi_ell_report(c5)
    payload = report.model_dump_json()
    assert '"command":"chi-ell"' in payload
    assert graph_core.degeneracy_bound(c5) == report.results["degeneracy_bound"]
