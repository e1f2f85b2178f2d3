"""
Tame Langlands Workbench - Suite and report tests
"""

import json

import pytest

from app.config import SUITE_CONFIG
from app.exceptions import ConfigError, DomainError
from app.models.primes import OutputFormat
from app.models.reports import CheckResult, CheckStatus
from app.services.report_service import report_service
from app.services.suite_service import SuiteContext, suite_service


def test_resolve_selection():
    assert suite_service.resolve("all") == suite_service.names()
    assert suite_service.resolve("hilbert, depth") == ["hilbert", "depth"]
    with pytest.raises(ConfigError):
        suite_service.resolve("hilbert,bogus")


def test_every_suite_has_an_anchor():
    for name in suite_service.names():
        assert suite_service.anchor(name)


def test_collapse_skips_for_ell_two(small_context):
    results = suite_service.run("collapse", small_context)
    assert results
    assert all(r.status == CheckStatus.SKIPPED for r in results)


@pytest.mark.parametrize("name", ["hilbert", "depth"])
def test_cheap_suites_pass(small_context, name):
    results = suite_service.run(name, small_context)
    assert results
    assert [r.check_id for r in results if r.status == CheckStatus.FAILED] == []
    assert all(r.check_id.startswith(f"{name}/") for r in results)


def test_suites_are_seeded(prime3):
    first = suite_service.run("hilbert", SuiteContext(prime=prime3, seed=7, samples=2))
    second = suite_service.run("hilbert", SuiteContext(prime=prime3, seed=7, samples=2))
    assert [(r.check_id, r.lhs, r.inputs) for r in first] == [(r.check_id, r.lhs, r.inputs) for r in second]


def test_report_is_deterministic(small_context):
    one = report_service.render(report_service.execute("hilbert", small_context))
    two = report_service.render(report_service.execute("hilbert", small_context))
    assert one == two
    payload = json.loads(one)
    assert payload["schema"] == report_service.schema
    assert payload["failures"] == []
    ids = [check["checkId"] for check in payload["checks"]]
    assert ids == sorted(ids)


def test_duplicate_ids_rejected():
    result = CheckResult(check_id="hilbert/pair/0000", suite="hilbert", anchor=suite_service.anchor("hilbert"))
    with pytest.raises(DomainError):
        report_service.build("hilbert", ["hilbert"], {"hilbert": [result, result]}, {})


def test_failures_listed_in_report():
    good = CheckResult(check_id="depth/a", suite="depth", anchor="x", lhs="1", rhs="1")
    bad = CheckResult(check_id="depth/b", suite="depth", anchor="x", lhs="1", rhs="2", status=CheckStatus.FAILED)
    report = report_service.build("depth", ["depth"], {"depth": [bad, good]}, {})
    assert not report.ok
    assert [r.check_id for r in report.checks] == ["depth/a", "depth/b"]
    assert [r.check_id for r in report.failures] == ["depth/b"]
    assert report.suites[0].failed == 1


def test_frame_and_text_formats(small_context):
    report = report_service.execute("hilbert", small_context)
    frame = report_service.to_frame(report)
    assert list(frame.columns) == ["checkId", "suite", "status", "anchor", "inputs", "lhs", "rhs", "detail"]
    assert len(frame) == len(report.checks)
    csv = report_service.render(report, OutputFormat.CSV)
    assert csv.splitlines()[0].startswith("checkId,suite,status")
    assert "checked=" in report_service.render(report, OutputFormat.PRETTY)


def failed_ids(results):
    return [r.check_id for r in results if r.status == CheckStatus.FAILED]


@pytest.mark.parametrize("name", [n for n in SUITE_CONFIG["suites"] if n != "collapse"])
def test_every_suite_passes_at_p3(small_context, name):
    results = suite_service.run(name, small_context)
    assert results
    assert failed_ids(results) == []


@pytest.fixture
def cubic_context(prime7_cubic):
    return SuiteContext(prime=prime7_cubic, seed=0, cutoff=1, odd_cutoff=1, samples=2)


@pytest.mark.parametrize("name", ["window", "cover", "collapse", "invariance"])
def test_odd_ell_suites_pass(cubic_context, name):
    results = suite_service.run(name, cubic_context)
    assert any(r.status == CheckStatus.PASSED for r in results)
    assert failed_ids(results) == []


def test_separation_has_no_misclassification_at_cutoff_three(prime3):
    results = suite_service.run("separation", SuiteContext(prime=prime3, seed=0, cutoff=3, samples=3))
    pairs = [r for r in results if "/pair/" in r.check_id]
    assert pairs
    assert failed_ids(results) == []


def test_lambda_sign_checks_use_the_classified_level(small_context):
    results = suite_service.run("lambda", small_context)
    kinds = {r.check_id.rsplit("/", 1)[1] for r in results}
    assert kinds == {"minimal", "level", "identity"}
    assert failed_ids(results) == []
