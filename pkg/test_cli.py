"""
Tame Langlands Workbench - Command line tests
"""

import json

from app.main import main
from app.services.suite_service import suite_service


def last_json(capsys):
    return json.loads(capsys.readouterr().out)


def test_list_suites(capsys):
    assert main(["list-suites"]) == 0
    payload = last_json(capsys)
    assert [entry["suite"] for entry in payload] == suite_service.names()


def test_compute_hilbert(capsys):
    assert main(["compute", "hilbert", "3", "3", "--p", "3"]) == 0
    assert last_json(capsys) == {"value": -1}


def test_compute_hilbert_rationals(capsys):
    assert main(["compute", "hilbert", "-1", "1/3", "--p", "3"]) == 0
    assert last_json(capsys) == {"value": -1}


def test_invalid_prime_exits_with_config_code(capsys):
    assert main(["compute", "hilbert", "3", "3", "--p", "2"]) == 2
    assert capsys.readouterr().out == ""


def test_wrong_arity_is_a_config_error():
    assert main(["compute", "hilbert", "3", "--p", "3"]) == 2


def test_kind_required():
    assert main(["compute", "check-split", "--p", "3"]) == 2


def test_domain_error_exit_code():
    # Delta = 1 is a square, so no ramified quadratic extension
    assert main(["compute", "extension", "--p", "3", "--kind", "RamQuad", "--Delta", "1"]) == 1


def test_config_file_and_flag_precedence(tmp_path, capsys):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"p": 5, "N": 10}))
    assert main(["compute", "hilbert", "5", "5", "--config", str(config)]) == 0
    assert last_json(capsys) == {"value": 1}
    assert main(["compute", "hilbert", "3", "3", "--config", str(config), "--p", "3"]) == 0
    assert last_json(capsys) == {"value": -1}


def test_unknown_config_key(tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"p": 5, "colour": "red"}))
    assert main(["compute", "hilbert", "5", "5", "--config", str(config)]) == 2


def test_run_writes_report(tmp_path):
    output = tmp_path / "report.json"
    code = main(["run", "--suite", "hilbert", "--samples", "2", "--p", "3", "--seed", "1", "--output", str(output)])
    assert code == 0
    report = json.loads(output.read_text())
    assert report["suite"] == "hilbert"
    assert report["config"]["seed"] == 1
    assert report["checked"] == len(report["checks"]) == 10


def test_run_unknown_suite():
    assert main(["run", "--suite", "nope", "--p", "3"]) == 2


def test_compute_operands_after_flags(capsys):
    assert main(["compute", "hilbert", "--p", "3", "3", "3"]) == 0
    assert last_json(capsys) == {"value": -1}
    assert main(["compute", "--p", "3", "hilbert", "-1", "1/3"]) == 0
    assert last_json(capsys) == {"value": -1}


def test_compute_hasse_reports_both_sides(capsys):
    assert main(["compute", "hasse", "3", "3", "--p", "3"]) == 0
    assert last_json(capsys) == {"value": -1, "closed": -1}
    assert main(["compute", "hasse", "--p", "5", "--level", "2", "1", "2", "5"]) == 0
    payload = last_json(capsys)
    assert payload["value"] == payload["closed"]
