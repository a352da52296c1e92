"""Tests for the command line."""
import json

import pytest

from src.cli.commands import parse_point
from src.cli.main import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_normal_form(capsys):
    code, payload, _ = run_json(capsys, "normal-form", "E[1]*F[1]")
    assert code == EXIT_OK
    assert payload["presentation"] == "full"
    assert len(payload["result"]["terms"]) == 1


def test_text_output(capsys):
    assert main(["counit", "L[1] + 2*E[1]"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "1"


def test_membership(capsys):
    assert main(["membership", "--form", "dkp", "E[1]"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "not in the dkp form"
    code, payload, _ = run_json(capsys, "membership", "--form", "dkp", "bar(E[1])")
    assert payload["member"] is True


def test_pairing(capsys):
    code, payload, _ = run_json(capsys, "pair", "F[1]", "E[1]")
    assert code == EXIT_OK
    assert payload["kind"] == "drt"


def test_frobenius(capsys):
    code, payload, _ = run_json(capsys, "frobenius", "--l", "3", "dp(F[1], 3)")
    assert code == EXIT_OK
    assert payload["at"] == 1
    assert payload["terms"] == [{"basis": {"form": "restricted", "e": [0], "t": [0], "f": [1]}, "value": [1, 1]}]


def test_check_suite(capsys):
    code, payload, _ = run_json(capsys, "check", "--suite", "oracle")
    assert code == EXIT_OK
    assert payload["suites"]["oracle"] == {"words": 30}
    assert payload["passed"] is True


def test_syntax_error_exit_code(capsys):
    code, payload, err = run_json(capsys, "normal-form", "E[1] +")
    assert code == EXIT_USAGE
    assert payload is None
    report = json.loads(err.strip().splitlines()[-1])
    assert report["code"] == "E701"
    assert report["position"] == [6, 7]


def test_index_error_exit_code(capsys):
    assert main(["normal-form", "E[2]"]) == EXIT_USAGE
    assert "E702" in capsys.readouterr().err


def test_usage_errors(capsys):
    assert main(["normal-form", "--type", "G2", "E[1]"]) == EXIT_USAGE
    assert main(["specialize", "--at", "root:4", "E[1]"]) == EXIT_USAGE
    assert main(["normal-form", "--trunc", "9", "E[1]"]) == EXIT_USAGE
    assert main(["normal-form", "--preset", "Twisted", "E[1]"]) == EXIT_USAGE
    assert main([]) == EXIT_USAGE


def test_kernel_failure_exit_code(capsys):
    assert main(["specialize", "--form", "dkp", "E[1]"]) == EXIT_FAILURE
    assert "E304" in capsys.readouterr().err


def test_presets(capsys):
    code, payload, _ = run_json(capsys, "normal-form", "--type", "A2", "--preset", "Twisted", "E[1]*E[2]")
    assert code == EXIT_OK
    assert payload["result"]["terms"]


def test_parse_point():
    assert parse_point("1") == 1
    assert parse_point("root:5") == 5
    assert parse_point("7") == 7
    with pytest.raises(ValueError):
        parse_point("root:x")
    with pytest.raises(ValueError):
        parse_point("root:13")
