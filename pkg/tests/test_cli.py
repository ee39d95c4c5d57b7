import io
import json
import subprocess
import sys

import pytest

from cyclojac.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, RunConfig, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def no_floats(value):
    if isinstance(value, float):
        return False
    if isinstance(value, dict):
        return all(no_floats(v) for v in value.values())
    if isinstance(value, list):
        return all(no_floats(v) for v in value)
    return True


def test_jacobi_table_for_seven():
    code, data = run_json("jacobi", "--p", "7", "--e", "3", "--gamma", "3", "--json")
    assert code == EXIT_OK
    assert data["J11"]["a1_free"] == "2 + 3ζ²"
    assert data["J11"]["a0"] == ["0", "-2", "1"]
    assert no_floats(data)


def test_cyclotomic_numbers_for_seven():
    code, data = run_json("cyc", "--p", "7", "--e", "3", "--gamma", "3")
    assert code == EXIT_OK
    assert data["cyc"] == [["0", "0", "1"], ["0", "1", "1"], ["1", "1", "0"]]
    assert data["mult_matrix"][0] == ["-2", "-2", "-1"]
    assert len(data["gaussian_periods"]) == 3
    code, data = run_json("cyc", "--p", "7", "--e", "3", "--threshold", "5")
    assert "gaussian_periods" not in data


def test_lifting_check_exit_zero():
    code, data = run_json("dh-check", "--p", "7", "--r", "1", "--n", "2", "--e", "3")
    assert code == EXIT_OK
    assert data["passed"] and {c["clause"] for c in data["clauses"]} >= {"jacobi", "matrix"}
    assert data["meta"]["seed"] == 0


def test_verify_subcommands(tmp_path):
    assert run("verify", "t7", "--p", "13", "--e", "4")[0] == EXIT_OK
    assert run("verify", "t8", "--p", "13", "--e", "4")[0] == EXIT_OK
    bad = write(tmp_path, "bad.json", {"matrix": [["0", "0", "1"], ["0", "1", "1"], ["1", "1", "1"]]})
    assert run("verify", "t8", "--p", "7", "--e", "3", "--in", bad)[0] == EXIT_FAIL
    _, table = run_json("jacobi", "--p", "7", "--e", "3")
    assert table["params"]["v"] == 2
    E = {"e": 3, "v": 2, "p_value": "7",
         "values": [[cell["coeffs"] for cell in row] for row in table["table"]]}
    good = write(tmp_path, "e.json", E)
    assert run("verify", "axioms", "--in", good)[0] == EXIT_OK


def test_compose_subcommands(tmp_path):
    a = write(tmp_path, "a.json", {"matrix": [["1", "2"], ["0", "1"]]})
    code, data = run_json("compose", "matrices", "--d", "1", a, a)
    assert code == EXIT_OK and len(data["matrix"]) == 2
    code, _ = run("compose", "matrices", "--d", "2", a, a)
    assert code == EXIT_FAIL


def test_fourier_check():
    assert run("fourier-check", "--p", "13", "--e", "3")[0] == EXIT_OK


def test_variety_subcommands(tmp_path):
    x = write(tmp_path, "x.json", {"l": 5, "f": 2, "x": ["1", "0", "0", "1"]})
    code, data = run_json("variety", "check", "--l", "5", "--f", "2", x)
    assert code in (EXIT_OK, EXIT_FAIL)
    assert data["meta"]["h"] is not None
    one = write(tmp_path, "one.json", {"l": 5, "f": 2, "x": ["1", "1", "1", "1"]})
    code, data = run_json("variety", "check", one)
    assert code == EXIT_OK and data["meta"]["h"] == "1"
    code, data = run_json("variety", "compose", "--d", "-1", one, one)
    assert code == EXIT_OK and data["x"] == ["1", "1", "1", "1"]
    code, data = run_json("variety", "invert", "--d", "2", one)
    assert code == EXIT_OK and data["x"] == ["1", "1", "1", "1"]
    assert run("variety", "fiber", one, one)[0] == EXIT_OK


def test_dickson_subcommands(tmp_path):
    code, data = run_json("dickson", "extract", "--l", "3", "--p", "7")
    assert code == EXIT_OK and data["solution"]["x"] == ["1", "-1"]
    a = write(tmp_path, "a.json", data["solution"])
    _, data = run_json("dickson", "extract", "--l", "3", "--p", "13")
    b = write(tmp_path, "b.json", data["solution"])
    code, data = run_json("dickson", "lift", "--l", "3", "--d", "1", a, b)
    assert code == EXIT_OK and data["solution"]["prime_power"] == 91
    assert run("dickson", "verify", a)[0] == EXIT_OK
    bad = write(tmp_path, "bad.json", {"l": 3, "prime_power": 7, "x": ["2", "1"]})
    code, data = run_json("dickson", "verify", bad)
    assert code == EXIT_FAIL and not data["passed"]


def test_verify_all_text_summary():
    code, text = run("verify-all", "--only", "4,9", "--format", "text")
    assert code == EXIT_OK
    assert text.splitlines()[0].startswith("criterion  4: PASS")
    assert "criterion  9: PASS" in text


def test_usage_errors():
    assert run("jacobi", "--p", "7", "--e", "3", "--bogus")[0] == EXIT_USAGE
    assert run("nosuch")[0] == EXIT_USAGE
    assert run("variety", "compose", "only-one.json")[0] == EXIT_USAGE
    assert run("dickson", "extract", "--l", "3")[0] == EXIT_USAGE


def test_domain_errors_exit_one():
    code, data = run_json("jacobi", "--p", "7", "--e", "3", "--gamma", "2")
    assert code == EXIT_FAIL and data["error"] == "NotAGenerator"
    code, data = run_json("jacobi", "--p", "101", "--r", "3", "--e", "2", "--budget", "1000")
    assert code == EXIT_FAIL and data["error"] == "TooLarge"


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("CYCLOJAC_BUDGET", "10")
    assert run_json("jacobi", "--p", "13", "--e", "3")[1]["error"] == "TooLarge"


def test_deterministic_output():
    argv = ("jacobi", "--p", "31", "--e", "5", "--seed", "4")
    assert run(*argv) == run(*argv)


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(budget=3)


def test_console_entry_point_exit_codes():
    ok = subprocess.run([sys.executable, "-m", "cyclojac", "dh-check", "--p", "7", "--n", "2", "--e", "3"], capture_output=True)
    assert ok.returncode == 0
    bad = subprocess.run([sys.executable, "-m", "cyclojac", "jacobi", "--unknown"], capture_output=True, text=True)
    assert bad.returncode == 2 and "usage" in bad.stderr
