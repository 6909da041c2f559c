import json
import pathlib

import pytest

from spinel import __version__
from spinel.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden"

GOLDEN_CASES = [
    ("spin_p3_n1", ["spin", "--p", "3", "--n", "1", "--json"]),
    ("lfunc_p3_n1_s1", ["lfunc", "--p", "3", "--n", "1", "--s", "1", "--json"]),
    ("classify_p5_a1", ["classify", "--p", "5", "--a", "1", "--json"]),
    ("crystal_p3_n1", ["crystal", "--p", "3", "--n", "1", "--json"]),
    ("bpinf_p5", ["bpinf", "--p", "5", "--json"]),
    ("curves_q9_census", ["curves", "--q", "9", "--json"]),
    ("curves_q9_q14", ["curves", "--q", "9", "--find-q14", "--json"]),
    ("hilbert_m1_m3", ["hilbert", "--a", "-1", "--b", "-3", "--json"]),
]


@pytest.mark.parametrize("name,argv", GOLDEN_CASES, ids=[c[0] for c in GOLDEN_CASES])
def test_golden_output(name, argv, capsys):
    rc = main(argv)
    out = capsys.readouterr().out
    assert rc == 0
    assert out == (GOLDEN / f"{name}.json").read_text()


def test_json_output_is_stable_and_parseable(capsys):
    assert main(["spin", "--p", "2", "--n", "1", "--json"]) == 0
    first = capsys.readouterr().out
    doc = json.loads(first)
    assert doc["disc"] == -2
    assert doc["tau"] == -2
    assert main(["spin", "--p", "2", "--n", "1", "--json"]) == 0
    assert capsys.readouterr().out == first


def test_spin_positive_tau_has_no_lift(capsys):
    assert main(["spin", "--p", "3", "--n", "1", "--tau-sign", "plus", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["tau"] == 3
    assert doc["lift"] is None
    assert doc["slope"] is None


def test_spin_missing_structure_is_a_clean_error(capsys):
    rc = main(["spin", "--p", "5", "--n", "2", "--json"])
    out = capsys.readouterr()
    assert rc == 1
    doc = json.loads(out.out)
    assert doc["error"] == "no-spin-structure"
    assert "p = 5" in doc["detail"]


def test_spin_even_n_structure_exists(capsys):
    rc = main(["spin", "--p", "3", "--n", "2", "--json"])
    out = capsys.readouterr().out
    assert rc == 0
    doc = json.loads(out)
    assert doc["delta"] == -1
    assert doc["tau"] == -9
    assert doc["slope"] == "1/4"


def test_search_bound_env_var(monkeypatch, capsys):
    monkeypatch.setenv("SPINEL_SEARCH_BOUND", "0")
    rc = main(["spin", "--p", "2", "--n", "1", "--json"])
    out = capsys.readouterr()
    assert rc == 1
    assert json.loads(out.out)["error"] == "search-exhausted"
    monkeypatch.setenv("SPINEL_SEARCH_BOUND", "50")
    assert main(["spin", "--p", "2", "--n", "1", "--json"]) == 0
    capsys.readouterr()


def test_bad_env_var_is_reported(monkeypatch, capsys):
    monkeypatch.setenv("SPINEL_FACTOR_BOUND", "soon")
    rc = main(["curves", "--q", "9", "--json"])
    out = capsys.readouterr()
    assert rc == 1
    assert "SPINEL_FACTOR_BOUND" in json.loads(out.out)["detail"]


def test_usage_errors_exit_2(capsys):
    assert main(["unknown-command"]) == 2
    capsys.readouterr()
    assert main(["spin", "--p", "3"]) == 2  # missing --n
    capsys.readouterr()
    assert main(["spin", "--p", "3", "--n", "-1"]) == 2
    capsys.readouterr()
    assert main(["hilbert", "--a", "x", "--b", "2"]) == 2
    capsys.readouterr()
    assert main(["hilbert", "--a", "1", "--b", "2", "--place", "infinity"]) == 2
    capsys.readouterr()


def test_domain_errors_exit_1(capsys):
    assert main(["curves", "--q", "12", "--json"]) == 1
    assert json.loads(capsys.readouterr().out)["error"] != ""
    assert main(["curves", "--q", "5", "--find-q14", "--json"]) == 1
    capsys.readouterr()
    assert main(["hilbert", "--a", "0", "--b", "2", "--json"]) == 1
    assert json.loads(capsys.readouterr().out)["error"] == "zero-input"
    assert main(["crystal", "--p", "3", "--n", "1", "--ell", "3", "--json"]) == 1
    capsys.readouterr()
    assert main(["classify", "--p", "6", "--a", "1", "--json"]) == 1
    assert json.loads(capsys.readouterr().out)["error"] == "not-prime"


def test_human_readable_error_goes_to_stderr(capsys):
    rc = main(["classify", "--p", "6", "--a", "1"])
    out = capsys.readouterr()
    assert rc == 1
    assert out.out == ""
    assert "not prime" in out.err or "prime" in out.err


def test_hilbert_single_place(capsys):
    assert main(["hilbert", "--a", "-1", "--b", "-1", "--place", "oo", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["symbols"] == {"oo": -1}
    assert doc["product"] == -1


def test_version(capsys):
    assert main(["--version"]) == 0
    assert __version__ in capsys.readouterr().out


def test_selftest(capsys):
    assert main(["selftest"]) == 0
    out = capsys.readouterr().out
    lines = [line for line in out.splitlines() if line.strip()]
    assert len(lines) >= 7
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert lines[-1].endswith("passed")


def test_selftest_json(capsys):
    assert main(["selftest", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["failed"] == 0
    assert doc["passed"] >= 6
    assert all(doc["results"].values())
