import json
from fractions import Fraction

import pytest

from nilform.cli import EXIT_COMPUTATION, EXIT_OK, EXIT_USAGE, main, report_from_json, report_to_json
from nilform.knots.pipeline import qk_form
from nilform.verify import FAIL, PASS, Suite, run_verify


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_center_ranks(capsys):
    code, out, _ = run(capsys, "center", "--poly", "1 - t + t^2", "--json")
    assert code == EXIT_OK and json.loads(out)["rank"] == 1
    code, out, _ = run(capsys, "center", "--poly", "1 - 2t + 3t^2 - 2t^3 + t^4", "--json")
    assert code == EXIT_OK and json.loads(out)["rank"] == 2


def test_center_rationals_are_strings(capsys):
    _, out, _ = run(capsys, "center", "--poly", "2 - 5t + 2t^2", "--json")
    data = json.loads(out)
    for row in data["action"]:
        assert all(isinstance(x, str) for x in row)
        [Fraction(x) for x in row]


def test_center_non_invertible_is_usage_error(capsys):
    code, out, err = run(capsys, "center", "--poly", "t")
    assert code == EXIT_USAGE
    assert "kernel rank" in out and "constant term 0" in err


def test_center_non_reciprocal(capsys):
    code, out, err = run(capsys, "center", "--poly", "1 + t + t^3")
    assert code == EXIT_USAGE and "center rank" in out and "not reciprocal" in err


def test_usage_errors(capsys):
    assert run(capsys)[0] == EXIT_USAGE
    code, _, err = run(capsys, "knot", "--name", "no_such_knot")
    assert code == EXIT_USAGE and "available" in err and "4_1" in err
    assert run(capsys, "mcg", "--genus", "3", "--twists", "1 2")[0] == EXIT_USAGE
    assert run(capsys, "mcg", "--genus", "2", "--twists", "1 9")[0] == EXIT_USAGE
    assert run(capsys, "knot", "--pd", "X(1,2")[0] == EXIT_USAGE


def test_unknot_exit_zero(capsys):
    code, out, _ = run(capsys, "knot", "--pd", "X(1,1,2,2)", "--json")
    data = json.loads(out)
    assert code == EXIT_OK and data["hk_dimension"] == 0 and data["grams"] == []


def test_knot_display(capsys):
    code, out, _ = run(capsys, "knot", "--name", "4_1")
    assert code == EXIT_OK
    assert "x^2 + 3*x*y + y^2" in out


def test_report_json_round_trip():
    for pd in ("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)", "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"):
        r = qk_form(pd)
        data = json.loads(json.dumps(report_to_json(r)))
        assert report_from_json(data) == r


def test_mcg_pair_json(capsys):
    code, out, _ = run(capsys, "mcg", "--genus", "2", "--twists", "2 3 -4 -5 1", "--twists", "2 3 3 3 -4 -5 1", "--json")
    data = json.loads(out)
    assert code == EXIT_OK
    for rep in data["reports"]:
        assert {"char_poly", "zeta_fixed", "hf_dimension"} <= set(rep)
        assert rep["hf_dimension"] == 4
    assert data["summed_comparison"]["ratio_in_shared_parametrization"] == "1/3"
    assert data["comparison"]["verdict"] in {"equivalent", "inequivalent", "undecided"}


def test_knot_pair_comparison(capsys):
    code, out, _ = run(capsys, "knot", "--name", "3_1", "--name", "4_1", "--json")
    assert code == EXIT_OK and json.loads(out)["error"] == "module mismatch"


def test_table_option_and_env(tmp_path, capsys, monkeypatch):
    table = tmp_path / "t.json"
    table.write_text(json.dumps({"my_trefoil": "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)"}))
    code, out, _ = run(capsys, "knot", "--name", "my_trefoil", "--table", str(table))
    assert code == EXIT_OK and "x^2" in out
    monkeypatch.setenv("NILFORM_TABLE", str(table))
    assert run(capsys, "knot", "--name", "my_trefoil")[0] == EXIT_OK


def test_corrupted_table_entry_isolated(tmp_path):
    table = tmp_path / "bad.json"
    table.write_text(json.dumps({"6_2": "X(1,2,3"}))
    results = run_verify(table=str(table), criteria=[3, 10])
    failed = {r.case for r in results if r.status == FAIL}
    assert failed and all("6_2" in c or "common" in c for c in failed)
    assert any(r.status == PASS and "5_1" in r.case for r in results)
    assert all(r.status == PASS for r in results if r.criterion == 10)


def test_verify_seed_independent(verify_results):
    picked = [1, 3]
    base = {(r.case, r.status) for r in verify_results if r.criterion in picked}
    seeded = {(r.case, r.status) for r in run_verify(lift_seed=7, criteria=picked, suite=Suite(lift_seed=7))}
    assert base == seeded


def test_verify_exit_code_reflects_failures(monkeypatch, capsys):
    import nilform.verify as v

    monkeypatch.setattr(v, "CRITERIA", {10: v.unknot_cases})
    assert run(capsys, "verify")[0] == EXIT_OK
    monkeypatch.setattr(v, "CRITERIA", {4: v.pretzel_cases})
    assert run(capsys, "verify")[0] == EXIT_COMPUTATION
