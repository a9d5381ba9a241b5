import json

import pytest

from pmscheme.cli import RunConfig, UsageError, dispatch, parse_k_range


def run(capsys, *argv):
    code = dispatch(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_count(capsys):
    code, out, _ = run(capsys, "enumerate", "--k", "4", "--count-only")
    assert code == 0 and out.strip() == "105"


def test_enumerate_lists(capsys):
    code, out, _ = run(capsys, "enumerate", "--k", "2", "--json")
    assert code == 0
    assert json.loads(out)["members"] == [[[1, 2], [3, 4]], [[1, 3], [2, 4]], [[1, 4], [2, 3]]]


def test_quotient_subcommand(capsys):
    code, out, _ = run(capsys, "quotient", "--class", "4,2,2", "--subgroup", "6,2", "--k", "4", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["matrix"] == [[6, 6], [1, 11]]
    assert rep["eigenvalues"] == [{"module": [8], "value": "12", "multiplicity": 1},
                                  {"module": [6, 2], "value": "5", "multiplicity": 1}]


def test_symbolic_shapes(capsys):
    code, out, _ = run(capsys, "quotient", "--class", "2k-4,2,2", "--subgroup", "2k-2,2", "--k", "4", "--json")
    assert code == 0 and json.loads(out)["class"] == [4, 2, 2]
    code, out, _ = run(capsys, "classes", "--k", "6", "--family", "2k-4,2,2")
    assert out.strip() == "[8,2,2]"


def test_appendix_audit_reports_mismatch(capsys):
    code, out, _ = run(capsys, "quotient", "--k", "4", "--appendix", "--json")
    assert code == 1
    assert json.loads(out)["tables"][0]["diagonal"][1]["printed"] == "17"


def test_degrees_big_ints_are_strings(capsys):
    code, out, _ = run(capsys, "degrees", "--k", "8", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["sum"] == "2027025"
    assert all(isinstance(d["degree"], str) for d in rep["degrees"])


def test_scheme_check(capsys):
    code, out, _ = run(capsys, "scheme-check", "--k", "3")
    assert code == 0 and "commutative: pass" in out


def test_ekr_certificate(capsys):
    code, out, _ = run(capsys, "ekr", "--t", "2", "--k", "4", "--certificate", "--spectrum", "--mis", "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["certificate"]["bound"] == "9" and rep["certificate"]["family_size"] == "9"
    assert rep["mis"]["size"] == 9 and rep["spectrum_in_interval"]


def test_chartable(capsys, tmp_path):
    code, out, _ = run(capsys, "chartable", "--k", "3", "--cache", str(tmp_path), "--json")
    assert code == 0 and json.loads(out)["invariant_failures"] == []
    assert (tmp_path / "chartable" / "k3.json").exists()
    code, out, _ = run(capsys, "chartable", "--k", "4", "--verify", "--method", "both")
    assert code == 0 and '"fail": 0' in out


def test_conjectures(capsys):
    code, out, _ = run(capsys, "conjectures", "--which", "degree-patterns", "--k-range", "3..5")
    assert code == 0 and "k=4 i=3" in out
    code, out, _ = run(capsys, "conjectures", "--which", "inequalities", "--k-range", "12..20", "--json")
    assert code == 0 and json.loads(out)["F_growth_violations"] == [9, 11]


def test_coclique(capsys):
    code, out, _ = run(capsys, "coclique", "--k", "4", "--t", "2")
    assert code == 0 and out.startswith("alpha(N_2(8)) = 9")


@pytest.mark.parametrize("argv", [
    ["bogus"], ["enumerate", "--k", "0"], ["enumerate", "--k", "9"], ["enumerate"],
    ["quotient", "--k", "4", "--class", "4,2,1"], ["ekr", "--t", "2", "--k", "3"],
    ["coclique", "--k", "6", "--t", "2"], ["enumerate", "--k", "4", "--mode", "sparse"],
    ["conjectures", "--which", "t3", "--k-range", "7..6"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_json_output_is_deterministic(capsys):
    outs = [run(capsys, "classes", "--k", "5", "--json")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_parse_k_range():
    assert parse_k_range("3..5") == (3, 5)
    assert parse_k_range("4") == (4, 4)
    with pytest.raises(UsageError):
        parse_k_range("a..b")


def test_run_config_validation():
    RunConfig("enumerate", k=4).validate()
    with pytest.raises(UsageError):
        RunConfig("enumerate", k=4, workers=0).validate()
