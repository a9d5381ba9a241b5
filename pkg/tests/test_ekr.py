from fractions import Fraction

import pytest

from pmscheme.chartable import quotient_table
from pmscheme.ekr import (
    WeightError, b_squared_trace_check, conjecture_degree_patterns, hoffman_certificate_check,
    module_spectrum, printed_system_t3_delta, printed_weights, solve_weights, target_degree,
    theorem31_inequalities, theorem31_lhs, theta_2k4_22,
)
from pmscheme.partitions import double_factorial as df, has_subpartition_sum
from pmscheme.scheme import intersection_classes


def test_t2_k4_weights():
    wv = solve_weights(2, 4)
    assert wv.weights == {(8,): Fraction(1, 6), (6, 2): Fraction(1, 12)}
    assert wv.degree == Fraction(32, 3)


def test_t2_k5_weights():
    wv = solve_weights(2, 5)
    assert wv.weights == {(10,): Fraction(5, 144), (8, 2): Fraction(1, 36)}


def test_t3_k6_weights():
    wv = solve_weights(3, 6)
    assert wv.weights == {(12,): Fraction(1, 120), (10, 2): Fraction(1, 320), (8, 2, 2): Fraction(1, 120)}
    assert wv.degree == Fraction(226, 5)


@pytest.mark.parametrize("k", range(4, 11))
def test_t2_weights_match_closed_forms(k):
    wv = solve_weights(2, k, cross_check=k <= 7)
    assert wv.weights == {(2 * k,): printed_weights(2, k)["2k"], (2 * k - 2, 2): printed_weights(2, k)["2k-2,2"]}
    assert wv.degree == Fraction((2 * k - 1) * (2 * k - 3), 3) - 1 == target_degree(2, k)


@pytest.mark.parametrize("k", range(6, 12))
def test_t3_weights_match_closed_forms(k):
    wv = solve_weights(3, k, cross_check=False)
    assert wv.degree == Fraction((2 * k - 1) * (2 * k - 3) * (2 * k - 5), 15) - 1


@pytest.mark.parametrize("t, k", [(2, 4), (2, 7), (3, 6), (3, 9)])
def test_weight_vector_invariants(t, k):
    wv = solve_weights(t, k, cross_check=False)
    want = {(2 * k,), (2 * k - 2, 2)} | ({(2 * k - 4, 2, 2)} if t == 3 else set())
    assert set(wv.weights) == want
    for c in wv.weights:
        assert not has_subpartition_sum(c, 2 * t)
        assert c in intersection_classes(k, t)


def test_preconditions():
    with pytest.raises(ValueError):
        solve_weights(2, 3)
    with pytest.raises(ValueError):
        solve_weights(3, 5)
    with pytest.raises(ValueError):
        solve_weights(4, 8)


def test_printed_system_delta():
    d = printed_system_t3_delta(6)
    assert d["table_coefficient"] == "-48" and d["system_coefficient"] == "-16"
    assert d["eigenvalue_with_table"] == "-1" and d["eigenvalue_with_system"] == "-9/10"
    assert d["consistent_version"] == "table"


@pytest.mark.parametrize("k, bound", [(4, 9), (5, 45)])
def test_t2_certificate(k, bound):
    rep = hoffman_certificate_check(solve_weights(2, k))
    assert rep.certificate_residual_zero and rep.orthogonal_to_ones and rep.row_sums_constant
    assert rep.bound == bound == rep.family_size == 3 * df(2 * k - 5)
    assert rep.psd_margin >= -1e-6
    assert rep.verdict


def test_certificate_detects_wrong_weights():
    wv = solve_weights(2, 4)
    wv.weights[(6, 2)] = Fraction(1, 10)
    rep = hoffman_certificate_check(wv, numeric=False)
    assert not rep.certificate_residual_zero and rep.residual_witness is not None
    assert not rep.verdict


def test_t2_k4_module_spectrum():
    spec = module_spectrum(solve_weights(2, 4), quotient_table(4))
    assert list(spec.values()) == [Fraction(32, 3), -1, -1, Fraction(1, 2), Fraction(-1, 3)]


@pytest.mark.parametrize("k", [4, 5])
def test_t2_module_eigenvalues_in_interval(k):
    wv = solve_weights(2, k)
    spec = module_spectrum(wv, quotient_table(k))
    assert all(-1 <= v <= wv.degree for v in spec.values())
    assert spec[(2 * k - 2, 2)] == -1 and spec[(2 * k - 4, 4)] == -1


def test_t3_k6_module_eigenvalue_on_2k4_22():
    spec = module_spectrum(solve_weights(3, 6), quotient_table(6))
    assert spec[(8, 2, 2)] == Fraction(3, 4)
    assert spec[(10, 2)] == spec[(8, 4)] == spec[(6, 6)] == -1


def test_b_squared_trace():
    assert b_squared_trace_check(4) == {"k": 4, "lhs": "14/9", "rhs": "14/9", "holds": True}
    for k in range(4, 21):
        assert b_squared_trace_check(k)["holds"]


def test_theta():
    assert theta_2k4_22(4) == Fraction(1, 2)
    for k in range(4, 21):
        assert theta_2k4_22(k) == Fraction(1, k - 2)


def test_theorem31_cases():
    rep = theorem31_inequalities(range(12, 41))
    assert rep["passed"]
    assert all(r["case1"] and r["case2_direct"] and r["case2_polynomial"] for r in rep["rows"])
    assert rep["F8"] == 403200 and rep["F_growth_violations"] == [9, 11]
    assert 48 * 12**5 * 18 < 403200 * 3**8 * 18


def test_theorem31_lhs_is_exact():
    k = 12
    assert theorem31_lhs(k) == Fraction(k * (6 * k * k - 26 * k + 36) * df(2 * k - 1), 9 * df(2 * k - 4)) \
        - Fraction(k * (11 * k - 25) * (2 * k - 1) * (2 * k - 3), 18)


def test_degree_patterns_k4():
    rep = conjecture_degree_patterns(4, quotient_table(4))
    got = {(r["i"], r["pattern"]): int(r["table"]) for r in rep["rows"]}
    assert got[(1, "two-row")] == got[(1, "hook-of-twos")] == -8
    assert got[(2, "two-row")] == -2
    assert got[(2, "hook-of-twos")] == 4
    assert got[(3, "hook-of-twos")] == -6
    assert rep["passed"]


def test_weight_error_on_closed_form_mismatch(monkeypatch):
    import pmscheme.ekr as ekr

    monkeypatch.setattr(ekr, "printed_weights", lambda t, k: {"2k": Fraction(0), "2k-2,2": Fraction(0)})
    with pytest.raises(WeightError):
        ekr.solve_weights(2, 4, cross_check=False)
