import time
from fractions import Fraction

import numpy as np
import pytest

from pmscheme.closed_forms import SHAPES, closed_form_entry, shape_at
from pmscheme.matchings import enumerate_matchings, rank
from pmscheme.partitions import even_partitions, partitions
from pmscheme.quotient import (
    ExtractionError, bfs_orbits, default_ladder, extract_module_eigenvalues, is_equitable,
    modules_in_quotient, partition_from_cells, quotient_matrix, verify_appendix_diagonals, young_orbits,
)
from pmscheme.scheme import build_class_matrix, class_degree, dense_labels


def test_young_orbit_cell_counts():
    assert len(young_orbits(4, (6, 2))) == 2
    assert len(young_orbits(4, (4, 4))) == 3
    assert len(young_orbits(4, (4, 2, 2))) == 6


def test_six_two_cells_split_on_last_edge():
    part = young_orbits(4, (6, 2))
    ms = enumerate_matchings(4).members
    with_78 = {i for i, m in enumerate(ms) if (7, 8) in m}
    assert {frozenset(map(int, c)) for c in part.cells} == {frozenset(with_78), frozenset(set(range(105)) - with_78)}
    # the cell with the edge inside the last block comes first
    assert set(map(int, part.cells[0])) == with_78


def _small_shapes(k):
    return [lam for lam in partitions(2 * k) if 2 <= len(lam) <= 3]


@pytest.mark.parametrize("k", [2, 3, 4])
def test_signature_orbits_equal_bfs_orbits(k):
    ms = enumerate_matchings(k).members
    for shape in _small_shapes(k):
        sig = {frozenset(ms[int(i)] for i in c) for c in young_orbits(k, shape).cells}
        assert sig == set(bfs_orbits(k, shape)), shape


@pytest.mark.parametrize("k", [3, 4])
def test_young_orbits_equitable_for_every_class(k):
    for shape in _small_shapes(k):
        part = young_orbits(k, shape)
        for lam in even_partitions(2 * k):
            assert is_equitable(part, lam)


def test_singleton_partition_equitable():
    part = partition_from_cells(3, [[i] for i in range(15)])
    assert is_equitable(part, build_class_matrix((6,), 3))


def test_perturbed_cell_not_equitable():
    part = young_orbits(4, (6, 2))
    a, b = list(map(int, part.cells[0])), list(map(int, part.cells[1]))
    bad = partition_from_cells(4, [a[1:] + [b[0]], [a[0]] + b[1:]])
    assert not is_equitable(bad, (8,))


def test_quotient_examples():
    q = quotient_matrix((4, 2, 2), (6, 2), 4)
    assert q.entries == [[6, 6], [1, 11]]
    assert q.diagonal == [6, 11] and q.row_sums == [12, 12]
    assert q.eigen().values() == [12, 5]
    q = quotient_matrix((8,), (6, 2), 4)
    assert q.row_sums == [48, 48]
    q = quotient_matrix((2, 2, 2, 2), (4, 2, 2), 4)
    assert q.entries == np.eye(6, dtype=int).tolist()


def test_quotient_matches_brute_force_counts():
    q = quotient_matrix((6, 2), (4, 4), 4, verify="full")
    part = young_orbits(4, (4, 4))
    labels = dense_labels(4)
    ci = even_partitions(8).index((6, 2))
    for i, cell in enumerate(part.cells):
        for v in cell:
            row = [int((labels[v, c] == ci).sum()) for c in part.cells]
            assert row == q.entries[i]


@pytest.mark.parametrize("k", [4, 5, 6])
def test_quotient_row_sums_equal_degree(k):
    for lam in default_ladder(k):
        for mu in default_ladder(k)[1:]:
            q = quotient_matrix(lam, mu, k, verify="none")
            assert set(q.row_sums) == {class_degree(lam, k)}
            assert all(x >= 0 for r in q.entries for x in r)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_quotient_roots_are_dense_eigenvalues(k):
    labels = dense_labels(k)
    for c, lam in enumerate(even_partitions(2 * k)):
        spec = np.linalg.eigvalsh((labels == c).astype(float))
        for mu in default_ladder(k)[1:]:
            res = quotient_matrix(lam, mu, k, verify="none").eigen()
            assert not res.unresolved
            for r in res.roots:
                assert np.min(np.abs(spec - float(r))) < 1e-8
            assert sum(Fraction(r) for r in res.roots) == quotient_matrix(lam, mu, k, verify="none").trace


def test_modules_in_quotient():
    assert modules_in_quotient(4, (6, 2)) == {(8,): 1, (6, 2): 1}
    # second row of [6,2] filled with 22, 23 or 33
    assert modules_in_quotient(4, (4, 2, 2)) == {(8,): 1, (6, 2): 3, (4, 4): 1, (4, 2, 2): 1}
    for k in (3, 4, 5):
        for mu in even_partitions(2 * k):
            assert sum(modules_in_quotient(k, mu).values()) == len(young_orbits(k, mu))


def test_extraction_examples():
    ext = extract_module_eigenvalues((4, 2, 2), 4).as_dict()
    assert ext[(6, 2)] == 5
    assert extract_module_eigenvalues((8,), 4).as_dict()[(6, 2)] == -8
    for k in (3, 4, 5):
        ident = extract_module_eigenvalues((2,) * k, k)
        assert set(ident.as_dict().values()) == {1}


def test_extraction_checks_trace_against_charpoly():
    ext = extract_module_eigenvalues((6, 2), 4)
    assert ext.checks and all(c["agree"] for c in ext.checks)


def test_ambiguous_ladder_raises():
    # skipping [6,2] leaves two unknown modules in the [4,4] quotient
    with pytest.raises(ExtractionError):
        extract_module_eigenvalues((8,), 4, ladder=[(8,), (4, 4)])


@pytest.mark.parametrize("k", [4, 5, 6])
def test_extraction_reproduces_in_range_closed_forms(k):
    for cls in SHAPES:
        lam = shape_at(cls, k)
        if lam is None:
            continue
        got = extract_module_eigenvalues(lam, k).as_dict()
        for mod in SHAPES:
            want = closed_form_entry(mod, cls, k)
            mu = shape_at(mod, k)
            if want == "unknown" or mu not in got:
                continue
            assert got[mu] == want, (mod, cls, k)


def test_appendix_audit_k4():
    t0 = time.perf_counter()
    rep = verify_appendix_diagonals(4)
    assert time.perf_counter() - t0 < 5
    first = rep["tables"][0]
    assert first["subgroup"] == [6, 2] and first["matrix"] == [[6, 6], [1, 11]]
    assert first["row_sums_ok"] and first["eigenvalues"] == ["12", "5"]
    d0, d1 = first["diagonal"]
    assert d0["status"] == "match" and d0["printed"] == "6"
    assert d1["status"] == "mismatch" and d1["printed"] == "17" and d1["computed"] == 11
    assert "equals the quotient trace" in d1["notes"]
    assert "cannot be a diagonal entry (exceeds class degree)" in d1["notes"]


@pytest.mark.parametrize("k", [5, 6])
def test_appendix_tables_three_and_four_match_in_range(k):
    rep = verify_appendix_diagonals(k)
    for tab in rep["tables"][1:]:
        assert all(d["status"] == "match" for d in tab["diagonal"]), tab
    second = rep["tables"][0]["diagonal"][1]
    assert second["status"] == "mismatch" and int(second["printed"]) == sum(rep["tables"][0]["diagonal"][i]["computed"] for i in (0, 1))
