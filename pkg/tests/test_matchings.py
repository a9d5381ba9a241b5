import itertools
import json
import time

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pmscheme.matchings import (
    MatchingFamily, ResourceError, canonical, canonical_family, count_matchings, enumerate_matchings,
    partner_array, random_matching, rank, setwise_t_intersecting_by_shape, setwise_t_intersecting_oracle,
    union_shape, validate,
)
from pmscheme.partitions import double_factorial


@st.composite
def matching(draw, k):
    perm = draw(st.permutations(range(1, 2 * k + 1)))
    return canonical(zip(perm[0::2], perm[1::2]))


@st.composite
def matching_pair(draw, k_min=2, k_max=7):
    k = draw(st.integers(k_min, k_max))
    return k, draw(matching(k)), draw(matching(k))


def test_enumerate_small():
    assert enumerate_matchings(1).members == [((1, 2),)]
    assert enumerate_matchings(2).members == [((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))]
    assert len(enumerate_matchings(4)) == 105


@pytest.mark.parametrize("k", range(1, 8))
def test_enumeration_count_and_uniqueness(k):
    ms = enumerate_matchings(k).members
    assert len(ms) == double_factorial(2 * k - 1) == count_matchings(k)
    assert len(set(ms)) == len(ms)


def test_enumeration_order_is_lexicographic():
    ms = enumerate_matchings(5).members
    assert ms == sorted(ms)


def test_enumeration_guard():
    with pytest.raises(ResourceError):
        enumerate_matchings(9)


@pytest.mark.parametrize("k", range(1, 6))
def test_rank_inverts_enumeration(k):
    for i, m in enumerate(enumerate_matchings(k).members):
        assert rank(m, k) == i


def test_partner_array_matches_members():
    k = 4
    pa = partner_array(k)
    for i, m in enumerate(enumerate_matchings(k).members):
        for a, b in m:
            assert pa[i, a - 1] == b - 1 and pa[i, b - 1] == a - 1


def test_union_shape_examples():
    P = ((1, 2), (3, 4), (5, 6), (7, 8))
    assert union_shape(P, P) == (2, 2, 2, 2)
    assert union_shape(((1, 2), (3, 4)), ((1, 3), (2, 4))) == (4,)
    assert union_shape(P, ((1, 3), (2, 4), (5, 7), (6, 8))) == (4, 4)


def test_union_shape_rejects_mismatched_vertices():
    with pytest.raises(ValueError):
        union_shape(((1, 2), (3, 4)), ((1, 2), (3, 5)))


@given(matching_pair())
def test_union_shape_properties(kpq):
    k, P, Q = kpq
    shape = union_shape(P, Q)
    assert sum(shape) == 2 * k
    assert all(x % 2 == 0 and x >= 2 for x in shape)
    assert list(shape) == sorted(shape, reverse=True)
    assert shape == union_shape(Q, P)
    assert shape.count(2) == len(set(P) & set(Q))


def test_union_shape_exhaustive_symmetry_and_common_edges():
    ms = enumerate_matchings(4).members
    for P in ms:
        for Q in ms:
            s = union_shape(P, Q)
            assert s == union_shape(Q, P)
            assert s.count(2) == len(set(P) & set(Q))


def test_setwise_examples():
    P = ((1, 2), (3, 4), (5, 6), (7, 8))
    Q1 = ((1, 3), (2, 4), (5, 6), (7, 8))
    Q2 = ((1, 3), (2, 4), (5, 7), (6, 8))
    Q8 = ((1, 8), (2, 3), (4, 5), (6, 7))
    assert union_shape(P, Q8) == (8,)
    for Q, want in ((Q1, True), (Q2, True), (Q8, False), (P, True)):
        assert setwise_t_intersecting_by_shape(P, Q, 2) is want
        assert setwise_t_intersecting_oracle(P, Q, 2) is want


def test_shape_criterion_equals_oracle_exhaustive_k4():
    ms = enumerate_matchings(4).members
    bad = [(P, Q) for P in ms for Q in ms
           if setwise_t_intersecting_by_shape(P, Q, 2) != setwise_t_intersecting_oracle(P, Q, 2)]
    assert bad == []


@pytest.mark.parametrize("t", [2, 3])
def test_shape_criterion_equals_oracle_random_k6(t):
    rng = np.random.default_rng(20 + t)
    for _ in range(10_000):
        P, Q = random_matching(6, rng), random_matching(6, rng)
        assert setwise_t_intersecting_by_shape(P, Q, t) == setwise_t_intersecting_oracle(P, Q, t)


@given(matching_pair(k_min=2, k_max=8), st.data())
def test_shape_criterion_equals_oracle_hypothesis(kpq, data):
    k, P, Q = kpq
    t = data.draw(st.integers(1, k // 2))
    assert setwise_t_intersecting_by_shape(P, Q, t) == setwise_t_intersecting_oracle(P, Q, t)


def test_t_range_rejected():
    P = ((1, 2), (3, 4), (5, 6), (7, 8))
    for t in (0, 3):
        with pytest.raises(ValueError):
            setwise_t_intersecting_by_shape(P, P, t)
        with pytest.raises(ValueError):
            setwise_t_intersecting_oracle(P, P, t)
        with pytest.raises(ValueError):
            canonical_family(4, t)


def test_t_intersecting_implies_setwise_k4():
    ms = enumerate_matchings(4).members
    for P in ms:
        for Q in ms:
            if len(set(P) & set(Q)) >= 2:
                assert setwise_t_intersecting_by_shape(P, Q, 2)


@pytest.mark.parametrize("k, t, size", [(4, 2, 9), (6, 3, 225), (2, 1, 1), (5, 2, 45), (6, 2, 315)])
def test_canonical_family_size(k, t, size):
    fam = canonical_family(k, t)
    assert len(fam) == size == double_factorial(2 * t - 1) * double_factorial(2 * k - 2 * t - 1)
    for m in fam:
        validate(m, k)
        assert all((a <= 2 * t) == (b <= 2 * t) for a, b in m)


def test_canonical_family_k2():
    assert canonical_family(2, 1).members == [((1, 2), (3, 4))]


@pytest.mark.parametrize("k, t", [(k, t) for k in range(2, 7) for t in range(1, k // 2 + 1)])
def test_canonical_family_pairwise_intersecting(k, t):
    fam = canonical_family(k, t).members
    for P, Q in itertools.combinations(fam, 2):
        assert setwise_t_intersecting_by_shape(P, Q, t)


def test_family_dedup_and_json_roundtrip(tmp_path):
    fam = MatchingFamily(2, [((3, 4), (1, 2)), ((1, 2), (4, 3)), ((1, 3), (2, 4))])
    assert len(fam) == 2
    path = tmp_path / "fam.json"
    fam.save(path)
    assert json.loads(path.read_text()) == {"k": 2, "members": [[[1, 2], [3, 4]], [[1, 3], [2, 4]]]}
    assert MatchingFamily.load(path) == fam


def test_family_from_json_validates():
    with pytest.raises(ValueError):
        MatchingFamily.from_json({"k": 2, "members": [[[1, 2], [2, 3]]]})


def test_k7_enumeration_is_fast():
    t0 = time.perf_counter()
    n = len(enumerate_matchings(7))
    assert n == 135135
    assert time.perf_counter() - t0 < 30
