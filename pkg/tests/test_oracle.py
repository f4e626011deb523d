import itertools

import pytest

from conftest import EXAMPLE_P, EXAMPLE_T
from ctmseq import Interval, TooLarge, UNBOUNDED, build_ct, isomorphic, oracle_mfi, oracle_solve, rank_encode
from ctmseq.oracle import all_mfi, fixed_interval_candidates


def test_example():
    res = oracle_solve(EXAMPLE_T, EXAMPLE_P)
    assert res.minimal_intervals == [Interval(1, 5), Interval(3, 9)]
    assert (1, 2, 3, 4, 5) in res.all_traces
    assert (3, 4, 6, 8, 9) in res.all_traces
    assert res.all_traces == sorted(res.all_traces)
    assert set(res.minimal_intervals) <= res.occurrence_intervals


def test_identity_has_single_trace():
    res = oracle_solve([4, 9, 1, 6], [4, 9, 1, 6])
    assert res.all_traces == [(1, 2, 3, 4)]
    assert res.minimal_intervals == [Interval(1, 4)]


def test_monotone_text():
    # an increasing text only hosts increasing patterns
    assert oracle_solve([1, 2, 3], [2, 1]).minimal_intervals == []
    assert oracle_solve([1, 2, 3], [1, 2]).minimal_intervals == [Interval(1, 2), Interval(2, 3)]
    assert oracle_solve([3, 2, 1], [2, 1]).minimal_intervals == [Interval(1, 2), Interval(2, 3)]


def test_traces_are_genuine():
    res = oracle_solve([5, 2, 8, 1, 9, 3], [2, 1, 3])
    text = rank_encode([5, 2, 8, 1, 9, 3])
    target = build_ct([2, 1, 3])
    everything = itertools.combinations(range(1, 7), 3)
    want = [c for c in everything if isomorphic(build_ct(text.subsequence(c)), target)]
    assert res.all_traces == want


def test_mfi_examples():
    assert oracle_mfi(EXAMPLE_T, EXAMPLE_P, (2, 4)) == Interval(3, 9)
    assert oracle_mfi(EXAMPLE_T, EXAMPLE_P, (2, 3)) == Interval(1, 9)
    for i in range(1, 11):
        assert oracle_mfi(EXAMPLE_T, EXAMPLE_P, (1, i)) == Interval(i, i)


def test_mfi_sentinel_when_no_copy():
    # the largest text value cannot host the root of a two-node pattern
    assert oracle_mfi([1, 2, 3], [1, 2], (1, 3)) == UNBOUNDED


def test_with_mfi_map():
    res = oracle_solve(EXAMPLE_T, EXAMPLE_P, with_mfi=True)
    assert res.mfi_map[(2, 4)] == Interval(3, 9)
    assert len(res.mfi_map) == 5 * 10


def test_candidates_are_unique_on_example():
    cands = fixed_interval_candidates(EXAMPLE_T, EXAMPLE_P)
    assert all(len(c) <= 1 for c in cands.values())
    assert all_mfi(EXAMPLE_T, EXAMPLE_P) == {pv: (c[0] if c else UNBOUNDED) for pv, c in cands.items()}


def test_pattern_longer_than_text():
    assert oracle_solve([1, 2], [1, 2, 3]).minimal_intervals == []


def test_budget_guard():
    with pytest.raises(TooLarge):
        oracle_solve(list(range(40)), list(range(20)))
    with pytest.raises(TooLarge):
        oracle_solve(list(range(10)), list(range(5)), budget=100)
    with pytest.raises(TooLarge):
        oracle_mfi(list(range(40)), list(range(20)), (1, 1))
