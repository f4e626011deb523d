import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import EXAMPLE_P, EXAMPLE_T
from ctmseq import (
    UNBOUNDED,
    EmptyInput,
    Interval,
    MatchConfig,
    TracesUnavailable,
    build_ct,
    extract_minimal,
    isomorphic,
    oracle_mfi,
    rank_encode,
    reconstruct_trace,
    solve,
)
from ctmseq.bench import gen_worst_case_pattern
from ctmseq.cartesian import NIL
from ctmseq.matcher import (
    MfiTables,
    TextIndex,
    update_left_max_basic,
    update_left_max_fast,
    update_right_min_basic,
    update_right_min_fast,
)
from ctmseq.model import NEG_INF, POS_INF
from ctmseq.predecessor import Engine, IntervalDict

CONFIGS = [MatchConfig(a, t) for a in ("basic", "veb", "bst") for t in ("plain", "heavy_light")]
IDS = [c.name for c in CONFIGS]


def random_instance(rng, n_max, m_max):
    n = int(rng.integers(1, n_max + 1))
    m = int(rng.integers(1, min(n, m_max) + 1))
    return rank_encode(rng.permutation(n) + 1), rank_encode(rng.permutation(m) + 1)


@pytest.mark.parametrize("cfg", CONFIGS, ids=IDS)
def test_example_intervals(cfg):
    res = solve(EXAMPLE_T, EXAMPLE_P, cfg)
    assert res.intervals == [Interval(1, 5), Interval(3, 9)]
    assert res.stats["n"] == 10 and res.stats["m"] == 5


@pytest.mark.parametrize("algo", ["basic", "veb", "bst"])
def test_example_fixed_intervals(algo):
    res = solve(EXAMPLE_T, EXAMPLE_P, MatchConfig(algo, "plain"), keep_tables=True)
    tables = res.tables
    root = build_ct(EXAMPLE_P).root
    assert root == 2
    assert tables.mfi(2, 3) == Interval(1, 9)
    assert tables.mfi(2, 4) == Interval(3, 9)
    assert tables.L[2][4] == 3 and tables.R[2][4] == 9
    assert tables.L[2][3] == 1
    # every entry agrees with enumeration
    for v in range(1, 6):
        for i in range(1, 11):
            assert tables.mfi(v, i) == oracle_mfi(EXAMPLE_T, EXAMPLE_P, (v, i))


def test_root_pivot_two_matches_enumeration():
    tables = solve(EXAMPLE_T, EXAMPLE_P, MatchConfig("basic", "plain"), keep_tables=True).tables
    want = oracle_mfi(EXAMPLE_T, EXAMPLE_P, (2, 2))
    assert want == Interval(1, 5)
    assert tables.mfi(2, 2) == want
    assert tables.R[2][2] == 5


def test_leaf_rows_are_identity():
    tables = solve(EXAMPLE_T, EXAMPLE_P, MatchConfig("basic", "plain"), keep_tables=True).tables
    n = 10
    # node 1 and node 3 have no left child, node 5 and node 1 no right child
    for v in (1, 3, 5):
        assert tables.L[v][1:].tolist() == list(range(1, n + 1))
    for v in (1, 3, 5):
        assert tables.R[v][1:].tolist() == list(range(1, n + 1))


def test_update_functions_directly():
    P = rank_encode(EXAMPLE_P)
    tree = build_ct(P)
    text = TextIndex(EXAMPLE_T)
    slow = MfiTables(10, tree)
    fast = MfiTables(10, tree)
    by_hi = IntervalDict(10, Engine.VEB, key="hi")
    by_lo = IntervalDict(10, Engine.VEB, key="lo")
    for v in tree.postorder():
        update_left_max_basic(v, tree, text, slow)
        update_right_min_basic(v, tree, text, slow)
        slow.seal(v)
        ops = update_left_max_fast(v, tree, text, fast, by_hi)
        if tree.left[v] == NIL:
            assert ops == 0
        ops = update_right_min_fast(v, tree, text, fast, by_lo)
        if tree.right[v] == NIL:
            assert ops == 0
        fast.seal(v)
        assert len(by_hi) == 0 and len(by_lo) == 0
        assert np.array_equal(slow.L[v], fast.L[v])
        assert np.array_equal(slow.R[v], fast.R[v])
    assert slow.mfi(2, 4) == Interval(3, 9)


def test_fast_update_guards():
    P = rank_encode(EXAMPLE_P)
    tree = build_ct(P)
    text = TextIndex(EXAMPLE_T)
    tables = MfiTables(10, tree)
    for v in (1, 3, 5, 4):
        update_left_max_basic(v, tree, text, tables)
        update_right_min_basic(v, tree, text, tables)
        tables.seal(v)
    with pytest.raises(ValueError):
        update_left_max_fast(2, tree, text, tables, IntervalDict(10, key="lo"))
    busy = IntervalDict(10, key="hi")
    busy.insert((1, 1))
    with pytest.raises(ValueError):
        update_left_max_fast(2, tree, text, tables, busy)


def test_single_character_pattern():
    res = solve([4, 8, 1, 3], [42])
    assert res.intervals == [Interval(i, i) for i in range(1, 5)]


def test_pattern_equal_to_text(rng):
    T = rng.permutation(30) + 1
    for cfg in CONFIGS:
        assert solve(T, T, cfg).intervals == [Interval(1, 30)]


def test_pattern_longer_than_text():
    res = solve([1, 2], [1, 2, 3])
    assert res.intervals == [] and res.stats["m"] == 3


def test_empty_inputs():
    with pytest.raises(EmptyInput):
        solve([], [1])
    with pytest.raises(EmptyInput):
        solve([1], [])


def test_raw_values_with_ties_are_rank_encoded():
    # equal values break ties left to right
    a = solve([5, 5, 5, 5], [7, 7]).intervals
    b = solve([1, 2, 3, 4], [1, 2]).intervals
    assert a == b


@pytest.mark.parametrize("algo", ["veb", "bst"])
def test_rows_match_basic_random(rng, algo):
    for _ in range(150):
        T, P = random_instance(rng, 64, 12)
        slow = solve(T, P, MatchConfig("basic", "plain"), keep_tables=True).tables
        fast = solve(T, P, MatchConfig(algo, "plain"), keep_tables=True).tables
        for v in range(1, len(P) + 1):
            assert np.array_equal(slow.L[v], fast.L[v])
            assert np.array_equal(slow.R[v], fast.R[v])


def test_rows_match_basic_small_exhaustive_patterns(rng):
    import itertools

    for n in range(1, 11):
        T = rank_encode(rng.permutation(n) + 1)
        for m in range(1, min(n, 4) + 1):
            for perm in itertools.permutations(range(1, m + 1)):
                slow = solve(T, perm, MatchConfig("basic", "plain"), keep_tables=True).tables
                fast = solve(T, perm, MatchConfig("veb", "plain"), keep_tables=True).tables
                for v in range(1, m + 1):
                    assert np.array_equal(slow.L[v], fast.L[v])
                    assert np.array_equal(slow.R[v], fast.R[v])


def test_table_entries_are_well_formed(rng):
    for _ in range(50):
        T, P = random_instance(rng, 40, 8)
        tables = solve(T, P, MatchConfig("veb", "plain"), keep_tables=True).tables
        n = len(T)
        for v in range(1, len(P) + 1):
            for i in range(1, n + 1):
                iv = tables.mfi(v, i)
                if iv != UNBOUNDED:
                    assert 1 <= iv.lo <= i <= iv.hi <= n


def test_debug_mode_checks_antichain(rng, monkeypatch):
    monkeypatch.setenv("CTMSEQ_DEBUG_ASSERTS", "1")
    for _ in range(40):
        T, P = random_instance(rng, 40, 8)
        want = solve(T, P, MatchConfig("basic", "plain")).intervals
        for cfg in (MatchConfig("veb", "plain"), MatchConfig("bst", "heavy_light")):
            assert solve(T, P, cfg).intervals == want


def test_candidate_pool_grows_and_answers_max_lo(rng):
    """Replay the left update: candidates seen so far only grow, and the
    answer is the largest left end among those ending before ``i``."""
    for _ in range(40):
        T, P = random_instance(rng, 30, 8)
        tables = solve(T, P, MatchConfig("basic", "plain"), keep_tables=True).tables
        tree = build_ct(P)
        text = TextIndex(T)
        for v in range(1, len(P) + 1):
            c = int(tree.left[v])
            if c == NIL:
                continue
            pool = set()
            previous = set()
            for i in text.order.tolist():
                assert previous <= pool
                previous = set(pool)
                ends = [lo for lo, hi in pool if hi < i]
                got = int(tables.L[v][i])
                if got != 0:  # sealed entries may hide a finite left end
                    assert got == max(ends)
                elif tables.R[v][i] != len(T) + 1:
                    assert not ends
                lo, hi = int(tables.L[c][i]), int(tables.R[c][i])
                if lo != 0:
                    pool.add((lo, hi))


@given(st.permutations(range(1, 11)), st.lists(st.integers(0, 20), min_size=1, max_size=5))
def test_all_configs_agree(text, pattern):
    results = {tuple(solve(text, pattern, cfg).intervals) for cfg in CONFIGS}
    assert len(results) == 1


def test_intervals_form_antichain(rng):
    for _ in range(60):
        T, P = random_instance(rng, 60, 6)
        ivs = solve(T, P).intervals
        assert ivs == sorted(set(ivs))
        for a in ivs:
            for b in ivs:
                assert a == b or not (a.lo <= b.lo and b.hi <= a.hi)


def test_heavy_light_space_bound(rng):
    for _ in range(80):
        T, P = random_instance(rng, 80, 40)
        m = len(P)
        res = solve(T, P, MatchConfig("veb", "heavy_light"))
        assert res.stats["peak_live_rows"] <= 2 * (math.floor(math.log2(m)) + 2)


@pytest.mark.parametrize("k", [4, 16, 64])
def test_plain_traversal_blows_up_on_worst_case(k):
    P = gen_worst_case_pattern(k)
    m = len(P)
    T = np.arange(1, 2 * m + 1)
    plain = solve(T, P, MatchConfig("basic", "plain"))
    hl = solve(T, P, MatchConfig("basic", "heavy_light"))
    assert plain.stats["peak_live_rows"] >= k + 1
    assert hl.stats["peak_live_rows"] <= 2 * (math.floor(math.log2(m)) + 2)
    assert plain.intervals == hl.intervals


def test_dict_ops_per_node_are_linear(rng):
    for n in (50, 200, 800):
        T = rng.permutation(n) + 1
        P = rng.permutation(max(2, n // 10)) + 1
        for algo in ("veb", "bst"):
            stats = solve(T, P, MatchConfig(algo, "plain")).stats
            assert 0 < stats["max_node_dict_ops"] <= 12 * n
            assert stats["dict_ops"] <= 12 * n * len(P)


def test_dict_op_counts_match_between_engines(rng):
    for _ in range(20):
        T, P = random_instance(rng, 60, 8)
        a = solve(T, P, MatchConfig("veb", "plain")).stats
        b = solve(T, P, MatchConfig("bst", "plain")).stats
        assert a["dict_ops"] == b["dict_ops"]


def test_traces_on_example():
    res = solve(EXAMPLE_T, EXAMPLE_P, MatchConfig("veb", "plain", want_traces=True))
    assert len(res.traces) == 2
    text = rank_encode(EXAMPLE_T)
    target = build_ct(EXAMPLE_P)
    for iv, trace in zip(res.intervals, res.traces):
        assert len(trace) == 5 and trace[0] == iv.lo and trace[-1] == iv.hi
        assert list(trace) == sorted(set(trace))
        assert isomorphic(build_ct(text.subsequence(trace)), target)
    assert reconstruct_trace(Interval(3, 9), res.tables) == res.traces[1]


def test_trace_single_character():
    res = solve([3, 1, 2], [9], MatchConfig("basic", "plain", want_traces=True))
    assert res.traces == [(1,), (2,), (3,)]


def test_traces_need_plain_traversal():
    with pytest.raises(TracesUnavailable):
        MatchConfig("veb", "heavy_light", want_traces=True)
    res = solve(EXAMPLE_T, EXAMPLE_P, MatchConfig("veb", "plain"), keep_tables=True)
    with pytest.raises(TracesUnavailable):
        reconstruct_trace(Interval(1, 5), res.tables)


def test_config_coercion_and_names():
    cfg = MatchConfig("bst", "heavy_light")
    assert cfg.name == "bst-HL"
    assert MatchConfig().name == "veb-HL"
    with pytest.raises(ValueError):
        MatchConfig("quick", "plain")


def test_extract_minimal_examples():
    assert extract_minimal([1, 3, 1], [9, 9, 5]) == [Interval(1, 5), Interval(3, 9)]
    assert extract_minimal([], []) == []
    assert extract_minimal([2, 2], [4, 4]) == [Interval(2, 4)]
    assert extract_minimal([NEG_INF, 2], [POS_INF, 3]) == [Interval(2, 3)]


@given(st.lists(st.tuples(st.integers(1, 15), st.integers(0, 6)), max_size=30))
def test_extract_minimal_against_definition(pairs):
    ivs = [(a, a + w) for a, w in pairs]
    got = extract_minimal([a for a, _ in ivs], [b for _, b in ivs])
    s = set(ivs)
    want = sorted(p for p in s if not any(q != p and p[0] <= q[0] and q[1] <= p[1] for q in s))
    assert got == want
