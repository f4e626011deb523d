import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import naive_ct
from ctmseq import EmptyInput, build_ct, isomorphic, rank_encode
from ctmseq.bench import gen_worst_case_pattern
from ctmseq.cartesian import NIL


def in_order(t):
    out, stack, v = [], [], t.root
    while stack or v != NIL:
        while v != NIL:
            stack.append(v)
            v = int(t.left[v])
        v = stack.pop()
        out.append(v)
        v = int(t.right[v])
    return out


def test_nine_value_tree():
    t = build_ct([23, 6, 15, 9, 3, 12, 5, 19, 21])
    assert t.root == 5
    assert t.left[5] == 2 and t.right[5] == 7


def test_decreasing_is_left_chain():
    t = build_ct([3, 2, 1])
    assert t.root == 3
    assert t.left[3] == 2 and t.left[2] == 1
    assert all(t.right[v] == NIL for v in (1, 2, 3))


def test_example_pattern_tree():
    t = build_ct([9, 2, 17, 4, 13])
    assert t.root == 2
    assert (t.left[2], t.right[2]) == (1, 4)
    assert (t.left[4], t.right[4]) == (3, 5)
    assert t.to_parens() == "((1)2((3)4(5)))"
    assert t.subtree_span(4) == (3, 5)


def test_empty_rejected():
    with pytest.raises(EmptyInput):
        build_ct([])


@pytest.mark.parametrize("n", range(1, 9))
def test_matches_naive_exhaustively(n):
    for perm in itertools.permutations(range(1, n + 1)):
        t = build_ct(perm)
        root, left, right = naive_ct(perm)
        assert t.root == root
        assert t.left.tolist()[1:] == left[1:]
        assert t.right.tolist()[1:] == right[1:]


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=60))
def test_structure_invariants(raw):
    s = rank_encode(raw)
    t = build_ct(s)
    n = len(s)
    assert in_order(t) == list(range(1, n + 1))
    assert t.parent[t.root] == NIL
    for v in range(1, n + 1):
        kids = [int(c) for c in (t.left[v], t.right[v]) if c != NIL]
        assert t.size[v] == 1 + sum(int(t.size[c]) for c in kids)
        for c in kids:
            assert t.parent[c] == v
            assert s.ranks[c - 1] > s.ranks[v - 1]
        if len(kids) == 2:
            a, b = kids
            assert t.heavy[a] != t.heavy[b]
            heavy = a if t.heavy[a] else b
            assert t.size[heavy] >= t.size[a + b - heavy]
        elif kids:
            assert t.heavy[kids[0]]
    assert t.heavy[t.root]


def test_heavy_marks_worst_case_pattern():
    t = build_ct([5, 1, 6, 2, 7, 3, 8, 4, 9])
    for v in range(1, 10):
        if t.left[v] != NIL and t.right[v] != NIL:
            assert t.heavy[t.right[v]] and not t.heavy[t.left[v]]


def test_heavy_marks_small_cases():
    single = build_ct([4])
    assert single.heavy.tolist() == [False, True]
    t = build_ct([2, 1, 3])
    assert t.heavy[3] and not t.heavy[1]


@pytest.mark.parametrize("m", range(1, 9))
def test_light_nodes_per_path(m):
    bound = math.floor(math.log2(m)) + 1
    for perm in itertools.permutations(range(1, m + 1)):
        assert build_ct(perm).light_count_max() <= bound


def test_light_nodes_large_random(rng):
    for m in (100, 1000, 5000):
        t = build_ct(rng.permutation(m) + 1)
        assert t.light_count_max() <= math.floor(math.log2(m)) + 1


def test_heavy_first_postorder():
    t = build_ct(gen_worst_case_pattern(3))
    plain = t.postorder()
    hl = t.postorder(heavy_first=True)
    assert sorted(plain) == sorted(hl) == list(range(1, 8))
    assert plain[-1] == hl[-1] == t.root
    # (4,1,5,2,6,3,7): left leaves hang off the spine 2 -> 4 -> 6 -> 7
    assert plain == [1, 3, 5, 7, 6, 4, 2]
    assert hl == [7, 5, 6, 3, 4, 1, 2]
    seen = set()
    for order in (plain, hl):
        seen.clear()
        for v in order:
            for c in (t.left[v], t.right[v]):
                assert c == NIL or int(c) in seen
            seen.add(v)


def test_isomorphic_examples():
    assert isomorphic(build_ct([7, 2, 3, 1, 5]), build_ct([6, 2, 4, 1, 9]))
    t = build_ct([4, 1, 3])
    assert isomorphic(t, t)
    assert not isomorphic(build_ct([1, 2]), build_ct([2, 1]))
    assert not isomorphic(build_ct([1, 2]), build_ct([1, 2, 3]))


@given(st.permutations(range(6)), st.permutations(range(6)))
def test_isomorphic_iff_same_naive_shape(a, b):
    _, la, ra = naive_ct(a)
    _, lb, rb = naive_ct(b)
    same = naive_ct(a)[0] == naive_ct(b)[0] and la == lb and ra == rb
    assert isomorphic(build_ct(a), build_ct(b)) == same
