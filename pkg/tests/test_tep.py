import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import itertools
import math
import pytest
import numpy as np
from hypothesis import given, settings, strategies as st
from utils.tep import TepSorter, kth_pattern, new_sorter


def brute_force_order(rel):
    """All 2^n patterns by (soft weight, lexicographic with 0 before 1)."""
    n = len(rel)
    patterns = list(itertools.product((0, 1), repeat=n))
    return sorted(patterns, key=lambda e: (math.fsum(r for r, b in zip(rel, e) if b), e))


def emitted(rel):
    return [tuple(int(b) for b in v.bits) for v in new_sorter(rel)]

# --- Unit Tests (Known Values) ---

def test_first_patterns_follow_reliability():
    rel = [5.0, 0.1, 0.2]
    out = emitted(rel)
    assert out[:4] == [(0, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1)]


def test_equal_weights_break_ties_zero_first():
    # Positions 1 and 2 tie, so 001 precedes 010.
    out = emitted([5.0, 0.1, 0.1])
    assert out[:3] == [(0, 0, 0), (0, 0, 1), (0, 1, 0)]


def test_order_with_distinct_reliabilities():
    out = emitted([1.0, 2.0, 3.0])
    assert out == [
        (0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1),
        (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1),
    ]


def test_zero_reliability_comes_second():
    out = emitted([0.4, 0.0, 0.9])
    assert out[1] == (0, 1, 0)


def test_all_equal_reliabilities():
    out = emitted([1.0] * 4)
    assert out == brute_force_order([1.0] * 4)
    assert out[1:5] == [(0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0)]


def test_zero_reliability_positions():
    out = emitted([0.0, 0.0, 1.0])
    assert out == brute_force_order([0.0, 0.0, 1.0])


def test_exhausts_after_all_patterns():
    sorter = TepSorter([1.0, 2.0, 3.0])
    supports = [sorter.next_support() for _ in range(8)]
    assert len({s[1] for s in supports}) == 8
    assert sorter.next_support() is None
    assert sorter.emitted_count == 8
    with pytest.raises(StopIteration):
        next(sorter)


def test_empty_length():
    sorter = TepSorter([])
    assert sorter.next_support() == (0.0, ())
    assert sorter.next_support() is None


def test_frontier_stays_small():
    sorter = TepSorter(np.linspace(0.1, 3.0, 64))
    for _ in range(1000):
        sorter.next_support()
    # Each pop pushes at most two children.
    assert len(sorter._heap) <= 1001
    assert sorter.frontier_ops <= 1 + 3 * 1000


def test_rejects_negative_reliabilities():
    with pytest.raises(ValueError, match="non-negative"):
        TepSorter([1.0, -0.5])


def test_kth_pattern():
    rel = [0.7, 0.2, 0.9, 0.4]
    order = brute_force_order(rel)
    for k in range(16):
        assert tuple(kth_pattern(rel, k).bits) == order[k]
    with pytest.raises(ValueError, match="k must lie"):
        kth_pattern(rel, 16)


def test_near_equal_reliabilities_keep_lex_order():
    # 1 + 2^-52 rounds away in every pair sum, so all three pairs weigh exactly 2.
    rel = [1.0, 1.0, 1.0 + 2.0 ** -52]
    out = emitted(rel)
    assert out == brute_force_order(rel)
    assert out == [
        (0, 0, 0), (0, 1, 0), (1, 0, 0), (0, 0, 1),
        (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1),
    ]

# --- Property-Based Testing (Hypothesis) ---

@settings(max_examples=100, deadline=None)
@given(
    st.lists(
        st.sampled_from([0.0, 0.25, 0.5, 1.0, 1.5, 2.0]) | st.floats(min_value=0.0, max_value=10.0),
        min_size=1,
        max_size=10,
    )
)
def test_emission_matches_brute_force(rel):
    """Exact (soft weight, lex) order, repeated values included."""
    assert emitted(rel) == brute_force_order(rel)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(min_value=0.0, max_value=10.0), min_size=12, max_size=12))
def test_emission_matches_brute_force_length_12(rel):
    assert emitted(rel) == brute_force_order(rel)


@given(st.lists(st.floats(min_value=0.0, max_value=100.0), min_size=1, max_size=40))
def test_soft_weights_non_decreasing(rel):
    sorter = TepSorter(rel)
    previous = -1.0
    for _ in range(200):
        item = sorter.next_support()
        if item is None:
            break
        gamma, support = item
        assert gamma >= previous
        assert gamma == math.fsum(rel[i] for i in support)
        previous = gamma


EPS = 2.0 ** -52


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from([1.0, 1.0 + EPS, 1.0 + 2 * EPS, 2.0, 2.0 + 2 * EPS]), min_size=1, max_size=8))
def test_emission_matches_brute_force_near_ties(rel):
    assert emitted(rel) == brute_force_order(rel)
