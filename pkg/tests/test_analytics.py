import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import itertools
import pytest
from hypothesis import given, strategies as st
from utils.analytics import (
    binomial_ci95,
    gcd_bsc_guess_count,
    gnd_bsc_guess_count,
    hamming_guess_expectations,
    lex_rank_same_weight,
    repetition3_fer,
)

# --- Unit Tests (Known Values) ---

def test_hamming_expectations_at_p_005():
    p = 0.05
    closed = hamming_guess_expectations(p)
    p0 = (1 - p) ** 7 + 7 * p ** 3 * (1 - p) ** 3 + p ** 7
    assert closed["p0"] == pytest.approx(p0)
    assert closed["gnd"] == pytest.approx(p0 + 35 * (1 - p0) / 7)
    assert closed["gcd"] == pytest.approx(p0 + 17 * (1 - p0) / 7)
    assert closed["gcd"] < closed["gnd"]


def test_lex_rank_weight_one():
    # 0001 is the first weight-1 pattern, 1000 the last.
    assert lex_rank_same_weight([0, 0, 0, 1]) == 1
    assert lex_rank_same_weight([1, 0, 0, 0]) == 4
    assert lex_rank_same_weight([0, 0, 0, 0]) == 1


def test_guess_counts_hamming_cases():
    # Zero error pattern: one guess each.
    assert gnd_bsc_guess_count([0] * 7) == 1
    assert gcd_bsc_guess_count(4, [0, 0, 0], [0, 0, 0, 0]) == 1
    # Single error in the information part, first right position.
    assert gnd_bsc_guess_count([0, 0, 0, 1, 0, 0, 0]) == 1 + 4
    assert gcd_bsc_guess_count(4, [0, 0, 0], [1, 0, 0, 0]) == 1 + 4
    # Single error in the redundancy part.
    assert gcd_bsc_guess_count(4, [1, 0, 0], [0, 0, 0, 0]) == 1


def test_gcd_count_caps_at_codebook_size():
    assert gcd_bsc_guess_count(3, [1, 1, 1, 1], [1, 1, 1]) == 8


def test_binomial_ci95():
    assert binomial_ci95(0, 100) == 0.0
    assert binomial_ci95(5, 0) == 0.0
    assert binomial_ci95(50, 100) == pytest.approx(1.959964 * 0.05, rel=1e-5)


def test_repetition3_fer():
    assert repetition3_fer(0.1) == pytest.approx(0.028)

# --- Property-Based Testing (Hypothesis) ---

@given(st.integers(min_value=1, max_value=10), st.data())
def test_lex_rank_enumerates_all_patterns(n, data):
    w = data.draw(st.integers(min_value=0, max_value=n))
    patterns = sorted(e for e in itertools.product((0, 1), repeat=n) if sum(e) == w)
    assert [lex_rank_same_weight(e) for e in patterns] == list(range(1, len(patterns) + 1))


@given(st.floats(min_value=0.001, max_value=0.49))
def test_hamming_expectations_are_probabilities(p):
    closed = hamming_guess_expectations(p)
    assert 0.0 < closed["p0"] <= 1.0
    assert 1.0 <= closed["gcd"] <= closed["gnd"] <= 8.0
