#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""LCS, edit distance and alignments against an independent DP."""
import itertools

import numpy as np
import pytest

from linsdel.editmetrics import (
    DELETE, INSERT, align, edit_distance, edit_script, is_subsequence, lcs,
    lcs_prefix_profile, suffix_lcs_table
)


def dp_edit_distance(s, t):
    """Textbook insertion/deletion distance table."""
    d = [[0] * (len(t) + 1) for _ in range(len(s) + 1)]
    for i in range(len(s) + 1):
        d[i][0] = i
    for j in range(len(t) + 1):
        d[0][j] = j
    for i in range(1, len(s) + 1):
        for j in range(1, len(t) + 1):
            if s[i - 1] == t[j - 1]:
                d[i][j] = d[i - 1][j - 1]
            else:
                d[i][j] = 1 + min(d[i - 1][j], d[i][j - 1])
    return d[-1][-1]


def apply_script(s, ops):
    out = list(s)
    for pos, op, sym in ops:
        if op == DELETE:
            assert out[pos] == sym
            out.pop(pos)
        else:
            assert op == INSERT
            out.insert(pos, sym)
    return out


def test_insdel_example():
    s = [1, 0, 0, 1, 1, 0]
    t = [1, 1, 0, 1, 1, 0, 0]
    assert lcs(s, t) == 5
    assert edit_distance(s, t) == 3


def test_trivial_cases():
    assert lcs([], [1, 2]) == 0
    assert edit_distance([], [1, 2]) == 2
    assert edit_distance([1, 2, 3], [1, 2, 3]) == 0
    assert lcs("abcbdab", "bdcaba") == 4


@pytest.mark.slow
def test_duality_exhaustive_short_binary():
    words = [
        w for length in range(0, 9)
        for w in itertools.product((0, 1), repeat=length)
    ]
    for s, t in itertools.product(words, repeat=2):
        ed = edit_distance(s, t)
        assert ed == len(s) + len(t) - 2 * lcs(s, t)
        assert ed == dp_edit_distance(s, t)


@pytest.mark.slow
def test_duality_random_longer():
    rng = np.random.default_rng(11)
    for _ in range(10000):
        s = rng.integers(0, 3, size=rng.integers(9, 40)).tolist()
        t = rng.integers(0, 3, size=rng.integers(9, 40)).tolist()
        ed = edit_distance(s, t)
        assert ed == len(s) + len(t) - 2 * lcs(s, t)
    for _ in range(300):
        s = rng.integers(0, 2, size=rng.integers(9, 30)).tolist()
        t = rng.integers(0, 2, size=rng.integers(9, 30)).tolist()
        assert edit_distance(s, t) == dp_edit_distance(s, t)


def test_prefix_profile_matches_table():
    rng = np.random.default_rng(3)
    for _ in range(50):
        a = rng.integers(0, 4, size=15).tolist()
        b = rng.integers(0, 4, size=12).tolist()
        profile = lcs_prefix_profile(a, b)
        assert profile == [lcs(a[:t], b) for t in range(len(a) + 1)]


def test_suffix_table():
    s, t = [1, 2, 3, 2], [2, 3, 1, 2]
    table = suffix_lcs_table(s, t)
    for i in range(len(s) + 1):
        for j in range(len(t) + 1):
            assert table[i, j] == lcs(s[i:], t[j:])


def test_alignment_is_optimal_and_lexicographic():
    s, t = [1, 2, 1], [1, 1, 2, 1]
    a = align(s, t)
    assert len(a) == lcs(s, t) == 3
    assert a.cost == 1
    assert a.pairs == ((0, 0), (1, 2), (2, 3))
    for i, j in a.pairs:
        assert s[i] == t[j]

    # ties resolve to the smallest pair list
    a = align([5], [5, 5])
    assert a.pairs == ((0, 0),)


def test_edit_script_replays():
    rng = np.random.default_rng(5)
    for _ in range(200):
        s = rng.integers(0, 3, size=rng.integers(0, 12)).tolist()
        t = rng.integers(0, 3, size=rng.integers(0, 12)).tolist()
        ops = edit_script(align(s, t), s, t)
        assert len(ops) == edit_distance(s, t)
        assert apply_script(s, ops) == t


def test_is_subsequence():
    assert is_subsequence([1, 1], [1, 0, 1])
    assert not is_subsequence([1, 1, 1], [1, 0, 1])
    assert is_subsequence([], [0])
