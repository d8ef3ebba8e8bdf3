#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Fully linear buffered code."""
import itertools
import logging
from fractions import Fraction

import numpy as np
import pytest

from linsdel.basecode import ReedSolomonCode
from linsdel.channel import AdversaryScript, corrupt, trial
from linsdel.exceptions import ParameterError
from linsdel.fulllinear import FullLinearCode, fl_decode, fl_encode, fl_parse
from linsdel.gf import field_create
from linsdel.syncstring import distinct_sync

TRIALS = 1000


def test_parse_blocks():
    assert fl_parse([1, 2, 0, 0, 3, 4]) == [(1, 2), (3, 4)]
    assert fl_parse([0, 0, 0]) == []
    assert fl_parse([]) == []
    assert fl_parse([5, 0, 6, 7, 8, 0]) == [(5,), (6, 7, 8)]


def test_parameters(full_codes):
    code = full_codes[32]
    assert code.length == 126
    assert code.delta_c == Fraction(153, 200)
    assert code.rate == Fraction(code.k, 126)
    assert code.rate > code.rate_bound()
    assert code.decoding_budget() == 3
    assert code.proof_budget() == 12
    assert code.min_weight_bound() == 2 * code.base.distance


def test_delta_upper_bound(gf256):
    with pytest.raises(ParameterError, match=r"delta < 1/4"):
        FullLinearCode.build(gf256, 32, Fraction(3, 10), Fraction(1, 100))


def test_encoding_layout(full_codes):
    code = full_codes[16]
    msg = code.random_message(np.random.default_rng(0))
    word = fl_encode(code, msg)
    pairs = code.base.encode(msg)
    assert len(word) == 4 * code.n - 2
    for i in range(code.n):
        assert word[4 * i] == pairs[i]
        assert code.field.element(word[4 * i]) * code.sync_values[i] \
            == word[4 * i + 1]
        if i < code.n - 1:
            assert word[4 * i + 2] == word[4 * i + 3] == 0


def test_clean_round_trip_and_zero(full_codes):
    rng = np.random.default_rng(1)
    for code in full_codes.values():
        msg = code.random_message(rng)
        assert fl_decode(code, fl_encode(code, msg)) == msg
        assert fl_decode(code, [0] * 7) == [0] * code.k
        assert fl_decode(code, []) == [0] * code.k


def test_min_weight(full_codes):
    code = full_codes[16]
    rng = np.random.default_rng(2)
    for _ in range(200):
        msg = code.random_message(rng)
        if not any(msg):
            continue
        word = fl_encode(code, msg)
        assert np.count_nonzero(word) >= code.min_weight_bound()


def test_linearity_exhaustive_tiny():
    spec = field_create('binary-extension', 2, 2)
    code = FullLinearCode(ReedSolomonCode(spec, 3, 2),
                          distinct_sync(3, alphabet=3),
                          Fraction(1, 100), Fraction(1, 100))

    words = {
        tuple(fl_encode(code, list(m)))
        for m in itertools.product(range(4), repeat=2)
    }
    assert len(words) == 16
    for u, v in itertools.product(words, repeat=2):
        for lam in range(4):
            combo = tuple(
                int(spec.element(lam) * a + b) for a, b in zip(u, v)
            )
            assert combo in words


@pytest.mark.slow
def test_linearity_sampled(full_codes):
    code = full_codes[32]
    spec = code.field
    rng = np.random.default_rng(3)
    for _ in range(10000):
        a, b = code.random_message(rng), code.random_message(rng)
        lam = spec.element(int(rng.integers(0, spec.order)))
        combo = [int(lam * x + y) for x, y in zip(a, b)]
        expected = [
            int(lam * x + y) for x, y in zip(fl_encode(code, a),
                                             fl_encode(code, b))
        ]
        assert fl_encode(code, combo) == expected


def test_block_merge_costs_two(full_codes, caplog):
    caplog.set_level(logging.DEBUG, logger="linsdel.fulllinear")
    code = full_codes[16]
    rng = np.random.default_rng(4)
    msg = code.random_message(rng)
    while not all(code.base.encode(msg)):
        msg = code.random_message(rng)
    word = fl_encode(code, msg)
    blocks = len(fl_parse(word))
    script = AdversaryScript(
        'block-merge', 2, seed=0,
        params={'run_min': 2, 'run_max': 2, 'shrink_to': 0}
    )
    res = corrupt(word, script)
    assert res.ops_used == 2
    assert not res.degraded
    assert len(fl_parse(res.word)) == blocks - 1
    assert fl_decode(code, res.word) == msg
    assert f"1 of {blocks - 1} blocks dropped" in caplog.text


@pytest.mark.slow
@pytest.mark.parametrize("n", [16, 32, 64])
@pytest.mark.parametrize("strategy", [
    'random', 'zero-pair-exploit', 'block-merge'
])
def test_guarantee_within_budget(full_codes, n, strategy):
    code = full_codes[n]
    script = AdversaryScript(
        strategy, code.decoding_budget(),
        params={'run_min': 2, 'run_max': 2, 'shrink_to': 0}
    )
    report = trial(code, script, TRIALS, seed=100 + n)
    assert report.within_budget
    assert report.success_rate == 1.0, report.failures[:1]


@pytest.mark.slow
def test_proof_budget_reported(full_codes):
    code = full_codes[32]
    script = AdversaryScript('random', code.proof_budget())
    report = trial(code, script, 200, seed=9)
    print(f"success rate at the proof budget: {report.success_rate:.3f}")
    assert not report.within_budget
    assert 0.0 <= report.success_rate <= 1.0
