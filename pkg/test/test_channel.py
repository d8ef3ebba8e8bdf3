#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Adversarial channel, replay and the trial harness."""
import json
import os

import numpy as np
import pytest

from linsdel.channel import (
    AdversaryScript, FailureTranscript, code_params, corrupt, may_insert,
    replay, trial, zero_runs
)
from linsdel.editmetrics import edit_distance
from linsdel.exceptions import FormatError, ParameterError
from linsdel.halflinear import hl_encode


def test_script_validation():
    with pytest.raises(ParameterError):
        AdversaryScript('gremlins', 3)
    with pytest.raises(ParameterError):
        AdversaryScript('random', -1)
    script = AdversaryScript('random', 3, seed=5, params={'insert_ratio': 0})
    assert AdversaryScript.from_dict(script.to_dict()) == script
    with pytest.raises(FormatError):
        AdversaryScript.from_dict({'budget': 2})


def test_zero_budget_is_identity():
    word = [3, 0, 0, 5, 1]
    res = corrupt(word, AdversaryScript('random', 0, seed=1))
    assert res.word == word
    assert res.ops_used == 0
    assert res.op_log == []


def test_replay_single_deletion():
    assert replay([1, 0, 0, 1], [(2, 'del', 0)]) == [1, 0, 1]
    assert replay([1, 1], [(1, 'ins', 0)]) == [1, 0, 1]
    with pytest.raises(FormatError):
        replay([1, 0], [(0, 'del', 0)])
    with pytest.raises(FormatError):
        replay([1, 0], [(5, 'ins', 0)])


@pytest.mark.parametrize("strategy", [
    'random', 'zero-pair-exploit', 'block-merge', 'buffer-delete',
    'fake-buffer', 'composite'
])
def test_cost_accounting(strategy):
    rng = np.random.default_rng(0)
    for seed in range(30):
        word = [int(v) for v in rng.integers(0, 3, size=40)]
        budget = int(rng.integers(0, 12))
        res = corrupt(word, AdversaryScript(strategy, budget, seed=seed))
        assert res.ops_used <= budget
        assert edit_distance(word, res.word) <= res.ops_used
        assert replay(word, res.op_log) == res.word


def test_corruption_is_deterministic():
    word = list(range(1, 30))
    script = AdversaryScript('random', 8, seed=42)
    assert corrupt(word, script) == corrupt(word, script)
    other = corrupt(word, script.with_seed(43))
    assert other.op_log != corrupt(word, script).op_log


def test_array_words_stay_arrays():
    word = np.array([1, 0, 0, 0, 1, 1], dtype=np.uint8)
    res = corrupt(word, AdversaryScript('buffer-delete', 2, seed=0,
                                        params={'run_min': 3, 'shrink_to': 1}))
    assert isinstance(res.word, np.ndarray)
    assert res.word.dtype == np.uint8
    assert res.word.tolist() == [1, 0, 1, 1]
    assert np.array_equal(replay(word, res.op_log), res.word)


def test_degraded_strategy_falls_back():
    word = [1, 2, 3, 4, 5]
    res = corrupt(word, AdversaryScript('buffer-delete', 2, seed=3,
                                        params={'run_min': 2}))
    assert res.degraded
    assert res.ops_used == 2


def test_fake_buffer_grows_a_run():
    word = [1, 0, 2, 0, 3, 0, 4]
    res = corrupt(word, AdversaryScript('fake-buffer', 2, seed=0,
                                        params={'target_run': 3}))
    assert res.ops_used == 2
    assert not res.degraded
    assert max(n for _, n in zero_runs(res.word)) >= 2


def test_zero_runs():
    assert zero_runs([]) == []
    assert zero_runs([0, 0, 1, 0]) == [(0, 2), (3, 1)]
    assert zero_runs([(0, 0), (1, 0), (0, 0)]) == [(0, 1), (2, 1)]


def test_composite_budget_split():
    word = [1, 0, 0, 1, 2, 0, 0, 0, 3] * 3
    script = AdversaryScript('composite', 6, seed=4, params={
        'insert_ratio': 0.0,
        'parts': [
            {'strategy': 'buffer-delete', 'run_min': 2, 'shrink_to': 1},
            {'strategy': 'random'},
        ]
    })
    res = corrupt(word, script)
    assert res.ops_used <= 6
    assert all(op == 'del' for _, op, _ in res.op_log)
    assert not may_insert(script.strategy, script.params)
    assert may_insert('composite', {'parts': [{'strategy': 'random'}]})


def test_code_params(half_codes, full_codes, binary_codes):
    assert code_params('block-merge', half_codes[16]) == {}
    assert code_params('fake-buffer', full_codes[16]) == {'target_run': 2}
    assert code_params('buffer-delete', binary_codes[16]) == {
        'run_min': 32, 'run_max': None, 'shrink_to': 31
    }
    assert code_params('block-merge', binary_codes[16])['run_max'] == 31
    assert code_params('random', binary_codes[16]) == {'insert_ratio': 0.0}


def test_trial_zero_budget(half_codes):
    report = trial(half_codes[16], AdversaryScript('random', 0), 20, seed=1)
    assert report.success_rate == 1.0
    assert report.within_budget
    assert not report.guarantee_violated
    low, high = report.interval
    assert 0.8 < low < 1.0 and high == 1.0


def test_trial_is_reproducible(half_codes):
    script = AdversaryScript('random', 40)
    a = trial(half_codes[16], script, 30, seed=7)
    b = trial(half_codes[16], script, 30, seed=7)
    assert (a.successes, a.degraded) == (b.successes, b.degraded)
    assert [f.seed for f in a.failures] == [f.seed for f in b.failures]
    assert not a.within_budget


def test_failure_transcripts(half_codes, tmp_path):
    code = half_codes[16]
    report = trial(code, AdversaryScript('random', 2 * code.n), 20, seed=3)
    assert report.failures
    item = report.failures[0]
    again = FailureTranscript.from_dict(json.loads(item.to_json()))
    assert again.op_log == item.op_log
    assert again.message == item.message

    # the transcript replays to the same received word
    sent = hl_encode(code, item.message)
    received = replay(sent, again.op_log)
    assert code.candidates(received) == [tuple(c) for c in item.candidates]

    out = os.path.join(tmp_path, 'failures.jsonl')
    report.write_failures(out)
    with open(out) as f:
        assert len(f.readlines()) == len(report.failures)

    with pytest.raises(FormatError):
        FailureTranscript.from_dict({'seed': 1})


def test_trial_rejects_zero_trials(half_codes):
    with pytest.raises(ParameterError):
        trial(half_codes[16], AdversaryScript('random', 0), 0)
