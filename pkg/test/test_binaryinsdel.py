#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Inner code search and certification, and the binary concatenated code."""
from fractions import Fraction

import numpy as np
import pytest

from linsdel.binaryinsdel import (
    BinaryInsdelCode, InnerCode, bin_decode, bin_encode, check_feasibility,
    asymptotic_outer_delta, asymptotic_parameters, asymptotic_rate_bound,
    check_property1, check_property2, inner_search, random_generator,
    zero_runs
)
from linsdel.channel import AdversaryScript, code_params, corrupt, trial
from linsdel.exceptions import ParameterError
from linsdel.gf import default_binary_field
from linsdel.halflinear import HalfLinearCode
from linsdel.utils import success_interval

from test.conftest import (
    DESK_DELTA_IN, DESK_K_IN, DESK_M, DESK_RHO, EPSILON, OUTER_DELTA
)

TRIALS = 500


def test_feasibility_rejections():
    # window 6, two deletions of slack: no binary [6, 4, 3] window code
    with pytest.raises(ParameterError, match="sphere-packing"):
        check_feasibility(34, 4, Fraction(6, 34), Fraction(2, 34))
    with pytest.raises(ParameterError, match="rho < delta_in"):
        check_feasibility(96, 6, Fraction(1, 12), Fraction(1, 12))
    with pytest.raises(ParameterError, match="shorter than k_in"):
        check_feasibility(96, 6, Fraction(4, 96), 0)
    with pytest.raises(ParameterError):
        check_feasibility(4, 6, Fraction(1, 2), 0)
    check_feasibility(DESK_M, DESK_K_IN, DESK_DELTA_IN, DESK_RHO)


def test_desk_inner_is_certified(desk_inner):
    assert desk_inner.window == 8
    assert desk_inner.slack == 1
    assert desk_inner.p1_threshold == 81
    assert desk_inner.rank() == DESK_K_IN
    assert desk_inner.is_certified()
    assert desk_inner.certification['property1'] == 'exhaustive'
    assert check_property2(desk_inner).ok


def test_planted_property2_violation(desk_inner):
    gen = desk_inner.generator.copy()
    gen[40:48, :] = 0
    bad = InnerCode(DESK_M, DESK_K_IN, gen, DESK_DELTA_IN, DESK_RHO)
    res = check_property2(bad)
    assert not res.ok
    assert 33 <= res.counterexample['start'] <= 40
    assert res.counterexample['ones'] < 2


def test_planted_property1_violation(desk_inner):
    gen = desk_inner.generator.copy()
    # the codeword of the second unit vector is a shift of the first
    gen[1:, 1] = gen[:-1, 0]
    bad = InnerCode(DESK_M, DESK_K_IN, gen, DESK_DELTA_IN, DESK_RHO)
    res = check_property1(bad, 'exhaustive', workers=2)
    print(res.to_dict())
    assert not res.ok
    assert res.counterexample['lcs'] >= res.counterexample['length'] - 1


def test_sampled_certificate_is_labelled(desk_inner):
    res = check_property1(desk_inner, 'sampled', samples=50, seed=1)
    assert res.ok
    assert res.mode == 'sampled'
    assert res.samples == 50
    capped = check_property1(desk_inner, 'exhaustive', samples=20, seed=1,
                             pair_cap=16)
    assert capped.mode == 'sampled'


def test_inner_search_is_seeded():
    a = inner_search(DESK_M, DESK_K_IN, DESK_DELTA_IN, DESK_RHO, seed=7,
                     verify_mode='unchecked')
    b = inner_search(DESK_M, DESK_K_IN, DESK_DELTA_IN, DESK_RHO, seed=7,
                     verify_mode='unchecked')
    assert np.array_equal(a.generator, b.generator)
    assert a.certification['property1'] == 'unchecked'
    assert not a.is_certified()


def test_random_generator_agreement():
    # two distinct codewords of a random linear code agree on t fixed
    # positions with probability at most 2^-t
    rng = np.random.default_rng(11)
    m, k_in, t, draws = 24, 4, 5, 6000
    v = np.array([1, 0, 1, 1])
    w = np.array([0, 1, 1, 0])
    s = [0, 3, 7, 12, 20]
    shifted = [1, 2, 9, 15, 23]
    same = crossed = 0
    for _ in range(draws):
        gen = random_generator(m, k_in, rng)
        c, c2 = gen @ v % 2, gen @ w % 2
        same += bool(np.array_equal(c[s], c2[s]))
        crossed += bool(np.array_equal(c[s], c2[shifted]))
    print(f"agreement rates: {same / draws:.4f}, {crossed / draws:.4f}")
    for hits in (same, crossed):
        low, _ = success_interval(hits, draws, confidence=0.999)
        assert low <= 2.0 ** -t


def test_inner_search_random_strategy():
    kwargs = dict(seed=3, strategy='random', budget=1000)
    code = inner_search(32, 2, Fraction(3, 16), Fraction(0), **kwargs)
    assert code.window == 6 and code.slack == 0
    assert code.rank() == 2
    assert code.is_certified()
    assert check_property2(code).ok
    assert check_property1(code).ok
    again = inner_search(32, 2, Fraction(3, 16), Fraction(0), **kwargs)
    assert np.array_equal(code.generator, again.generator)
    with pytest.raises(ParameterError, match="search strategy"):
        inner_search(32, 2, Fraction(3, 16), Fraction(0), strategy='exhaustive')


def test_inner_serialization(desk_inner):
    again = InnerCode.from_dict(desk_inner.to_dict())
    assert np.array_equal(again.generator, desk_inner.generator)
    assert again.certification == desk_inner.certification
    with pytest.raises(ParameterError):
        InnerCode.from_dict(dict(desk_inner.to_dict(), generator='01'))


def test_inner_decode_clean(desk_inner):
    for v, word in enumerate(desk_inner.codewords):
        assert np.array_equal(desk_inner.decode(word),
                              desk_inner.messages[v])


@pytest.mark.slow
def test_inner_decode_deletions(desk_inner):
    rng = np.random.default_rng(11)
    count = desk_inner.codewords.shape[0]
    for _ in range(10000):
        v = int(rng.integers(0, count))
        word = desk_inner.codewords[v]
        dels = int(rng.integers(0, desk_inner.slack + 1))
        keep = np.sort(rng.choice(DESK_M, size=DESK_M - dels, replace=False))
        received = word[keep]
        assert v in desk_inner.containing(received)
        assert np.array_equal(desk_inner.decode(received),
                              desk_inner.messages[v])


def test_binary_parameters(binary_codes):
    code = binary_codes[32]
    assert (code.n, code.k) == (32, 6)
    assert code.inner_buffer == 16
    assert code.outer_buffer == 40
    assert code.length == 2 * 96 * 32 + 16 * 32 + 40 * 31
    assert code.rate == Fraction(36, code.length)
    assert code.rate > code.rate_bound()
    assert code.decoding_budget() == 16
    assert binary_codes[16].decoding_budget() == 8


def test_binary_rejects_mismatched_fields(desk_inner, gf256):
    outer = HalfLinearCode.build(gf256, 16, OUTER_DELTA, EPSILON)
    with pytest.raises(ParameterError, match="k_in = log2"):
        BinaryInsdelCode(desk_inner, outer)

    gf32 = default_binary_field(5)
    rng = np.random.default_rng(0)
    inner5 = InnerCode(DESK_M, 5, rng.integers(0, 2, size=(DESK_M, 5)),
                       DESK_DELTA_IN, DESK_RHO)
    outer5 = HalfLinearCode.build(gf32, 16, OUTER_DELTA, EPSILON)
    with pytest.raises(ParameterError, match="square"):
        BinaryInsdelCode(inner5, outer5)


def test_encode_layout(binary_codes):
    code = binary_codes[16]
    msg = code.random_message(np.random.default_rng(3))
    word = bin_encode(code, msg)
    assert word.dtype == np.uint8
    assert word.size == code.length
    long_runs = [r for r in zero_runs(word) if r[1] >= 4 * code.window]
    assert len(long_runs) >= code.n - 1 - code.outer.max_zero_coordinates()
    pairs = code.received_pairs(word)
    expected = [p for p in code.outer.encode(msg) if all(p)]
    assert [p for p in pairs if all(p)] == expected


def test_binary_round_trip_and_zero(binary_codes):
    rng = np.random.default_rng(4)
    for code in binary_codes.values():
        msg = code.random_message(rng)
        assert bin_decode(code, bin_encode(code, msg)) == msg
        assert bin_decode(code, []) == [0] * code.k
        assert bin_decode(code, np.zeros(50, dtype=np.uint8)) == [0] * code.k


def test_binary_linearity(binary_codes):
    code = binary_codes[16]
    rng = np.random.default_rng(5)
    for _ in range(1000):
        a, b = code.random_message(rng), code.random_message(rng)
        combo = [x ^ y for x, y in zip(a, b)]
        assert np.array_equal(bin_encode(code, combo),
                              bin_encode(code, a) ^ bin_encode(code, b))


def test_buffer_delete_within_budget(binary_codes):
    code = binary_codes[32]
    msg = code.random_message(np.random.default_rng(6))
    params = code_params('buffer-delete', code)
    script = AdversaryScript('buffer-delete', code.decoding_budget(), seed=1,
                             params=params)
    res = corrupt(bin_encode(code, msg), script)
    assert 0 < res.ops_used <= code.decoding_budget()
    assert bin_decode(code, res.word) == msg


@pytest.mark.slow
@pytest.mark.parametrize("n", [16, 32])
@pytest.mark.parametrize("strategy", [
    'random', 'buffer-delete', 'fake-buffer', 'block-merge', 'composite'
])
def test_guarantee_within_budget(binary_codes, n, strategy):
    code = binary_codes[n]
    params = code_params(strategy, code)
    if strategy == 'composite':
        params['parts'] = [
            dict(code_params(s, code), strategy=s)
            for s in ('buffer-delete', 'block-merge', 'random')
        ]
    script = AdversaryScript(strategy, code.decoding_budget(), params=params)
    report = trial(code, script, TRIALS, seed=1000 + n)
    assert report.within_budget
    assert report.success_rate == 1.0, report.failures[:1]


def test_insertions_are_outside_the_guarantee(binary_codes):
    code = binary_codes[16]
    script = AdversaryScript('random', 4, params={'insert_ratio': 0.5})
    report = trial(code, script, 5, seed=2)
    assert not report.within_budget


def test_binary_serialization(binary_codes):
    code = binary_codes[16]
    again = BinaryInsdelCode.from_dict(code.to_dict())
    msg = code.random_message(np.random.default_rng(8))
    assert np.array_equal(again.encode(msg), code.encode(msg))
    with pytest.raises(ParameterError):
        BinaryInsdelCode.from_dict(dict(code.to_dict(), family='half'))


def test_asymptotic_parameters():
    params = asymptotic_parameters()
    assert params['m'] == 576
    assert params['window'] == 96
    assert params['slack'] == 33
    assert asymptotic_parameters(8)['m'] == 768


@pytest.mark.parametrize("delta, eps_out", [
    (Fraction(1, 1000), Fraction(1, 10**6)),
    (Fraction(1, 200), Fraction(1, 10**4)),
])
def test_asymptotic_rate(delta, eps_out):
    expected = (1 - 54 * delta) / 1216 + (delta / 6 - 4 * eps_out) / 1216
    assert asymptotic_rate_bound(delta, eps_out) == expected
    assert asymptotic_outer_delta(delta) == Fraction(323, 6) * delta


def test_asymptotic_rate_tradeoff():
    for i in range(1, 101):
        delta = Fraction(i, 5400)
        floor = (1 - 54 * delta) / 1216
        assert asymptotic_rate_bound(delta) >= floor
        # the largest slack the relation allows
        limit = asymptotic_outer_delta(delta) / 1400
        assert asymptotic_rate_bound(delta, limit * Fraction(999, 1000)) >= floor


@pytest.mark.parametrize("delta, eps_out", [
    (Fraction(1, 1000), Fraction(1, 100)),
    (Fraction(0), Fraction(1, 50)),
    (Fraction(1, 50), None),
])
def test_asymptotic_rate_relations(delta, eps_out):
    with pytest.raises(ParameterError):
        asymptotic_rate_bound(delta, eps_out)
