#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Decoding time grows at most cubically in the block length."""
from fractions import Fraction

import numpy as np
import pytest

from linsdel.channel import AdversaryScript, corrupt
from linsdel.fulllinear import FullLinearCode
from linsdel.halflinear import HalfLinearCode
from linsdel.utils import Stopwatch, loglog_slope

SIZES = [16, 32, 64, 128]
REPEATS = 7


def _decode_time(code, seed):
    rng = np.random.default_rng(seed)
    timings = []
    for r in range(REPEATS):
        msg = code.random_message(rng)
        script = AdversaryScript('random', code.decoding_budget(), seed=r)
        received = corrupt(code.encode(msg), script,
                           code.forge_symbol).word
        with Stopwatch() as watch:
            assert code.decode(received) == msg
        timings.append(watch.elapsed_ms)
    return float(np.median(timings))


@pytest.mark.slow
@pytest.mark.parametrize("cls", [HalfLinearCode, FullLinearCode])
def test_decode_scaling(gf256, cls):
    times = []
    for n in SIZES:
        code = cls.build(gf256, n, Fraction(1, 10), Fraction(1, 100),
                         sync_seed=n)
        times.append(_decode_time(code, n))
    slope = loglog_slope(SIZES, times)
    print(f"{cls.__name__}: times {times} ms, log-log slope {slope:.2f}")
    assert slope <= 3.3
