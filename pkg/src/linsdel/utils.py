#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Small numerical helpers shared by the constructions and the harness.

@author: linsdel developers
"""
import math
import time
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from scipy import stats  # type: ignore

Number = Union[Fraction, int, float, str]


def as_fraction(value: Number) -> Fraction:
    """
    Convert a number to an exact rational.

    Floats are converted through their shortest decimal representation,
    so that 0.1 becomes 1/10 and not the binary approximation.

    :param value: An int, a float, a Fraction or a string like '1/6'.
    :return: The rational number.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


def ceil_mul(x: Number, n: int) -> int:
    """Return ceil(x * n) computed exactly."""
    return math.ceil(as_fraction(x) * n)


def floor_mul(x: Number, n: int) -> int:
    """Return floor(x * n) computed exactly."""
    return math.floor(as_fraction(x) * n)


def spawn_seeds(seed: Optional[int], count: int) -> List[int]:
    """
    Derive independent integer seeds from a master seed.

    :param seed: The master seed.
    :param count: How many child seeds to derive.
    :return: A list of 63 bit integer seeds.
    """
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(c.generate_state(1, dtype=np.uint64)[0]) >> 1
            for c in children]


def derive_seed(seed: Optional[int], *key: int) -> int:
    """
    Derive the seed of a named random draw from a master seed.

    Keys of two or more entries never collide with the children of
    :func:`spawn_seeds`.

    :param seed: The master seed.
    :param key: The integers naming the draw.
    :return: A 63 bit integer seed.
    """
    seq = np.random.SeedSequence(seed, spawn_key=tuple(key))
    return int(seq.generate_state(1, dtype=np.uint64)[0]) >> 1


def success_interval(
    successes: int,
    trials: int,
    confidence: float = 0.95
) -> Tuple[float, float]:
    """
    Clopper-Pearson confidence interval of a success rate.

    :param successes: The number of successful trials.
    :param trials: The number of trials.
    :param confidence: The confidence level.
    :return: The (low, high) bounds.
    """
    if trials <= 0:
        return (0.0, 1.0)
    res = stats.binomtest(successes, trials)
    ci = res.proportion_ci(confidence_level=confidence, method='exact')
    return (float(ci.low), float(ci.high))


def loglog_slope(sizes: Sequence[float], times: Sequence[float]) -> float:
    """
    Fit log(time) = a * log(size) + b and return the slope a.

    :param sizes: The problem sizes.
    :param times: The measured times, all positive.
    :return: The fitted slope.
    """
    res = stats.linregress(np.log(sizes), np.log(times))
    return float(res.slope)


class Stopwatch:
    """Context manager measuring elapsed wall time in milliseconds."""

    def __init__(self) -> None:
        self._start = 0.0
        self.elapsed_ms = 0.0

    def __enter__(self):
        self._start = time.perf_counter()
        return self

    def __exit__(self, *exc) -> None:
        self.elapsed_ms = (time.perf_counter() - self._start) * 1000.0


def bits_to_str(bits: Sequence[int]) -> str:
    """Render a bit sequence as a 0/1 string."""
    return ''.join('1' if int(b) else '0' for b in bits)


def str_to_bits(text: str) -> np.ndarray:
    """Parse a 0/1 string into a uint8 array."""
    text = text.strip()
    if set(text) - {'0', '1'}:
        raise ValueError("bit strings may only contain '0' and '1'")
    return np.frombuffer(text.encode('ascii'), dtype=np.uint8) - ord('0')


def bits_to_hex(bits: Sequence[int]) -> Tuple[str, int]:
    """
    Pack bits (most significant first) into a hex string.

    :return: The hex string and the number of bits.
    """
    arr = np.asarray(bits, dtype=np.uint8)
    return np.packbits(arr).tobytes().hex(), int(arr.size)


def hex_to_bits(text: str, length: int) -> np.ndarray:
    """Inverse of :func:`bits_to_hex`."""
    data = np.frombuffer(bytes.fromhex(text), dtype=np.uint8)
    bits = np.unpackbits(data)
    if bits.size < length:
        raise ValueError("hex string is shorter than the declared length")
    return bits[:length]
