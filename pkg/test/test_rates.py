#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Exact rates of the three constructions against their lower bounds."""
from fractions import Fraction

import pytest

from linsdel.fulllinear import FullLinearCode
from linsdel.halflinear import HalfLinearCode

DELTA = Fraction(1, 10)
EPSILON = Fraction(1, 100)


@pytest.mark.parametrize("n, k, budget", [
    (16, 7, 1), (32, 13, 3), (64, 25, 6)
])
def test_half_linear_instances(half_codes, n, k, budget):
    code = half_codes[n]
    assert code.k == k
    assert code.rate == Fraction(k, 2 * n)
    assert code.decoding_budget() == budget
    assert code.rate_bound() == (1 - DELTA) / 4 - 4 * EPSILON
    assert code.rate > code.rate_bound()


@pytest.mark.parametrize("n, k, budget", [
    (16, 4, 1), (32, 8, 3), (64, 16, 6)
])
def test_full_linear_instances(full_codes, n, k, budget):
    code = full_codes[n]
    assert code.k == k
    assert code.rate == Fraction(k, 4 * n - 2)
    assert code.decoding_budget() == budget
    assert code.rate_bound() == Fraction(11, 200)
    assert code.rate > code.rate_bound()


def test_relative_distances():
    assert HalfLinearCode.relative_distance(DELTA, EPSILON) == \
        Fraction(123, 200)
    assert FullLinearCode.relative_distance(DELTA, EPSILON) == \
        Fraction(153, 200)


@pytest.mark.parametrize("n", [16, 32])
def test_binary_instances(binary_codes, n):
    code = binary_codes[n]
    m, w = code.inner.m, code.window
    assert code.rate == Fraction(
        code.k * code.inner.k_in, 2 * m * n + 2 * w * n + 5 * w * (n - 1)
    )
    assert code.rate_bound() == (
        Fraction(6, 96) * Fraction(code.k, 2 * n) / (2 + Fraction(7 * w, m))
    )
    assert code.rate > code.rate_bound()
