#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Shared fixtures: fields and the certified desk-scale inner code."""
from fractions import Fraction

import pytest

from linsdel.binaryinsdel import BinaryInsdelCode, InnerCode, inner_search
from linsdel.fulllinear import FullLinearCode
from linsdel.gf import default_binary_field, field_create
from linsdel.halflinear import HalfLinearCode

# desk preset: W = 8, R = 1, property 1 threshold 81
DESK_M = 96
DESK_K_IN = 6
DESK_DELTA_IN = Fraction(1, 12)
DESK_RHO = Fraction(1, 96)
DESK_SEED = 20240501

OUTER_DELTA = Fraction(1, 2)
EPSILON = Fraction(1, 100)


@pytest.fixture(scope="session")
def gf256():
    return default_binary_field(8)


@pytest.fixture(scope="session")
def gf64():
    return default_binary_field(6)


@pytest.fixture(scope="session")
def gf16():
    return default_binary_field(4)


@pytest.fixture(scope="session")
def gf7():
    return field_create('prime', 7)


@pytest.fixture(scope="session")
def desk_inner() -> InnerCode:
    print("Searching the desk inner code")
    return inner_search(
        DESK_M, DESK_K_IN, DESK_DELTA_IN, DESK_RHO, seed=DESK_SEED,
        verify_mode='exhaustive', workers=2
    )


@pytest.fixture(scope="session")
def binary_codes(desk_inner, gf64):
    """Binary desk instances keyed by the outer length."""
    return {
        n: BinaryInsdelCode.build(
            desk_inner, HalfLinearCode.build(gf64, n, OUTER_DELTA, EPSILON)
        )
        for n in (16, 32)
    }


@pytest.fixture(scope="session")
def half_codes(gf256):
    return {
        n: HalfLinearCode.build(gf256, n, Fraction(1, 10), EPSILON)
        for n in (16, 32, 64)
    }


@pytest.fixture(scope="session")
def full_codes(gf256):
    return {
        n: FullLinearCode.build(gf256, n, Fraction(1, 10), EPSILON)
        for n in (16, 32, 64)
    }
