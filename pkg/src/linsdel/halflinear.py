#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
The half-linear insdel code.

A message is encoded with the base code into (c_1, ..., c_n) and every
symbol is paired with the corresponding synchronization symbol:

    ((c_1, S_1 c_1), (c_2, S_2 c_2), ..., (c_n, S_n c_n))

The code lives over GF(q) x GF(q) and is linear over GF(q). Since S_i is
never zero, a received pair (a, b) with a != 0 reveals the index symbol
b / a together with the data symbol a.

@author: linsdel developers
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from linsdel.basecode import BaseCode, ReedSolomonCode
from linsdel.exceptions import ParameterError
from linsdel.gf import FieldSpec
from linsdel.syncstring import (
    CandidateList, SyncString, cid_decode, distinct_sync, generate_sync
)
from linsdel.utils import Number, as_fraction, floor_mul

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]
PairWord = List[Pair]


def default_sync_epsilon(epsilon: Fraction) -> Fraction:
    return epsilon * epsilon


def make_sync(
    spec: FieldSpec,
    n: int,
    sync_epsilon: Fraction,
    sync_seed: Optional[int] = None
) -> SyncString:
    """
    Return a synchronization string of length n usable over spec.

    When the nonzero field elements are at least n a seeded distinct-symbol
    string is used (it is valid for every epsilon), otherwise a random
    string over the q - 1 nonzero elements is searched for.
    """
    alphabet = spec.order - 1
    if alphabet >= n:
        return distinct_sync(n, sync_epsilon, alphabet, sync_seed)
    return generate_sync(n, sync_epsilon, alphabet, sync_seed)


class IndexedPairCode:
    """
    Common machinery of the codes pairing base-code symbols with a
    synchronization string.
    """

    family = ''

    def __init__(
        self,
        base: BaseCode,
        sync: SyncString,
        delta: Number,
        epsilon: Number
    ) -> None:
        """
        :param base: The errors-and-erasures base code over GF(q).
        :param sync: A synchronization string of length base.n.
        :param delta: The target fraction of insdel errors.
        :param epsilon: The slack parameter.
        """
        self.delta = as_fraction(delta)
        self.epsilon = as_fraction(epsilon)
        self.check_parameters(self.delta, self.epsilon)
        if len(sync) != base.n:
            raise ParameterError(
                f"sync string has length {len(sync)}, the base code {base.n}"
            )
        self.base = base
        self.sync = sync
        self.field: FieldSpec = base.field
        self.sync_values = sync.to_field(self.field)
        self._sync_arr = self.field.array(self.sync_values)

        required = self.relative_distance(self.delta, self.epsilon)
        distance = base.n - base.k + 1
        if distance < required * base.n:
            raise ParameterError(
                f"base code distance {distance} is below delta_C * n = "
                f"{float(required * base.n):.2f}"
            )

    @classmethod
    def relative_distance(cls, delta: Fraction, epsilon: Fraction) -> Fraction:
        raise NotImplementedError()

    @classmethod
    def check_parameters(cls, delta: Fraction, epsilon: Fraction) -> None:
        if delta <= 0:
            raise ParameterError(f"delta must be positive, got {delta}")
        if epsilon <= 0:
            raise ParameterError(f"epsilon must be positive, got {epsilon}")

    @classmethod
    def build(
        cls,
        spec: FieldSpec,
        n: int,
        delta: Number,
        epsilon: Number,
        sync_seed: Optional[int] = None,
        sync_epsilon: Optional[Number] = None
    ):
        """
        Build an instance: choose the base code from the required relative
        distance and attach a verified synchronization string.

        :param spec: The field GF(q).
        :param n: The block length of the base code.
        :param delta: The target fraction of insdel errors.
        :param epsilon: The slack parameter.
        :param sync_seed: Seed of the synchronization string search.
        :param sync_epsilon:
            The synchronization parameter. The default is epsilon^2.
        :return: The code instance.
        """
        delta = as_fraction(delta)
        epsilon = as_fraction(epsilon)
        cls.check_parameters(delta, epsilon)
        delta_c = cls.relative_distance(delta, epsilon)
        base = ReedSolomonCode.for_distance(spec, n, delta_c)
        if sync_epsilon is None:
            sync_eps = default_sync_epsilon(epsilon)
        else:
            sync_eps = as_fraction(sync_epsilon)
        sync = make_sync(spec, n, sync_eps, sync_seed)
        code = cls(base, sync, delta, epsilon)
        if code.rate <= code.rate_bound():
            raise ParameterError(
                f"rate {code.rate} does not exceed the bound "
                f"{code.rate_bound()}"
            )
        logger.info(
            "%s code over %s: n=%d, k=%d, delta_C=%s, rate=%s (bound %s)",
            cls.family, spec, n, base.k, delta_c, code.rate,
            code.rate_bound()
        )
        return code

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def k(self) -> int:
        return self.base.k

    @property
    def delta_c(self) -> Fraction:
        return self.relative_distance(self.delta, self.epsilon)

    @property
    def rate(self) -> Fraction:
        raise NotImplementedError()

    def rate_bound(self) -> Fraction:
        raise NotImplementedError()

    def decoding_budget(self) -> int:
        """The number of insdel operations the decoder is guaranteed to
        correct, floor(delta * n)."""
        return floor_mul(self.delta, self.n)

    def max_zero_coordinates(self) -> int:
        """Largest number of zero symbols of a nonzero base codeword."""
        return self.n - (self.base.n - self.base.k + 1)

    def pair_arrays(self, msg: Sequence[int]):
        """Return the arrays (c_i) and (S_i c_i) of a message."""
        c = self.field.array(self.base.encode(msg))
        return c, c * self._sync_arr

    def pairs_to_candidates(self, pairs: Sequence[Pair]) -> CandidateList:
        """
        Map received pairs (a, b) to indexed symbols (b / a, a).

        Pairs with a zero coordinate are skipped.
        """
        if not pairs:
            return []
        arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        keep = (arr[:, 0] != 0) & (arr[:, 1] != 0)
        if not keep.any():
            return []
        a = self.field.array(arr[keep, 0])
        b = self.field.array(arr[keep, 1])
        index = b / a
        return [(int(i), int(d)) for i, d in zip(index, a)]

    def decode_candidates(self, candidates: CandidateList) -> List[int]:
        """Decode a candidate list, the empty list meaning the zero
        message."""
        if not candidates:
            return [0] * self.k
        return cid_decode(candidates, self.sync_values, self.base)

    def forge_symbol(self, rng: np.random.Generator) -> Pair:
        """
        Return a pair that looks like a valid codeword symbol: (c, S_i c)
        for a random position i and a random nonzero c.
        """
        i = int(rng.integers(0, self.n))
        c = self.field.element(int(rng.integers(1, self.field.order)))
        return (int(c), int(c * self.sync_values[i]))

    def random_message(self, rng: np.random.Generator) -> List[int]:
        return [int(v) for v in rng.integers(0, self.field.order, size=self.k)]

    def to_dict(self) -> dict:
        return {
            'family': self.family,
            'delta': str(self.delta),
            'epsilon': str(self.epsilon),
            'base': self.base.to_dict(),
            'sync': self.sync.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict):
        if data.get('family') != cls.family:
            raise ParameterError(
                f"expected a '{cls.family}' code, got '{data.get('family')}'"
            )
        return cls(
            ReedSolomonCode.from_dict(data['base']),
            SyncString.from_dict(data['sync']),
            data['delta'],
            data['epsilon']
        )

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}({self.field}, n={self.n}, k={self.k}, "
            f"delta={self.delta}, epsilon={self.epsilon})"
        )


class HalfLinearCode(IndexedPairCode):
    """The code over pairs of GF(q) symbols, linear over GF(q)."""

    family = 'half'

    @classmethod
    def relative_distance(cls, delta: Fraction, epsilon: Fraction) -> Fraction:
        return (1 + delta + 13 * epsilon) / 2

    @classmethod
    def check_parameters(cls, delta: Fraction, epsilon: Fraction) -> None:
        super().check_parameters(delta, epsilon)
        if cls.relative_distance(delta, epsilon) >= 1:
            raise ParameterError(
                "delta_C = (1 + delta + 13 epsilon) / 2 < 1 (half-linear) "
                f"is violated by delta={delta}, epsilon={epsilon}"
            )

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k, 2 * self.n)

    def rate_bound(self) -> Fraction:
        return (1 - self.delta) / 4 - 4 * self.epsilon

    def encode(self, msg: Sequence[int]) -> PairWord:
        """
        Encode a message into n pairs (c_i, S_i c_i).

        :param msg: The k message symbols.
        :return: The list of pairs.
        """
        c, sc = self.pair_arrays(msg)
        return [(int(a), int(b)) for a, b in zip(c, sc)]

    def candidates(self, y: Sequence[Pair]) -> CandidateList:
        """Build the candidate list of a received pair word."""
        return self.pairs_to_candidates(y)

    def decode(self, y: Sequence[Pair]) -> List[int]:
        """
        Decode a received sequence of pairs, of any length.

        Pairs with b = 0 (and, only possible after corruption, with a = 0)
        carry no index and are ignored. If nothing is left the zero
        message is returned.

        :param y: The received pairs.
        :return: The message.
        :raises DecodingFailure: if the base decoder fails.
        """
        return self.decode_candidates(self.candidates(y))


def hl_encode(code: HalfLinearCode, msg: Sequence[int]) -> PairWord:
    return code.encode(msg)


def hl_decode(code: HalfLinearCode, y: Sequence[Pair]) -> List[int]:
    return code.decode(y)
