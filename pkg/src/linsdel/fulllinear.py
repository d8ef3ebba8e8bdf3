#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
The fully linear insdel code over GF(q).

The pairs of the half-linear code are flattened and separated by two
zero symbols:

    (c_1, S_1 c_1, 0, 0, c_2, S_2 c_2, 0, 0, ..., c_n, S_n c_n)

The decoder splits the received word on zero runs and only keeps the
blocks of exactly two symbols.

@author: linsdel developers
"""
import logging
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from linsdel.exceptions import ParameterError
from linsdel.halflinear import IndexedPairCode
from linsdel.syncstring import CandidateList
from linsdel.utils import floor_mul

logger = logging.getLogger(__name__)

BUFFER_LENGTH = 2


def fl_parse(y: Sequence[int]) -> List[Tuple[int, ...]]:
    """
    Split a word into its maximal zero-free blocks.

    :param y: The received symbols.
    :return: The blocks, in order. An all-zero word has none.
    """
    arr = np.asarray(y, dtype=np.int64)
    if arr.size == 0:
        return []
    nonzero = np.concatenate([[False], arr != 0, [False]])
    edges = np.flatnonzero(nonzero[1:] != nonzero[:-1])
    return [
        tuple(int(v) for v in arr[start:stop])
        for start, stop in zip(edges[::2], edges[1::2])
    ]


class FullLinearCode(IndexedPairCode):
    """The buffered code, linear over GF(q)."""

    family = 'full'

    @classmethod
    def relative_distance(cls, delta: Fraction, epsilon: Fraction) -> Fraction:
        return (1 + 4 * delta + 13 * epsilon) / 2

    @classmethod
    def check_parameters(cls, delta: Fraction, epsilon: Fraction) -> None:
        super().check_parameters(delta, epsilon)
        if delta >= Fraction(1, 4):
            raise ParameterError(
                f"delta < 1/4 (full-linear) is violated by delta={delta}"
            )
        if cls.relative_distance(delta, epsilon) >= 1:
            raise ParameterError(
                "delta_C = (1 + 4 delta + 13 epsilon) / 2 < 1 (full-linear) "
                f"is violated by delta={delta}, epsilon={epsilon}"
            )

    @property
    def length(self) -> int:
        return 4 * self.n - 2

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k, self.length)

    def rate_bound(self) -> Fraction:
        return (1 - 4 * self.delta) / 8 - 2 * self.epsilon

    def proof_budget(self) -> int:
        """floor(delta * (4n - 2)), the budget charged on the flat word."""
        return floor_mul(self.delta, self.length)

    def min_weight_bound(self) -> int:
        """Lower bound on the Hamming weight of a nonzero codeword."""
        return 2 * (self.base.n - self.base.k + 1)

    def encode(self, msg: Sequence[int]) -> List[int]:
        """
        Encode a message into 4n - 2 symbols.

        :param msg: The k message symbols.
        :return: The flat codeword.
        """
        c, sc = self.pair_arrays(msg)
        out = np.zeros((self.n, 4), dtype=np.int64)
        out[:, 0] = c.view(np.ndarray)
        out[:, 1] = sc.view(np.ndarray)
        return [int(v) for v in out.reshape(-1)[:self.length]]

    def forge_symbol(self, rng: np.random.Generator) -> int:
        """A random field symbol; forged blocks take two insertions."""
        return int(rng.integers(0, self.field.order))

    def candidates(self, y: Sequence[int]) -> CandidateList:
        """Build the candidate list from the length-2 blocks of y."""
        blocks = fl_parse(y)
        pairs = [b for b in blocks if len(b) == 2]
        if len(pairs) < len(blocks):
            logger.debug(
                "%d of %d blocks dropped for a length other than 2",
                len(blocks) - len(pairs), len(blocks)
            )
        return self.pairs_to_candidates(pairs)

    def decode(self, y: Sequence[int]) -> List[int]:
        """
        Decode a received word of any length.

        Blocks of length two are zero-free by construction, so b / a is
        always defined.

        :param y: The received symbols.
        :return: The message.
        :raises DecodingFailure: if the base decoder fails.
        """
        return self.decode_candidates(self.candidates(y))


def fl_encode(code: FullLinearCode, msg: Sequence[int]) -> List[int]:
    return code.encode(msg)


def fl_decode(code: FullLinearCode, y: Sequence[int]) -> List[int]:
    return code.decode(y)
