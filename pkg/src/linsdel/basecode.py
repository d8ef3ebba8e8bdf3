#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Errors-and-erasures base codes.

The constructions only rely on the :class:`BaseCode` protocol: a linear
code of length n and dimension k over GF(q) with a decoder correcting d
errors and e erasures whenever 2d + e <= n - k. :class:`ReedSolomonCode`
implements it with evaluation-style Reed-Solomon codes and a
Berlekamp-Welch decoder.

@author: linsdel developers
"""
from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

import galois  # type: ignore

try:
    from typing import Protocol
except ImportError:  # pragma: no cover
    from typing_extensions import Protocol  # type: ignore

from linsdel.exceptions import DecodingFailure, ParameterError
from linsdel.gf import FieldSpec, field_from_dict, solve_linear
from linsdel.syncstring import PositionedWord
from linsdel.utils import Number, ceil_mul

logger = logging.getLogger(__name__)

BRUTE_FORCE_CAP = 1 << 20


class BaseCode(Protocol):
    """A linear code with an errors-and-erasures decoder."""

    field: FieldSpec
    n: int
    k: int

    def encode(self, msg: Sequence[int]) -> List[int]:
        ...

    def decode_errors_erasures(self, word: PositionedWord) -> List[int]:
        ...


class ReedSolomonCode:
    """
    A Reed-Solomon code: messages are the coefficients (lowest degree
    first) of a polynomial of degree < k, codewords its evaluations at n
    distinct nonzero points.
    """

    def __init__(
        self,
        spec: FieldSpec,
        n: int,
        k: int,
        points: Optional[Sequence[int]] = None
    ) -> None:
        """
        :param spec: The field of the code.
        :param n: The block length, at most q - 1.
        :param k: The dimension, 1 <= k <= n.
        :param points:
            The evaluation points. The default is 1, 2, ..., n in the
            canonical integer representation.
        """
        if points is None:
            if n > spec.order - 1:
                raise ParameterError(
                    f"block length {n} exceeds the {spec.order - 1} nonzero "
                    f"elements of {spec}"
                )
            points = list(range(1, n + 1))
        points = [int(p) for p in points]
        if len(points) != n:
            raise ParameterError(f"expected {n} evaluation points")
        if len(set(points)) != n or 0 in points:
            raise ParameterError("evaluation points must be distinct and nonzero")
        if not 1 <= k <= n:
            raise ParameterError(f"dimension must satisfy 1 <= k <= n, got {k}")

        self.field = spec
        self.n = int(n)
        self.k = int(k)
        self.points = tuple(points)

        self._x = spec.GF(points)
        # generator matrix, row j holds x_i^j
        self.generator = self._vandermonde(self._x, k).T

    @staticmethod
    def _vandermonde(x: galois.FieldArray, cols: int) -> galois.FieldArray:
        GF = type(x)
        out = GF.Ones((x.size, cols))
        for j in range(1, cols):
            out[:, j] = out[:, j - 1] * x
        return out

    @classmethod
    def for_distance(
        cls,
        spec: FieldSpec,
        n: int,
        delta_c: Number
    ) -> ReedSolomonCode:
        """
        Build the code of largest dimension whose minimum distance is at
        least ceil(delta_c * n).

        :param spec: The field.
        :param n: The block length.
        :param delta_c: The required relative distance.
        :return: The code.
        """
        distance = ceil_mul(delta_c, n)
        k = n - distance + 1
        if k < 1:
            raise ParameterError(
                f"relative distance {delta_c} leaves no room for a message "
                f"at length {n}"
            )
        return cls(spec, n, k)

    @property
    def distance(self) -> int:
        return self.n - self.k + 1

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k, self.n)

    def _message_array(self, msg: Sequence[int]) -> galois.FieldArray:
        msg = list(msg)
        if len(msg) != self.k:
            raise ParameterError(
                f"message must have {self.k} symbols, got {len(msg)}"
            )
        return self.field.array(msg)

    def encode_array(self, msg: Sequence[int]) -> galois.FieldArray:
        return self._message_array(msg) @ self.generator

    def encode(self, msg: Sequence[int]) -> List[int]:
        """
        Evaluate the message polynomial at the evaluation points.

        :param msg: The k coefficients, lowest degree first.
        :return: The n codeword symbols.
        """
        return [int(v) for v in self.encode_array(msg)]

    def decode_errors_erasures(self, word: PositionedWord) -> List[int]:
        """
        Decode a word with errors and erasures.

        Erased coordinates are dropped (the code restricted to the other
        coordinates is again a Reed-Solomon code), then the remaining
        errors are corrected by Berlekamp-Welch interpolation.

        :param word: n symbols, None marking erasures.
        :return: The message.
        :raises DecodingFailure: if no codeword lies within the decoding
            radius.
        """
        if len(word) != self.n:
            raise ParameterError(
                f"received word must have {self.n} positions, got {len(word)}"
            )
        kept = [i for i, v in enumerate(word) if v is not None]
        n_kept = len(kept)
        if n_kept < self.k:
            raise DecodingFailure(
                f"{self.n - n_kept} erasures leave fewer than k={self.k} "
                "positions"
            )

        GF = self.field.GF
        x = self._x[kept]
        y = self.field.array([word[i] for i in kept])
        e = (n_kept - self.k) // 2
        logger.debug(
            "Berlekamp-Welch: %d erasures, up to %d errors",
            self.n - n_kept, e
        )

        # unknowns: Q_0..Q_{e+k-1}, E_0..E_{e-1}; E monic of degree e
        vq = self._vandermonde(x, e + self.k)
        ve = self._vandermonde(x, e + 1)
        lhs = np.hstack([
            vq.view(np.ndarray),
            (-(ve[:, :e] * y[:, np.newaxis])).view(np.ndarray)
        ])
        rhs = y * ve[:, e]
        sol = solve_linear(GF(lhs), rhs)
        if sol is None:
            raise DecodingFailure("no error locator is consistent")

        q_poly = galois.Poly(sol[:e + self.k], order="asc")
        e_coeffs = np.concatenate(
            [sol[e + self.k:].view(np.ndarray), [1]]
        )
        e_poly = galois.Poly(GF(e_coeffs), order="asc")
        p_poly, rem = divmod(q_poly, e_poly)
        if np.count_nonzero(rem.coeffs) or p_poly.degree >= self.k:
            raise DecodingFailure("error locator does not divide the "
                                  "interpolating polynomial")

        msg = p_poly.coefficients(self.k, order="asc")
        errors = int(np.count_nonzero(self.encode_array(msg)[kept] != y))
        if errors > e:
            raise DecodingFailure(
                f"closest codeword disagrees on {errors} positions, more "
                f"than the {e} correctable"
            )
        return [int(v) for v in msg]

    def _all_codewords(self):
        q, k = self.field.order, self.k
        if q ** k > BRUTE_FORCE_CAP:
            raise ParameterError(
                f"{q}^{k} messages exceed the enumeration cap "
                f"{BRUTE_FORCE_CAP}"
            )
        msgs = np.array(
            list(itertools.product(range(q), repeat=k)), dtype=np.int64
        )
        return msgs, self.field.GF(msgs) @ self.generator

    def brute_force_decode(self, word: PositionedWord) -> List[int]:
        """
        Nearest-codeword decoding by enumeration of every message.

        Disagreements are counted on the non-erased positions only.

        :param word: n symbols, None marking erasures.
        :return: The unique closest message.
        :raises DecodingFailure: if several messages are equally close.
        :raises ParameterError: if q^k exceeds the enumeration cap.
        """
        if len(word) != self.n:
            raise ParameterError(
                f"received word must have {self.n} positions, got {len(word)}"
            )
        msgs, codewords = self._all_codewords()
        kept = [i for i, v in enumerate(word) if v is not None]
        y = np.array([word[i] for i in kept], dtype=np.int64)
        dist = np.count_nonzero(
            codewords[:, kept].view(np.ndarray) != y, axis=1
        )
        best = np.flatnonzero(dist == dist.min())
        if best.size != 1:
            raise DecodingFailure(
                f"{best.size} codewords at distance {dist.min()}"
            )
        return [int(v) for v in msgs[best[0]]]

    def minimum_distance_bruteforce(self) -> int:
        """Minimum weight of a nonzero codeword, by enumeration."""
        _, codewords = self._all_codewords()
        weights = np.count_nonzero(codewords.view(np.ndarray), axis=1)
        return int(weights[1:].min())

    def to_dict(self) -> dict:
        return {
            'type': 'reed-solomon',
            'field': self.field.to_dict(),
            'n': self.n,
            'k': self.k,
            'points': list(self.points),
        }

    @classmethod
    def from_dict(cls, data: dict) -> ReedSolomonCode:
        return cls(
            field_from_dict(data['field']), data['n'], data['k'],
            data.get('points')
        )

    def __repr__(self) -> str:
        return f"ReedSolomonCode({self.field}, n={self.n}, k={self.k})"
