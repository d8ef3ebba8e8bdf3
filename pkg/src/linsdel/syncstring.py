#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Synchronization strings and the indexed-code position recovery.

A string S is an eps-synchronization string when every two adjacent
substrings S[i:j], S[j:k] are far apart in edit distance:

    ED(S[i:j], S[j:k]) > (1 - eps) * (k - i)

Since ED(x, y) = |x| + |y| - 2 LCS(x, y), the condition is equivalent to
2 * LCS(S[i:j], S[j:k]) < eps * (k - i), which is what the verifier checks.

@author: linsdel developers
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from linsdel.editmetrics import align, lcs_prefix_profile
from linsdel.exceptions import ParameterError, SearchExhausted
from linsdel.utils import as_fraction

logger = logging.getLogger(__name__)

# ordered (index-symbol, data-symbol) tuples
CandidateList = List[Tuple[int, int]]
# None marks an erasure
PositionedWord = List[Optional[int]]

DEFAULT_RESAMPLE_BUDGET = 2000


@dataclass(frozen=True)
class SyncString:
    """
    A verified synchronization string.

    Symbols are integers in [0, alphabet). When attached to a field the
    symbol s is mapped to the nonzero element s + 1 (see :meth:`to_field`).
    """

    symbols: Tuple[int, ...]
    epsilon: Fraction
    alphabet: int
    seed: Optional[int] = None
    verified: str = field(default='exhaustive')

    @property
    def n(self) -> int:
        return len(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def to_field(self, spec) -> List[int]:
        """
        Map the symbols to nonzero elements of a field.

        :param spec: A :class:`linsdel.gf.FieldSpec`.
        :return: The canonical integers of the elements.
        """
        if self.alphabet > spec.order - 1:
            raise ParameterError(
                f"alphabet of size {self.alphabet} does not fit in the "
                f"nonzero elements of {spec}"
            )
        return [s + 1 for s in self.symbols]

    def to_dict(self) -> dict:
        return {
            'n': self.n,
            'epsilon': str(self.epsilon),
            'alphabet': self.alphabet,
            'symbols': list(self.symbols),
            'seed': self.seed,
            'verified': self.verified,
        }

    @classmethod
    def from_dict(cls, data: dict, verify: bool = True) -> SyncString:
        """
        Rebuild a sync string from its JSON description.

        :param data: The dictionary produced by :meth:`to_dict`.
        :param verify: If True, re-run the exhaustive verification.
        :return: The sync string.
        """
        symbols = tuple(int(s) for s in data['symbols'])
        epsilon = as_fraction(data['epsilon'])
        alphabet = int(data['alphabet'])
        if any(s < 0 or s >= alphabet for s in symbols):
            raise ParameterError("sync string symbol outside its alphabet")
        if int(data.get('n', len(symbols))) != len(symbols):
            raise ParameterError("sync string length does not match 'n'")
        if verify and not verify_sync(symbols, epsilon):
            raise ParameterError(
                f"symbols are not an {epsilon}-synchronization string"
            )
        return cls(
            symbols, epsilon, alphabet, data.get('seed'),
            data.get('verified', 'exhaustive')
        )


def _violates(lcs_len: int, length: int, eps: Fraction) -> bool:
    return 2 * lcs_len * eps.denominator >= eps.numerator * length


def _scan_pair(
    symbols: Sequence[int],
    i: int,
    j: int,
    eps: Fraction
) -> Optional[int]:
    left = symbols[i:j]
    profile = lcs_prefix_profile(symbols[j:], left)
    for t in range(1, len(profile)):
        if _violates(profile[t], j + t - i, eps):
            return j + t
    return None


def find_violation(
    symbols: Sequence[int],
    epsilon: Union[Fraction, float, str]
) -> Optional[Tuple[int, int, int]]:
    """
    Return the first triple violating the synchronization property.

    Triples are 0-based with 0 <= i < j < k <= n and are scanned in
    lexicographic order.

    :param symbols: The candidate string.
    :param epsilon: The synchronization parameter.
    :return: (i, j, k) or None if the string is an eps-sync string.
    """
    eps = as_fraction(epsilon)
    symbols = list(symbols)
    n = len(symbols)
    for i in range(n):
        for j in range(i + 1, n):
            k = _scan_pair(symbols, i, j, eps)
            if k is not None:
                return (i, j, k)
    return None


def verify_sync(
    symbols: Sequence[int],
    epsilon: Union[Fraction, float, str],
    samples: Optional[int] = None,
    rng: Optional[np.random.Generator] = None
) -> bool:
    """
    Check the synchronization property.

    :param symbols: The candidate string.
    :param epsilon: The synchronization parameter.
    :param samples:
        If None, every triple is checked. Otherwise only the given number
        of random split points (i, j) is checked, each against every k.
    :param rng: Randomness source for the sampled mode.
    :return: True if no violating triple was found.
    """
    if samples is None:
        return find_violation(symbols, epsilon) is None

    eps = as_fraction(epsilon)
    symbols = list(symbols)
    n = len(symbols)
    if n < 2:
        return True
    if rng is None:
        rng = np.random.default_rng()
    for _ in range(samples):
        i, j = sorted(rng.choice(n, size=2, replace=False))
        if _scan_pair(symbols, int(i), int(j), eps) is not None:
            return False
    return True


def generate_sync(
    n: int,
    epsilon: Union[Fraction, float, str],
    alphabet: int,
    seed: Optional[int] = None,
    budget: int = DEFAULT_RESAMPLE_BUDGET
) -> SyncString:
    """
    Build an eps-synchronization string by random local resampling.

    A uniformly random string is drawn; as long as a violating triple
    (i, j, k) exists the symbols of S[i:k] are redrawn.

    :param n: The length of the string.
    :param epsilon: The synchronization parameter, in (0, 1).
    :param alphabet: The alphabet size.
    :param seed: The seed of the random generator.
    :param budget: The maximum number of resamplings.
    :return: The verified string.
    :raises SearchExhausted: if the budget runs out.
    """
    eps = as_fraction(epsilon)
    if n < 1:
        raise ParameterError(f"sync string length must be positive, got {n}")
    if alphabet < 2:
        raise ParameterError(f"alphabet size must be at least 2, got {alphabet}")
    if not 0 < eps < 1:
        raise ParameterError(f"epsilon must lie in (0, 1), got {eps}")

    rng = np.random.default_rng(seed)
    symbols = [int(s) for s in rng.integers(0, alphabet, size=n)]
    for attempt in range(budget + 1):
        bad = find_violation(symbols, eps)
        if bad is None:
            logger.info(
                "%s-synchronization string of length %d over %d symbols "
                "found after %d resamplings", eps, n, alphabet, attempt
            )
            return SyncString(tuple(symbols), eps, alphabet, seed)
        i, _, k = bad
        symbols[i:k] = [int(s) for s in rng.integers(0, alphabet, size=k - i)]

    raise SearchExhausted(
        f"no {eps}-synchronization string of length {n} over {alphabet} "
        f"symbols found within {budget} resamplings"
    )


def distinct_sync(
    n: int,
    epsilon: Union[Fraction, float, str] = Fraction(1, 2),
    alphabet: Optional[int] = None,
    seed: Optional[int] = None
) -> SyncString:
    """
    Return a string of n distinct symbols.

    Adjacent substrings share no symbol, so the string is an
    eps-synchronization string for every eps in (0, 1). Without a seed the
    string is 0, 1, ..., n-1; with a seed the symbols are a random
    selection of the alphabet in random order.
    """
    if alphabet is None:
        alphabet = max(n, 2)
    if alphabet < n:
        raise ParameterError(
            f"distinct symbols need an alphabet of size {n}, got {alphabet}"
        )
    if seed is None:
        symbols = tuple(range(n))
    else:
        rng = np.random.default_rng(seed)
        symbols = tuple(int(s) for s in rng.choice(alphabet, size=n,
                                                   replace=False))
    return SyncString(symbols, as_fraction(epsilon), alphabet, seed)


def _sync_values(sync: Union[SyncString, Sequence[int]]) -> List[int]:
    if isinstance(sync, SyncString):
        return list(sync.symbols)
    return [int(s) for s in sync]


def index_decode(
    candidates: CandidateList,
    sync: Union[SyncString, Sequence[int]]
) -> PositionedWord:
    """
    Recover a positioned word from a list of indexed symbols.

    The index symbols of the candidates are aligned with the sync string
    by a minimum edit distance alignment. Every matched position gets the
    data symbol of its candidate, every unmatched position is an erasure.

    :param candidates: The (index-symbol, data-symbol) tuples.
    :param sync:
        The synchronization string, or directly the sequence of index
        symbols it was attached as.
    :return: A list of length n holding data symbols or None (erasures).
    """
    values = _sync_values(sync)
    n = len(values)
    word: PositionedWord = [None] * n
    if not candidates:
        return word

    firsts = [int(c[0]) for c in candidates]
    alignment = align(firsts, values)
    for li, sj in alignment.pairs:
        word[sj] = int(candidates[li][1])

    logger.debug(
        "index decoding: %d candidates, alignment cost %d, %d erasures",
        len(candidates), alignment.cost, word.count(None)
    )
    return word


def cid_decode(
    candidates: CandidateList,
    sync: Union[SyncString, Sequence[int]],
    base
) -> List[int]:
    """
    Decode an indexed code from its candidate list.

    :param candidates: The (index-symbol, data-symbol) tuples.
    :param sync: The synchronization string (or its attached symbols).
    :param base: An object honoring :class:`linsdel.basecode.BaseCode`.
    :return: The message of the base code.
    :raises DecodingFailure: if the base decoder fails.
    """
    return base.decode_errors_erasures(index_decode(candidates, sync))
