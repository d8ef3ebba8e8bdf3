#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
The binary linear concatenated insdel code.

Each outer symbol pair (sigma_i, S_i sigma_i) of a half-linear code over
GF(2^e) is turned into e bits per coordinate and encoded with a short
binary linear inner code of length m. Zero buffers delimit the inner
codewords:

    C_in(sigma_1) 0^{2W} C_in(S_1 sigma_1) 0^{5W} ... C_in(sigma_n) 0^{2W} C_in(S_n sigma_n)

where W = ceil(delta_in * m) is the window length of the inner code
properties:

1. for every two distinct codewords c, c' and every substring c_s of c with
   |c_s| >= m - 2W + R: LCS(c_s, c') < |c_s| - R, with R = floor(rho * m);
2. every window of W bits of a nonzero codeword holds at least R + 1 ones.

@author: linsdel developers
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

import galois  # type: ignore
from tqdm import tqdm  # type: ignore

from linsdel.editmetrics import lcs_prefix_profile
from linsdel.exceptions import ParameterError, SearchExhausted
from linsdel.gf import is_square_order
from linsdel.halflinear import HalfLinearCode, Pair
from linsdel.syncstring import CandidateList
from linsdel.utils import Number, as_fraction, ceil_mul, floor_mul

logger = logging.getLogger(__name__)

EXHAUSTIVE = 'exhaustive'
SAMPLED = 'sampled'
UNCHECKED = 'unchecked'
VERIFY_MODES = (EXHAUSTIVE, SAMPLED, UNCHECKED)

GREEDY = 'greedy'
RANDOM = 'random'
SEARCH_STRATEGIES = (GREEDY, RANDOM)

DEFAULT_PAIR_CAP = 256
DEFAULT_SEARCH_BUDGET = 50
DEFAULT_SAMPLES = 200

INNER_BUFFER_WINDOWS = 2
OUTER_BUFFER_WINDOWS = 5
OUTER_DETECT_WINDOWS = 4


def window_length(m: int, delta_in: Number) -> int:
    return ceil_mul(delta_in, m)


def slack(m: int, rho: Number) -> int:
    return floor_mul(rho, m)


def all_messages(k: int) -> np.ndarray:
    """Every k-bit message, row v holding the bits of v (MSB first)."""
    v = np.arange(1 << k, dtype=np.int64)
    shifts = np.arange(k - 1, -1, -1)
    return ((v[:, np.newaxis] >> shifts) & 1).astype(np.uint8)


def check_feasibility(m: int, k_in: int, delta_in: Number, rho: Number) -> None:
    """
    Reject inner code parameters that cannot satisfy both properties.

    :raises ParameterError: naming the violated relation.
    """
    delta_in = as_fraction(delta_in)
    rho = as_fraction(rho)
    w = window_length(m, delta_in)
    r = slack(m, rho)
    if k_in < 1 or m < k_in:
        raise ParameterError(f"need 1 <= k_in <= m, got k_in={k_in}, m={m}")
    if not 0 < delta_in < 1:
        raise ParameterError(f"delta_in must lie in (0, 1), got {delta_in}")
    if rho < 0 or rho >= delta_in:
        raise ParameterError(
            f"rho < delta_in is violated by rho={rho}, delta_in={delta_in}"
        )
    if r + 1 > w:
        raise ParameterError(
            f"rho*m + 1 <= delta_in*m is violated: a window of {w} bits "
            f"cannot hold {r + 1} ones"
        )
    if w < k_in:
        raise ParameterError(
            f"window of {w} bits is shorter than k_in={k_in}, the window "
            "restriction cannot be injective"
        )
    if r + 1 > w - k_in + 1:
        raise ParameterError(
            f"rho*m + 1 <= delta_in*m - k_in + 1 is violated: every window "
            f"would need a binary [{w},{k_in},{r + 1}] code, beyond the "
            "Singleton bound"
        )
    radius = r // 2
    ball = sum(math.comb(w, i) for i in range(radius + 1))
    if ball << k_in > 1 << w:
        raise ParameterError(
            f"sphere-packing bound 2^k_in * V({w},{radius}) <= 2^{w} is "
            f"violated: no binary [{w},{k_in},{r + 1}] window code exists"
        )


@dataclass
class PropertyCheck:
    """The outcome of an inner code property check."""

    prop: int
    ok: bool
    mode: str
    samples: Optional[int] = None
    counterexample: Optional[Dict[str, int]] = None

    def to_dict(self) -> dict:
        return {
            'property': self.prop,
            'ok': self.ok,
            'mode': self.mode,
            'samples': self.samples,
            'counterexample': self.counterexample,
        }


@dataclass
class InnerCode:
    """
    A binary linear code of length m and dimension k_in given by its
    m x k_in generator matrix.
    """

    m: int
    k_in: int
    generator: np.ndarray
    delta_in: Fraction
    rho: Fraction
    certification: Dict[str, str] = field(default_factory=lambda: {
        'property1': UNCHECKED, 'property2': UNCHECKED
    })
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        self.delta_in = as_fraction(self.delta_in)
        self.rho = as_fraction(self.rho)
        self.generator = np.asarray(self.generator, dtype=np.uint8) & 1
        if self.generator.shape != (self.m, self.k_in):
            raise ParameterError(
                f"generator must be {self.m} x {self.k_in}, got "
                f"{self.generator.shape}"
            )
        self._messages = all_messages(self.k_in)
        self._codewords = (self._messages @ self.generator.T.astype(np.int64)
                           % 2).astype(np.uint8)
        self._next = self._next_occurrence(self._codewords)

    @staticmethod
    def _next_occurrence(codewords: np.ndarray) -> np.ndarray:
        # nxt[u, p, b]: first index >= p holding bit b in codeword u, or m
        count, m = codewords.shape
        nxt = np.full((count, m + 1, 2), m, dtype=np.int32)
        rows = np.arange(count)
        for p in range(m - 1, -1, -1):
            nxt[:, p, :] = nxt[:, p + 1, :]
            nxt[rows, p, codewords[:, p]] = p
        return nxt

    @property
    def window(self) -> int:
        return window_length(self.m, self.delta_in)

    @property
    def slack(self) -> int:
        return slack(self.m, self.rho)

    @property
    def p1_threshold(self) -> int:
        """Minimum substring length covered by property 1."""
        return self.m - 2 * self.window + self.slack

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k_in, self.m)

    @property
    def messages(self) -> np.ndarray:
        return self._messages

    @property
    def codewords(self) -> np.ndarray:
        """All 2^k_in codewords, row v encoding the bits of v."""
        return self._codewords

    def rank(self) -> int:
        return int(np.linalg.matrix_rank(galois.GF2(self.generator)))

    def encode(self, bits: Sequence[int]) -> np.ndarray:
        """
        Encode k_in message bits.

        :param bits: The message bits.
        :return: The m codeword bits.
        """
        arr = np.asarray(bits, dtype=np.int64)
        if arr.shape != (self.k_in,):
            raise ParameterError(
                f"inner messages have {self.k_in} bits, got {arr.shape}"
            )
        return (self.generator.astype(np.int64) @ arr % 2).astype(np.uint8)

    def encode_many(self, bits: np.ndarray) -> np.ndarray:
        """Encode the rows of an (N, k_in) bit matrix."""
        arr = np.asarray(bits, dtype=np.int64)
        return (arr @ self.generator.T.astype(np.int64) % 2).astype(np.uint8)

    def containing(self, received: Sequence[int]) -> np.ndarray:
        """Indices of the codewords having received as a subsequence."""
        count, m = self._codewords.shape
        rows = np.arange(count)
        pos = np.zeros(count, dtype=np.int32)
        alive = np.ones(count, dtype=bool)
        for bit in np.asarray(received, dtype=np.int64):
            idx = self._next[rows, pos, bit]
            alive &= idx < m
            if not alive.any():
                break
            pos = np.minimum(idx + 1, m)
        return np.flatnonzero(alive)

    def decode(self, received: Sequence[int]) -> Optional[np.ndarray]:
        """
        Brute force decoding from deletions.

        The message is returned only if exactly one codeword contains the
        received bits as a subsequence, so a wrong message is never output.

        :param received: The received bits.
        :return: The k_in message bits, or None.
        """
        winners = self.containing(received)
        if winners.size != 1:
            return None
        return self._messages[winners[0]].copy()

    def is_certified(self) -> bool:
        return (
            self.certification.get('property1') in (EXHAUSTIVE, SAMPLED) and
            self.certification.get('property2') == EXHAUSTIVE
        )

    def to_dict(self) -> dict:
        return {
            'm': self.m,
            'k_in': self.k_in,
            'delta_in': str(self.delta_in),
            'rho': str(self.rho),
            'generator': ''.join(
                str(int(b)) for b in self.generator.reshape(-1)
            ),
            'certification': dict(self.certification),
            'seed': self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> InnerCode:
        m, k_in = int(data['m']), int(data['k_in'])
        text = data['generator']
        if len(text) != m * k_in or set(text) - {'0', '1'}:
            raise ParameterError(
                f"generator must be a 0/1 string of {m * k_in} characters"
            )
        gen = np.array([int(c) for c in text], dtype=np.uint8).reshape(m, k_in)
        return cls(
            m, k_in, gen, data['delta_in'], data['rho'],
            dict(data.get('certification', {})), data.get('seed')
        )


def check_property2(code: InnerCode) -> PropertyCheck:
    """
    Check that every window of every nonzero codeword holds enough ones.

    :param code: The inner code.
    :return: The certificate, or a counterexample with the message index
        and the window start.
    """
    w, need = code.window, code.slack + 1
    words = code.codewords[1:].astype(np.int32)
    if w > code.m:
        return PropertyCheck(2, False, EXHAUSTIVE,
                             counterexample={'message': 1, 'start': 0})
    csum = np.concatenate(
        [np.zeros((words.shape[0], 1), dtype=np.int32),
         np.cumsum(words, axis=1)], axis=1
    )
    weights = csum[:, w:] - csum[:, :-w]
    bad = np.argwhere(weights < need)
    if bad.size:
        msg, start = bad[0]
        return PropertyCheck(2, False, EXHAUSTIVE, counterexample={
            'message': int(msg) + 1, 'start': int(start),
            'ones': int(weights[msg, start])
        })
    return PropertyCheck(2, True, EXHAUSTIVE)


def _pair_violation(
    words: Sequence[bytes],
    u: int,
    v: int,
    threshold: int,
    r: int
) -> Optional[Dict[str, int]]:
    cu, cv = words[u], words[v]
    m = len(cu)
    for start in range(0, m - threshold + 1):
        profile = lcs_prefix_profile(cu[start:], cv)
        for length in range(threshold, m - start + 1):
            if profile[length] >= length - r:
                return {
                    'first': u, 'second': v, 'start': start,
                    'length': length, 'lcs': profile[length]
                }
    return None


def _p1_worker(args) -> Optional[Dict[str, int]]:
    words, pairs, threshold, r = args
    for u, v in pairs:
        bad = _pair_violation(words, u, v, threshold, r)
        if bad is not None:
            return bad
    return None


def check_property1(
    code: InnerCode,
    mode: str = EXHAUSTIVE,
    samples: int = DEFAULT_SAMPLES,
    seed: Optional[int] = None,
    workers: int = 1,
    pair_cap: int = DEFAULT_PAIR_CAP,
    progress: bool = False
) -> PropertyCheck:
    """
    Check the substring LCS property of the inner code.

    For distinct codewords c, c' and any substrings c_s, c'_s, the LCS of
    the two substrings is at most LCS(c_s, c'), so checking every ordered
    pair against the whole second codeword is enough.

    :param code: The inner code.
    :param mode: 'exhaustive' or 'sampled'. Exhaustive checks fall back to
        sampling when 2^k_in exceeds pair_cap.
    :param samples: The number of ordered pairs checked in sampled mode.
    :param seed: Seed of the pair sampling.
    :param workers: The number of worker processes.
    :param pair_cap: The largest codebook checked exhaustively.
    :param progress: Show a progress bar.
    :return: The certificate or a counterexample.
    """
    if mode not in (EXHAUSTIVE, SAMPLED):
        raise ParameterError(f"unknown verification mode '{mode}'")
    count = code.codewords.shape[0]
    if mode == EXHAUSTIVE and count > pair_cap:
        logger.warning(
            "%d codewords exceed the exhaustive cap %d, sampling pairs",
            count, pair_cap
        )
        mode = SAMPLED

    if mode == EXHAUSTIVE:
        pairs = [(u, v) for u in range(count) for v in range(count) if u != v]
        used_samples = None
    else:
        rng = np.random.default_rng(seed)
        pairs = []
        for _ in range(samples):
            u, v = rng.choice(count, size=2, replace=False)
            pairs.append((int(u), int(v)))
        used_samples = samples

    words = [bytes(c) for c in code.codewords]
    threshold = max(code.p1_threshold, 0)
    r = code.slack
    chunk = max(1, len(pairs) // max(1, 8 * workers))
    jobs = [
        (words, pairs[i:i + chunk], threshold, r)
        for i in range(0, len(pairs), chunk)
    ]

    bad = None
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for res in tqdm(pool.map(_p1_worker, jobs), total=len(jobs),
                            disable=not progress, desc="property 1"):
                if res is not None and bad is None:
                    bad = res
    else:
        for job in tqdm(jobs, disable=not progress, desc="property 1"):
            bad = _p1_worker(job)
            if bad is not None:
                break

    if bad is not None:
        return PropertyCheck(1, False, mode, used_samples, bad)
    return PropertyCheck(1, True, mode, used_samples)


def _greedy_generator(
    m: int,
    k_in: int,
    w: int,
    need: int,
    rng: np.random.Generator
) -> Optional[np.ndarray]:
    """
    Choose generator rows one position at a time.

    A row is accepted only if every window suffix ending at it can still be
    completed: a suffix of l rows must already hold need - (w - l) ones for
    every nonzero message.
    """
    msgs = all_messages(k_in)[1:].astype(np.int64)
    rows = all_messages(k_in)[1:].astype(np.int64)
    # contrib[r, v]: bit contributed by row r to the codeword of message v
    contrib = (rows @ msgs.T) % 2

    lengths = np.arange(1, w + 1)
    floors = need - (w - lengths)
    chosen: List[int] = []
    # suffix[l-1] is the weight of the last l chosen rows, per message
    suffix = np.zeros((w, msgs.shape[0]), dtype=np.int64)
    for pos in range(m):
        cand_suffix = np.empty((contrib.shape[0], w, msgs.shape[0]),
                               dtype=np.int64)
        cand_suffix[:, 0, :] = contrib
        cand_suffix[:, 1:, :] = contrib[:, np.newaxis, :] + suffix[np.newaxis, :-1, :]
        depth = min(pos + 1, w)
        ok = (cand_suffix[:, :depth, :] >= floors[:depth, np.newaxis]).all(axis=(1, 2))
        if not ok.any():
            return None
        order = rng.permutation(contrib.shape[0])
        pick = order[np.argmax(ok[order])]
        chosen.append(int(pick))
        suffix = cand_suffix[pick]
    return rows[chosen].astype(np.uint8)


def random_generator(
    m: int,
    k_in: int,
    rng: np.random.Generator
) -> np.ndarray:
    """Draw a uniformly random m x k_in binary generator matrix."""
    return rng.integers(0, 2, size=(m, k_in), dtype=np.uint8)


def inner_search(
    m: int,
    k_in: int,
    delta_in: Number,
    rho: Number,
    seed: Optional[int] = None,
    verify_mode: str = EXHAUSTIVE,
    budget: int = DEFAULT_SEARCH_BUDGET,
    samples: int = DEFAULT_SAMPLES,
    workers: int = 1,
    progress: bool = False,
    strategy: str = GREEDY
) -> InnerCode:
    """
    Search an inner code satisfying both properties.

    With the 'random' strategy every attempt draws a uniformly random
    generator matrix, which succeeds with constant probability only for
    long codes. The 'greedy' strategy builds the rows one position at a
    time so that property 2 holds by construction, and is the one that
    finds desk-scale codes. Both properties are then certified, and a
    failed certification starts over with fresh randomness.

    :param m: The block length.
    :param k_in: The dimension.
    :param delta_in: The window fraction.
    :param rho: The slack fraction.
    :param seed: The seed of the search.
    :param verify_mode: 'exhaustive', 'sampled' or 'unchecked' (property 1).
    :param budget: The number of generators tried.
    :param samples: The number of pairs checked in sampled mode.
    :param workers: Processes used by the property 1 check.
    :param progress: Show progress bars.
    :param strategy: 'greedy' or 'random'.
    :return: The certified inner code.
    :raises ParameterError: on infeasible parameters.
    :raises SearchExhausted: if no generator passes within the budget.
    """
    if verify_mode not in VERIFY_MODES:
        raise ParameterError(f"unknown verification mode '{verify_mode}'")
    if strategy not in SEARCH_STRATEGIES:
        raise ParameterError(f"unknown search strategy '{strategy}'")
    check_feasibility(m, k_in, delta_in, rho)
    w = window_length(m, delta_in)
    need = slack(m, rho) + 1
    rng = np.random.default_rng(seed)

    for attempt in tqdm(range(budget), disable=not progress,
                        desc="inner code search"):
        if strategy == RANDOM:
            gen = random_generator(m, k_in, rng)
        else:
            gen = _greedy_generator(m, k_in, w, need, rng)
        if gen is None:
            logger.debug("greedy construction stuck (attempt %d)", attempt)
            continue
        code = InnerCode(m, k_in, gen, delta_in, rho, seed=seed)
        p2 = check_property2(code)
        if not p2.ok or code.rank() != k_in:
            continue
        certification = {'property2': EXHAUSTIVE}
        if verify_mode == UNCHECKED:
            certification['property1'] = UNCHECKED
        else:
            p1 = check_property1(
                code, verify_mode, samples=samples,
                seed=int(rng.integers(0, 2**31)), workers=workers
            )
            if not p1.ok:
                logger.debug(
                    "attempt %d violates property 1: %s",
                    attempt, p1.counterexample
                )
                continue
            certification['property1'] = p1.mode
            if p1.samples is not None:
                certification['samples'] = str(p1.samples)
            if p1.mode == SAMPLED:
                logger.warning(
                    "property 1 certified on %d sampled pairs only",
                    p1.samples
                )
        code.certification = certification
        logger.info(
            "inner code m=%d k_in=%d window=%d slack=%d found after %d "
            "attempts (%s, %s search)", m, k_in, w, need - 1, attempt + 1,
            certification, strategy
        )
        return code

    raise SearchExhausted(
        f"no inner code with m={m}, k_in={k_in}, delta_in={delta_in}, "
        f"rho={rho} found in {budget} attempts"
    )


def zero_runs(bits: np.ndarray) -> List[Tuple[int, int]]:
    """
    Return the maximal runs of zeros of a bit array.

    :return: (start, length) tuples, in order.
    """
    arr = np.asarray(bits, dtype=np.uint8)
    if arr.size == 0:
        return []
    zero = np.concatenate([[False], arr == 0, [False]])
    edges = np.flatnonzero(zero[1:] != zero[:-1])
    return [(int(s), int(e - s)) for s, e in zip(edges[::2], edges[1::2])]


def _strip_zeros(bits: np.ndarray) -> np.ndarray:
    ones = np.flatnonzero(bits)
    if ones.size == 0:
        return bits[:0]
    return bits[ones[0]:ones[-1] + 1]


class BinaryInsdelCode:
    """The concatenation of a half-linear outer code and an inner code."""

    family = 'binary'
    deletions_only = True

    def __init__(self, inner: InnerCode, outer: HalfLinearCode) -> None:
        """
        :param inner: The inner code, k_in = log2(q).
        :param outer: The half-linear outer code over GF(2^k_in).
        """
        spec = outer.field
        if not spec.is_binary:
            raise ParameterError(
                f"the outer field must be a binary extension, got {spec}"
            )
        if spec.degree != inner.k_in:
            raise ParameterError(
                f"k_in = log2(q) is violated: k_in={inner.k_in}, "
                f"log2(q)={spec.degree}"
            )
        if not is_square_order(spec):
            raise ParameterError(
                f"the outer field order must be a square, got {spec}"
            )
        self.inner = inner
        self.outer = outer
        self.field = spec

    @classmethod
    def build(cls, inner: InnerCode, outer: HalfLinearCode) -> BinaryInsdelCode:
        code = cls(inner, outer)
        if code.rate <= code.rate_bound():
            raise ParameterError(
                f"rate {code.rate} does not exceed {code.rate_bound()}"
            )
        logger.info(
            "binary code: n=%d, k=%d, inner m=%d k_in=%d, length %d, "
            "rate %s, deletion budget %d", outer.n, outer.k, inner.m,
            inner.k_in, code.length, code.rate, code.decoding_budget()
        )
        return code

    @property
    def n(self) -> int:
        return self.outer.n

    @property
    def k(self) -> int:
        return self.outer.k

    @property
    def window(self) -> int:
        return self.inner.window

    @property
    def inner_buffer(self) -> int:
        return INNER_BUFFER_WINDOWS * self.window

    @property
    def outer_buffer(self) -> int:
        return OUTER_BUFFER_WINDOWS * self.window

    @property
    def length(self) -> int:
        m, n = self.inner.m, self.n
        return 2 * m * n + self.inner_buffer * n + self.outer_buffer * (n - 1)

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k * self.inner.k_in, self.length)

    def rate_bound(self) -> Fraction:
        """R_in * R_out / (2 + 7 delta_in), with the effective delta_in."""
        delta_in = Fraction(self.window, self.inner.m)
        return self.inner.rate * self.outer.rate / (2 + 7 * delta_in)

    def decoding_budget(self) -> int:
        """Number of deletions corrected: R * floor(delta_out * n)."""
        return self.inner.slack * self.outer.decoding_budget()

    def encode(self, msg: Sequence[int]) -> np.ndarray:
        """
        Encode a message of k outer symbols into bits.

        :param msg: The message over GF(2^k_in).
        :return: The uint8 bit array of length :attr:`length`.
        """
        c, sc = self.outer.pair_arrays(msg)
        symbols = np.stack([c, sc], axis=1).view(np.ndarray).reshape(-1)
        blocks = self.inner.encode_many(self.field.array_to_bits(symbols))
        blocks = blocks.reshape(self.n, 2, self.inner.m)

        ib = np.zeros(self.inner_buffer, dtype=np.uint8)
        ob = np.zeros(self.outer_buffer, dtype=np.uint8)
        parts: List[np.ndarray] = []
        for i in range(self.n):
            if i:
                parts.append(ob)
            parts.extend([blocks[i, 0], ib, blocks[i, 1]])
        return np.concatenate(parts)

    def received_pairs(self, y: Sequence[int]) -> List[Pair]:
        """
        Recover outer symbol pairs from a received bit string.

        :param y: The received bits.
        :return: The pairs whose two inner codewords were both decoded.
        """
        bits = np.asarray(y, dtype=np.uint8)
        w, m = self.window, self.inner.m
        outer_min = OUTER_DETECT_WINDOWS * w

        segments = []
        cursor = 0
        for start, length in zero_runs(bits):
            if length >= outer_min:
                segments.append(bits[cursor:start])
                cursor = start + length
        segments.append(bits[cursor:])

        pairs: List[Pair] = []
        for seg in segments:
            seg = _strip_zeros(seg)
            if seg.size == 0:
                continue
            inner_buffers = [
                (s, length) for s, length in zero_runs(seg)
                if w <= length < outer_min
            ]
            if len(inner_buffers) != 1:
                continue
            s, length = inner_buffers[0]
            first, second = seg[:s], seg[s + length:]
            if not (m - 2 * w < first.size <= m and
                    m - 2 * w < second.size <= m):
                continue
            a_bits = self.inner.decode(first)
            if a_bits is None:
                continue
            b_bits = self.inner.decode(second)
            if b_bits is None:
                continue
            pairs.append((
                int(self.field.bits_to_elem(a_bits)),
                int(self.field.bits_to_elem(b_bits))
            ))
        return pairs

    def candidates(self, y: Sequence[int]) -> CandidateList:
        return self.outer.candidates(self.received_pairs(y))

    def decode(self, y: Sequence[int]) -> List[int]:
        """
        Decode a received bit string (deletions only are guaranteed).

        :param y: The received bits.
        :return: The message.
        :raises DecodingFailure: if the outer decoder fails.
        """
        bits = np.asarray(y, dtype=np.uint8)
        if bits.size == 0 or not bits.any():
            return [0] * self.k
        return self.outer.decode(self.received_pairs(bits))

    def forge_symbol(self, rng: np.random.Generator) -> int:
        return int(rng.integers(0, 2))

    def random_message(self, rng: np.random.Generator) -> List[int]:
        return self.outer.random_message(rng)

    def to_dict(self) -> dict:
        return {
            'family': self.family,
            'inner': self.inner.to_dict(),
            'outer': self.outer.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> BinaryInsdelCode:
        if data.get('family') != cls.family:
            raise ParameterError(
                f"expected a 'binary' code, got '{data.get('family')}'"
            )
        return cls(
            InnerCode.from_dict(data['inner']),
            HalfLinearCode.from_dict(data['outer'])
        )


def bin_encode(code: BinaryInsdelCode, msg: Sequence[int]) -> np.ndarray:
    return code.encode(msg)


def bin_decode(code: BinaryInsdelCode, y: Sequence[int]) -> List[int]:
    return code.decode(y)


ASYMPTOTIC_DELTA_IN = Fraction(1, 6)
ASYMPTOTIC_RHO = Fraction(1, 17)
ASYMPTOTIC_INNER_RATE = ASYMPTOTIC_DELTA_IN / 16
ASYMPTOTIC_EPS_RATIO = 1400


def asymptotic_parameters(log_q: int = 6) -> dict:
    """
    Inner code parameters of the asymptotic construction: delta_in = 1/6,
    rho = 1/17 and R_in = delta_in / 16, so that m = 96 log2(q).
    """
    m = int(log_q / ASYMPTOTIC_INNER_RATE)
    return {
        'm': m,
        'k_in': log_q,
        'delta_in': ASYMPTOTIC_DELTA_IN,
        'rho': ASYMPTOTIC_RHO,
        'window': window_length(m, ASYMPTOTIC_DELTA_IN),
        'slack': slack(m, ASYMPTOTIC_RHO),
    }


def asymptotic_rate_bound(
    delta: Number,
    eps_out: Optional[Number] = None
) -> Fraction:
    """
    Rate guaranteed by the asymptotic parameters for a deletion fraction
    delta, with delta_out = delta (2 + 7 delta_in) / rho.

    The outer slack must stay below delta_out / 1400, which keeps the rate
    at least (1 - 54 delta) / 1216.

    :param delta: The fraction of deletions to correct, 0 < delta_out < 1.
    :param eps_out:
        The slack of the outer code. The default is delta_out / 2800.
    :return: R_in R_out / (2 + 7 delta_in), R_out = (1 - delta_out)/4 - eps_out.
    :raises ParameterError: if a parameter relation is violated.
    """
    delta = as_fraction(delta)
    delta_out = asymptotic_outer_delta(delta)
    if not 0 < delta_out < 1:
        raise ParameterError(
            f"0 < delta_out < 1 is violated: delta={delta} gives "
            f"delta_out={delta_out}"
        )
    limit = delta_out / ASYMPTOTIC_EPS_RATIO
    if eps_out is None:
        eps_out = limit / 2
    eps_out = as_fraction(eps_out)
    if not 0 < eps_out < limit:
        raise ParameterError(
            f"0 < eps_out < delta_out/{ASYMPTOTIC_EPS_RATIO} is violated by "
            f"eps_out={eps_out}, delta_out={delta_out}"
        )
    r_out = (1 - delta_out) / 4 - eps_out
    return ASYMPTOTIC_INNER_RATE * r_out / (2 + 7 * ASYMPTOTIC_DELTA_IN)


def asymptotic_outer_delta(delta: Number) -> Fraction:
    return as_fraction(delta) * (2 + 7 * ASYMPTOTIC_DELTA_IN) / ASYMPTOTIC_RHO
