#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Adversarial insertion/deletion channel and trial harness.

Every single-symbol insertion or deletion costs one unit of the budget and
is logged as a (position, op, symbol) triple against the evolving word, so
that a corruption can be replayed exactly.

@author: linsdel developers
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field, replace
from typing import (
    Any, Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple
)

import numpy as np

from linsdel.editmetrics import DELETE, INSERT, EditOp
from linsdel.exceptions import DecodingFailure, FormatError, ParameterError
from linsdel.utils import spawn_seeds, success_interval

logger = logging.getLogger(__name__)

RANDOM = 'random'
ZERO_PAIR_EXPLOIT = 'zero-pair-exploit'
BLOCK_MERGE = 'block-merge'
BUFFER_DELETE = 'buffer-delete'
FAKE_BUFFER = 'fake-buffer'
COMPOSITE = 'composite'

STRATEGIES = (
    RANDOM, ZERO_PAIR_EXPLOIT, BLOCK_MERGE, BUFFER_DELETE, FAKE_BUFFER,
    COMPOSITE
)

ForgeFn = Callable[[np.random.Generator], Any]


@dataclass(frozen=True)
class AdversaryScript:
    """
    A seeded corruption strategy with an operation budget.

    :param strategy: One of :data:`STRATEGIES`.
    :param budget: The maximum number of insertions plus deletions.
    :param seed: The seed of every random choice of the adversary.
    :param params: Strategy parameters (insert_ratio, run_min, run_max,
        shrink_to, target_run, parts).
    """

    strategy: str
    budget: int
    seed: Optional[int] = None
    params: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.strategy not in STRATEGIES:
            raise ParameterError(
                f"unknown adversary strategy '{self.strategy}', expected one "
                f"of {', '.join(STRATEGIES)}"
            )
        if self.budget < 0:
            raise ParameterError(f"budget must be >= 0, got {self.budget}")

    def with_seed(self, seed: int) -> AdversaryScript:
        return replace(self, seed=seed)

    def to_dict(self) -> dict:
        return {
            'strategy': self.strategy,
            'budget': self.budget,
            'seed': self.seed,
            'params': dict(self.params),
        }

    @classmethod
    def from_dict(cls, data: dict) -> AdversaryScript:
        try:
            return cls(
                data['strategy'], int(data.get('budget', 0)),
                data.get('seed'), dict(data.get('params', {}))
            )
        except KeyError as exc:
            raise FormatError(f"adversary script misses {exc}") from exc


class Corruption(NamedTuple):
    """The outcome of :func:`corrupt`."""

    word: Any
    ops_used: int
    op_log: List[EditOp]
    degraded: bool = False


def code_params(strategy: str, codec: Any) -> Dict[str, Any]:
    """
    Default strategy parameters matching the buffer geometry of a code.

    :param strategy: The adversary strategy.
    :param codec: A code instance, or None.
    :return: The parameters, possibly empty.
    """
    w = getattr(codec, 'window', None)
    if w is not None:
        if strategy == BUFFER_DELETE:
            return {'run_min': 4 * w, 'run_max': None, 'shrink_to': 4 * w - 1}
        if strategy == BLOCK_MERGE:
            return {'run_min': w, 'run_max': 4 * w - 1, 'shrink_to': w - 1}
        if strategy == FAKE_BUFFER:
            return {'target_run': 4 * w}
        if strategy in (RANDOM, COMPOSITE):
            return {'insert_ratio': 0.0}
        return {}
    if getattr(codec, 'family', None) == 'full':
        if strategy in (BLOCK_MERGE, BUFFER_DELETE):
            return {'run_min': 2, 'run_max': 2, 'shrink_to': 0}
        if strategy == FAKE_BUFFER:
            return {'target_run': 2}
    return {}


def _is_zero(sym: Any) -> bool:
    if isinstance(sym, tuple):
        return all(int(v) == 0 for v in sym)
    return int(sym) == 0


def _plain(sym: Any) -> Any:
    if isinstance(sym, tuple):
        return tuple(int(v) for v in sym)
    return int(sym)


def zero_runs(word: Sequence[Any]) -> List[Tuple[int, int]]:
    """Maximal runs of zero symbols as (start, length) tuples."""
    runs = []
    start = None
    for i, sym in enumerate(word):
        if _is_zero(sym):
            if start is None:
                start = i
        elif start is not None:
            runs.append((start, i - start))
            start = None
    if start is not None:
        runs.append((start, len(word) - start))
    return runs


class _Tape:
    """A word under corruption, with its operation log."""

    def __init__(self, word: List[Any], budget: int) -> None:
        self.word = word
        self.budget = budget
        self.log: List[EditOp] = []

    @property
    def left(self) -> int:
        return self.budget - len(self.log)

    def delete(self, pos: int) -> None:
        sym = self.word.pop(pos)
        self.log.append((pos, DELETE, sym))

    def insert(self, pos: int, sym: Any) -> None:
        self.word.insert(pos, sym)
        self.log.append((pos, INSERT, sym))


def _default_forge(word: Sequence[Any]) -> ForgeFn:
    alphabet = sorted({_plain(s) for s in word}, key=repr) or [0]

    def forge(rng: np.random.Generator) -> Any:
        return alphabet[int(rng.integers(0, len(alphabet)))]
    return forge


def _random(tape: _Tape, budget: int, rng, params, forge: ForgeFn) -> bool:
    ratio = float(params.get('insert_ratio', 0.5))
    for _ in range(budget):
        if not tape.word and ratio == 0:
            break
        if not tape.word or rng.random() < ratio:
            tape.insert(int(rng.integers(0, len(tape.word) + 1)), forge(rng))
        else:
            tape.delete(int(rng.integers(0, len(tape.word))))
    return True


def _zero_pair_exploit(tape: _Tape, budget: int, rng, params,
                       forge: ForgeFn) -> bool:
    ratio = float(params.get('insert_ratio', 0.5))
    if not any(not _is_zero(s) for s in tape.word) and ratio == 0:
        return False
    for _ in range(budget):
        nonzero = [i for i, s in enumerate(tape.word) if not _is_zero(s)]
        if not nonzero and ratio == 0:
            break
        if nonzero and rng.random() >= ratio:
            tape.delete(nonzero[int(rng.integers(0, len(nonzero)))])
        else:
            tape.insert(int(rng.integers(0, len(tape.word) + 1)), forge(rng))
    return True


def _shrink_runs(tape: _Tape, budget: int, rng, params,
                 forge: ForgeFn) -> bool:
    run_min = int(params.get('run_min', 1))
    run_max = params.get('run_max')
    shrink_to = int(params.get('shrink_to', 0))

    def eligible():
        return [
            (s, n) for s, n in zero_runs(tape.word)
            if n >= run_min and (run_max is None or n <= run_max) and
            n > shrink_to
        ]

    runs = eligible()
    if not runs:
        return False
    spent = 0
    chosen = []
    for i in rng.permutation(len(runs)):
        cost = runs[i][1] - shrink_to
        if spent + cost <= budget:
            chosen.append(runs[i])
            spent += cost
    # right to left, so earlier run starts stay valid
    for start, length in sorted(chosen, key=lambda r: -r[0]):
        for _ in range(length - shrink_to):
            tape.delete(start)
    return True


def _fake_buffer(tape: _Tape, budget: int, rng, params,
                 forge: ForgeFn) -> bool:
    target = int(params.get('target_run', 2))
    runs = [r for r in zero_runs(tape.word) if r[1] < target]
    if not runs:
        return False
    spent = 0
    for idx in rng.permutation(len(runs)):
        start = runs[idx][0]
        if start >= len(tape.word) or not _is_zero(tape.word[start]):
            continue
        while spent < budget:
            end = start
            while end < len(tape.word) and _is_zero(tape.word[end]):
                end += 1
            if end - start >= target or end >= len(tape.word):
                break
            tape.delete(end)
            spent += 1
        if spent >= budget:
            break
        runs = [r for r in zero_runs(tape.word) if r[1] < target]
    return True


_HANDLERS = {
    RANDOM: _random,
    ZERO_PAIR_EXPLOIT: _zero_pair_exploit,
    BLOCK_MERGE: _shrink_runs,
    BUFFER_DELETE: _shrink_runs,
    FAKE_BUFFER: _fake_buffer,
}


def _apply(tape: _Tape, strategy: str, budget: int, rng, params,
           forge: ForgeFn) -> bool:
    """Run one strategy, return False when it had to be degraded."""
    budget = min(budget, tape.left)
    if budget <= 0:
        return True
    if strategy == COMPOSITE:
        parts = params.get('parts') or [{'strategy': RANDOM}]
        shares = [p.get('budget') for p in parts]
        free = budget - sum(s for s in shares if s is not None)
        unset = [i for i, s in enumerate(shares) if s is None]
        for n, i in enumerate(unset):
            shares[i] = free // len(unset) + (1 if n < free % len(unset) else 0)
        ok = True
        for part, share in zip(parts, shares):
            sub = {k: v for k, v in params.items() if k != 'parts'}
            sub.update(
                (k, v) for k, v in part.items()
                if k not in ('strategy', 'budget', 'params')
            )
            sub.update(part.get('params', {}))
            ok &= _apply(tape, part['strategy'], max(0, share), rng, sub, forge)
        return ok
    if _HANDLERS[strategy](tape, budget, rng, params, forge):
        return True
    logger.warning(
        "strategy '%s' does not apply to this word, using random corruption",
        strategy
    )
    _random(tape, budget, rng, {'insert_ratio': params.get('insert_ratio', 0.5)},
            forge)
    return False


def corrupt(
    word: Sequence[Any],
    script: AdversaryScript,
    forge: Optional[ForgeFn] = None
) -> Corruption:
    """
    Corrupt a word with insertions and deletions.

    :param word: The transmitted word: field symbols, pairs or bits.
    :param script: The adversary script.
    :param forge: Returns the symbol of an insertion. By default a symbol
        already occurring in the word is drawn.
    :return: The corrupted word (same container kind as the input), the
        number of operations used, the operation log and whether the
        strategy had to be degraded to random corruption.
    """
    is_array = isinstance(word, np.ndarray)
    symbols = [_plain(s) for s in word]
    if forge is None:
        forge = _default_forge(symbols)
    tape = _Tape(symbols, script.budget)
    rng = np.random.default_rng(script.seed)
    ok = _apply(tape, script.strategy, script.budget, rng, script.params,
                forge)
    log = [(int(p), op, _plain(s)) for p, op, s in tape.log]
    out: Any = tape.word
    if is_array:
        out = np.asarray(out, dtype=np.asarray(word).dtype)
    return Corruption(out, len(log), log, not ok)


def replay(word: Sequence[Any], op_log: Sequence[EditOp]) -> Any:
    """
    Re-apply a logged corruption.

    :param word: The original word.
    :param op_log: The (position, op, symbol) operations.
    :return: The corrupted word.
    :raises FormatError: if an operation does not fit the word.
    """
    is_array = isinstance(word, np.ndarray)
    out = [_plain(s) for s in word]
    for pos, op, sym in op_log:
        sym = tuple(sym) if isinstance(sym, list) else sym
        if op == DELETE:
            if not 0 <= pos < len(out) or out[pos] != sym:
                raise FormatError(f"cannot delete {sym!r} at position {pos}")
            out.pop(pos)
        elif op == INSERT:
            if not 0 <= pos <= len(out):
                raise FormatError(f"cannot insert at position {pos}")
            out.insert(pos, sym)
        else:
            raise FormatError(f"unknown operation '{op}'")
    if is_array:
        return np.asarray(out, dtype=np.asarray(word).dtype)
    return out


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.integer):
        return int(value)
    return value


@dataclass
class FailureTranscript:
    """Everything needed to replay a failed trial."""

    seed: int
    message: List[int]
    op_log: List[EditOp]
    candidates: List[Tuple[int, int]]
    reason: str
    decoded: Optional[List[int]] = None
    script: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            'seed': self.seed,
            'message': _jsonable(self.message),
            'op_log': _jsonable(self.op_log),
            'candidates': _jsonable(self.candidates),
            'reason': self.reason,
            'decoded': _jsonable(self.decoded),
            'script': self.script,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> FailureTranscript:
        try:
            return cls(
                int(data['seed']), list(data['message']),
                [(p, op, tuple(s) if isinstance(s, list) else s)
                 for p, op, s in data['op_log']],
                [tuple(c) for c in data.get('candidates', [])],
                data['reason'], data.get('decoded'), data.get('script')
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"invalid failure transcript: {exc}") from exc


@dataclass
class TrialReport:
    """Outcome of a batch of trials."""

    trials: int
    successes: int
    budget: int
    within_budget: bool
    failures: List[FailureTranscript] = field(default_factory=list)
    degraded: int = 0

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials if self.trials else 1.0

    @property
    def interval(self) -> Tuple[float, float]:
        return success_interval(self.successes, self.trials)

    @property
    def guarantee_violated(self) -> bool:
        return self.within_budget and self.successes < self.trials

    def write_failures(self, path: str) -> None:
        """Write the failure transcripts as JSON lines."""
        with open(path, 'w') as f:
            for item in self.failures:
                f.write(item.to_json() + '\n')


def may_insert(strategy: str, params: Dict[str, Any]) -> bool:
    """Tell whether a strategy can spend budget on insertions."""
    if strategy in (RANDOM, ZERO_PAIR_EXPLOIT):
        return float(params.get('insert_ratio', 0.5)) > 0
    if strategy == COMPOSITE:
        parts = params.get('parts') or [{'strategy': RANDOM}]
        shared = {k: v for k, v in params.items() if k != 'parts'}
        return any(
            may_insert(p['strategy'], {**shared, **p, **p.get('params', {})})
            for p in parts
        )
    return False


def _candidates_of(codec: Any, received: Any) -> List[Tuple[int, int]]:
    try:
        return list(codec.candidates(received))
    except Exception:  # transcripts are best effort
        return []


def trial(
    codec: Any,
    script: AdversaryScript,
    trials: int,
    seed: Optional[int] = None,
    message_fn: Optional[Callable[[np.random.Generator], List[int]]] = None,
    progress: Optional[Callable[[int], None]] = None
) -> TrialReport:
    """
    Run encode, corrupt and decode repeatedly.

    Each trial gets its own seed spawned from the master seed; the message
    and the adversary randomness both derive from it.

    :param codec: A code exposing encode, decode, candidates,
        forge_symbol, random_message and decoding_budget.
    :param script: The adversary script; its seed is replaced per trial.
    :param trials: The number of trials, at least 1.
    :param seed: The master seed.
    :param message_fn: Draws a message, by default codec.random_message.
    :param progress: Called with 1 after every trial.
    :return: The report.
    """
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    if message_fn is None:
        message_fn = codec.random_message
    within = script.budget <= codec.decoding_budget()
    if getattr(codec, 'deletions_only', False):
        within = within and not may_insert(script.strategy, script.params)
    report = TrialReport(
        trials=trials, successes=0, budget=script.budget,
        within_budget=within
    )

    def forge(rng):
        return codec.forge_symbol(rng)

    for trial_seed in spawn_seeds(seed, trials):
        msg_seed, adv_seed = spawn_seeds(trial_seed, 2)
        msg = list(message_fn(np.random.default_rng(msg_seed)))
        sent = codec.encode(msg)
        res = corrupt(sent, script.with_seed(adv_seed), forge)
        report.degraded += int(res.degraded)

        decoded = None
        try:
            decoded = [int(v) for v in codec.decode(res.word)]
            reason = '' if decoded == msg else 'wrong message'
        except DecodingFailure as exc:
            reason = exc.reason

        if not reason:
            report.successes += 1
        else:
            report.failures.append(FailureTranscript(
                trial_seed, msg, res.op_log, _candidates_of(codec, res.word),
                reason, decoded, script.with_seed(adv_seed).to_dict()
            ))
            if report.within_budget:
                logger.warning(
                    "decoding failed within budget %d (seed %d): %s",
                    script.budget, trial_seed, reason
                )
        if progress is not None:
            progress(1)

    low, high = report.interval
    logger.info(
        "%s x%d, budget %d: success rate %.4f (95%% CI %.4f-%.4f)",
        script.strategy, trials, script.budget, report.success_rate,
        low, high
    )
    return report
