#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Experiment configuration.

A configuration is a single JSON document. A minimal one reads:

.. code-block:: json

    {
        "family": "half",
        "field": {"kind": "binary-extension", "p": 2, "e": 8},
        "n": 32,
        "delta": "1/10",
        "epsilon": "1/100",
        "adversary": {"strategy": "random", "budget_fraction": 1},
        "trials": 100,
        "master_seed": 1
    }

For the binary family ``delta`` is the outer fraction delta_out and the
``inner`` section describes the inner code, either by its search
parameters or by the ``path`` of a certified inner code file.

@author: linsdel developers
"""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field as dc_field, fields
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from linsdel.basecode import ReedSolomonCode
from linsdel.binaryinsdel import (
    BinaryInsdelCode, EXHAUSTIVE, GREEDY, InnerCode, SEARCH_STRATEGIES,
    VERIFY_MODES, check_feasibility, inner_search
)
from linsdel.channel import AdversaryScript, STRATEGIES, code_params
from linsdel.exceptions import ConfigError, FieldError, ParameterError
from linsdel.fulllinear import FullLinearCode
from linsdel.gf import FieldSpec, field_from_dict, is_square_order
from linsdel.halflinear import (
    HalfLinearCode, IndexedPairCode, default_sync_epsilon, make_sync
)
from linsdel.loaders import AnyCode, load_inner, read_json
from linsdel.utils import as_fraction, derive_seed, floor_mul, spawn_seeds

logger = logging.getLogger(__name__)

FAMILIES = {
    HalfLinearCode.family: HalfLinearCode,
    FullLinearCode.family: FullLinearCode,
    BinaryInsdelCode.family: BinaryInsdelCode,
}

DEFAULT_FIELD = {'kind': 'binary-extension', 'p': 2, 'e': 8}
DEFAULT_MASTER_SEED = 0

# keys of the construction draws derived from the master seed
SYNC_SEED_KEY = (1, 0)
INNER_SEED_KEY = (1, 1)


@dataclass
class ExperimentConfig:
    """The parameters of a code instance and of the trials run on it."""

    family: str
    n: int
    delta: Fraction
    epsilon: Fraction
    field: Dict[str, Any] = dc_field(default_factory=lambda: dict(DEFAULT_FIELD))
    k: Optional[int] = None
    sync_epsilon: Optional[Fraction] = None
    sync_seed: Optional[int] = None
    inner: Dict[str, Any] = dc_field(default_factory=dict)
    adversary: Dict[str, Any] = dc_field(
        default_factory=lambda: {'strategy': 'random', 'budget': 0}
    )
    trials: int = 1
    master_seed: int = DEFAULT_MASTER_SEED
    sweep: List[Dict[str, Any]] = dc_field(default_factory=list)
    workers: int = 1
    base_dir: str = '.'

    @classmethod
    def from_dict(cls, data: Dict[str, Any], base_dir: str = '.') -> ExperimentConfig:
        """
        Build a configuration from a parsed JSON document.

        :param data: The document.
        :param base_dir: Directory relative paths are resolved against.
        :return: The validated configuration.
        :raises ConfigError: on unknown or missing keys and on violated
            parameter relations.
        """
        if not isinstance(data, dict):
            raise ConfigError("the configuration must be a JSON object")
        known = {f.name for f in fields(cls)} - {'base_dir'}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(
                f"unknown configuration keys: {', '.join(sorted(unknown))}"
            )
        missing = {'family', 'n', 'delta', 'epsilon'} - set(data)
        if missing:
            raise ConfigError(
                f"missing configuration keys: {', '.join(sorted(missing))}"
            )
        try:
            cfg = cls(
                family=data['family'],
                n=int(data['n']),
                delta=as_fraction(data['delta']),
                epsilon=as_fraction(data['epsilon']),
                field=dict(data.get('field', DEFAULT_FIELD)),
                k=None if data.get('k') is None else int(data['k']),
                sync_epsilon=(
                    None if data.get('sync_epsilon') is None
                    else as_fraction(data['sync_epsilon'])
                ),
                sync_seed=data.get('sync_seed'),
                inner=dict(data.get('inner', {})),
                adversary=dict(data.get('adversary', {
                    'strategy': 'random', 'budget': 0
                })),
                trials=int(data.get('trials', 1)),
                master_seed=int(data.get('master_seed', DEFAULT_MASTER_SEED)),
                sweep=list(data.get('sweep', [])),
                workers=int(data.get('workers', 1)),
                base_dir=base_dir,
            )
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"invalid configuration value: {exc}") from exc
        cfg.validate()
        return cfg

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            'family': self.family,
            'field': dict(self.field),
            'n': self.n,
            'delta': str(self.delta),
            'epsilon': str(self.epsilon),
            'adversary': dict(self.adversary),
            'trials': self.trials,
            'master_seed': self.master_seed,
            'workers': self.workers,
        }
        if self.k is not None:
            out['k'] = self.k
        if self.sync_epsilon is not None:
            out['sync_epsilon'] = str(self.sync_epsilon)
        if self.sync_seed is not None:
            out['sync_seed'] = self.sync_seed
        if self.inner:
            out['inner'] = dict(self.inner)
        if self.sweep:
            out['sweep'] = list(self.sweep)
        return out

    @property
    def code_class(self):
        return FAMILIES[self.family]

    def field_spec(self) -> FieldSpec:
        try:
            return field_from_dict(self.field)
        except FieldError as exc:
            raise ConfigError(f"invalid field: {exc}") from exc

    def validate(self) -> None:
        """
        Check the parameter relations of the chosen construction.

        :raises ConfigError: naming the violated relation.
        """
        if self.family not in FAMILIES:
            raise ConfigError(
                f"unknown code family '{self.family}', expected one of "
                f"{', '.join(FAMILIES)}"
            )
        if self.n < 1:
            raise ConfigError(f"n >= 1 is violated by n={self.n}")
        if self.trials < 1:
            raise ConfigError(f"trials >= 1 is violated by trials={self.trials}")
        if self.workers < 1:
            raise ConfigError(f"workers >= 1 is violated by {self.workers}")

        outer_class = (
            HalfLinearCode if self.family == BinaryInsdelCode.family
            else self.code_class
        )
        try:
            outer_class.check_parameters(self.delta, self.epsilon)
        except ParameterError as exc:
            raise ConfigError(str(exc)) from exc

        spec = self.field_spec()
        if self.n > spec.order - 1:
            raise ConfigError(
                f"n <= q - 1 is violated: n={self.n}, q={spec.order}"
            )
        if self.k is not None:
            delta_c = outer_class.relative_distance(self.delta, self.epsilon)
            if not 1 <= self.k or self.n - self.k + 1 < delta_c * self.n:
                raise ConfigError(
                    f"n - k + 1 >= delta_C * n is violated by k={self.k}"
                )

        if self.family == BinaryInsdelCode.family:
            self._validate_binary(spec)

        strategy = self.adversary.get('strategy', 'random')
        if strategy not in STRATEGIES:
            raise ConfigError(f"unknown adversary strategy '{strategy}'")
        if 'budget' in self.adversary and int(self.adversary['budget']) < 0:
            raise ConfigError("adversary budget >= 0 is violated")

    def _validate_binary(self, spec: FieldSpec) -> None:
        if not spec.is_binary:
            raise ConfigError("the binary family needs a binary extension field")
        if not is_square_order(spec):
            raise ConfigError(
                f"q must be a square for the binary family, got {spec}"
            )
        inner = self.inner
        if 'path' in inner:
            return
        try:
            m, k_in = int(inner['m']), int(inner['k_in'])
            check_feasibility(m, k_in, inner['delta_in'], inner['rho'])
        except KeyError as exc:
            raise ConfigError(f"inner code section misses {exc}") from exc
        except ParameterError as exc:
            raise ConfigError(str(exc)) from exc
        if k_in != spec.degree:
            raise ConfigError(
                f"k_in = log2(q) is violated: k_in={k_in}, log2(q)="
                f"{spec.degree}"
            )
        mode = inner.get('verify_mode', EXHAUSTIVE)
        if mode not in VERIFY_MODES:
            raise ConfigError(f"unknown inner verification mode '{mode}'")
        strategy = inner.get('strategy', GREEDY)
        if strategy not in SEARCH_STRATEGIES:
            raise ConfigError(f"unknown inner search strategy '{strategy}'")

    def points(self) -> List[ExperimentConfig]:
        """
        Expand the sweep: one configuration per point, each point
        overriding the top level keys. Without a sweep the configuration
        itself is the only point.
        """
        if not self.sweep:
            return [self]
        base = self.to_dict()
        base.pop('sweep', None)
        out = []
        for point in self.sweep:
            data = dict(base)
            for key, value in point.items():
                if isinstance(value, dict) and isinstance(data.get(key), dict):
                    data[key] = {**data[key], **value}
                else:
                    data[key] = value
            out.append(ExperimentConfig.from_dict(data, self.base_dir))
        return out

    def point_seeds(self) -> List[int]:
        """One seed per sweep point, spawned from the master seed."""
        return spawn_seeds(self.master_seed, len(self.points()))

    def construction_seeds(self) -> Tuple[int, int]:
        """
        Seeds of the synchronization string and of the inner code search.
        Values given in the configuration win, the others are derived from
        the master seed.
        """
        sync_seed = self.sync_seed
        if sync_seed is None:
            sync_seed = derive_seed(self.master_seed, *SYNC_SEED_KEY)
        inner_seed = self.inner.get('seed')
        if inner_seed is None:
            inner_seed = derive_seed(self.master_seed, *INNER_SEED_KEY)
        return int(sync_seed), int(inner_seed)


def load_config(file_name: str) -> ExperimentConfig:
    """
    Load and validate a configuration file.

    :param file_name: The path of the JSON document.
    :return: The configuration.
    """
    return ExperimentConfig.from_dict(
        read_json(file_name), os.path.dirname(os.path.abspath(file_name))
    )


def _pair_code(cls, config: ExperimentConfig, spec: FieldSpec) -> IndexedPairCode:
    sync_seed, _ = config.construction_seeds()
    if config.k is None:
        return cls.build(
            spec, config.n, config.delta, config.epsilon, sync_seed,
            config.sync_epsilon
        )
    sync_eps = config.sync_epsilon
    if sync_eps is None:
        sync_eps = default_sync_epsilon(config.epsilon)
    sync = make_sync(spec, config.n, sync_eps, sync_seed)
    return cls(
        ReedSolomonCode(spec, config.n, config.k), sync, config.delta,
        config.epsilon
    )


def build_inner(config: ExperimentConfig, progress: bool = False) -> InnerCode:
    """Load or search the inner code of a binary configuration."""
    inner = config.inner
    if 'path' in inner:
        path = inner['path']
        if not os.path.isabs(path):
            path = os.path.join(config.base_dir, path)
        return load_inner(path)
    return inner_search(
        int(inner['m']), int(inner['k_in']), inner['delta_in'], inner['rho'],
        seed=config.construction_seeds()[1],
        verify_mode=inner.get('verify_mode', EXHAUSTIVE),
        budget=int(inner.get('search_budget', 50)),
        workers=config.workers,
        progress=progress,
        strategy=inner.get('strategy', GREEDY)
    )


def build_codec(
    config: ExperimentConfig,
    inner: Optional[InnerCode] = None,
    progress: bool = False
) -> AnyCode:
    """
    Materialize the code instance a configuration describes.

    :param config: The configuration.
    :param inner: An inner code to reuse (binary family only).
    :param progress: Show progress bars during searches.
    :return: The code.
    :raises ConfigError: if the instance violates a construction relation.
    """
    spec = config.field_spec()
    try:
        if config.family == BinaryInsdelCode.family:
            outer = _pair_code(HalfLinearCode, config, spec)
            if inner is None:
                inner = build_inner(config, progress)
            return BinaryInsdelCode.build(inner, outer)
        return _pair_code(config.code_class, config, spec)
    except ParameterError as exc:
        raise ConfigError(str(exc)) from exc


def resolve_script(
    config: ExperimentConfig,
    codec: AnyCode,
    seed: Optional[int] = None
) -> AdversaryScript:
    """
    Build the adversary script of a configuration for a given code.

    The budget is either given directly (``budget``) or as a fraction of
    the code's guaranteed decoding budget (``budget_fraction``). Strategy
    parameters missing from the configuration are filled in from the code
    geometry.
    """
    adv = config.adversary
    strategy = adv.get('strategy', 'random')
    if 'budget' in adv:
        budget = int(adv['budget'])
    elif 'budget_fraction' in adv:
        budget = floor_mul(adv['budget_fraction'], codec.decoding_budget())
    else:
        budget = codec.decoding_budget()
    params = {**code_params(strategy, codec), **adv.get('params', {})}
    if strategy == 'composite':
        params['parts'] = [
            {**p, 'params': {**code_params(p['strategy'], codec),
                             **p.get('params', {})}}
            for p in params.get('parts', [])
        ]
    return AdversaryScript(strategy, budget, seed, params)
