#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Linear insertion/deletion codes built on synchronization strings.

The package implements three explicit constructions of codes that correct
adversarial insertions and deletions while staying linear:

- the half-linear code over pairs of GF(q) symbols (:mod:`linsdel.halflinear`)
- the fully linear buffered code over GF(q) (:mod:`linsdel.fulllinear`)
- the binary linear concatenated code (:mod:`linsdel.binaryinsdel`)

together with the machinery they rely on and an adversarial channel harness
used to validate the decoding guarantees.
"""

try:
    from linsdel._version import version as __version__  # type: ignore
    from linsdel._version import version_tuple  # type: ignore
except ImportError:
    __version__ = "unknown"
    version_tuple = (0, 0, 0, "unknown")

CSV_SCHEMA_VERSION = 1
CSV_COLUMNS = [
    'family', 'n', 'delta', 'budget', 'trials', 'success_rate', 'rate',
    'wall_ms'
]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_GUARANTEE_VIOLATION = 2
