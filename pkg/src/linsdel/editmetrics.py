#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Longest common subsequence, insertion/deletion edit distance and alignments.

All the functions work on arbitrary sequences of hashable symbols.

@author: linsdel developers
"""
from dataclasses import dataclass
from typing import Any, Dict, Hashable, List, Sequence, Tuple

import numpy as np

# (position, op, symbol) against the evolving string, positions 0-based
EditOp = Tuple[int, str, Any]

INSERT = 'ins'
DELETE = 'del'


@dataclass(frozen=True)
class Alignment:
    """
    A set of matched positions between two sequences.

    :param pairs: Index pairs (i, j) with s[i] == t[j], strictly increasing
        in both coordinates.
    :param cost: The number of insertions and deletions implied by the
        alignment, |s| + |t| - 2 * len(pairs).
    """

    pairs: Tuple[Tuple[int, int], ...]
    cost: int

    def __len__(self) -> int:
        return len(self.pairs)


def _match_masks(b: Sequence[Hashable]) -> Dict[Hashable, int]:
    masks: Dict[Hashable, int] = {}
    for pos, sym in enumerate(b):
        masks[sym] = masks.get(sym, 0) | (1 << pos)
    return masks


def lcs_prefix_profile(
    a: Sequence[Hashable],
    b: Sequence[Hashable]
) -> List[int]:
    """
    Compute LCS(a[:t], b) for every prefix length t of a.

    Bit-parallel evaluation: one machine word (here a Python integer of
    |b| bits) encodes a whole column of the DP table, so the cost is
    O(|a| * |b| / w).

    :param a: The sequence whose prefixes are scanned.
    :param b: The fixed sequence.
    :return: A list of |a| + 1 integers, the first one being 0.
    """
    width = len(b)
    full = (1 << width) - 1
    masks = _match_masks(b)
    v = full
    profile = [0]
    for sym in a:
        u = v & masks.get(sym, 0)
        v = ((v + u) | (v - u)) & full
        profile.append(width - bin(v).count('1'))
    return profile


def lcs(s: Sequence[Hashable], t: Sequence[Hashable]) -> int:
    """
    Return the length of a longest common subsequence of s and t.

    :param s: The first sequence.
    :param t: The second sequence.
    :return: The LCS length.
    """
    if len(s) < len(t):
        s, t = t, s
    if len(t) == 0:
        return 0
    return lcs_prefix_profile(s, t)[-1]


def edit_distance(s: Sequence[Hashable], t: Sequence[Hashable]) -> int:
    """
    Return the insertion/deletion distance between s and t.

    It equals |s| + |t| - 2 LCS(s, t).
    """
    return len(s) + len(t) - 2 * lcs(s, t)


def suffix_lcs_table(
    s: Sequence[Hashable],
    t: Sequence[Hashable]
) -> np.ndarray:
    """
    Return the table D with D[i, j] = LCS(s[i:], t[j:]).

    :param s: The first sequence.
    :param t: The second sequence.
    :return: An integer array of shape (|s| + 1, |t| + 1).
    """
    ls, lt = len(s), len(t)
    table = np.zeros((ls + 1, lt + 1), dtype=np.int32)
    for i in range(ls - 1, -1, -1):
        row = table[i]
        nxt = table[i + 1]
        si = s[i]
        for j in range(lt - 1, -1, -1):
            if si == t[j]:
                row[j] = nxt[j + 1] + 1
            else:
                row[j] = max(nxt[j], row[j + 1])
    return table


def align(s: Sequence[Hashable], t: Sequence[Hashable]) -> Alignment:
    """
    Compute a minimum cost alignment between s and t.

    Among the optimal alignments the one whose list of matched pairs is
    lexicographically smallest is returned (smaller i first, then
    smaller j).

    :param s: The first sequence.
    :param t: The second sequence.
    :return: The alignment.
    """
    table = suffix_lcs_table(s, t)
    ls, lt = len(s), len(t)
    pairs = []
    i = j = 0
    while i < ls and j < lt:
        here = table[i, j]
        if here == 0:
            break
        if s[i] == t[j] and here == table[i + 1, j + 1] + 1:
            pairs.append((i, j))
            i += 1
            j += 1
        elif table[i, j + 1] == here:
            j += 1
        else:
            i += 1
    return Alignment(tuple(pairs), ls + lt - 2 * len(pairs))


def is_subsequence(s: Sequence[Hashable], t: Sequence[Hashable]) -> bool:
    """Tell whether s can be obtained from t by deletions only."""
    it = iter(t)
    return all(any(sym == other for other in it) for sym in s)


def edit_script(
    alignment: Alignment,
    s: Sequence[Any],
    t: Sequence[Any]
) -> List[EditOp]:
    """
    Turn an alignment into the insert/delete operations mapping s to t.

    The operations are expressed against the evolving string, so that
    applying them in order to s yields t.

    :param alignment: An alignment between s and t.
    :param s: The source sequence.
    :param t: The target sequence.
    :return: The list of (position, op, symbol) operations.
    """
    ops: List[EditOp] = []
    pos = 0
    i = j = 0
    for mi, mj in list(alignment.pairs) + [(len(s), len(t))]:
        while i < mi:
            ops.append((pos, DELETE, s[i]))
            i += 1
        while j < mj:
            ops.append((pos, INSERT, t[j]))
            pos += 1
            j += 1
        i += 1
        j += 1
        pos += 1
    return ops
