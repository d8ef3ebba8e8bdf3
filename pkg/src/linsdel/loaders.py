#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Readers and writers of the files exchanged by the command line tools.

Everything is JSON: messages are arrays of field element integers (raw
bytes are accepted for the binary family), codewords and received words are
small documents tagged with the code family, operation logs and failure
transcripts are JSON lines.

@author: linsdel developers
"""
import json
import os
from typing import Any, Dict, List, Sequence, Tuple, Union

import numpy as np

from linsdel.binaryinsdel import BinaryInsdelCode, InnerCode
from linsdel.exceptions import FormatError
from linsdel.fulllinear import FullLinearCode
from linsdel.halflinear import HalfLinearCode
from linsdel.syncstring import SyncString
from linsdel.utils import bits_to_hex, hex_to_bits

CODE_FAMILIES = {
    HalfLinearCode.family: HalfLinearCode,
    FullLinearCode.family: FullLinearCode,
    BinaryInsdelCode.family: BinaryInsdelCode,
}

AnyCode = Union[HalfLinearCode, FullLinearCode, BinaryInsdelCode]


def read_json(file_name: str) -> Any:
    """
    Load a JSON document.

    :param file_name: The path of the file to read.
    :return: The decoded document.
    :raises FormatError: if the file is not valid JSON.
    """
    try:
        with open(file_name, 'r') as f:
            return json.load(f)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{file_name} is not valid JSON: {exc}") from exc


def write_json(file_name: str, data: Any) -> None:
    with open(file_name, 'w') as f:
        json.dump(data, f, indent=2)
        f.write('\n')


def read_jsonl(file_name: str) -> List[Any]:
    """Load a JSON lines file, skipping empty lines."""
    out = []
    with open(file_name, 'r') as f:
        for lineno, line in enumerate(f, 1):
            line = line.strip()
            if not line:
                continue
            try:
                out.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise FormatError(
                    f"{file_name}:{lineno} is not valid JSON: {exc}"
                ) from exc
    return out


def write_jsonl(file_name: str, items: Sequence[Any]) -> None:
    with open(file_name, 'w') as f:
        for item in items:
            f.write(json.dumps(item) + '\n')


def code_from_dict(data: Dict[str, Any]) -> AnyCode:
    """
    Rebuild a code instance from its serialization.

    :raises FormatError: on unknown families or malformed documents.
    """
    family = data.get('family') if isinstance(data, dict) else None
    if family not in CODE_FAMILIES:
        raise FormatError(f"unknown code family '{family}'")
    try:
        return CODE_FAMILIES[family].from_dict(data)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed '{family}' code: {exc}") from exc


def load_code(file_name: str) -> AnyCode:
    return code_from_dict(read_json(file_name))


def save_code(file_name: str, code: AnyCode) -> None:
    write_json(file_name, code.to_dict())


def load_sync(file_name: str) -> SyncString:
    try:
        return SyncString.from_dict(read_json(file_name))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed sync string: {exc}") from exc


def save_sync(file_name: str, sync: SyncString) -> None:
    write_json(file_name, sync.to_dict())


def load_inner(file_name: str) -> InnerCode:
    try:
        return InnerCode.from_dict(read_json(file_name))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed inner code: {exc}") from exc


def save_inner(file_name: str, code: InnerCode) -> None:
    write_json(file_name, code.to_dict())


def _raw_message_size(code: BinaryInsdelCode) -> int:
    return (code.k * code.inner.k_in) // 8


def bytes_to_message(data: bytes, code: BinaryInsdelCode) -> List[int]:
    """
    Split raw bytes into k_in-bit message symbols.

    :param data: Exactly floor(k * k_in / 8) bytes.
    :param code: The binary code.
    :return: The k message symbols, the trailing bits set to zero.
    """
    size = _raw_message_size(code)
    if len(data) != size:
        raise FormatError(
            f"raw messages of this code have {size} bytes, got {len(data)}"
        )
    bits = np.zeros(code.k * code.inner.k_in, dtype=np.uint8)
    bits[:8 * size] = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
    symbols = code.field.bits_to_array(bits.reshape(code.k, code.inner.k_in))
    return [int(v) for v in symbols]


def message_to_bytes(msg: Sequence[int], code: BinaryInsdelCode) -> bytes:
    """Inverse of :func:`bytes_to_message`."""
    bits = code.field.array_to_bits(msg).reshape(-1)
    size = _raw_message_size(code)
    return np.packbits(bits[:8 * size]).tobytes()


def _is_raw(file_name: str) -> bool:
    return os.path.splitext(file_name.lower())[1] != '.json'


def load_message(file_name: str, code: AnyCode) -> List[int]:
    """
    Load a message: a JSON array of k field element integers, or raw bytes
    for the binary family when the file is not a .json file.
    """
    if isinstance(code, BinaryInsdelCode) and _is_raw(file_name):
        with open(file_name, 'rb') as f:
            return bytes_to_message(f.read(), code)
    data = read_json(file_name)
    if not isinstance(data, list) or not all(isinstance(v, int) for v in data):
        raise FormatError(f"{file_name} must hold a JSON array of integers")
    if len(data) != code.k:
        raise FormatError(
            f"{file_name} holds {len(data)} symbols, the code expects {code.k}"
        )
    if any(not 0 <= v < code.field.order for v in data):
        raise FormatError(
            f"{file_name} holds values outside {code.field}"
        )
    return data


def save_message(file_name: str, msg: Sequence[int], code: AnyCode) -> None:
    if isinstance(code, BinaryInsdelCode) and _is_raw(file_name):
        with open(file_name, 'wb') as f:
            f.write(message_to_bytes(msg, code))
        return
    with open(file_name, 'w') as f:
        f.write(json.dumps([int(v) for v in msg]) + '\n')


def word_to_dict(family: str, word: Any) -> Dict[str, Any]:
    """Serialize a codeword or received word of the given family."""
    if family == BinaryInsdelCode.family:
        hex_bits, length = bits_to_hex(np.asarray(word, dtype=np.uint8))
        return {'family': family, 'bits': hex_bits, 'length': length}
    if family == HalfLinearCode.family:
        return {'family': family, 'word': [[int(a), int(b)] for a, b in word]}
    return {'family': family, 'word': [int(v) for v in word]}


def word_from_dict(data: Dict[str, Any]) -> Tuple[str, Any]:
    """
    Inverse of :func:`word_to_dict`.

    :return: The family and the word (pairs as tuples, bits as uint8).
    """
    if not isinstance(data, dict) or data.get('family') not in CODE_FAMILIES:
        raise FormatError("word documents need a known 'family'")
    family = data['family']
    try:
        if family == BinaryInsdelCode.family:
            return family, hex_to_bits(data['bits'], int(data['length']))
        if family == HalfLinearCode.family:
            return family, [(int(a), int(b)) for a, b in data['word']]
        return family, [int(v) for v in data['word']]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed '{family}' word: {exc}") from exc


def load_word(file_name: str) -> Tuple[str, Any]:
    return word_from_dict(read_json(file_name))


def save_word(file_name: str, family: str, word: Any) -> None:
    write_json(file_name, word_to_dict(family, word))


def check_family(code: AnyCode, family: str, file_name: str) -> None:
    if code.family != family:
        raise FormatError(
            f"{file_name} holds a '{family}' word, the code is "
            f"'{code.family}'"
        )


def load_op_log(file_name: str) -> List[Tuple[int, str, Any]]:
    """Read an operation log, one [position, op, symbol] per line."""
    ops = []
    for item in read_jsonl(file_name):
        try:
            pos, op, sym = item
        except (TypeError, ValueError) as exc:
            raise FormatError(f"malformed operation {item!r}") from exc
        ops.append((int(pos), op, tuple(sym) if isinstance(sym, list) else sym))
    return ops


def save_op_log(file_name: str, ops: Sequence[Tuple[int, str, Any]]) -> None:
    write_jsonl(file_name, [
        [int(p), op, list(s) if isinstance(s, tuple) else s]
        for p, op, s in ops
    ])
