#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Finite-field arithmetic for the code constructions.

Prime fields GF(p) and binary extension fields GF(2^e) are both backed by
:mod:`galois` field classes. :class:`FieldSpec` is the immutable descriptor
passed around by every construction, :class:`FieldElement` a scalar view
used where single symbols are handled explicitly.

@author: linsdel developers
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

import numpy as np

import galois  # type: ignore

from linsdel.exceptions import FieldError

logger = logging.getLogger(__name__)

PRIME = "prime"
BINARY_EXTENSION = "binary-extension"
FIELD_KINDS = (PRIME, BINARY_EXTENSION)

BitsLike = Union[str, Sequence[int], np.ndarray]


def _modulus_to_poly(modulus: BitsLike, e: int) -> galois.Poly:
    """
    Convert a modulus description into a GF(2) polynomial.

    :param modulus:
        Either an integer whose binary digits are the coefficients, a 0/1
        string or a sequence of coefficients, most significant first.
    :param e: The expected degree.
    :return: The polynomial over GF(2).
    """
    if isinstance(modulus, (int, np.integer)):
        if modulus <= 0:
            raise FieldError(f"invalid modulus {modulus}")
        coeffs = [int(c) for c in bin(int(modulus))[2:]]
    elif isinstance(modulus, str):
        if not modulus or set(modulus) - {'0', '1'}:
            raise FieldError(f"modulus '{modulus}' is not a 0/1 string")
        coeffs = [int(c) for c in modulus]
    else:
        coeffs = [int(c) for c in modulus]
        if set(coeffs) - {0, 1}:
            raise FieldError("modulus coefficients must be 0 or 1")

    poly = galois.Poly(coeffs, field=galois.GF2)
    if poly.degree != e:
        raise FieldError(
            f"modulus has degree {poly.degree}, expected degree {e}"
        )
    if not poly.is_irreducible():
        raise FieldError(f"modulus {poly} is reducible over GF(2)")
    return poly


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """Descriptor of a finite field GF(q), q = p^e."""

    kind: str
    characteristic: int
    degree: int
    modulus: Optional[str]
    GF: type = field(repr=False)

    @property
    def order(self) -> int:
        return int(self.GF.order)

    @property
    def q(self) -> int:
        return self.order

    @property
    def is_binary(self) -> bool:
        return self.kind == BINARY_EXTENSION

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (
            self.kind == other.kind and
            self.order == other.order and
            self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.order, self.modulus))

    def __str__(self) -> str:
        if self.is_binary:
            return f"GF(2^{self.degree})"
        return f"GF({self.characteristic})"

    def element(self, value: int) -> FieldElement:
        return FieldElement(self, self._check_value(value))

    def array(self, values: Iterable[int]) -> galois.FieldArray:
        """Return a galois array holding the given canonical integers."""
        vals = np.asarray(list(values) if not isinstance(values, np.ndarray)
                          else values, dtype=np.int64)
        if vals.size and (vals.min() < 0 or vals.max() >= self.order):
            raise FieldError(
                f"values must lie in [0, {self.order}) for {self}"
            )
        return self.GF(vals)

    def zeros(self, n: int) -> galois.FieldArray:
        return self.GF.Zeros(n)

    def nonzero_elements(self) -> galois.FieldArray:
        return self.GF.Range(1, self.order)

    def random(
        self,
        shape: Union[int, tuple],
        rng: Optional[np.random.Generator] = None
    ) -> galois.FieldArray:
        """
        Draw uniformly random field elements.

        :param shape: The shape of the returned array.
        :param rng: The numpy generator used as randomness source.
        :return: A galois array.
        """
        if rng is None:
            rng = np.random.default_rng()
        return self.GF(rng.integers(0, self.order, size=shape))

    def inv(self, a: Union[int, FieldElement]) -> FieldElement:
        """
        Return the multiplicative inverse of a.

        :param a: A nonzero element (or its canonical integer).
        :return: The inverse element.
        :raises FieldError: if a is zero.
        """
        value = int(a)
        try:
            res = np.reciprocal(self.GF(self._check_value(value)))
        except ZeroDivisionError as exc:
            raise FieldError(f"0 has no inverse in {self}") from exc
        return FieldElement(self, int(res))

    def elem_to_bits(self, a: Union[int, FieldElement]) -> np.ndarray:
        """
        Map an element of GF(2^e) to its e coefficient bits.

        The bits are the coefficients of the polynomial basis
        representation, most significant first, so the map is GF(2)-linear.

        :param a: An element of a binary extension field.
        :return: A uint8 array of length e.
        """
        if not self.is_binary:
            raise FieldError(
                f"bit conversion is not supported on prime field {self}"
            )
        vec = self.GF(self._check_value(int(a))).vector()
        return np.asarray(vec, dtype=np.uint8)

    def bits_to_elem(self, bits: BitsLike) -> FieldElement:
        """Inverse of :meth:`elem_to_bits`."""
        if not self.is_binary:
            raise FieldError(
                f"bit conversion is not supported on prime field {self}"
            )
        if isinstance(bits, str):
            bits = [int(c) for c in bits]
        arr = np.asarray(bits, dtype=np.int64)
        if arr.shape != (self.degree,) or set(np.unique(arr)) - {0, 1}:
            raise FieldError(
                f"expected {self.degree} bits, got {arr.tolist()}"
            )
        return FieldElement(self, int(self.GF.Vector(galois.GF2(arr))))

    def array_to_bits(self, values: Iterable[int]) -> np.ndarray:
        """Vectorized :meth:`elem_to_bits`, one row of e bits per value."""
        if not self.is_binary:
            raise FieldError(
                f"bit conversion is not supported on prime field {self}"
            )
        return np.asarray(self.array(values).vector(), dtype=np.uint8)

    def bits_to_array(self, bits: np.ndarray) -> galois.FieldArray:
        """Vectorized :meth:`bits_to_elem` on an (N, e) bit matrix."""
        if not self.is_binary:
            raise FieldError(
                f"bit conversion is not supported on prime field {self}"
            )
        return self.GF.Vector(galois.GF2(np.asarray(bits, dtype=np.int64)))

    def to_dict(self) -> dict:
        out = {
            'kind': self.kind,
            'p': self.characteristic,
            'e': self.degree,
        }
        if self.modulus is not None:
            out['modulus'] = self.modulus
        return out

    def _check_value(self, value: int) -> int:
        value = int(value)
        if not 0 <= value < self.order:
            raise FieldError(f"{value} is not an element of {self}")
        return value


@dataclass(frozen=True)
class FieldElement:
    """A single element of a field, stored as its canonical integer."""

    spec: FieldSpec = field(repr=False)
    value: int

    def _coerce(self, other: Union[int, FieldElement]) -> galois.FieldArray:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldError("cannot mix elements of different fields")
            return self.spec.GF(other.value)
        return self.spec.GF(self.spec._check_value(other))

    def _wrap(self, arr: galois.FieldArray) -> FieldElement:
        return FieldElement(self.spec, int(arr))

    @property
    def _arr(self) -> galois.FieldArray:
        return self.spec.GF(self.value)

    def __add__(self, other):
        return self._wrap(self._arr + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self._arr - self._coerce(other))

    def __rsub__(self, other):
        return self._wrap(self._coerce(other) - self._arr)

    def __mul__(self, other):
        return self._wrap(self._arr * self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self.spec.inv(other)

    def __rtruediv__(self, other):
        return self._wrap(self._coerce(other)) * self.spec.inv(self)

    def __neg__(self):
        return self._wrap(-self._arr)

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.spec, self.value))

    def inv(self) -> FieldElement:
        return self.spec.inv(self)

    def __str__(self) -> str:
        return str(self.value)


def field_create(
    kind: str,
    p: int,
    e: int = 1,
    modulus: Optional[BitsLike] = None
) -> FieldSpec:
    """
    Create a finite field descriptor.

    :param kind: Either 'prime' or 'binary-extension'.
    :param p: The characteristic.
    :param e:
        The extension degree. Must be 1 for prime fields and at least 1
        for binary extension fields.
    :param modulus:
        The defining polynomial of a binary extension field, given as an
        integer, a 0/1 string or a coefficient list (most significant
        coefficient first). If None, galois' default irreducible
        polynomial of degree e is used.
    :return: The field descriptor.
    :raises FieldError: on invalid parameters.
    """
    if kind not in FIELD_KINDS:
        raise FieldError(
            f"unknown field kind '{kind}', expected one of {FIELD_KINDS}"
        )
    p = int(p)
    e = int(e)
    if e < 1:
        raise FieldError(f"extension degree must be at least 1, got {e}")
    if not galois.is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")

    if kind == PRIME:
        if e != 1:
            raise FieldError("prime fields have extension degree 1")
        return FieldSpec(PRIME, p, 1, None, galois.GF(p))

    if p != 2:
        raise FieldError("binary extension fields have characteristic 2")

    if modulus is None:
        gf_class = galois.GF(2**e)
        poly = gf_class.irreducible_poly
    else:
        poly = _modulus_to_poly(modulus, e)
        gf_class = galois.GF(2**e, irreducible_poly=poly)

    bits = ''.join(str(int(c)) for c in poly.coeffs)
    logger.debug("created GF(2^%d) with modulus %s", e, bits)
    return FieldSpec(BINARY_EXTENSION, 2, e, bits, gf_class)


def default_binary_field(e: int) -> FieldSpec:
    """Return GF(2^e) with galois' default defining polynomial."""
    return field_create(BINARY_EXTENSION, 2, e)


def field_from_dict(data: dict) -> FieldSpec:
    """Build a field from its JSON description (see FieldSpec.to_dict)."""
    try:
        kind = data['kind']
        p = data['p']
    except KeyError as exc:
        raise FieldError(f"field description misses key {exc}") from exc
    return field_create(kind, p, data.get('e', 1), data.get('modulus'))


def is_square_order(spec: FieldSpec) -> bool:
    """Tell whether q is a perfect square (q = p^e with e even)."""
    return spec.degree % 2 == 0


def inv(a: FieldElement) -> FieldElement:
    return a.spec.inv(a)


def elem_to_bits(a: FieldElement) -> np.ndarray:
    return a.spec.elem_to_bits(a)


def bits_to_elem(spec: FieldSpec, bits: BitsLike) -> FieldElement:
    return spec.bits_to_elem(bits)


def solve_linear(
    A: galois.FieldArray,
    b: galois.FieldArray
) -> Optional[galois.FieldArray]:
    """
    Find one solution of A x = b over a finite field.

    Free variables are set to zero.

    :param A: The (rows, cols) coefficient matrix.
    :param b: The right hand side, of length rows.
    :return: A solution of length cols, or None if the system is
        inconsistent.
    """
    GF = type(A)
    rows, cols = A.shape
    aug = GF(np.hstack([
        A.view(np.ndarray), b.view(np.ndarray).reshape(-1, 1)
    ]))
    red = aug.row_reduce(ncols=cols)

    x = GF.Zeros(cols)
    for r in range(rows):
        nz = np.flatnonzero(red[r, :cols])
        if nz.size == 0:
            if red[r, cols] != 0:
                return None
            continue
        # row_reduce leaves pivots equal to one
        x[nz[0]] = red[r, cols]
    return x
