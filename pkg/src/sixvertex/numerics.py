"""Scalar fields and determinants.

Two scalar fields are used throughout the package:

* exact rationals, represented by :class:`fractions.Fraction` (always stored
  reduced with a positive denominator), and
* double-precision complex numbers (builtin :class:`complex`).

Matrices are plain row-major lists of lists; entry ``m[j][k]`` corresponds to
the ``(j+1, k+1)`` entry of the mathematical matrix.
"""

from __future__ import annotations

import cmath
import math
import warnings
from fractions import Fraction
from numbers import Rational
from typing import Sequence, Union

Scalar = Union[Fraction, complex]

#: Relative tolerance used when comparing complex-mode results.
COMPLEX_RTOL = 1e-9

#: Pivot magnitude below which the complex elimination emits a warning.
PIVOT_UNDERFLOW = 1e-300


class DomainError(ValueError):
    """Arithmetic request outside the domain of the operation."""


class ResourceLimitError(RuntimeError):
    """Problem size above a configured cap."""


class ConditionWarning(RuntimeWarning):
    """Complex elimination met a pivot too small to be trusted."""


def is_exact(s) -> bool:
    return isinstance(s, Rational)


def to_scalar(value, exact: bool = True) -> Scalar:
    """Coerce ``value`` into the requested field.

    Strings of the form ``"p/q"`` or ``"p"`` become rationals; two-element
    sequences ``[re, im]`` become complex numbers.
    """
    if exact:
        if isinstance(value, float):
            # floats are exact binary rationals, but accepting them silently
            # hides typos such as 0.1; callers must use strings or ints
            raise TypeError(f"refusing float {value!r} in exact mode; use 'p/q'")
        return Fraction(value)
    if isinstance(value, (list, tuple)):
        re, im = value
        return complex(float(re), float(im))
    if isinstance(value, str):
        return complex(float(Fraction(value)))
    return complex(value)


def one_like(s: Scalar) -> Scalar:
    return Fraction(1) if is_exact(s) else complex(1.0)


def zero_like(s: Scalar) -> Scalar:
    return Fraction(0) if is_exact(s) else complex(0.0)


def scalar_pow(s: Scalar, e: int) -> Scalar:
    """``s**e`` by repeated squaring; exact for rationals."""
    if e < 0:
        if s == 0:
            raise DomainError("zero raised to a negative power")
        s = 1 / s
        e = -e
    result = one_like(s)
    base = s
    while e:
        if e & 1:
            result *= base
        base *= base
        e >>= 1
    return result


def product(values, start=None) -> Scalar:
    values = list(values)
    if start is None:
        start = one_like(values[0]) if values else Fraction(1)
    acc = start
    for v in values:
        acc = acc * v
    return acc


def close(x: Scalar, y: Scalar, rtol: float = COMPLEX_RTOL) -> bool:
    """Equality for exact scalars, relative closeness for complex ones."""
    if is_exact(x) and is_exact(y):
        return x == y
    scale = max(abs(x), abs(y))
    if scale == 0:
        return True
    return abs(x - y) <= rtol * scale


def _check_square(m: Sequence[Sequence[Scalar]]) -> int:
    n = len(m)
    if n < 1:
        raise ValueError("matrix must have order >= 1")
    for row in m:
        if len(row) != n:
            raise ValueError("matrix is not square")
    return n


def det(m: Sequence[Sequence[Scalar]]) -> Scalar:
    """Determinant of a square matrix.

    Rational entries are eliminated exactly (first nonzero pivot in the
    column). Complex entries use partial pivoting; see :func:`det_scaled`
    for a version that cannot overflow.
    """
    n = _check_square(m)
    if all(is_exact(x) for row in m for x in row):
        return _det_exact(m, n)
    mant, exp = det_scaled(m)
    return _ldexp_complex(mant, exp)


def _det_exact(m, n):
    a = [[Fraction(x) for x in row] for row in m]
    sign = 1
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        prow = a[col]
        p = prow[col]
        result *= p
        for r in range(col + 1, n):
            row = a[r]
            if row[col] == 0:
                continue
            factor = row[col] / p
            for k in range(col + 1, n):
                if prow[k]:
                    row[k] -= factor * prow[k]
    return result if sign > 0 else -result


def det_scaled(m: Sequence[Sequence[Scalar]]) -> tuple[complex, int]:
    """Complex determinant as ``(mantissa, exponent)``, value ``mantissa * 2**exponent``.

    The running product of pivots is renormalised after every step, so
    orders of a few hundred with tiny or huge entries stay representable.
    """
    n = _check_square(m)
    a = [[complex(x) for x in row] for row in m]
    mant = complex(1.0)
    exp = 0
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(a[r][col]))
        p = a[piv][col]
        if p == 0:
            return complex(0.0), 0
        if abs(p) < PIVOT_UNDERFLOW:
            warnings.warn(
                f"pivot magnitude {abs(p):.3e} in column {col}", ConditionWarning, stacklevel=2
            )
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            mant = -mant
        mant *= p
        mant, exp = _renormalise(mant, exp)
        prow = a[col]
        for r in range(col + 1, n):
            row = a[r]
            factor = row[col] / p
            if factor == 0:
                continue
            for k in range(col + 1, n):
                row[k] -= factor * prow[k]
    return mant, exp


def _renormalise(mant: complex, exp: int) -> tuple[complex, int]:
    mag = abs(mant)
    if mag == 0 or not math.isfinite(mag):
        return mant, exp
    _, e = math.frexp(mag)
    return complex(math.ldexp(mant.real, -e), math.ldexp(mant.imag, -e)), exp + e


def _ldexp_complex(mant: complex, exp: int) -> complex:
    return complex(math.ldexp(mant.real, exp), math.ldexp(mant.imag, exp))


class ScaledProduct:
    """Accumulates a complex product as mantissa and binary exponent."""

    def __init__(self, mant: complex = 1.0, exp: int = 0):
        self.mant, self.exp = _renormalise(complex(mant), exp)

    def mul(self, z) -> "ScaledProduct":
        self.mant, self.exp = _renormalise(self.mant * complex(z), self.exp)
        return self

    def div(self, z) -> "ScaledProduct":
        self.mant, self.exp = _renormalise(self.mant / complex(z), self.exp)
        return self

    def mul_scaled(self, mant: complex, exp: int) -> "ScaledProduct":
        self.mant, self.exp = _renormalise(self.mant * mant, self.exp + exp)
        return self

    def div_scaled(self, mant: complex, exp: int) -> "ScaledProduct":
        self.mant, self.exp = _renormalise(self.mant / mant, self.exp - exp)
        return self

    def value(self) -> complex:
        return _ldexp_complex(self.mant, self.exp)


def phase(theta: float) -> complex:
    """``exp(i * theta)``."""
    return cmath.exp(1j * theta)


def serialize(s: Scalar):
    """Rationals as ``"p/q"`` (``"p"`` when q == 1); complex as ``[re, im]``."""
    if is_exact(s):
        s = Fraction(s)
        return str(s.numerator) if s.denominator == 1 else f"{s.numerator}/{s.denominator}"
    s = complex(s)
    return [s.real, s.imag]


def deserialize(obj) -> Scalar:
    if isinstance(obj, (list, tuple)):
        return complex(float(obj[0]), float(obj[1]))
    if isinstance(obj, str):
        return Fraction(obj)
    if isinstance(obj, int):
        return Fraction(obj)
    raise TypeError(f"cannot deserialize scalar from {obj!r}")
