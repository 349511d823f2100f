"""Parsing and formatting of exact rationals."""

from __future__ import annotations

import numbers
import re
from fractions import Fraction

__all__ = ["as_rational", "parse_rational", "format_rational", "rational_vector"]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer string. Decimal notation is rejected."""
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ValueError(f"not an exact rational: {text!r} (use 'p/q' or an integer)")
    num, den = match.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def as_rational(value, allow_decimal: bool = False) -> Fraction:
    """Coerce ``value`` to a :class:`Fraction` without any rounding.

    Integers, Fractions and ``"p/q"`` strings are always accepted. Floats and
    decimal strings are accepted only with ``allow_decimal=True``, in which
    case the shortest decimal representation is read exactly (``0.1 -> 1/10``).
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not payoffs")
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        try:
            return parse_rational(value)
        except ValueError:
            if allow_decimal:
                return Fraction(value.strip())
            raise
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, numbers.Real):
        if not allow_decimal:
            raise TypeError(f"floating-point value {value!r} is not exact; pass 'p/q'")
        return Fraction(repr(float(value)))
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def rational_vector(values) -> tuple[Fraction, ...]:
    return tuple(as_rational(v) for v in values)
