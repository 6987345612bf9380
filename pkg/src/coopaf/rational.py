"""Exact rational helpers built on :class:`fractions.Fraction`.

Floats are refused everywhere: a float has already lost exactness by the
time it reaches us.
"""
import re
from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or an integer string (or an int) into a Fraction."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r} (floats are not accepted)")
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ValueError(f"not a rational: {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and rational strings; reject floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError(f"floating-point value {value!r} is not accepted")
    if isinstance(value, _RationalABC) and not isinstance(value, bool):
        return Fraction(value)
    return parse_rational(value)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_vector(text: str) -> tuple:
    """``"1/12,1/12,5/6"`` -> tuple of Fractions."""
    parts = [p for p in text.split(",")]
    if not text.strip() or any(not p.strip() for p in parts):
        raise ValueError(f"malformed rational vector: {text!r}")
    return tuple(parse_rational(p) for p in parts)


def format_vector(xs) -> str:
    return ",".join(format_rational(x) for x in xs)
