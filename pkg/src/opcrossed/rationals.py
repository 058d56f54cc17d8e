"""Exact scalars and their "p/q" wire format.

Scalars are fractions.Fraction throughout the package; this module only
adds the serialization conventions every file format shares.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import InputError

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_scalar(text: str) -> Fraction:
    """Parse "p/q" or "p" (optional leading minus) into a Fraction."""
    if not isinstance(text, str):
        raise InputError(f"scalar must be a string, got {type(text).__name__}")
    s = text.strip()
    if not s:
        raise InputError("empty scalar")
    num, slash, den = s.partition("/")
    try:
        p = int(num)
    except ValueError:
        raise InputError(f"bad scalar numerator in {text!r}") from None
    if not slash:
        return Fraction(p)
    try:
        q = int(den)
    except ValueError:
        raise InputError(f"bad scalar denominator in {text!r}") from None
    if q <= 0:
        raise InputError(f"denominator must be positive in {text!r}")
    return Fraction(p, q)


def format_scalar(x: Fraction) -> str:
    """Render a Fraction as "p/q", or "p" when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
