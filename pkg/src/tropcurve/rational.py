"""Exact rational parsing and formatting.

All lengths, offsets and values in this package are `fractions.Fraction`
instances; floats never enter the core. These helpers fix the on-disk
format: `"p/q"` for non-integers, a plain integer string otherwise.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidInputError


def parse_rational(text) -> Fraction:
    """Parse an exact rational from `"p/q"`, `"n"`, or an int."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise InvalidInputError(f"refusing float {text!r}; use 'p/q' strings")
    s = str(text).strip()
    try:
        if "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"bad rational {text!r}") from exc


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rational_to_decimal(x: Fraction, digits: int = 12) -> str:
    """Display-only decimal rendering (for plot files)."""
    return f"{float(x):.{digits}g}"
