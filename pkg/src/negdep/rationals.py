"""Exact rational parsing and formatting.

All quantities in the library are `fractions.Fraction`.  Floats are refused
everywhere: accepting them would silently trade exact verdicts for rounding
noise.  The wire format is a lowest-terms ``"p/q"`` string with an explicit
denominator (``"3/1"``, ``"-2/5"``, ``"0/1"``).
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError

__all__ = ["as_fraction", "parse_rational", "format_rational"]

_RATIONAL_RE = re.compile(r"^-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?$")


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``p/q`` strings to Fraction; refuse floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise ParseError(f"not an exact rational: {value!r} (floats are refused)")


def parse_rational(text: str) -> Fraction:
    """Parse a ``p/q`` (or bare integer) string into a Fraction."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise ParseError(f"malformed rational: {text!r}")
    return Fraction(text.strip())


def format_rational(value) -> str:
    """Render a rational in canonical lowest-terms ``p/q`` form."""
    frac = as_fraction(value)
    return f"{frac.numerator}/{frac.denominator}"
