"""Exact rational helpers.

Everything user-facing is a ``fractions.Fraction``.  The LP core may swap in
``gmpy2.mpq`` for speed; both types are exact and interchangeable through
``numerator``/``denominator``, so results never depend on the backend.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import InvalidInputError

try:
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover - environment without gmpy2
    _mpq = None

# Strict "p/q" or integer literal; no floats, no whitespace.
_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def fast_rational_type():
    """Return (constructor, name) for the fastest exact rational available."""
    if _mpq is not None:
        return _mpq, "gmpy2.mpq"
    return Fraction, "fractions.Fraction"


def as_fraction(value) -> Fraction:
    """Coerce int / str / Fraction / mpq to Fraction.  Floats are rejected:
    a binary float silently misrepresents most decimal inputs."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidInputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise InvalidInputError(
            f"float {value!r} rejected; pass an int, Fraction or 'p/q' string"
        )
    if isinstance(value, str):
        return parse_rational(value)
    num = getattr(value, "numerator", None)
    den = getattr(value, "denominator", None)
    if isinstance(num, int) and isinstance(den, int):
        return Fraction(num, den)
    raise InvalidInputError(f"not a rational: {value!r}")


def parse_rational(text: str) -> Fraction:
    """Parse a canonical rational literal: '3', '-2/7', '0/1'."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise InvalidInputError(f"malformed rational literal: {text!r}")
    return Fraction(text)


def format_rational(value) -> str:
    """Canonical 'p/q' form, lowest terms, explicit positive denominator."""
    f = as_fraction(value)
    return f"{f.numerator}/{f.denominator}"
