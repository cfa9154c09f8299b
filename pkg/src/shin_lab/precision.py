"""Precision requests and decimal string conversion.

A :class:`Precision` is a request: "give me a result whose error bound is at
most ``10**(2 - digits)`` relative to its magnitude".  Internal working
precision (binary) is chosen from it and escalated on demand; the request is
what callers reason about.

The decimal formatter is the single authority for turning values into strings
(CLI payloads, golden-file tests): round-to-nearest, ties-to-even, explicit
significant-digit count, never binary floats.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Precision",
    "DEFAULT_DIGITS",
    "format_decimal",
    "parse_decimal",
]

DEFAULT_DIGITS = 50

# Extra binary guard bits on top of the decimal request; keeps single-shot
# evaluations inside tolerance for all but pathologically cancelling cases,
# which the escalation loop then catches.
_GUARD_BITS = 24
_LOG2_10 = math.log2(10)


@dataclass(frozen=True)
class Precision:
    """Requested number of significant decimal digits (at least 10)."""

    digits: int = DEFAULT_DIGITS

    def __post_init__(self) -> None:
        if not isinstance(self.digits, int) or self.digits < 10:
            raise ValueError(f"precision must be an integer >= 10 digits, got {self.digits!r}")

    @property
    def rel_tolerance(self) -> Fraction:
        """The promised error bound relative to magnitude: 10**(2-digits)."""
        return Fraction(1, 10 ** (self.digits - 2))

    @property
    def bits(self) -> int:
        return int(self.digits * _LOG2_10) + _GUARD_BITS

    def scaled(self, factor: int) -> "Precision":
        return Precision(self.digits * factor)

    @staticmethod
    def of(value: "Precision | int | None") -> "Precision":
        """Coerce an int digit count (or None for the default) to a Precision."""
        if value is None:
            return Precision()
        if isinstance(value, Precision):
            return value
        return Precision(int(value))


def _to_fraction(value) -> Fraction:
    """Exact rational view of ints, Fractions and dyadic mpf values."""
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    mpf_tuple = getattr(value, "_mpf_", None)
    if mpf_tuple is not None:
        sign, man, exp, _ = mpf_tuple
        if man == 0:
            if exp != 0:  # inf/nan encode with man == 0, exp != 0
                raise ValueError(f"cannot convert non-finite value {value!r}")
            return Fraction(0)
        frac = Fraction(man) * (Fraction(2) ** exp)
        return -frac if sign else frac
    raise TypeError(f"cannot take exact fraction of {type(value).__name__}")


def format_decimal(value, digits: int) -> str:
    """Render *value* with exactly `digits` significant digits.

    Round-to-nearest, ties-to-even.  Accepts int, Fraction, and mpf-like
    (anything with an ``_mpf_`` tuple).  Uses fixed-point notation for
    moderate magnitudes and scientific notation outside [1e-6, 1e18).
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    q = _to_fraction(value)
    if q == 0:
        return "0"
    ctx = decimal.Context(prec=digits, rounding=decimal.ROUND_HALF_EVEN)
    # int() guards against gmpy2.mpz components, which Decimal refuses.
    d = ctx.divide(decimal.Decimal(int(q.numerator)), decimal.Decimal(int(q.denominator)))
    exponent = d.adjusted()
    if -6 <= exponent < 18:
        # Pad/trim to the full significant-digit count in fixed notation.
        quantum = decimal.Decimal(1).scaleb(exponent - digits + 1)
        fixed = d.quantize(quantum, context=decimal.Context(prec=digits + 2, rounding=decimal.ROUND_HALF_EVEN))
        return format(fixed, "f")
    return format(ctx.normalize(d), "e").replace("E", "e")


def parse_decimal(text: str) -> Fraction:
    """Exact rational value of a decimal string (no binary rounding)."""
    return Fraction(text.strip())
