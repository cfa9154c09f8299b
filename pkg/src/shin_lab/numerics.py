"""Error-bounded real and complex arithmetic with certified decisions.

The scalar type here is :class:`Real`: a value together with an absolute
error bound, stored internally as a closed interval that is guaranteed to
contain the true result (outward rounding at every step, via mpmath's
interval context).  Two properties follow and everything else leans on them:

* soundness is independent of working precision — raising precision only
  narrows enclosures, it can never exclude the true value;
* a comparison or rounding decision taken from a one-sided interval is a
  certificate, not a heuristic.

Decisions that need certainty (ordering against a threshold, integer
ceiling/floor) are therefore implemented as escalation loops: evaluate,
check whether the enclosure decides the question, and if not re-evaluate
with doubled working digits up to a cap.  A cap hit is reported
(:class:`TieUnresolvedError` / :class:`PrecisionEscalationError`), never
silently rounded.

Thread-safety note: mpmath keeps one global precision per context.  All
entry points set it through :func:`working_digits`, which saves/restores.
A concurrent precision race can only change *how much* outward rounding
happens, never its direction, so enclosures stay sound; the escalation
loops re-check widths and recover from any widening.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from enum import Enum
from fractions import Fraction
from typing import Callable, Union

from mpmath import iv, mp

from .errors import (
    DomainError,
    PrecisionEscalationError,
    TieUnresolvedError,
    UndecidableComparisonError,
)
from .precision import Precision

__all__ = [
    "Real",
    "Complex",
    "Ordering",
    "working_digits",
    "current_digits",
    "evaluate",
    "certify_sign",
    "compare_threshold",
    "certified_compare",
    "guarded_ceil",
    "guarded_floor",
    "eval_pow",
    "const_log2",
    "const_pi",
    "const_e",
]

ExactScalar = Union[int, Fraction]
Scalar = Union[int, Fraction, "Real"]

_LOG2_10 = math.log2(10)
_GUARD_BITS = 24


def _bits_for(digits: int) -> int:
    return int(digits * _LOG2_10) + _GUARD_BITS


@contextmanager
def working_digits(digits: int):
    """Set the interval context's working precision for a block."""
    saved_iv, saved_mp = iv.prec, mp.prec
    bits = _bits_for(digits)
    iv.prec = bits
    mp.prec = bits
    try:
        yield
    finally:
        iv.prec, mp.prec = saved_iv, saved_mp


def current_digits() -> int:
    """Decimal working digits implied by the active interval precision."""
    return max(10, int((iv.prec - _GUARD_BITS) / _LOG2_10))


def _mpf_fraction(raw) -> Fraction:
    """Exact rational value of a finite libmp mpf tuple."""
    sign, man, exp, _ = raw
    if man == 0:
        if exp != 0:
            raise OverflowError("non-finite interval endpoint")
        return Fraction(0)
    value = Fraction(int(man)) * (Fraction(2) ** exp)
    return -value if sign else value


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class Real:
    """A real number known to lie inside a closed interval.

    ``value`` is the midpoint, ``err`` the half-width; the invariant is that
    the true quantity lies in ``[value - err, value + err]``.  Arithmetic is
    performed at the precision currently installed by :func:`working_digits`.
    """

    __slots__ = ("_iv",)

    def __init__(self, interval) -> None:
        self._iv = interval

    # -- construction -------------------------------------------------

    @staticmethod
    def from_exact(value: ExactScalar) -> "Real":
        if isinstance(value, int):
            return Real(iv.mpf(value))
        if isinstance(value, Fraction):
            if value.denominator == 1:
                return Real(iv.mpf(value.numerator))
            return Real(iv.mpf(value.numerator) / iv.mpf(value.denominator))
        raise TypeError(f"expected int or Fraction, got {type(value).__name__}")

    @staticmethod
    def from_decimal(text: str) -> "Real":
        return Real.from_exact(Fraction(text))

    @staticmethod
    def coerce(value: Scalar) -> "Real":
        return value if isinstance(value, Real) else Real.from_exact(value)

    # -- views ----------------------------------------------------------

    @property
    def lo_fraction(self) -> Fraction:
        return _mpf_fraction(self._iv._mpi_[0])

    @property
    def hi_fraction(self) -> Fraction:
        return _mpf_fraction(self._iv._mpi_[1])

    def _own_bits(self) -> int:
        raw_lo, raw_hi = self._iv._mpi_
        return max(raw_lo[3], raw_hi[3], 53) + 10

    @property
    def value(self):
        """Midpoint as an mpf carrying the enclosure's own precision."""
        with mp.workprec(self._own_bits()):
            return (mp.make_mpf(self._iv._mpi_[0]) + mp.make_mpf(self._iv._mpi_[1])) / 2

    @property
    def err_fraction(self) -> Fraction:
        return (self.hi_fraction - self.lo_fraction) / 2

    @property
    def err(self):
        with mp.workprec(self._own_bits()):
            return mp.make_mpf(self._iv._mpi_[1]) - self.value

    @property
    def mid_fraction(self) -> Fraction:
        return (self.lo_fraction + self.hi_fraction) / 2

    def is_exact(self) -> bool:
        return self._iv._mpi_[0] == self._iv._mpi_[1]

    def contains(self, q: ExactScalar) -> bool:
        return self.lo_fraction <= Fraction(q) <= self.hi_fraction

    def encloses(self, other: "Real") -> bool:
        return self.lo_fraction <= other.lo_fraction and other.hi_fraction <= self.hi_fraction

    def magnitude_bound(self) -> Fraction:
        return max(abs(self.lo_fraction), abs(self.hi_fraction))

    def meets(self, rel_tol: Fraction | None, abs_tol: Fraction | None = None) -> bool:
        """Does the enclosure satisfy the requested error bound?"""
        width = self.err_fraction
        if rel_tol is not None and width <= rel_tol * self.magnitude_bound():
            return True
        if abs_tol is not None and width <= abs_tol:
            return True
        return False

    def __repr__(self) -> str:
        return f"Real({mp.nstr(self.value, 12)} ± {mp.nstr(self.err, 3)})"

    # -- arithmetic -----------------------------------------------------

    @staticmethod
    def _operand(other):
        if isinstance(other, Real):
            return other._iv
        if isinstance(other, int):
            return iv.mpf(other)
        if isinstance(other, Fraction):
            return Real.from_exact(other)._iv
        return NotImplemented

    def __add__(self, other):
        rhs = Real._operand(other)
        return NotImplemented if rhs is NotImplemented else Real(self._iv + rhs)

    __radd__ = __add__

    def __sub__(self, other):
        rhs = Real._operand(other)
        return NotImplemented if rhs is NotImplemented else Real(self._iv - rhs)

    def __rsub__(self, other):
        lhs = Real._operand(other)
        return NotImplemented if lhs is NotImplemented else Real(lhs - self._iv)

    def __mul__(self, other):
        rhs = Real._operand(other)
        return NotImplemented if rhs is NotImplemented else Real(self._iv * rhs)

    __rmul__ = __mul__

    def __truediv__(self, other):
        rhs = Real._operand(other)
        return NotImplemented if rhs is NotImplemented else Real(self._iv / rhs)

    def __rtruediv__(self, other):
        lhs = Real._operand(other)
        return NotImplemented if lhs is NotImplemented else Real(lhs / self._iv)

    def __neg__(self):
        return Real(-self._iv)

    def __pos__(self):
        return self

    def __abs__(self):
        lo, hi = self.lo_fraction, self.hi_fraction
        if lo >= 0:
            return self
        if hi <= 0:
            return -self
        # Straddles 0: hull is [0, max(-lo, hi)], endpoints kept exact.
        neg_hi = (-self)._iv._mpi_[1]
        top_raw = neg_hi if -lo >= hi else self._iv._mpi_[1]
        return Real(iv.mpf((mp.mpf(0), mp.make_mpf(top_raw))))

    def __pow__(self, other):
        if isinstance(other, int):
            return Real(self._iv ** other)
        rhs = Real.coerce(other) if isinstance(other, (Fraction, Real)) else None
        if rhs is None:
            return NotImplemented
        return (rhs * self.log()).exp()

    # -- elementary functions --------------------------------------------

    def exp(self) -> "Real":
        return Real(iv.exp(self._iv))

    def log(self) -> "Real":
        if self.lo_fraction <= 0:
            raise DomainError(f"log of interval not certified positive: {self!r}")
        return Real(iv.log(self._iv))

    def sqrt(self) -> "Real":
        if self.lo_fraction < 0:
            raise DomainError(f"sqrt of interval not certified nonnegative: {self!r}")
        return Real(iv.sqrt(self._iv))

    def sin(self) -> "Real":
        return Real(iv.sin(self._iv))

    def cos(self) -> "Real":
        return Real(iv.cos(self._iv))


def const_log2() -> Real:
    return Real(iv.log(iv.mpf(2)))


def const_pi() -> Real:
    return Real(+iv.pi)


def const_e() -> Real:
    return Real(iv.exp(iv.mpf(1)))


# ---------------------------------------------------------------------------
# Escalation loops
# ---------------------------------------------------------------------------

_DEFAULT_MAX_FACTOR = 16


def _escalation_digits(p: Precision, max_factor: int):
    digits = p.digits
    cap = p.digits * max_factor
    while True:
        yield digits, digits >= cap
        digits = min(digits * 2, cap)


def evaluate(
    build: Callable[[], Real],
    p: Precision | int | None = None,
    *,
    rel_tol: Fraction | None = None,
    abs_tol: Fraction | None = None,
    max_factor: int = _DEFAULT_MAX_FACTOR,
) -> Real:
    """Run *build* at escalating working precision until its enclosure meets
    the requested tolerance (relative by default: ``10**(2-digits)``)."""
    p = Precision.of(p)
    if rel_tol is None and abs_tol is None:
        rel_tol = p.rel_tolerance
    for digits, at_cap in _escalation_digits(p, max_factor):
        with working_digits(digits):
            x = build()
        if x.meets(rel_tol, abs_tol):
            return x
        if at_cap:
            raise PrecisionEscalationError(
                f"no enclosure meeting tolerance at {digits} digits (width {x.err_fraction:.3e})"
            )


def certify_sign(
    build: Callable[[], Real | ExactScalar],
    p: Precision | int | None = None,
    max_factor: int = _DEFAULT_MAX_FACTOR,
) -> Ordering:
    """Certified sign of the quantity produced by *build* (vs exact zero)."""
    p = Precision.of(p)
    for digits, at_cap in _escalation_digits(p, max_factor):
        with working_digits(digits):
            x = build()
        if isinstance(x, (int, Fraction)):
            q = Fraction(x)
            return Ordering.EQUAL if q == 0 else (Ordering.GREATER if q > 0 else Ordering.LESS)
        if x.lo_fraction > 0:
            return Ordering.GREATER
        if x.hi_fraction < 0:
            return Ordering.LESS
        if x.is_exact() and x.lo_fraction == 0:
            return Ordering.EQUAL
        if at_cap:
            raise UndecidableComparisonError(
                f"sign undecided at {digits} digits: interval [{x.lo_fraction}, {x.hi_fraction}]"
            )


def compare_threshold(x: Real | ExactScalar, threshold: ExactScalar) -> Ordering:
    """Certified ordering of *x* against an exact threshold.

    LESS/GREATER only when the whole error interval is on one side of the
    threshold; EQUAL only from an exact representation.  An interval that
    straddles the threshold raises :class:`UndecidableComparisonError` — the
    caller's cue to escalate precision.
    """
    t = Fraction(threshold)
    if isinstance(x, (int, Fraction)):
        q = Fraction(x)
        return Ordering.EQUAL if q == t else (Ordering.GREATER if q > t else Ordering.LESS)
    lo, hi = x.lo_fraction, x.hi_fraction
    if lo > t:
        return Ordering.GREATER
    if hi < t:
        return Ordering.LESS
    if lo == hi == t:
        return Ordering.EQUAL
    raise UndecidableComparisonError(
        f"interval [{lo}, {hi}] straddles threshold {t}; escalate precision"
    )


def certified_compare(
    build: Callable[[], Real | ExactScalar],
    threshold: ExactScalar,
    p: Precision | int | None = None,
    max_factor: int = _DEFAULT_MAX_FACTOR,
) -> Ordering:
    """Escalating version of :func:`compare_threshold` over a re-evaluable
    expression.  Raises :class:`UndecidableComparisonError` only at the cap."""
    p = Precision.of(p)
    for digits, at_cap in _escalation_digits(p, max_factor):
        with working_digits(digits):
            x = build()
        try:
            return compare_threshold(x, threshold)
        except UndecidableComparisonError:
            if at_cap:
                raise


EvaluatorResult = Union[Real, int, Fraction]


def _guarded_round(
    f: Callable[[Precision], EvaluatorResult],
    p0: Precision | int | None,
    max_factor: int,
    rounder: Callable[[Fraction], int],
    name: str,
) -> int:
    p0 = Precision.of(p0)
    for digits, at_cap in _escalation_digits(p0, max_factor):
        with working_digits(digits):
            x = f(Precision(digits))
        if isinstance(x, (int, Fraction)):
            # Provably rational input: exactness test instead of enclosures.
            return rounder(Fraction(x))
        lo, hi = rounder(x.lo_fraction), rounder(x.hi_fraction)
        if lo == hi:
            return lo
        if at_cap:
            raise TieUnresolvedError(
                f"{name} undecided at {digits} digits: interval "
                f"[{float(x.lo_fraction)}, {float(x.hi_fraction)}] spans an integer"
            )


def guarded_ceil(
    f: Callable[[Precision], EvaluatorResult],
    p0: Precision | int | None = None,
    max_factor: int = _DEFAULT_MAX_FACTOR,
) -> int:
    """Ceiling of the true value of an error-bounded evaluator.

    Escalates (doubling digits, cap ``max_factor`` times the request) until
    the enclosure contains no ceiling ambiguity; exact inputs short-circuit
    to exact integer arithmetic.
    """
    return _guarded_round(f, p0, max_factor, lambda q: math.ceil(q), "ceiling")


def guarded_floor(
    f: Callable[[Precision], EvaluatorResult],
    p0: Precision | int | None = None,
    max_factor: int = _DEFAULT_MAX_FACTOR,
) -> int:
    """Floor counterpart of :func:`guarded_ceil`."""
    return _guarded_round(f, p0, max_factor, lambda q: math.floor(q), "floor")


def eval_pow(base: Scalar, exponent: Scalar, p: Precision | int | None = None) -> Real:
    """``base ** exponent`` for positive base, as exp(exponent * log base)."""
    p = Precision.of(p)
    if isinstance(base, (int, Fraction)) and Fraction(base) <= 0:
        raise DomainError(f"eval_pow requires a positive base, got {base}")

    def build() -> Real:
        b = Real.coerce(base)
        if b.lo_fraction <= 0:
            raise DomainError(f"base not certified positive: {b!r}")
        e = Real.coerce(exponent)
        return (e * b.log()).exp()

    return evaluate(build, p)


# ---------------------------------------------------------------------------
# Complex values: pairs of Reals with independently propagated bounds
# ---------------------------------------------------------------------------


class Complex:
    """Rectangular complex value; each component is an error-bounded Real."""

    __slots__ = ("re", "im")

    def __init__(self, re: Scalar, im: Scalar = 0) -> None:
        self.re = Real.coerce(re)
        self.im = Real.coerce(im)

    @staticmethod
    def coerce(value) -> "Complex":
        if isinstance(value, Complex):
            return value
        if isinstance(value, complex):
            if value.real != int(value.real) or value.imag != int(value.imag):
                raise TypeError("float-valued complex literals are not exact; build from Fractions")
            return Complex(int(value.real), int(value.imag))
        return Complex(Real.coerce(value))

    def conj(self) -> "Complex":
        return Complex(self.re, -self.im)

    def is_exact_real(self) -> bool:
        return self.im.is_exact() and self.im.lo_fraction == 0

    def __add__(self, other):
        o = Complex.coerce(other)
        return Complex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = Complex.coerce(other)
        return Complex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return Complex.coerce(other) - self

    def __mul__(self, other):
        o = Complex.coerce(other)
        return Complex(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Complex.coerce(other)
        den = o.re * o.re + o.im * o.im
        if den.lo_fraction <= 0:
            raise DomainError("complex division by an interval that may contain 0")
        return Complex(
            (self.re * o.re + self.im * o.im) / den,
            (self.im * o.re - self.re * o.im) / den,
        )

    def __rtruediv__(self, other):
        return Complex.coerce(other) / self

    def __neg__(self):
        return Complex(-self.re, -self.im)

    def abs2(self) -> Real:
        return self.re * self.re + self.im * self.im

    def cexp(self) -> "Complex":
        scale = self.re.exp()
        return Complex(scale * self.im.cos(), scale * self.im.sin())

    def clog(self) -> "Complex":
        """Principal-branch logarithm.

        Requires the argument to be certifiably off the branch cut
        (negative real axis including 0): an imaginary interval containing 0
        together with a non-positive real part is rejected.
        """
        re_lo, re_hi = self.re.lo_fraction, self.re.hi_fraction
        im_lo, im_hi = self.im.lo_fraction, self.im.hi_fraction
        straddles_zero = im_lo <= 0 <= im_hi
        if straddles_zero and not (im_lo == im_hi == 0):
            if re_lo <= 0:
                raise UndecidableComparisonError(
                    "complex log argument straddles the branch cut; escalate precision"
                )
        if im_lo == im_hi == 0:
            if re_lo <= 0:
                raise DomainError("complex log on the non-positive real axis")
            return Complex(self.re.log(), Real.from_exact(0))
        magnitude = self.abs2()
        if magnitude.lo_fraction <= 0:
            raise UndecidableComparisonError("complex log near 0; escalate precision")
        half = Real.from_exact(Fraction(1, 2))
        return Complex(magnitude.log() * half, Real(iv.atan2(self.im._iv, self.re._iv)))

    def cpow(self, exponent: "Complex | Scalar") -> "Complex":
        w = Complex.coerce(exponent)
        return (w * self.clog()).cexp()

    def __repr__(self) -> str:
        return f"Complex({self.re!r}, {self.im!r})"
