"""The shin function family and its integer step-function selector.

The family member with slot ``m`` at argument ``x`` is

    (1 + 1/(3x - m)) ** (2x + 1),        defined for 3x - m > 0.

The selector ``omega`` picks, for each x > 0, the least slot whose member
value reaches 2; the member at the selected slot stays just above the
horizontal line of height 2 while the member one slot below stays just
under it.  Two independent routes to the selector are provided:

* :func:`omega` — the closed ceiling form ``ceil(3x - 1/(2**(1/(2x+1)) - 1))``,
  evaluated with a guarded (certified) ceiling;
* :func:`omega_oracle` — a direct scan of slots against the threshold 2,
  which never looks at the ceiling expression and therefore serves as the
  cross-check oracle.

All integer decisions are certified: an enclosure that cannot separate the
value from the decision boundary escalates precision instead of rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import CapExceededError, DomainError
from .numerics import (
    Ordering,
    Real,
    certified_compare,
    const_log2,
    evaluate,
    guarded_ceil,
    guarded_floor,
)
from .precision import Precision

__all__ = [
    "FamilyMember",
    "ShinSample",
    "DerivativeBundle",
    "SHIN_EXACT_CAP",
    "omega",
    "omega_oracle",
    "omega_oracle_scan",
    "shin_member",
    "shin",
    "shin_exact",
    "shin_seq",
    "derivatives",
]

SHIN_EXACT_CAP = 2000

ExactReal = Union[int, Fraction]
AnyReal = Union[int, Fraction, Real]


def _validate_positive(x: AnyReal, what: str) -> None:
    if isinstance(x, (int, Fraction)):
        if x <= 0:
            raise DomainError(f"{what} requires a positive argument, got {x}")
    elif isinstance(x, Real):
        if x.lo_fraction <= 0:
            raise DomainError(f"{what} requires an argument certified positive, got {x!r}")
    else:
        raise TypeError(f"unsupported argument type {type(x).__name__}")


@dataclass(frozen=True)
class FamilyMember:
    """One member of the family: argument ``x`` and slot ``m``.

    The slot is the amount subtracted from ``3x`` in the base's denominator;
    slots 0, 1, 2 are the three members drawn in the classical picture, and
    negative slots (the member *below* the selected one for small x) are
    permitted: the defining expression is evaluated as written whenever
    3x - m > 0.
    """

    x: AnyReal
    m: int

    def __post_init__(self) -> None:
        if isinstance(self.x, (int, Fraction)):
            if 3 * Fraction(self.x) - self.m <= 0:
                raise DomainError(
                    f"member undefined: 3*{self.x} - {self.m} <= 0 (vertical asymptote at x = m/3)"
                )
        elif isinstance(self.x, Real):
            if 3 * self.x.lo_fraction - self.m <= 0:
                raise DomainError("member argument not certified right of the pole x = m/3")
        else:
            raise TypeError(f"unsupported argument type {type(self.x).__name__}")


@dataclass(frozen=True)
class ShinSample:
    """Value of the selected member at one argument."""

    k: AnyReal
    omega: int
    value: Real
    exact: Optional[Fraction] = None


@dataclass(frozen=True)
class DerivativeBundle:
    """First derivative and second logarithmic derivative in the argument."""

    d1: Real
    d2log: Real


def _ceiling_argument(x: AnyReal) -> Real:
    """3x - 1/(2**(1/(2x+1)) - 1), built at the current working precision."""
    xr = Real.coerce(x)
    exponent = 1 / (2 * xr + 1)
    power = (exponent * const_log2()).exp()
    return 3 * xr - 1 / (power - 1)


def omega(x: AnyReal, p: Precision | int | None = None) -> int:
    """Selector via the ceiling form, certified by a guarded ceiling."""
    _validate_positive(x, "omega")
    return guarded_ceil(lambda _p: _ceiling_argument(x), p)


def _member_builder(x: AnyReal, m: int):
    def build() -> Real:
        xr = Real.coerce(x)
        den = 3 * xr - m
        if den.lo_fraction <= 0:
            raise DomainError(f"member at slot {m} evaluated at/left of its pole")
        ratio = 1 + 1 / den
        return ((2 * xr + 1) * ratio.log()).exp()

    return build


def _member_reaches_2(x: AnyReal, m: int, p: Precision) -> bool:
    order = certified_compare(_member_builder(x, m), 2, p)
    return order in (Ordering.GREATER, Ordering.EQUAL)


def omega_oracle(x: AnyReal, p: Precision | int | None = None, start_at: int = 0) -> int:
    """Selector by definition: the least slot m with member value >= 2.

    Scans slots with certified comparisons against 2 and never consults the
    ceiling expression.  ``start_at`` is a search hint (the result for a
    nearby argument); minimality is re-established by walking down, so a
    bad hint costs time, not correctness.
    """
    _validate_positive(x, "omega_oracle")
    p = Precision.of(p)
    m = max(0, start_at)
    while not _member_reaches_2(x, m, p):
        m += 1
    while m > 0 and _member_reaches_2(x, m - 1, p):
        m -= 1
    return m


def omega_oracle_scan(k_max: int, p: Precision | int | None = None) -> list[int]:
    """Oracle selector for every integer 1..k_max (index i holds k = i+1).

    Consecutive integers give equal or adjacent slots, so seeding each scan
    with the previous result makes the sweep linear-time.
    """
    p = Precision.of(p)
    out: list[int] = []
    prev = 0
    for k in range(1, k_max + 1):
        prev = omega_oracle(k, p, start_at=prev)
        out.append(prev)
    return out


def shin_member(fm: FamilyMember, p: Precision | int | None = None) -> Real:
    """Value of one family member, error bound <= 10**(2-digits) relative."""
    return evaluate(_member_builder(fm.x, fm.m), p)


def shin(x: AnyReal, p: Precision | int | None = None) -> ShinSample:
    """The shin function: the member at the selected slot.

    The sample's value is certified above 2 (the defining property of the
    selection); integer arguments up to 200 also carry the exact rational.
    """
    p = Precision.of(p)
    m = omega(x, p)
    value = shin_member(FamilyMember(x, m), p)
    if certified_compare(_member_builder(x, m), 2, p) is not Ordering.GREATER:
        raise AssertionError(f"selected member at x={x} not certified above 2")
    exact = None
    if isinstance(x, int) and x <= 200:
        exact = _exact_member(x, m)
    return ShinSample(k=x, omega=m, value=value, exact=exact)


def _exact_member(k: int, m: int) -> Fraction:
    base = Fraction(3 * k - m + 1, 3 * k - m)
    return base ** (2 * k + 1)


def shin_exact(k: int, p: Precision | int | None = None) -> Fraction:
    """Exact rational value of the shin function at an integer argument.

    Capped (numerator bit size grows like (2k+1)*log2(3k)); the selector
    still comes from the guarded ceiling, so the only approximation anywhere
    is none at all.
    """
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"shin_exact needs an integer k >= 1, got {k!r}")
    if k > SHIN_EXACT_CAP:
        raise CapExceededError(f"shin_exact capped at k <= {SHIN_EXACT_CAP}, got {k}")
    return _exact_member(k, omega(k, p))


def shin_seq(n: int, p: Precision | int | None = None) -> Real:
    """Sequence form: (1 + 1/floor(1/(2**(1/(2n+1)) - 1))) ** (2n+1).

    The floor is guarded exactly like the ceiling in :func:`omega`; the two
    forms agree because floor(D) = 3n - ceil(3n - D).
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"shin_seq needs an integer n >= 1, got {n!r}")

    def d_builder(_p: Precision) -> Real:
        xr = Real.coerce(n)
        power = ((1 / (2 * xr + 1)) * const_log2()).exp()
        return 1 / (power - 1)

    floor_d = guarded_floor(d_builder, p)
    return evaluate(_member_builder(n, 3 * n - floor_d), p)


def derivatives(fm: FamilyMember, p: Precision | int | None = None) -> DerivativeBundle:
    """Closed-form first derivative and second log-derivative of a member.

    d/dx  member = member * [2 log(1 + 1/(3x-m)) - 3(2x+1)/((3x-m)(3x-m+1))]
    d2/dx2 log member = (12(3xm - m^2) + 6(6x - m) + 9) / ((3x-m)^2 (3x-m+1)^2)
    """
    p = Precision.of(p)
    x, m = fm.x, fm.m

    def d1_build() -> Real:
        xr = Real.coerce(x)
        den = 3 * xr - m
        if den.lo_fraction <= 0:
            raise DomainError("derivative evaluated at/left of the pole")
        ratio = 1 + 1 / den
        member = ((2 * xr + 1) * ratio.log()).exp()
        bracket = 2 * ratio.log() - 3 * (2 * xr + 1) / (den * (den + 1))
        return member * bracket

    def d2log_build() -> Real:
        if isinstance(x, (int, Fraction)):
            q = Fraction(x)
            den = (3 * q - m) ** 2 * (3 * q - m + 1) ** 2
            num = 12 * (3 * q * m - m * m) + 6 * (6 * q - m) + 9
            return Real.from_exact(Fraction(num, 1) / den)
        xr = Real.coerce(x)
        den = 3 * xr - m
        num = 12 * (3 * xr * m - m * m) + 6 * (6 * xr - m) + 9
        return num / (den * den * (den + 1) * (den + 1))

    return DerivativeBundle(d1=evaluate(d1_build, p), d2log=evaluate(d2log_build, p))
