"""Gamma and digamma with certified error bounds, and the product/series
identities that tie the family's asymptotic base log2/2 to them.

The kernel is one argument-shift + asymptotic-series routine used by both
functions.  For real y large enough,

    log Gamma(y) = (y - 1/2) log y - y + log(2 pi)/2
                   + sum_j B_{2j} / (2j (2j-1) y^{2j-1}) + R,
    psi(y)       = log y - 1/(2y) - sum_j B_{2j} / (2j y^{2j}) + R',

where each remainder is bounded in magnitude by the first omitted term
(the series envelop their limits on the positive real axis).  Arguments
below the series threshold are shifted up with the recurrences
Gamma(x+1) = x Gamma(x), psi(x+1) = psi(x) + 1/x.  The omitted-term bound
is added to the enclosure, so the certified-interval contract survives the
asymptotics.

Identity checks (products against gamma ratios, partial sums against
digamma differences, the alternating unit-argument series against its
gamma closed form) are reported with explicit residuals and tolerances;
the alternating series gets a two-sided tail bracket built from power
bounds on the gamma ratio, so a hundred-thousand-term truncation still
certifies the limit to ~1e-8.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from mpmath import bernfrac, iv, mp

from .errors import DomainError
from .numerics import (
    Real,
    const_log2,
    const_pi,
    current_digits,
    evaluate,
    working_digits,
)
from .precision import Precision, format_decimal
from .quadrature import QuadratureSpec, tanh_sinh

__all__ = [
    "IdentityReport",
    "VanishingProductRecord",
    "gamma",
    "loggamma",
    "digamma",
    "product_identity",
    "partial_sum_identity",
    "vanishing_product",
    "gauss_unit_value",
    "reflection_check",
]

AnyReal = Union[int, Fraction, Real]

_bernoulli_cache: dict[int, Fraction] = {}


def _bernoulli(n: int) -> Fraction:
    cached = _bernoulli_cache.get(n)
    if cached is None:
        p, q = bernfrac(n)
        cached = Fraction(int(p), int(q))
        _bernoulli_cache[n] = cached
    return cached


def _require_positive(x: AnyReal, what: str) -> None:
    if isinstance(x, (int, Fraction)):
        if x <= 0:
            raise DomainError(f"{what} requires x > 0, got {x}")
    elif x.lo_fraction <= 0:
        raise DomainError(f"{what} requires x certified positive, got {x!r}")


def _loggamma_series(y: Real, digits: int) -> Real:
    """Stirling series at y (assumed >= the shift threshold), remainder
    enclosed by the first omitted term."""
    log_y = y.log()
    half = Fraction(1, 2)
    acc = (y - half) * log_y - y + (2 * const_pi()).log() * half
    y2 = y * y
    power = y  # y^{2j-1}
    tol = Fraction(1, 10 ** (digits + 6)) * max(Fraction(1), acc.magnitude_bound())
    j = 1
    while True:
        term = Real.from_exact(_bernoulli(2 * j) / (2 * j * (2 * j - 1))) / power
        bound = term.magnitude_bound()
        if bound <= tol or j > 200:
            # Envelope: |R| <= |first omitted term|.
            return acc + _pm(bound)
        acc = acc + term
        power = power * y2
        j += 1


def _psi_series(y: Real, digits: int) -> Real:
    log_y = y.log()
    acc = log_y - 1 / (2 * y)
    y2 = y * y
    power = y2  # y^{2j}
    tol = Fraction(1, 10 ** (digits + 6)) * max(Fraction(1), acc.magnitude_bound())
    j = 1
    while True:
        term = Real.from_exact(_bernoulli(2 * j) / (2 * j)) / power
        bound = term.magnitude_bound()
        if bound <= tol or j > 200:
            return acc + _pm(bound)
        acc = acc - term
        power = power * y2
        j += 1


def _pm(bound: Fraction) -> Real:
    """The interval [-bound, bound] as a Real."""
    lo = Real.from_exact(-bound)
    hi = Real.from_exact(bound)
    return Real(iv.mpf((mp.make_mpf(lo._iv._mpi_[0]), mp.make_mpf(hi._iv._mpi_[1]))))


def _shift_threshold(digits: int) -> int:
    # The minimizing Stirling term at argument y is ~ e^{-2 pi y}; y beyond
    # 0.4*digits keeps it under the requested tolerance with slack.
    return max(20, (2 * digits) // 5 + 10)


def _loggamma_build(x: AnyReal) -> Real:
    digits = current_digits()
    xr = Real.coerce(x)
    if xr.lo_fraction <= 0:
        raise DomainError("loggamma requires a certified-positive argument")
    threshold = _shift_threshold(digits)
    shift = max(0, threshold - int(xr.lo_fraction))
    y = xr + shift
    result = _loggamma_series(y, digits)
    if shift:
        acc = Real.from_exact(0)
        for j in range(shift):
            acc = acc + (xr + j).log()
        result = result - acc
    return result


def _digamma_build(x: AnyReal) -> Real:
    digits = current_digits()
    xr = Real.coerce(x)
    if xr.lo_fraction <= 0:
        raise DomainError("digamma requires a certified-positive argument")
    threshold = _shift_threshold(digits)
    shift = max(0, threshold - int(xr.lo_fraction))
    y = xr + shift
    result = _psi_series(y, digits)
    if shift:
        acc = Real.from_exact(0)
        for j in range(shift):
            acc = acc + 1 / (xr + j)
        result = result - acc
    return result


def loggamma(x: AnyReal, p: Precision | int | None = None) -> Real:
    _require_positive(x, "loggamma")
    p = Precision.of(p)
    return evaluate(lambda: _loggamma_build(x), p, rel_tol=p.rel_tolerance, abs_tol=p.rel_tolerance)


def gamma(x: AnyReal, p: Precision | int | None = None) -> Real:
    """Gamma on the positive axis; exact factorial path for integer x."""
    _require_positive(x, "gamma")
    p = Precision.of(p)
    if isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1):
        n = int(x)
        if n <= 2000:
            return evaluate(lambda: Real.from_exact(math.factorial(n - 1)), p)
    return evaluate(lambda: _loggamma_build(x).exp(), p)


def digamma(x: AnyReal, p: Precision | int | None = None) -> Real:
    """psi(x) = Gamma'(x)/Gamma(x); satisfies psi(x+1) = psi(x) + 1/x."""
    _require_positive(x, "digamma")
    p = Precision.of(p)
    return evaluate(lambda: _digamma_build(x), p, rel_tol=p.rel_tolerance, abs_tol=p.rel_tolerance)


# ---------------------------------------------------------------------------
# Identity reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityReport:
    name: str
    n: int
    lhs: Real
    rhs: Real
    abs_err: Fraction
    rel_err: Fraction
    tolerance: Fraction
    passed: bool

    def to_dict(self, digits: int = 30) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "lhs": format_decimal(self.lhs.value, digits),
            "rhs": format_decimal(self.rhs.value, digits),
            "abs_err": format_decimal(self.abs_err, 3),
            "rel_err": format_decimal(self.rel_err, 3),
            "tolerance": format_decimal(self.tolerance, 3),
            "passed": self.passed,
        }


def _report(name: str, n: int, lhs: Real, rhs: Real, tolerance: Fraction) -> IdentityReport:
    diff = lhs - rhs
    abs_err = diff.magnitude_bound()
    if rhs.lo_fraction <= 0 <= rhs.hi_fraction:
        rhs_floor = Fraction(0)  # near-zero rhs: fall back to absolute error
    else:
        rhs_floor = min(abs(rhs.lo_fraction), abs(rhs.hi_fraction))
    rel_err = abs_err / rhs_floor if rhs_floor > 0 else abs_err
    passed = (rel_err <= tolerance) or (abs_err <= tolerance)
    return IdentityReport(
        name=name, n=n, lhs=lhs, rhs=rhs, abs_err=abs_err, rel_err=rel_err,
        tolerance=tolerance, passed=passed,
    )


def _gamma_ratio_rhs(n: int) -> Real:
    """Gamma(n+1+c)/(Gamma(n+1) Gamma(1+c)) for c = log2/2, at working precision."""
    c = const_log2() / 2
    return (_loggamma_build(1 + c + n) - _loggamma_build(n + 1) - _loggamma_build(1 + c)).exp()


def product_identity(n: int, p: Precision | int | None = None) -> IdentityReport:
    """prod_{k=1..n} (1 + log2/(2k)) against its gamma-ratio closed form."""
    if n < 1:
        raise DomainError(f"product_identity needs n >= 1, got {n}")
    p = Precision.of(p)
    tolerance = Fraction(1, 10 ** (p.digits - 10))

    def lhs_build() -> Real:
        c = const_log2()
        acc = Real.from_exact(1)
        for k in range(1, n + 1):
            acc = acc * (1 + c / (2 * k))
        return acc

    lhs = evaluate(lhs_build, p)
    rhs = evaluate(lambda: _gamma_ratio_rhs(n), p)
    return _report("rising-product vs gamma ratio", n, lhs, rhs, tolerance)


def partial_sum_identity(n: int, p: Precision | int | None = None) -> IdentityReport:
    """sum_{k=1..n} log2/(2k + log2) against its digamma difference."""
    if n < 1:
        raise DomainError(f"partial_sum_identity needs n >= 1, got {n}")
    p = Precision.of(p)
    tolerance = Fraction(1, 10 ** (p.digits - 10))

    def lhs_build() -> Real:
        c = const_log2()
        acc = Real.from_exact(0)
        for k in range(1, n + 1):
            acc = acc + c / (2 * k + c)
        return acc

    def rhs_build() -> Real:
        c = const_log2() / 2
        return c * (_digamma_build(1 + c + n) - _digamma_build(1 + c))

    lhs = evaluate(lhs_build, p)
    rhs = evaluate(rhs_build, p)
    return _report("partial sum vs digamma difference", n, lhs, rhs, tolerance)


@dataclass(frozen=True)
class VanishingProductRecord:
    n: int
    p_n: Real
    bound: Real
    gamma_ratio: Real
    positive: bool
    within_bound: bool
    reciprocal_of_rising: bool


def vanishing_product(n: int, p: Precision | int | None = None) -> VanishingProductRecord:
    """P_n = prod (1 - log2/(2k + log2)): positive, below exp(-sum of terms),
    and exactly reciprocal to the rising product (term-by-term)."""
    if n < 1:
        raise DomainError(f"vanishing_product needs n >= 1, got {n}")
    p = Precision.of(p)

    def product_build() -> Real:
        c = const_log2()
        prod = Real.from_exact(1)
        for k in range(1, n + 1):
            prod = prod * (1 - c / (2 * k + c))
        return prod

    def bound_build() -> Real:
        c = const_log2()
        total = Real.from_exact(0)
        for k in range(1, n + 1):
            total = total + c / (2 * k + c)
        return (-total).exp()

    p_n = evaluate(product_build, p)
    bound = evaluate(bound_build, p)
    ratio = evaluate(
        lambda: (_loggamma_build(n + 1) + _loggamma_build(1 + const_log2() / 2)
                 - _loggamma_build(1 + const_log2() / 2 + n)).exp(),
        p,
    )

    # Reciprocity: (1 - c/(2k+c)) * (1 + c/(2k)) == 1 exactly for each factor,
    # so P_n * prod(1 + c/(2k)) == 1 up to rounding.
    def recip_build() -> Real:
        c = const_log2()
        acc = Real.from_exact(1)
        for k in range(1, n + 1):
            acc = acc * (1 - c / (2 * k + c)) * (1 + c / (2 * k))
        return acc

    recip = evaluate(recip_build, p, rel_tol=Fraction(1, 10 ** (p.digits - 10)))
    recip_ok = recip.contains(1) and recip.err_fraction < Fraction(1, 10 ** (p.digits - 12))
    return VanishingProductRecord(
        n=n,
        p_n=p_n,
        bound=bound,
        gamma_ratio=ratio,
        positive=p_n.lo_fraction > 0,
        within_bound=p_n.hi_fraction <= bound.lo_fraction,
        reciprocal_of_rising=recip_ok,
    )


def gauss_unit_value(n: int, terms: int, p: Precision | int | None = None) -> IdentityReport:
    """The alternating unit-argument series against its gamma closed form.

    lhs = Gamma(1+n) Gamma(1+c) / Gamma(1+n+c), c = log2/2.  The series'
    coefficients are carried by their exact step ratio (all terms positive
    after sign absorption, so no cancellation); the truncated tail is
    bracketed by integral bounds built from the gamma-ratio power bounds,
    and the midpoint of the bracket is added to the partial sum.  The
    report passes when |lhs - rhs| is within the bracket half-width plus
    rounding.
    """
    if n < 1 or terms < 10:
        raise DomainError(f"gauss_unit_value needs n >= 1 and terms >= 10")
    p = Precision.of(p)

    def lhs_build() -> Real:
        c = const_log2() / 2
        return (_loggamma_build(n + 1) + _loggamma_build(1 + c) - _loggamma_build(1 + c + n)).exp()

    lhs = evaluate(lhs_build, p)

    with working_digits(p.digits + 6):
        c = const_log2() / 2
        partial = Real.from_exact(0)
        d = 1 * c  # d_r = c * prod_{j<=r} (j - c)/j, all positive
        for r in range(terms + 1):
            partial = partial + d / (1 + n + r)
            d = d * ((r + 1) - c) / (r + 1)

        # Tail bracket.  f(x) = C * Q(x) / (1+n+x), C = c/Gamma(1-c),
        # Q(x) = Gamma(x+1-c)/Gamma(x+1), decreasing; hence
        # int_{R+1}^inf f_lower <= sum_{r>R} f(r) <= int_R^inf f_upper.
        big_c = (c.log() - _loggamma_build(1 - c)).exp()

        def tail_integral(x_from: int, use_lower: bool) -> Real:
            # int_{x_from}^inf (x + shift)^(-c) / (x + 1 + n) dx, by x = x_from/v.
            def f(v: Real, dl: Real, dh: Real) -> Real:
                x = x_from / v
                base = (x + (1 - c)) if use_lower else x
                q = (-(c) * base.log()).exp()
                return q / (x + 1 + n) * x_from / (v * v)

            res = tanh_sinh(
                f, Fraction(0), Fraction(1),
                QuadratureSpec(levels=9, target_abs_err=Fraction(1, 10 ** (p.digits // 2 + 8))),
                Precision(p.digits + 6),
            )
            return res.value

        tail_hi = big_c * tail_integral(terms, use_lower=False)
        tail_lo = big_c * tail_integral(terms + 1, use_lower=True)
        rhs = partial + (tail_lo + tail_hi) / 2
        half_bracket = ((tail_hi - tail_lo) / 2).magnitude_bound()

    tolerance = half_bracket + lhs.err_fraction + rhs.err_fraction
    return _report(f"unit-argument series ({terms} terms + tail bracket)", n, lhs, rhs, tolerance)


def reflection_check(alpha: Fraction | Real, p: Precision | int | None = None) -> IdentityReport:
    """Gamma(a) Gamma(1-a) sin(pi a) == pi."""
    p = Precision.of(p)
    tolerance = Fraction(1, 10 ** (p.digits - 10))

    def lhs_build() -> Real:
        a = Real.coerce(alpha)
        lg = _loggamma_build(a) + _loggamma_build(1 - a)
        return lg.exp() * (a * const_pi()).sin()

    lhs = evaluate(lhs_build, p)
    rhs = evaluate(lambda: +const_pi(), p)
    return _report("reflection", 0, lhs, rhs, tolerance)
