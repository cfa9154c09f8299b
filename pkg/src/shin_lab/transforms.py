"""Cut-plane evaluation, the branch-jump density, and transform checks.

Off the segment [-2/3, -1/3] of the real axis the function

    (1 + 1/(3z + 1)) ** (2z + 1) = exp((2z+1) Log(1 + 1/(3z+1)))

(principal Log) is holomorphic; crossing the segment jumps the branch.
Everything in this module is built from that formula:

* boundary values on [-1, 0] from either side of the cut;
* the jump density: the discontinuity across the cut, measured either by
  the closed form (reflection form, sin(2 pi t), never Gamma(1-2t)) or by
  a finite-offset difference quotient — the two are each other's oracle;
* the Stieltjes-style representation  2 + integral of density/(x+t)  and
  the mirrored  1/2 + integral  representation of the reciprocal, both by
  endpoint-singularity-robust quadrature;
* alternating-sign finite-difference rigs for complete monotonicity and
  the Bernstein property, with violations only ever reported when the
  whole error interval sits below zero;
* the limit checks at zero and infinity (both equal 2).

The density changes sign at t = 1/2 (the sine factor does); it is surfaced
exactly as the formula gives it, signed.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence, Union

from .errors import (
    BranchCutError,
    BranchPointError,
    DomainError,
    PrecisionEscalationError,
    UndecidableComparisonError,
)
from .numerics import (
    Complex,
    Real,
    _escalation_digits,
    const_pi,
    evaluate,
    working_digits,
)
from .precision import Precision
from .quadrature import QuadratureResult, QuadratureSpec, tanh_sinh
from .shin_core import FamilyMember, omega, shin

__all__ = [
    "CUT_LOWER",
    "CUT_UPPER",
    "BoundarySide",
    "BoundaryRegion",
    "BoundaryCase",
    "DensitySample",
    "CMReport",
    "LimitReport",
    "classify_boundary",
    "shin_complex",
    "boundary_value",
    "jump_density",
    "jump_density_numeric",
    "stieltjes_shin",
    "integrand_mass",
    "levy_khinchin_inv_shin",
    "cm_test",
    "laplace_limit_check",
]

CUT_LOWER = Fraction(-2, 3)
CUT_UPPER = Fraction(-1, 3)

ExactReal = Union[int, Fraction]


class BoundarySide(Enum):
    FROM_ABOVE = "from_above"
    FROM_BELOW = "from_below"


class BoundaryRegion(Enum):
    POSITIVE_REAL = "positive_real"
    ZERO = "zero"
    ON_CUT = "on_cut"
    LEFT_LOBE = "left_lobe"          # (-1, -2/3) or (-1/3, 0)
    MINUS_ONE = "minus_one"
    LEFT_OF_MINUS_ONE = "left_of_minus_one"


@dataclass(frozen=True)
class BoundaryCase:
    region: BoundaryRegion
    side: BoundarySide | None = None


@dataclass(frozen=True)
class DensitySample:
    t: Fraction
    mu_dot: Real


@dataclass(frozen=True)
class CMReport:
    member: str
    interval: tuple[Fraction, Fraction]
    max_order: int
    step: Fraction
    violations: tuple[tuple[int, Fraction, float], ...]
    undecided: tuple[tuple[int, Fraction], ...]
    points_checked: int

    @property
    def clean(self) -> bool:
        return not self.violations and not self.undecided


@dataclass(frozen=True)
class LimitReport:
    at_zero: Real
    at_infinity: Real
    at_infinity_argument: int
    half_at_zero: Real


def classify_boundary(t: ExactReal, side: BoundarySide | None = None) -> BoundaryCase:
    q = Fraction(t)
    if q in (CUT_LOWER, CUT_UPPER):
        raise BranchPointError(f"t = {q} is a branch point")
    if q > 0:
        return BoundaryCase(BoundaryRegion.POSITIVE_REAL)
    if q == 0:
        return BoundaryCase(BoundaryRegion.ZERO)
    if CUT_LOWER < q < CUT_UPPER:
        if side is None:
            raise BranchCutError(f"t = {q} lies on the cut; a side is required")
        return BoundaryCase(BoundaryRegion.ON_CUT, side)
    if q == -1:
        return BoundaryCase(BoundaryRegion.MINUS_ONE)
    if q < -1:
        return BoundaryCase(BoundaryRegion.LEFT_OF_MINUS_ONE)
    return BoundaryCase(BoundaryRegion.LEFT_LOBE)


def _branch_build(z_re: ExactReal, z_im: ExactReal) -> Complex:
    """exp((2z+1) Log(1 + 1/(3z+1))) at the current working precision."""
    z3 = Complex(3 * Fraction(z_re) + 1, 3 * Fraction(z_im))
    w = 1 + 1 / z3
    exponent = Complex(2 * Fraction(z_re) + 1, 2 * Fraction(z_im))
    return (exponent * w.clog()).cexp()


def _evaluate_complex(build, p: Precision, max_factor: int = 16) -> Complex:
    rel = p.rel_tolerance
    for digits, at_cap in _escalation_digits(p, max_factor):
        with working_digits(digits):
            try:
                z = build()
            except UndecidableComparisonError:
                if at_cap:
                    raise
                continue
        scale = max(z.re.magnitude_bound(), z.im.magnitude_bound(), Fraction(1))
        if z.re.err_fraction + z.im.err_fraction <= rel * scale:
            return z
        if at_cap:
            raise PrecisionEscalationError(
                f"complex evaluation did not meet tolerance at {digits} digits"
            )


def shin_complex(z, p: Precision | int | None = None) -> Complex:
    """Cut-plane value; real axis handled by the boundary table.

    ``z`` is an exact point: an int/Fraction (real axis), an ``(re, im)``
    pair of them, or a Complex whose components are exact.  Exactness is
    required so escalation can rebuild the value at any precision.

    For real z: positive arguments defer to the selected real member,
    z = 0 and z = -1 give exactly 2, points of the open cut raise
    :class:`BranchCutError` (use :func:`boundary_value`), branch points
    raise, and the remaining real regions use the (real, positive-based)
    branch formula.  Non-real arguments always use the principal-branch
    formula; conjugate symmetry follows from the principal Log.
    """
    p = Precision.of(p)
    z_re, z_im = _exact_components(z)
    if z_im == 0:
        return _shin_real_axis(z_re, p)
    return _evaluate_complex(lambda: _branch_build(z_re, z_im), p)


def _exact_components(z) -> tuple[Fraction, Fraction]:
    if isinstance(z, (int, Fraction)):
        return Fraction(z), Fraction(0)
    if isinstance(z, tuple) and len(z) == 2:
        return Fraction(z[0]), Fraction(z[1])
    if isinstance(z, Complex):
        if z.re.is_exact() and z.im.is_exact():
            return z.re.lo_fraction, z.im.lo_fraction
        raise DomainError(
            "argument components are rounded intervals; pass an (re, im) pair of Fractions"
        )
    raise TypeError(f"unsupported argument {type(z).__name__}")


def _shin_real_axis(x: Fraction, p: Precision) -> Complex:
    case = classify_boundary(x) if x <= 0 else BoundaryCase(BoundaryRegion.POSITIVE_REAL)
    if case.region is BoundaryRegion.POSITIVE_REAL:
        if x <= 0:
            raise DomainError("unreachable")
        sample = shin(int(x) if x.denominator == 1 else x, p)
        return Complex(sample.value, Real.from_exact(0))
    if case.region in (BoundaryRegion.ZERO, BoundaryRegion.MINUS_ONE):
        return Complex(Real.from_exact(2), Real.from_exact(0))
    if case.region is BoundaryRegion.ON_CUT:
        raise BranchCutError(f"z = {x} lies on the cut; use boundary_value with a side")
    # Left lobes and the far-left axis: the branch formula is real there.
    ratio = 1 + Fraction(1) / (3 * x + 1)
    if ratio <= 0:
        raise AssertionError("branch ratio not positive off the cut")
    expo = 2 * x + 1

    def build() -> Real:
        r = Real.from_exact(ratio)
        return (Real.from_exact(expo) * r.log()).exp()

    return Complex(evaluate(build, p), Real.from_exact(0))


def boundary_value(
    t: ExactReal, side: BoundarySide | None = None, p: Precision | int | None = None
) -> Complex:
    """Limit of the cut-plane function on [-1, 0] from the requested side.

    On the cut the modulus is exp((2t+1) log|(3t+2)/(3t+1)|) and the phase
    is -pi (2t+1) from above (+pi from below); elsewhere in [-1, 0] the
    limit is real and side-independent.
    """
    q = Fraction(t)
    if not -1 <= q <= 0:
        raise DomainError(f"boundary table covers [-1, 0]; got {q} (use shin_complex/shin)")
    p = Precision.of(p)
    case = classify_boundary(q, side)
    if case.region is not BoundaryRegion.ON_CUT:
        return _shin_real_axis(q, p)

    mod_ratio = abs(Fraction(3 * q + 2) / Fraction(3 * q + 1))
    expo = 2 * q + 1
    phase_sign = -1 if side is BoundarySide.FROM_ABOVE else 1

    def build() -> Complex:
        magnitude = (Real.from_exact(expo) * Real.from_exact(mod_ratio).log()).exp()
        angle = const_pi() * Real.from_exact(phase_sign * expo)
        return Complex(magnitude * angle.cos(), magnitude * angle.sin())

    return _evaluate_complex(build, p)


# ---------------------------------------------------------------------------
# Branch-jump density
# ---------------------------------------------------------------------------


def jump_density(t: ExactReal, p: Precision | int | None = None) -> DensitySample:
    """Closed-form signed density of the branch jump, supported on (1/3, 2/3):

        (1/2pi) sin(2 pi t) ((3t-1)^2)^t / ((3t-2)^2)^t (|r| - r),
        r = (3t-2)/(3t-1),

    with the sine written directly (the reflection form of the gamma pair,
    which removes the spurious pole at t = 1/2).  Identically zero outside
    the open support, including at the endpoints.
    """
    q = Fraction(t)
    if not 0 < q < 1:
        raise DomainError(f"density parameter must lie in (0, 1), got {q}")
    p = Precision.of(p)
    if q <= Fraction(1, 3) or q >= Fraction(2, 3):
        return DensitySample(t=q, mu_dot=Real.from_exact(0))

    num_sq = (3 * q - 1) ** 2
    den_sq = (3 * q - 2) ** 2
    r = Fraction(3 * q - 2, 3 * q - 1)
    bracket = abs(r) - r

    def build() -> Real:
        tr = Real.from_exact(q)
        sine = (2 * const_pi() * tr).sin()
        power = (tr * Real.from_exact(num_sq).log() - tr * Real.from_exact(den_sq).log()).exp()
        return sine / (2 * const_pi()) * power * bracket

    abs_floor = Fraction(1, 10 ** (p.digits + 2))
    return DensitySample(t=q, mu_dot=evaluate(build, p, rel_tol=p.rel_tolerance, abs_tol=abs_floor))


def _density_stable(t: Real, dist_lo: Real, dist_hi: Real) -> Real:
    """The same closed form rearranged for quadrature nodes: with
    a = t - 1/3 and b = 2/3 - t the density is  sin(2 pi t)/pi * (a/b)^(2t-1);
    the endpoint distances arrive pre-computed and cancellation-free."""
    sine = (2 * const_pi() * t).sin()
    power = ((2 * t - 1) * (dist_lo / dist_hi).log()).exp()
    return sine / const_pi() * power


def _density_mirrored(t: Real, dist_lo: Real, dist_hi: Real) -> Real:
    """Mirror form (powers swapped): sin(2 pi t)/pi * (a/b)^(1-2t); vanishes
    at both support endpoints."""
    sine = (2 * const_pi() * t).sin()
    power = ((1 - 2 * t) * (dist_lo / dist_hi).log()).exp()
    return sine / const_pi() * power


def jump_density_numeric(
    t: ExactReal, y: ExactReal, p: Precision | int | None = None
) -> Real:
    """Finite-offset difference quotient across the cut:

        [f(-t - iy) - f(-t + iy)] / (2 pi i)

    evaluated at height y, whose real part converges linearly in y to the
    closed-form density.  The imaginary residue is certified negligible
    (the two values are conjugates) before the real part is returned.
    """
    q, h = Fraction(t), Fraction(y)
    if not Fraction(1, 3) < q < Fraction(2, 3):
        raise DomainError(f"difference quotient needs t in (1/3, 2/3), got {q}")
    if not 0 < h <= Fraction(1, 10**4):
        raise DomainError(f"offset must satisfy 0 < y <= 1e-4, got {h}")
    p = Precision.of(p)

    def build() -> Real:
        below = _branch_build(-q, -h)
        above = _branch_build(-q, h)
        diff = below - above
        # diff/(2 pi i) = (im - i re)/(2 pi)
        two_pi = 2 * const_pi()
        quotient_re = diff.im / two_pi
        residue = diff.re / two_pi
        if residue.magnitude_bound() > Fraction(1, 10 ** (p.digits - 6)) * max(
            Fraction(1), quotient_re.magnitude_bound()
        ):
            raise UndecidableComparisonError("imaginary residue of the jump quotient too large")
        return quotient_re

    for digits, at_cap in _escalation_digits(p, 16):
        with working_digits(digits):
            try:
                x = build()
            except UndecidableComparisonError:
                if at_cap:
                    raise
                continue
        if x.meets(p.rel_tolerance, Fraction(1, 10 ** (p.digits + 2))):
            return x
        if at_cap:
            raise PrecisionEscalationError("jump quotient did not meet tolerance")


# ---------------------------------------------------------------------------
# Integral representations
# ---------------------------------------------------------------------------

_SUPPORT_LO = Fraction(1, 3)
_SUPPORT_MID = Fraction(1, 2)
_SUPPORT_HI = Fraction(2, 3)
_HALF_SUPPORT = Fraction(1, 6)


def stieltjes_shin(
    x: ExactReal, spec: QuadratureSpec | None = None, p: Precision | int | None = None
) -> QuadratureResult:
    """2 + (1/2) * integral over (1/3, 2/3) of braces(t)/(x + t) dt.

    braces(t) is the closed-form jump expression including its reflection
    factor; it equals 2 * density(t), so the (1/2) prefactor and the factor
    2 cancel and the value computed here is  2 + integral density/(x+t).
    The integrand carries an algebraic endpoint singularity of exponent
    -1/3 at both support ends, which the double-exponential rule absorbs
    without subdivision.
    """
    q = Fraction(x)
    if q <= 0:
        raise DomainError(f"stieltjes evaluation needs x > 0, got {q}")
    spec = spec or QuadratureSpec()
    p = Precision.of(p)

    def integrand(t: Real, dist_lo: Real, dist_hi: Real) -> Real:
        return _density_stable(t, dist_lo, dist_hi) / (t + q)

    # One panel over the whole support: the quadrature's endpoint distances
    # are then exactly the distances the density's powers need, and the
    # interior sign change at t = 1/2 is analytic.
    res = tanh_sinh(integrand, _SUPPORT_LO, _SUPPORT_HI, spec, p)
    return dataclasses.replace(res, value=res.value + 2)


def integrand_mass(
    spec: QuadratureSpec | None = None, p: Precision | int | None = None
) -> Real:
    """Total absolute mass of the signed density (it is antisymmetric about
    t = 1/2, so this is twice the positive lobe).

    |density| has a corner at the sign change, so the two lobes integrate
    separately; the support-endpoint distances are recovered from the panel
    distances by an exact half-support shift.
    """
    spec = spec or QuadratureSpec()
    p = Precision.of(p)

    def left_lobe(t: Real, dist_lo: Real, dist_hi: Real) -> Real:
        return _density_stable(t, dist_lo, dist_hi + _HALF_SUPPORT)

    def right_lobe(t: Real, dist_lo: Real, dist_hi: Real) -> Real:
        return _density_stable(t, dist_lo + _HALF_SUPPORT, dist_hi)

    left = tanh_sinh(left_lobe, _SUPPORT_LO, _SUPPORT_MID, spec, p)
    right = tanh_sinh(right_lobe, _SUPPORT_MID, _SUPPORT_HI, spec, p)
    return abs(left.value) + abs(right.value)


def levy_khinchin_inv_shin(
    x: ExactReal, spec: QuadratureSpec | None = None, p: Precision | int | None = None
) -> QuadratureResult:
    """1/2 + (1/2) * integral of mirrored-braces(t) * x t/(t + x) dt.

    The mirrored braces swap the two squared factors (density of the
    reciprocal's representation); killing rate 1/2 and zero drift are built
    in.  The mirrored integrand vanishes at both support endpoints."""
    q = Fraction(x)
    if q <= 0:
        raise DomainError(f"representation needs x > 0, got {q}")
    spec = spec or QuadratureSpec()
    p = Precision.of(p)

    def integrand(t: Real, dist_lo: Real, dist_hi: Real) -> Real:
        return _density_mirrored(t, dist_lo, dist_hi) * q * t / (t + q)

    res = tanh_sinh(integrand, _SUPPORT_LO, _SUPPORT_HI, spec, p)
    half = Real.from_exact(Fraction(1, 2))
    return dataclasses.replace(res, value=res.value + half)


# ---------------------------------------------------------------------------
# Alternating finite differences: complete monotonicity / Bernstein rigs
# ---------------------------------------------------------------------------

_CM_TAGS = ("shin", "inv_shin", "x_times_shin")


def _grid_member_values(
    points: Sequence[Fraction], m: int, digits: int
) -> list[Real]:
    values = []
    with working_digits(digits):
        for x in points:
            den = Real.from_exact(3 * x - m)
            ratio = 1 + 1 / den
            values.append(((2 * Real.from_exact(x) + 1) * ratio.log()).exp())
    return values


def cm_test(
    member,
    interval: tuple[ExactReal, ExactReal],
    max_order: int = 6,
    step: ExactReal = Fraction(1, 16),
    p: Precision | int | None = None,
) -> CMReport:
    """Alternating-sign finite differences on a grid.

    ``member`` is a :class:`FamilyMember` (fixed slot; complete-monotonicity
    signs (-1)^n * Delta^n f >= 0) or one of the tags ``shin`` (the slot
    selected for the interval, same signs), ``inv_shin`` / ``x_times_shin``
    (Bernstein signs: value >= 0 and (-1)^(n-1) * Delta^n >= 0 from order 1).

    A point is a *violation* only when the entire error interval of the
    signed difference is negative; an interval that merely touches zero
    escalates precision once and is otherwise reported as undecided.
    """
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    step = Fraction(step)
    if not (hi > lo > 0 and step > 0):
        raise DomainError("need hi > lo > 0 and step > 0")
    if max_order > 8:
        raise DomainError("finite-difference order capped at 8")
    p = Precision.of(p)

    if isinstance(member, FamilyMember):
        m = member.m
        tag = f"member(m={m})"
        bernstein = False
    elif member in _CM_TAGS:
        om_lo, om_hi = omega(lo, p), omega(hi, p)
        if om_lo != om_hi:
            raise DomainError(
                f"[{lo}, {hi}] straddles a selector discontinuity ({om_lo} -> {om_hi})"
            )
        m = om_lo
        tag = member
        bernstein = member != "shin"
    else:
        raise DomainError(f"unknown member spec {member!r}")

    n_steps = int((hi - lo) / step)
    points = [lo + i * step for i in range(n_steps + 1)]
    if len(points) <= max_order:
        raise DomainError("grid does not fit the interval at this step")

    digits = p.digits
    for attempt in range(3):
        f = _grid_member_values(points, m, digits)
        if tag == "inv_shin":
            with working_digits(digits):
                f = [1 / v for v in f]
        elif tag == "x_times_shin":
            with working_digits(digits):
                f = [Real.from_exact(x) * v for x, v in zip(points, f)]

        violations: list[tuple[int, Fraction, float]] = []
        undecided: list[tuple[int, Fraction]] = []
        checked = 0
        with working_digits(digits):
            for order in range(max_order + 1):
                coeffs = [math.comb(order, j) for j in range(order + 1)]
                if bernstein:
                    outer_sign = 1 if order <= 1 else (-1) ** (order - 1)
                else:
                    outer_sign = (-1) ** order
                for i in range(len(points) - order):
                    acc = Real.from_exact(0)
                    for j in range(order + 1):
                        term = f[i + j] * coeffs[j]
                        acc = acc + (term if (order - j) % 2 == 0 else -term)
                    signed = acc * outer_sign
                    checked += 1
                    if signed.hi_fraction < 0:
                        violations.append((order, points[i], float(signed.hi_fraction)))
                    elif signed.lo_fraction < 0:
                        undecided.append((order, points[i]))
        if not undecided or attempt == 2:
            return CMReport(
                member=tag,
                interval=(lo, hi),
                max_order=max_order,
                step=step,
                violations=tuple(violations),
                undecided=tuple(undecided),
                points_checked=checked,
            )
        digits *= 2


# ---------------------------------------------------------------------------
# Limits at the origin and at infinity
# ---------------------------------------------------------------------------


def laplace_limit_check(p: Precision | int | None = None) -> LimitReport:
    """Both limits equal 2: at the origin through the branch formula (which
    is exactly 2 at z = 0) and at infinity through a large-argument probe
    of the selected real member.  ``half_at_zero`` is the same origin limit
    scaled by 1/2 (the normalized value expected to be exactly 1)."""
    p = Precision.of(p)
    at_zero = shin_complex(0, p).re
    probe = 10**12
    at_infinity = shin(probe, p).value
    with working_digits(p.digits):
        half = at_zero * Real.from_exact(Fraction(1, 2))
    return LimitReport(
        at_zero=at_zero,
        at_infinity=at_infinity,
        at_infinity_argument=probe,
        half_at_zero=half,
    )
