"""Self-verification suites: every reproducible numeric claim the library
rests on, packaged as named checks with deterministic pass/fail output.

These back the CLI's ``verify`` command.  Golden values are computed
truths, frozen after independent derivation (see the test suite for the
derivations); randomized checks use fixed seeds so reports are bit-stable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import UndecidableComparisonError
from .eulerian import binom, eulerian2, eulerian2_explicit, stirling2, triangle
from .gamma_identities import (
    digamma,
    gamma,
    gauss_unit_value,
    partial_sum_identity,
    product_identity,
    reflection_check,
    vanishing_product,
)
from .intervals import enumerate_intervals, psi, series_scan
from .numerics import Ordering, Real, certified_compare, const_log2, evaluate
from .precision import Precision
from .quadrature import QuadratureSpec
from .shin_core import _member_builder, omega, omega_oracle_scan
from .transforms import (
    cm_test,
    jump_density,
    jump_density_numeric,
    laplace_limit_check,
)

__all__ = ["SuiteCheck", "SuiteResult", "SUITES", "run_suite", "run_all"]


@dataclass(frozen=True)
class SuiteCheck:
    name: str
    passed: bool
    detail: str

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    passed: bool
    checks: tuple[SuiteCheck, ...]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


def _result(suite: str, checks: list[SuiteCheck]) -> SuiteResult:
    return SuiteResult(suite=suite, passed=all(c.passed for c in checks), checks=tuple(checks))


# The selector table for k = 1..104, as nine runs of constant value.
_SELECTOR_TABLE = [
    (0, 1, 8), (1, 9, 16), (2, 17, 25), (3, 26, 34), (4, 35, 43), (5, 44, 51),
    (6, 52, 60), (7, 61, 69), (8, 70, 78), (9, 79, 86), (10, 87, 95), (11, 96, 104),
]

# Computed substitution schedule up to interval 1152 (regression golden).
_SUBSTITUTIONS_1152 = (
    31, 71, 122, 162, 213, 253, 293, 344, 384, 435, 475, 526, 566,
    617, 657, 697, 748, 788, 839, 879, 930, 970, 1021, 1061, 1101, 1152,
)

_SWEEP_MAX = 10**4


def suite_omega_oracle(digits: int) -> SuiteResult:
    p = Precision.of(digits)
    checks = []
    table_ok = all(
        omega(k, p) == value for value, lo, hi in _SELECTOR_TABLE for k in range(lo, hi + 1)
    )
    checks.append(SuiteCheck("selector-table-1..104", table_ok, "ceiling form vs tabulated runs"))
    oracle = omega_oracle_scan(_SWEEP_MAX, Precision(30))
    ceiling = [omega(k, p) for k in range(1, _SWEEP_MAX + 1)]
    agree = oracle == ceiling
    checks.append(
        SuiteCheck(
            f"oracle-equivalence-1..{_SWEEP_MAX}",
            agree,
            "threshold-scan definition vs ceiling form",
        )
    )
    return _result("omega-oracle", checks)


def suite_fundamental_theorem(digits: int) -> SuiteResult:
    p = Precision.of(digits)
    upper = lower = True
    undecided = 0
    for k in range(1, _SWEEP_MAX + 1):
        m = omega(k, p)
        try:
            upper &= certified_compare(_member_builder(k, m), 2, p, max_factor=4) is Ordering.GREATER
            lower &= certified_compare(_member_builder(k, m - 1), 2, p, max_factor=4) is Ordering.LESS
        except UndecidableComparisonError:
            undecided += 1
    checks = [
        SuiteCheck(f"selected-member-above-2-1..{_SWEEP_MAX}", upper and not undecided,
                   "certified strict inequality"),
        SuiteCheck(f"previous-member-below-2-1..{_SWEEP_MAX}", lower and not undecided,
                   "certified strict inequality"),
        SuiteCheck("no-undecidable-comparisons", undecided == 0, f"{undecided} undecided"),
    ]
    return _result("fundamental-theorem", checks)


def suite_series_scan(digits: int) -> SuiteResult:
    p = Precision.of(digits)
    scan = series_scan(1152, p)
    checks = [
        SuiteCheck("lengths-in-8-9", set(scan.lengths) <= {8, 9}, "all interval lengths"),
        SuiteCheck("reference-pattern-sums-96", sum(scan.pattern) == 96, "8+9+9+9+8+9+9+9+8+9+9"),
    ]
    gaps = [b - a for a, b in zip(scan.substitution_indices, scan.substitution_indices[1:])]
    checks.append(SuiteCheck("substitution-gaps-40-51", set(gaps) <= {40, 51}, f"gaps {sorted(set(gaps))}"))
    checks.append(
        SuiteCheck(
            "substitution-schedule-regression",
            scan.substitution_indices == _SUBSTITUTIONS_1152,
            f"{len(scan.substitution_indices)} substitutions up to 1152",
        )
    )
    # Aligned eleven-interval windows carry 96 integers, or 95 when one of
    # their nine-slots was substituted.
    records = enumerate_intervals(1152, p)
    window_ok = True
    for start in range(2, 1142, 11):
        window = records[start - 1 : start + 10]
        span = sum(r.length for r in window)
        subs_inside = sum(1 for s in scan.substitution_indices if start <= s < start + 11)
        if span != 96 - subs_inside:
            window_ok = False
            break
    checks.append(SuiteCheck("window-sums-96-less-substitutions", window_ok, "aligned 11-windows"))
    return _result("series-scan", checks)


def suite_eulerian(digits: int) -> SuiteResult:
    diag = [eulerian2(n, n - 1) for n in range(2, 6)] == [2, 6, 24, 120]
    col1 = [eulerian2(n, 1) for n in range(2, 9)] == [2, 8, 22, 52, 114, 240, 494]
    cross = all(eulerian2(n, m) == eulerian2_explicit(n, m) for n in range(1, 13) for m in range(n))
    stirling = all(stirling2(n, 2) == 2 ** (n - 1) - 1 and stirling2(n, 1) == 1 for n in range(1, 31))
    through = binom(17, 0) * stirling2(10, 2) - binom(17, 1) * stirling2(9, 1) == 494
    tri = triangle(12)
    dblfact = 1
    sums_ok = True
    for n, s in enumerate(tri.row_sums(), start=1):
        dblfact *= 2 * n - 1 if n > 1 else 1
        sums_ok &= s == dblfact
    special = tri.contains(1) and tri.contains(120) and tri.contains(494)
    checks = [
        SuiteCheck("diagonal-2-6-24-120", diag, "recurrence worked values"),
        SuiteCheck("column1-through-494", col1, "recurrence worked values"),
        SuiteCheck("explicit-equals-recurrence-n<=12", cross, "two-route equality"),
        SuiteCheck("stirling-identities-n<=30", stirling, "{n,2}=2^(n-1)-1, {n,1}=1"),
        SuiteCheck("explicit-494-via-511-minus-17", through, "binomial/Stirling route"),
        SuiteCheck("row-sums-odd-double-factorial", sums_ok, "rows 1..12"),
        SuiteCheck("special-numbers-present", special, "1, 120, 494 in the triangle"),
    ]
    return _result("eulerian", checks)


def suite_gamma_identities(digits: int) -> SuiteResult:
    p40 = Precision(40)
    checks = []
    ns = list(range(1, 21)) + [100]
    prod_ok = all(product_identity(n, p40).passed for n in ns)
    checks.append(SuiteCheck("rising-product-identity", prod_ok, f"n in 1..20, 100 at 1e-30"))
    sum_ok = all(partial_sum_identity(n, p40).passed for n in ns)
    checks.append(SuiteCheck("partial-sum-identity", sum_ok, f"n in 1..20, 100 at 1e-30"))
    alphas = [Fraction(1, 10), Fraction(1, 4), Fraction(49, 100)]
    refl_ok = all(reflection_check(a, p40).passed for a in alphas)
    half_log2 = evaluate(lambda: const_log2() / 2, p40)
    refl_ok &= reflection_check(half_log2, p40).passed
    checks.append(SuiteCheck("reflection", refl_ok, "alpha in {0.1, 0.25, 0.49, log2/2}"))
    rng = random.Random(20205)
    rec_ok = True
    p30 = Precision(30)
    for _ in range(100):
        x = Fraction(rng.randint(1, 50 * 10**6), 10**6)
        lhs = gamma(x + 1, p30)
        rhs = evaluate(lambda: Real.from_exact(x), p30) * gamma(x, p30)
        rec_ok &= (lhs - rhs).magnitude_bound() <= Fraction(1, 10**20) * rhs.magnitude_bound()
    checks.append(SuiteCheck("recurrence-random-x", rec_ok, "Gamma(x+1) = x Gamma(x), 100 draws"))
    psi_rec = (digamma(2, p30) - digamma(1, p30)).contains(1)
    checks.append(SuiteCheck("digamma-recurrence", psi_rec, "psi(2) - psi(1) = 1"))
    vp_ok = True
    for n in (1, 10, 100, 10**4):
        rec = vanishing_product(n, p30)
        vp_ok &= rec.positive and rec.within_bound and rec.reciprocal_of_rising
    checks.append(SuiteCheck("vanishing-product-bounds", vp_ok, "n in {1, 10, 100, 10000}"))
    div = partial_sum_identity(5200, p30)
    checks.append(
        SuiteCheck(
            "divergence-witness",
            div.passed and div.rhs.lo_fraction > 3,
            "partial sum exceeds 3 by n=5200",
        )
    )
    gauss_ok = True
    for n in (1, 5):
        rep = gauss_unit_value(n, 10**5, p30)
        gauss_ok &= rep.passed and rep.abs_err <= Fraction(1, 10**6)
    checks.append(SuiteCheck("unit-argument-series", gauss_ok, "n in {1, 5}, 1e5 terms + tail"))
    return _result("gamma-identities", checks)


def suite_cm(digits: int) -> SuiteResult:
    p = Precision.of(digits)
    records = enumerate_intervals(12, p)
    member_ok = inv_ok = True
    for r in records:
        member_ok &= cm_test("shin", (r.k_min, r.k_max), 6, Fraction(1, 16), p).clean
        inv_ok &= cm_test("inv_shin", (r.k_min, r.k_max), 6, Fraction(1, 16), p).clean
    checks = [
        SuiteCheck("members-completely-monotonic", member_ok, "orders 0..6, step 1/16, 12 intervals"),
        SuiteCheck("reciprocal-bernstein", inv_ok, "orders 0..6, step 1/16, 12 intervals"),
    ]
    return _result("cm", checks)


def suite_density_oracle(digits: int) -> SuiteResult:
    p = Precision(30)
    grid = [Fraction(35, 100), Fraction(40, 100), Fraction(45, 100),
            Fraction(55, 100), Fraction(60, 100), Fraction(65, 100)]
    worst = Fraction(0)
    for t in grid:
        closed = jump_density(t, p).mu_dot
        numeric = jump_density_numeric(t, Fraction(1, 10**10), p)
        rel = (closed - numeric).magnitude_bound() / abs(closed.mid_fraction)
        worst = max(worst, rel)
    checks = [
        SuiteCheck(
            "closed-form-vs-quotient",
            worst <= Fraction(1, 10**6),
            f"worst relative gap {float(worst):.3e} at y=1e-10",
        )
    ]
    zeros_ok = all(
        jump_density(t, p).mu_dot.is_exact() and jump_density(t, p).mu_dot.lo_fraction == 0
        for t in (Fraction(1, 10), Fraction(1, 3), Fraction(2, 3), Fraction(9, 10))
    )
    checks.append(SuiteCheck("support-zeros", zeros_ok, "identically 0 outside (1/3, 2/3)"))
    center = jump_density(Fraction(1, 2), p).mu_dot
    checks.append(
        SuiteCheck("zero-at-half", center.magnitude_bound() <= Fraction(1, 10**20), "|value| <= 1e-20")
    )
    return _result("density-oracle", checks)


def suite_limits(digits: int) -> SuiteResult:
    p = Precision.of(digits)
    rep = laplace_limit_check(p)
    checks = [
        SuiteCheck("origin-limit-2", rep.at_zero.is_exact() and rep.at_zero.lo_fraction == 2,
                   "branch formula at 0"),
        SuiteCheck(
            "infinity-limit-2",
            (rep.at_infinity - 2).magnitude_bound() <= Fraction(1, 10**11),
            f"probe at k = {rep.at_infinity_argument}",
        ),
        SuiteCheck("normalized-origin-1", rep.half_at_zero.contains(1), "half the origin limit"),
    ]
    # Ratio-limit deviations, against computed-truth bounds (|dev| ~ c^2 * frac/k).
    for exp10, bound in ((6, Fraction(1, 10**4)), (12, Fraction(1, 10**11)), (18, Fraction(5, 10**17))):
        sample = psi(10**exp10, Precision(max(40, exp10 * 2 + 20)))
        ok = sample.deviation.magnitude_bound() <= bound and sample.deviation.lo_fraction > 0
        checks.append(
            SuiteCheck(
                f"ratio-deviation-1e{exp10}",
                ok,
                f"|psi - limit| <= {float(bound):.0e} and positive",
            )
        )
    return _result("limits", checks)


SUITES = {
    "omega-oracle": suite_omega_oracle,
    "fundamental-theorem": suite_fundamental_theorem,
    "series-scan": suite_series_scan,
    "eulerian": suite_eulerian,
    "gamma-identities": suite_gamma_identities,
    "cm": suite_cm,
    "density-oracle": suite_density_oracle,
    "limits": suite_limits,
}


def run_suite(name: str, digits: int) -> SuiteResult:
    try:
        fn = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; available: {', '.join(SUITES)}") from None
    return fn(digits)


def run_all(digits: int) -> list[SuiteResult]:
    return [fn(digits) for fn in SUITES.values()]
