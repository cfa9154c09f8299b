"""Runs of constant selector value and their length bookkeeping.

Consecutive integers sharing one selector value form an interval; lengths
are always 8 or 9 and follow the eleven-term reference cycle

    8 9 9 9 8 9 9 9 8 9 9        (96 integers per cycle)

anchored at the second interval (the opening interval of 8 sits before the
cycle starts).  Because the underlying slope 96/11 slightly overshoots the
true density, an expected 9 is occasionally delivered as an 8; the scan
calls these substitutions.  After each substitution that eight-slot of the
running schedule moves one position earlier — the repeating cycle re-anchors
at the interruption — which is exactly what makes the observed gap between
substitutions come out as 40 or 51 intervals (both are 7 mod 11, so every
substitution lands at the same relative slot).

The ratio k / selector(k) tends to (3 - 2/log 2)**(-1) = 8.7252483512...;
:func:`psi` reports the certified deviation.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, StructuralAnomalyError
from .numerics import Real, certify_sign, const_log2, evaluate, working_digits
from .precision import Precision
from .shin_core import omega

__all__ = [
    "IntervalRecord",
    "SeriesScan",
    "RatioSample",
    "BoundsRecord",
    "BoundsReport",
    "SERIES_PATTERN",
    "PSI_BOUND_LOW",
    "PSI_BOUND_HIGH",
    "BLENDED_RATIO_ESTIMATE",
    "enumerate_intervals",
    "series_scan",
    "psi",
    "psi_limit",
    "bounds_check",
]

SERIES_PATTERN: tuple[int, ...] = (8, 9, 9, 9, 8, 9, 9, 9, 8, 9, 9)

# Two-sided rational estimates of the ratio k/selector and their frequency-
# weighted blend (10 parts upper bound, 1 part lower bound, divided by 11).
PSI_BOUND_LOW = Fraction(4223, 484)
PSI_BOUND_HIGH = Fraction(4319, 495)
BLENDED_RATIO_ESTIMATE = Fraction(418079, 47916)


@dataclass(frozen=True)
class IntervalRecord:
    ell: int
    omega: int
    k_min: int
    k_max: int
    length: int


@dataclass(frozen=True)
class SeriesScan:
    lengths: tuple[int, ...]
    substitution_indices: tuple[int, ...]
    pattern_period: int = 11
    pattern: tuple[int, ...] = SERIES_PATTERN


@dataclass(frozen=True)
class RatioSample:
    k: int
    omega: int
    psi: Fraction
    deviation: Real


@dataclass(frozen=True)
class BoundsRecord:
    k: int
    psi: Fraction
    within: bool


@dataclass(frozen=True)
class BoundsReport:
    low: Fraction
    high: Fraction
    records: tuple[BoundsRecord, ...]

    @property
    def violations(self) -> tuple[BoundsRecord, ...]:
        return tuple(r for r in self.records if not r.within)


# Interval enumeration is shared by scans, the verify suites and the tests;
# a grow-on-demand cache keeps the repeated sweeps linear overall.  Same key
# always yields the same records, so racing writers are benign.
_cache_lock = threading.Lock()
_cached_records: list[IntervalRecord] = []
_cached_next_k = 1
_cached_prev_omega = 0


def _extend_records(ell_max: int, p: Precision) -> list[IntervalRecord]:
    global _cached_next_k, _cached_prev_omega
    with _cache_lock:
        records = _cached_records
        k = _cached_next_k
        if k == 1:
            _cached_prev_omega = omega(1, p)
        prev = _cached_prev_omega
        run_start = records[-1].k_max + 1 if records else 1
        while len(records) < ell_max:
            k += 1
            om = omega(k, p)
            if om != prev:
                if om != prev + 1:
                    raise StructuralAnomalyError(
                        f"selector jumped from {prev} to {om} between k={k-1} and k={k}"
                    )
                ell = len(records) + 1
                records.append(IntervalRecord(ell, prev, run_start, k - 1, k - run_start))
                run_start = k
                prev = om
        _cached_next_k = k
        _cached_prev_omega = prev
        return records[:ell_max]


def enumerate_intervals(ell_max: int, p: Precision | int | None = None) -> list[IntervalRecord]:
    """The first ``ell_max`` constant-selector runs, in order.

    Record ``ell`` has selector value ``ell - 1``; consecutive records tile
    the integers with no gaps.  Selector values come from the ceiling form
    (O(1) per integer); the oracle-equivalence checks elsewhere justify it.
    """
    if ell_max < 1:
        raise DomainError(f"ell_max must be >= 1, got {ell_max}")
    return list(_extend_records(ell_max, Precision.of(p)))


def series_scan(ell_max: int, p: Precision | int | None = None) -> SeriesScan:
    """Align observed lengths against the reference cycle, collecting
    substitutions (an 8 where the running schedule expects 9).

    Schedule convention: eight-slots start at cycle offsets {0, 4, 8}
    relative to the second interval.  A substitution at offset r is an 8
    arriving one slot early; the schedule replaces its (r+1) slot with r
    from then on.  The convention is validated against the reproducible
    part of the classical substitution list (see tests).
    """
    if ell_max < 11:
        raise DomainError(f"series_scan needs ell_max >= 11, got {ell_max}")
    records = enumerate_intervals(ell_max, p)
    lengths = tuple(r.length for r in records)
    eight_slots = {0, 4, 8}
    substitutions: list[int] = []
    for rec in records[1:]:
        length = rec.length
        if length not in (8, 9):
            raise StructuralAnomalyError(
                f"interval {rec.ell} has length {length}, outside {{8, 9}}"
            )
        offset = (rec.ell - 2) % 11
        if length == 8 and offset not in eight_slots:
            successor = (offset + 1) % 11
            if successor not in eight_slots:
                raise StructuralAnomalyError(
                    f"substitution at interval {rec.ell} has no adjacent eight-slot to take over"
                )
            eight_slots.remove(successor)
            eight_slots.add(offset)
            substitutions.append(rec.ell)
        elif length == 9 and offset in eight_slots:
            raise StructuralAnomalyError(
                f"interval {rec.ell} delivered 9 in an eight-slot of the schedule"
            )
    return SeriesScan(lengths=lengths, substitution_indices=tuple(substitutions))


def psi_limit(p: Precision | int | None = None) -> Real:
    """(3 - 2/log 2)**(-1), the limit of k/selector(k)."""
    return evaluate(lambda: 1 / (3 - 2 / const_log2()), p)


def psi(k: int, p: Precision | int | None = None) -> RatioSample:
    """Exact ratio k/selector(k) and its certified deviation from the limit.

    The ratio is kept rational; only the deviation against the (irrational)
    limit is an enclosure, evaluated at whatever precision certifies its
    sign.
    """
    if not isinstance(k, int) or k < 9:
        raise DomainError(f"psi needs an integer k >= 9, got {k!r}")
    p = Precision.of(p)
    om = omega(k, p)
    if om == 0:
        raise DomainError(f"ratio undefined: selector is 0 at k={k}")
    ratio = Fraction(k, om)

    def deviation_build() -> Real:
        return Real.from_exact(ratio) - 1 / (3 - 2 / const_log2())

    certify_sign(deviation_build, p)  # escalates until the sign is certain
    deviation = evaluate(deviation_build, p)
    return RatioSample(k=k, omega=om, psi=ratio, deviation=deviation)


def bounds_check(
    k_samples: Sequence[int], p: Precision | int | None = None
) -> BoundsReport:
    """Record where the exact ratio falls against the two-sided rational
    estimates.  Violations are data, not errors: the estimates describe the
    frequency-averaged behaviour, and individual integers drift outside."""
    p = Precision.of(p)
    records = []
    for k in k_samples:
        if k < 10**4:
            raise DomainError(f"bounds_check expects k >= 10^4, got {k}")
        with working_digits(p.digits):
            om = omega(k, p)
        ratio = Fraction(k, om)
        records.append(
            BoundsRecord(k=k, psi=ratio, within=PSI_BOUND_LOW < ratio < PSI_BOUND_HIGH)
        )
    return BoundsReport(low=PSI_BOUND_LOW, high=PSI_BOUND_HIGH, records=tuple(records))
