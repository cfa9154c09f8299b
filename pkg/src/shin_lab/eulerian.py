"""Exact combinatorics: binomials, Stirling partition numbers, and the
second-order Eulerian triangle.

Everything here is arbitrary-size integer arithmetic; no floating point.
The triangle entry <<n, m>> counts (among other things) the arrangements
behind the 1, 120, 494 family of interval counts, and satisfies

    <<n, m>> = (m+1) <<n-1, m>> + (2n-1-m) <<n-1, m-1>>,
    <<n, 0>> = 1,   <<n, n>> = 0 for n != 0,

with the explicit binomial/Stirling form used as the cross-check route.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "binom",
    "stirling2",
    "eulerian2",
    "eulerian2_explicit",
    "triangle",
    "EulerianTriangle",
    "TRIANGLE_MAX_ROWS",
]

TRIANGLE_MAX_ROWS = 64

_memo_lock = threading.Lock()
_stirling_memo: dict[tuple[int, int], int] = {}
_eulerian_memo: dict[tuple[int, int], int] = {}


def binom(n: int, k: int) -> int:
    if not (0 <= k <= n):
        raise DomainError(f"binom requires 0 <= k <= n, got n={n}, k={k}")
    return math.comb(n, k)


def stirling2(n: int, k: int) -> int:
    """Partition count {n, k} via {n,k} = k {n-1,k} + {n-1,k-1}."""
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"stirling2 requires 0 <= k <= n, got n={n}, k={k}")
    return _stirling2(n, k)


def _stirling2(n: int, k: int) -> int:
    if k == 0:
        return 1 if n == 0 else 0
    if k == n:
        return 1
    key = (n, k)
    cached = _stirling_memo.get(key)
    if cached is None:
        cached = k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)
        with _memo_lock:
            _stirling_memo[key] = cached
    return cached


def eulerian2(n: int, m: int) -> int:
    """<<n, m>> via the recurrence, memoized."""
    if n < 0 or m < 0 or m > n:
        raise DomainError(f"eulerian2 requires 0 <= m <= n, got n={n}, m={m}")
    return _eulerian2(n, m)


def _eulerian2(n: int, m: int) -> int:
    if m == 0:
        return 1
    if m >= n:  # <<n, n>> = 0 for n != 0; m == 0 handled above covers <<0, 0>> = 1
        return 0
    key = (n, m)
    cached = _eulerian_memo.get(key)
    if cached is None:
        cached = (m + 1) * _eulerian2(n - 1, m) + (2 * n - 1 - m) * _eulerian2(n - 1, m - 1)
        with _memo_lock:
            _eulerian_memo[key] = cached
    return cached


def eulerian2_explicit(n: int, m: int) -> int:
    """<<n, m>> via the alternating binomial/Stirling sum (n > m >= 0).

    sum_{k=0..m} C(2n+1, k) {n+m+1-k, m+1-k} (-1)^k — exact, no memo; the
    equality with :func:`eulerian2` is the module's two-route check.
    """
    if not (n > m >= 0):
        raise DomainError(f"eulerian2_explicit requires n > m >= 0, got n={n}, m={m}")
    total = 0
    for k in range(m + 1):
        term = binom(2 * n + 1, k) * stirling2(n + m + 1 - k, m + 1 - k)
        total += -term if k % 2 else term
    return total


@dataclass(frozen=True)
class EulerianTriangle:
    """Rows 1..n of the second-order Eulerian triangle (row n has n entries)."""

    rows: tuple[tuple[int, ...], ...]

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.rows)

    def contains(self, value: int) -> bool:
        return any(value in row for row in self.rows)

    def to_csv(self) -> str:
        return "\n".join(",".join(str(v) for v in row) for row in self.rows) + "\n"


def triangle(n_max: int) -> EulerianTriangle:
    if not (1 <= n_max <= TRIANGLE_MAX_ROWS):
        raise DomainError(f"triangle supports 1 <= n_max <= {TRIANGLE_MAX_ROWS}, got {n_max}")
    rows = tuple(tuple(eulerian2(n, m) for m in range(n)) for n in range(1, n_max + 1))
    return EulerianTriangle(rows=rows)
