"""Exact null distribution of the U statistic via the classical recurrence.

Arrangement counts are kept as exact Python integers and normalized only on
demand, so table moments can be checked as exact rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

MAX_TABLE_ENTRIES = 1_000_000


class TableSizeError(RuntimeError):
    """Requested table exceeds the configured size limit."""


@dataclass(frozen=True)
class ExactNullTable:
    """Distribution of U over {0, ..., mn} for tie-free samples of sizes m, n."""

    m: int
    n: int
    counts: tuple[int, ...]  # arrangement counts, sum = C(m+n, m)

    @property
    def total(self) -> int:
        return math.comb(self.m + self.n, self.m)

    @property
    def pmf(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=float) / self.total

    def sf(self) -> np.ndarray:
        """P(U >= u) for u = 0..mn, as floats."""
        tail = np.cumsum(np.asarray(self.counts, dtype=float)[::-1])[::-1]
        return tail / self.total

    def exact_mean(self) -> Fraction:
        total = self.total
        return sum(
            (Fraction(c, total) * u for u, c in enumerate(self.counts)), Fraction(0)
        )

    def exact_variance(self) -> Fraction:
        mean = self.exact_mean()
        total = self.total
        second = sum(
            (Fraction(c, total) * u * u for u, c in enumerate(self.counts)), Fraction(0)
        )
        return second - mean * mean


@dataclass(frozen=True)
class CriticalValue:
    """Upper rejection bound with the size it actually achieves."""

    value: int  # reject when U >= value (two-sided: or U <= mn - value)
    achieved_size: float
    degenerate: bool  # no nonzero-size rejection region at this alpha


@lru_cache(maxsize=64)
def build_table(m: int, n: int, max_entries: int = MAX_TABLE_ENTRIES) -> ExactNullTable:
    """Exact pmf of U under the null by dynamic programming.

    Recurrence on arrangement counts: c(u; i, j) = c(u - j; i - 1, j) + c(u; i, j - 1)
    with c(u; 0, j) = c(u; i, 0) = [u == 0].
    """
    if m < 1 or n < 1:
        raise ValueError(f"m and n must be >= 1, got m={m}, n={n}")
    if m * n + 1 > max_entries:
        raise TableSizeError(
            f"table for m={m}, n={n} needs {m * n + 1} entries, limit {max_entries}"
        )

    # prev_row[j] holds counts for (i - 1, j); rebuilt row by row over i
    prev_row = [[1] for _ in range(n + 1)]
    for i in range(1, m + 1):
        cur_row = [[1]]
        for j in range(1, n + 1):
            above = prev_row[j]      # (i - 1, j), shifted by j
            left = cur_row[j - 1]    # (i, j - 1)
            size = i * j + 1
            cell = [0] * size
            for u, c in enumerate(above):
                cell[u + j] += c
            for u, c in enumerate(left):
                cell[u] += c
            cur_row.append(cell)
        prev_row = cur_row

    counts = tuple(prev_row[n])
    assert sum(counts) == math.comb(m + n, m)
    return ExactNullTable(m=m, n=n, counts=counts)


def critical_value(table: ExactNullTable, alpha: float, side: str = "upper") -> CriticalValue:
    """Smallest upper bound whose rejection region has size <= alpha.

    For ``side="two_sided"`` the region is symmetric, {U >= u} | {U <= mn - u},
    and the achieved size counts both tails.
    """
    if not 0.0 < alpha < 0.5:
        raise ValueError(f"alpha must be in (0, 0.5), got {alpha}")
    if side not in ("upper", "two_sided"):
        raise ValueError(f"side must be 'upper' or 'two_sided', got {side!r}")

    mn = table.m * table.n
    total = table.total
    tail = 0  # running count of P(U >= u) * total
    best = None
    for u in range(mn, -1, -1):
        tail += table.counts[u]
        size = Fraction(tail, total)
        if side == "two_sided":
            if u <= mn - u:
                break  # tails would overlap; stop before double counting
            size = 2 * size
        if size <= Fraction(alpha).limit_denominator(10**12):
            best = (u, float(size))
        else:
            break

    if best is None or best[1] == 0.0:
        # even the most extreme value cannot be rejected at this alpha
        value = mn + 1
        return CriticalValue(value=value, achieved_size=0.0, degenerate=True)
    return CriticalValue(value=best[0], achieved_size=best[1], degenerate=False)
