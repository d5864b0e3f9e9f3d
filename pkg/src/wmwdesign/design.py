"""Search for the power-maximizing allocation over realizable designs."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .distributions import DistributionSpec
from .moments import Design
from .power import (
    ONE_SIDED_UPPER,
    PowerQuery,
    _deficiency_search,
    wmw_power,
)


class ConfigurationError(ValueError):
    """The requested search grid is empty."""


@dataclass(frozen=True)
class CurvePoint:
    omega: float
    m: int
    n: int
    power: float


@dataclass(frozen=True)
class DesignReport:
    optimal: Design
    optimal_power: float
    power_curve: tuple[CurvePoint, ...]
    deficiency_at_half: float | None
    epsilon: float


def _grid(total_n: int, epsilon: float) -> range:
    lo = max(1, math.ceil(epsilon * total_n))
    hi = min(total_n - 1, math.floor((1.0 - epsilon) * total_n))
    if lo > hi:
        raise ConfigurationError(
            f"no realizable allocations for N={total_n} with epsilon={epsilon}"
        )
    return range(lo, hi + 1)


def optimal_design(F: DistributionSpec, G: DistributionSpec, total_n: int,
                   alpha: float = 0.05, side: str = ONE_SIDED_UPPER,
                   epsilon: float = 0.1, compute_deficiency: bool = True) -> DesignReport:
    """Exhaustive scan over integer allocations m with epsilon <= m/N <= 1-epsilon.

    Ties in power are broken toward omega closest to 0.5, then toward the
    smaller m.  The exceedance integrals are cached per (F, G), so the scan
    costs one quadrature triple regardless of grid size.
    """
    curve = []
    for m in _grid(total_n, epsilon):
        d = Design(m, total_n - m)
        res = wmw_power(PowerQuery(F, G, d, alpha, side))
        curve.append(CurvePoint(d.omega, d.m, d.n, res.approx_power))

    best = max(curve, key=lambda p: (p.power, -abs(p.omega - 0.5), -p.m))
    optimal = Design(best.m, best.n)

    deficiency = None
    if compute_deficiency:
        def power_at(m, n):
            return wmw_power(PowerQuery(F, G, Design(m, n), alpha, side)).approx_power

        deficiency = _deficiency_search(power_at, total_n, 0.5, best.power)

    return DesignReport(
        optimal=optimal,
        optimal_power=best.power,
        power_curve=tuple(curve),
        deficiency_at_half=deficiency,
        epsilon=epsilon,
    )


def power_curve(F: DistributionSpec, G: DistributionSpec, total_n: int,
                alpha: float = 0.05, side: str = ONE_SIDED_UPPER,
                grid: list[float] | None = None) -> list[CurvePoint]:
    """Power at the realizable design nearest each requested allocation fraction."""
    if grid is None:
        grid = [m / total_n for m in range(1, total_n)]
    points = []
    for omega in grid:
        d = Design.from_total(total_n, omega)
        res = wmw_power(PowerQuery(F, G, d, alpha, side))
        points.append(CurvePoint(d.omega, d.m, d.n, res.approx_power))
    return points
