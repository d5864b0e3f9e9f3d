"""Normal-approximation power of the WMW test, deficiency, and the Welch baseline."""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import stats

from .distributions import DistributionSpec
from .moments import Design, alt_moments

ONE_SIDED_UPPER = "one_sided_upper"
TWO_SIDED = "two_sided"
SIDES = (ONE_SIDED_UPPER, TWO_SIDED)

# below this group size the normal approximation is flagged as low confidence
MIN_GROUP_SIZE = 7


class AllocationSearchError(RuntimeError):
    """Deficiency search exhausted its sample-size cap."""


def _check_side(side: str):
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}, got {side!r}")


def _check_alpha(alpha: float):
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")


@dataclass(frozen=True)
class PowerQuery:
    F: DistributionSpec
    G: DistributionSpec
    design: Design
    alpha: float = 0.05
    side: str = ONE_SIDED_UPPER

    def __post_init__(self):
        _check_alpha(self.alpha)
        _check_side(self.side)


@dataclass(frozen=True)
class PowerResult:
    approx_power: float
    mu_n: float
    sigma2_n: float
    method: str  # wmw_normal_approx | welch_approx | monte_carlo
    low_confidence: bool = False
    degenerate_variance: bool = False


def _normal_power(mu: float, sigma2: float, alpha: float, side: str) -> float:
    sigma = math.sqrt(sigma2)
    if side == ONE_SIDED_UPPER:
        return 1.0 - stats.norm.cdf((stats.norm.ppf(1.0 - alpha) - mu) / sigma)
    return (
        stats.norm.cdf((stats.norm.ppf(alpha / 2.0) - mu) / sigma)
        - stats.norm.cdf((stats.norm.ppf(1.0 - alpha / 2.0) - mu) / sigma)
        + 1.0
    )


def wmw_power(q: PowerQuery) -> PowerResult:
    """Approximate power of the WMW test from the standardized moments."""
    ms = alt_moments(q.design, q.F, q.G)
    low = min(q.design.m, q.design.n) < MIN_GROUP_SIZE
    if ms.sigma2_n <= 0.0:
        # all mass of U on one side; the normal approximation degenerates
        power = 1.0 if ms.mu_n > 0 or (q.side == TWO_SIDED and ms.mu_n != 0) else 0.0
        return PowerResult(power, ms.mu_n, ms.sigma2_n, "wmw_normal_approx",
                           low_confidence=True, degenerate_variance=True)
    power = _normal_power(ms.mu_n, ms.sigma2_n, q.alpha, q.side)
    return PowerResult(power, ms.mu_n, ms.sigma2_n, "wmw_normal_approx", low_confidence=low)


def deficiency_symmetric(omega: float) -> float:
    """Closed-form deficiency 1 / (4 omega (1 - omega)) - 1 of allocation omega."""
    if not 0.0 < omega < 1.0:
        raise ValueError(f"omega must be in (0, 1), got {omega}")
    return 1.0 / (4.0 * omega * (1.0 - omega)) - 1.0


def _deficiency_search(power_at, total_n: int, omega: float, target: float,
                       cap_factor: int = 20) -> float:
    """Smallest D >= 0 with power(omega, N(1+D)) >= target, over integer totals."""
    for np_total in range(total_n, cap_factor * total_n + 1):
        m = int(round(omega * np_total))
        n = np_total - m
        if m < 1 or n < 1:
            continue
        if power_at(m, n) >= target - 1e-12:
            return np_total / total_n - 1.0
    raise AllocationSearchError(
        f"no total sample size up to {cap_factor}x reaches the optimal power"
    )


def deficiency_general(F: DistributionSpec, G: DistributionSpec, total_n: int,
                       omega: float, alpha: float = 0.05,
                       side: str = ONE_SIDED_UPPER, epsilon: float = 0.1) -> float:
    """Extra total sample size fraction needed at allocation omega to match the optimum."""
    from .design import optimal_design  # deferred: design builds on this module

    report = optimal_design(F, G, total_n, alpha=alpha, side=side, epsilon=epsilon,
                            compute_deficiency=False)

    def power_at(m, n):
        return wmw_power(PowerQuery(F, G, Design(m, n), alpha, side)).approx_power

    return _deficiency_search(power_at, total_n, omega, report.optimal_power)


# -- Welch t-test baseline ----------------------------------------------


def welch_optimal_omega(sd1: float, sd2: float) -> float:
    """Allocation 1 / (1 + sd2/sd1), favoring the higher-variance group."""
    if sd1 <= 0 or sd2 <= 0:
        raise ValueError("standard deviations must be > 0")
    return 1.0 / (1.0 + sd2 / sd1)


def welch_power(mu1: float, sd1: float, mu2: float, sd2: float, design: Design,
                alpha: float = 0.05, side: str = ONE_SIDED_UPPER) -> PowerResult:
    """Power of the Welch t-test via the noncentral t distribution."""
    _check_alpha(alpha)
    _check_side(side)
    if sd1 <= 0 or sd2 <= 0:
        raise ValueError("standard deviations must be > 0")
    m, n = design.m, design.n
    v1, v2 = sd1 * sd1 / m, sd2 * sd2 / n
    se2 = v1 + v2
    df = se2 * se2 / (v1 * v1 / (m - 1) + v2 * v2 / (n - 1)) if min(m, n) > 1 else 1.0
    ncp = (mu1 - mu2) / math.sqrt(se2)
    if side == ONE_SIDED_UPPER:
        tcrit = stats.t.ppf(1.0 - alpha, df)
        power = stats.nct.sf(tcrit, df, ncp)
    else:
        tcrit = stats.t.ppf(1.0 - alpha / 2.0, df)
        power = stats.nct.sf(tcrit, df, ncp) + stats.nct.cdf(-tcrit, df, ncp)
    return PowerResult(float(power), ncp, 1.0, "welch_approx",
                       low_confidence=min(m, n) < 2)


def welch_deficiency(mu1: float, sd1: float, mu2: float, sd2: float, total_n: int,
                     omega: float, alpha: float = 0.05,
                     side: str = ONE_SIDED_UPPER, epsilon: float = 0.1) -> float:
    """Deficiency of allocation omega for the Welch baseline test."""
    lo = max(2, math.ceil(epsilon * total_n))
    hi = min(total_n - 2, math.floor((1.0 - epsilon) * total_n))
    if lo > hi:
        raise ValueError(f"no realizable allocations for N={total_n}, epsilon={epsilon}")

    def power_at(m, n):
        return welch_power(mu1, sd1, mu2, sd2, Design(m, n), alpha, side).approx_power

    target = max(power_at(m, total_n - m) for m in range(lo, hi + 1))
    return _deficiency_search(power_at, total_n, omega, target)
