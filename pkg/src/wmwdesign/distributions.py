"""Parametric continuous distributions used as the two group models.

Every distribution is described by an immutable :class:`DistributionSpec`
holding a family name, its parameters, and an additive shift.  A spec with
shift ``a`` describes the variate ``X_base + a``, so a pure location
alternative is obtained by shifting one of two otherwise identical specs.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import stats


class ParameterError(ValueError):
    """A distribution parameter is outside its domain."""


# canonical parameter order per family
_FAMILIES = {
    "normal": ("mean", "sd"),
    "exponential": ("rate",),
    "lognormal": ("logMean", "logSd"),
    "chisquare": ("df",),
    "studentt": ("df", "location", "scale"),
}

_POSITIVE = frozenset({"sd", "rate", "logSd", "df", "scale"})

_ALIASES = {
    "chi_square": "chisquare",
    "chi2": "chisquare",
    "student_t": "studentt",
    "t": "studentt",
    "log_normal": "lognormal",
}


@dataclass(frozen=True)
class DistributionSpec:
    """Immutable description of a (possibly shifted) continuous distribution.

    ``params`` is a tuple of ``(name, value)`` pairs in the family's
    canonical order, which keeps the spec hashable so downstream quadrature
    results can be cached per (F, G) pair.
    """

    family: str
    params: tuple[tuple[str, float], ...]
    shift: float = 0.0

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ParameterError(f"unknown family {self.family!r}")
        names = tuple(name for name, _ in self.params)
        if names != _FAMILIES[self.family]:
            raise ParameterError(
                f"{self.family} expects parameters {_FAMILIES[self.family]}, got {names}"
            )
        for name, value in self.params:
            if not np.isfinite(value):
                raise ParameterError(f"{self.family}.{name} must be finite, got {value}")
            if name in _POSITIVE and value <= 0:
                raise ParameterError(f"{self.family}.{name} must be > 0, got {value}")
        if not np.isfinite(self.shift):
            raise ParameterError(f"shift must be finite, got {self.shift}")

    def param(self, name: str) -> float:
        return dict(self.params)[name]

    def with_shift(self, shift: float) -> "DistributionSpec":
        return dataclasses.replace(self, shift=shift)

    # -- probability functions -------------------------------------------

    def pdf(self, x):
        return _frozen(self).pdf(np.asarray(x, dtype=float) - self.shift)

    def cdf(self, x):
        return _frozen(self).cdf(np.asarray(x, dtype=float) - self.shift)

    def quantile(self, p):
        p = np.asarray(p, dtype=float)
        if np.any(p <= 0) or np.any(p >= 1):
            raise ValueError("quantile requires 0 < p < 1")
        return _frozen(self).ppf(p) + self.shift

    def sample(self, rng: np.random.Generator, k):
        """Draw ``k`` variates (int or shape tuple) using ``rng``."""
        return _frozen(self).rvs(size=k, random_state=rng) + self.shift

    def support(self) -> tuple[float, float]:
        lo, hi = _frozen(self).support()
        return lo + self.shift, hi + self.shift

    def mean(self) -> float:
        return _frozen(self).mean() + self.shift

    def sd(self) -> float:
        return _frozen(self).std()

    # -- JSON wire format ------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "params": {name: value for name, value in self.params},
            "shift": self.shift,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DistributionSpec":
        if not isinstance(data, dict):
            raise ParameterError("spec must be a JSON object")
        try:
            family = data["family"]
        except KeyError:
            raise ParameterError("spec.family is missing") from None
        family = _ALIASES.get(family, family)
        if family not in _FAMILIES:
            raise ParameterError(f"spec.family: unknown family {data['family']!r}")
        raw = data.get("params", {})
        params = []
        for name in _FAMILIES[family]:
            if name not in raw:
                raise ParameterError(f"spec.params.{name} is missing for family {family!r}")
            params.append((name, float(raw[name])))
        extra = set(raw) - set(_FAMILIES[family])
        if extra:
            raise ParameterError(f"spec.params: unexpected keys {sorted(extra)}")
        return cls(family, tuple(params), float(data.get("shift", 0.0)))

    @classmethod
    def from_json(cls, text: str) -> "DistributionSpec":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParameterError(f"spec is not valid JSON: {exc}") from exc
        return cls.from_dict(data)


@lru_cache(maxsize=256)
def _frozen(spec: DistributionSpec):
    """scipy frozen distribution for the unshifted base variate."""
    p = dict(spec.params)
    if spec.family == "normal":
        return stats.norm(loc=p["mean"], scale=p["sd"])
    if spec.family == "exponential":
        return stats.expon(scale=1.0 / p["rate"])
    if spec.family == "lognormal":
        return stats.lognorm(s=p["logSd"], scale=np.exp(p["logMean"]))
    if spec.family == "chisquare":
        return stats.chi2(df=p["df"])
    if spec.family == "studentt":
        return stats.t(df=p["df"], loc=p["location"], scale=p["scale"])
    raise AssertionError(spec.family)


# -- convenience constructors -------------------------------------------


def normal(mean: float, sd: float, shift: float = 0.0) -> DistributionSpec:
    return DistributionSpec("normal", (("mean", float(mean)), ("sd", float(sd))), shift)


def exponential(rate: float, shift: float = 0.0) -> DistributionSpec:
    return DistributionSpec("exponential", (("rate", float(rate)),), shift)


def log_normal(log_mean: float, log_sd: float, shift: float = 0.0) -> DistributionSpec:
    return DistributionSpec(
        "lognormal", (("logMean", float(log_mean)), ("logSd", float(log_sd))), shift
    )


def chi_square(df: float, shift: float = 0.0) -> DistributionSpec:
    return DistributionSpec("chisquare", (("df", float(df)),), shift)


def student_t(
    df: float, location: float = 0.0, scale: float = 1.0, shift: float = 0.0
) -> DistributionSpec:
    return DistributionSpec(
        "studentt",
        (("df", float(df)), ("location", float(location)), ("scale", float(scale))),
        shift,
    )
