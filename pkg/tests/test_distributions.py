import math

import numpy as np
import pytest
from scipy import integrate, stats

from wmwdesign import (
    DistributionSpec,
    ParameterError,
    chi_square,
    exponential,
    log_normal,
    normal,
    student_t,
)

ALL_FAMILIES = [
    normal(0.0, 1.0),
    normal(0.75, 2.0),
    exponential(0.75),
    log_normal(0.0, 1.0),
    chi_square(5.0),
    chi_square(14.0),
    student_t(3.0, 17.0, 2.8),
]


def test_standard_normal_mode_density():
    assert normal(0, 1).pdf(0.0) == pytest.approx(1.0 / math.sqrt(2 * math.pi), abs=1e-12)


def test_exponential_density_zero_below_support():
    assert exponential(0.75).pdf(-0.5) == 0.0


def test_shifted_chi_square_density_is_translated():
    spec = chi_square(5.0, shift=1.5)
    base = chi_square(5.0)
    for x in (0.0, 2.0, 4.5, 10.0):
        assert spec.pdf(x) == base.pdf(x - 1.5)


def test_cdf_trivia():
    assert normal(0, 1).cdf(0.0) == pytest.approx(0.5, abs=1e-14)
    assert exponential(0.75).cdf(math.log(2) / 0.75) == pytest.approx(0.5, abs=1e-12)
    # symmetric about the location parameter
    assert student_t(3, 17, 2.8).cdf(17.0) == pytest.approx(0.5, abs=1e-14)


def test_quantile_trivia():
    assert normal(0, 1).quantile(0.975) == pytest.approx(1.959964, abs=1e-6)
    assert exponential(1.0).quantile(1 - math.exp(-1)) == pytest.approx(1.0, abs=1e-12)
    assert log_normal(0, 1).quantile(0.5) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("spec", ALL_FAMILIES, ids=lambda s: s.family)
def test_quantile_cdf_round_trip(spec):
    ps = [0.001, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999]
    for p in ps:
        assert abs(spec.cdf(spec.quantile(p)) - p) < 1e-8


@pytest.mark.parametrize("spec", ALL_FAMILIES, ids=lambda s: s.family)
def test_shift_equivariance_exact(spec):
    shifted = spec.with_shift(spec.shift + 2.25)
    for x in (-1.0, 0.5, 3.0, 20.0):
        assert shifted.cdf(x) == spec.cdf(x - 2.25)


@pytest.mark.parametrize("spec", ALL_FAMILIES, ids=lambda s: s.family)
def test_density_normalization(spec):
    lo, hi = spec.quantile(1e-12), spec.quantile(1 - 1e-12)
    mass, _ = integrate.quad(spec.pdf, lo, hi, epsabs=1e-10, limit=300)
    assert 1 - 1e-6 <= mass <= 1 + 1e-9


def test_sampling_ks_against_normal_cdf():
    rng = np.random.default_rng(123)
    draws = normal(0, 1).sample(rng, 10**5)
    stat = stats.kstest(draws, stats.norm.cdf).statistic
    # KS critical value at alpha=0.001 for n=1e5 is ~1.95/sqrt(n) ≈ 0.0062
    assert stat < 0.01


def test_sampling_reproducible():
    a = exponential(0.75).sample(np.random.default_rng(7), 1000)
    b = exponential(0.75).sample(np.random.default_rng(7), 1000)
    np.testing.assert_array_equal(a, b)


def test_sampling_exponential_mean():
    rng = np.random.default_rng(99)
    draws = exponential(0.75).sample(rng, 10**5)
    se = (1 / 0.75) / math.sqrt(10**5)
    assert abs(draws.mean() - 4.0 / 3.0) < 3 * se


@pytest.mark.parametrize(
    "ctor,kwargs",
    [
        (normal, {"mean": 0, "sd": 0}),
        (normal, {"mean": 0, "sd": -1}),
        (exponential, {"rate": 0}),
        (log_normal, {"log_mean": 0, "log_sd": -0.5}),
        (chi_square, {"df": 0}),
        (student_t, {"df": -3}),
        (student_t, {"df": 3, "scale": 0}),
    ],
)
def test_invalid_parameters_rejected(ctor, kwargs):
    with pytest.raises(ParameterError):
        ctor(**kwargs)


def test_quantile_domain_error():
    with pytest.raises(ValueError):
        normal(0, 1).quantile(0.0)
    with pytest.raises(ValueError):
        normal(0, 1).quantile(1.0)


def test_json_round_trip():
    spec = student_t(3, 17, 2.8, shift=-1.0)
    data = spec.to_dict()
    assert data == {
        "family": "studentt",
        "params": {"df": 3.0, "location": 17.0, "scale": 2.8},
        "shift": -1.0,
    }
    assert DistributionSpec.from_dict(data) == spec


def test_json_parse_errors_name_the_field():
    with pytest.raises(ParameterError, match="family"):
        DistributionSpec.from_dict({"params": {}})
    with pytest.raises(ParameterError, match="params.sd"):
        DistributionSpec.from_dict({"family": "normal", "params": {"mean": 0}})
    with pytest.raises(ParameterError, match="unexpected"):
        DistributionSpec.from_dict(
            {"family": "exponential", "params": {"rate": 1, "sd": 2}}
        )


def test_json_family_aliases():
    spec = DistributionSpec.from_json('{"family": "chi_square", "params": {"df": 5}}')
    assert spec == chi_square(5.0)
