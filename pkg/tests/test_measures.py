import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mfzeta import NEG_INF, IfsModel, alpha, beta, legendre, legendre_sup, ratio_range, spectrum_curve
from mfzeta.measures import beta_residual, degenerate_dimension, legendre_info

from conftest import random_model


def binomial_beta(q):
    return math.log2(0.2**q + 0.8**q)


def test_beta_examples(binomial, uniform):
    assert beta(binomial, [2.0]) == pytest.approx(math.log2(0.68), abs=1e-12)
    assert beta(binomial, [0.0]) == pytest.approx(1.0, abs=1e-12)
    assert beta(binomial, [1.0]) == pytest.approx(0.0, abs=1e-12)
    for q in (-3.0, 0.0, 2.5):
        assert beta(uniform, [q]) == pytest.approx(1.0 - q, abs=1e-12)


def test_alpha_at_one_is_entropy_ratio(binomial):
    h = -(0.2 * math.log(0.2) + 0.8 * math.log(0.8))
    assert alpha(binomial, [1.0])[0] == pytest.approx(h / math.log(2), abs=1e-9)


def test_ratio_range(binomial):
    np.testing.assert_allclose(ratio_range(binomial), [[math.log2(1 / 0.8), math.log2(5)]], rtol=1e-14)


def test_legendre_outside_range(binomial):
    assert legendre(binomial, 0.1) is NEG_INF
    assert legendre(binomial, 3.0) is NEG_INF


def test_legendre_peak_and_endpoints(binomial):
    # f(alpha(0)) = beta(0) = 1 is the maximum
    assert legendre(binomial, alpha(binomial, [0.0])) == pytest.approx(1.0, abs=1e-8)
    lo, hi = ratio_range(binomial)[0]
    info = legendre_info(binomial, lo)
    assert info.boundary and abs(info.value) < 1e-6
    assert abs(legendre(binomial, hi)) < 1e-6


def test_uniform_point_spectrum(uniform):
    assert degenerate_dimension(uniform) == pytest.approx(1.0)
    assert legendre(uniform, 1.0) == pytest.approx(1.0, abs=1e-8)
    assert legendre(uniform, 1.1) is NEG_INF


def test_model_validation():
    with pytest.raises(ValueError, match="sum to 1"):
        IfsModel((0.5, 0.5), ((0.3, 0.6),))
    with pytest.raises(ValueError):
        IfsModel((0.5, 1.2), ((0.5, 0.5),))
    with pytest.raises(ValueError):
        IfsModel((0.5, 0.5), ((0.2, 0.3, 0.5),))


def test_alpha_matches_finite_difference():
    rng = np.random.default_rng(5)
    for _ in range(10):
        m = random_model(rng, int(rng.integers(2, 5)))
        q = float(rng.uniform(-4, 4))
        h = 1e-5
        fd = -(beta(m, [q + h]) - beta(m, [q - h])) / (2 * h)
        assert alpha(m, [q])[0] == pytest.approx(fd, abs=1e-6)


def test_beta_convex_and_decreasing():
    rng = np.random.default_rng(6)
    qs = np.linspace(-6, 6, 61)
    for _ in range(5):
        m = random_model(rng, 3)
        b = np.array([beta(m, [q]) for q in qs])
        assert np.all(np.diff(b) < 0)
        assert np.all(b[:-2] + b[2:] - 2 * b[1:-1] >= -1e-10)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(-20, 20))
def test_beta_residual_small(seed, q):
    m = random_model(np.random.default_rng(seed), 3)
    assert abs(beta_residual(m, [q], beta(m, [q]))) < 1e-10


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(-8, 8))
def test_legendre_duality_random(seed, q):
    m = random_model(np.random.default_rng(seed), 2)
    a = alpha(m, [q])[0]
    lo, hi = ratio_range(m)[0]
    if not lo + 1e-9 < a < hi - 1e-9:
        return
    assert legendre(m, a) == pytest.approx(q * a + beta(m, [q]), abs=1e-7)


def test_legendre_concave(binomial):
    lo, hi = ratio_range(binomial)[0]
    xs = np.linspace(lo + 0.01, hi - 0.01, 41)
    f = np.array([legendre(binomial, x) for x in xs])
    assert np.all(f[:-2] + f[2:] - 2 * f[1:-1] <= 1e-8)


def test_legendre_sup_interval(binomial):
    # the peak alpha(0) lies outside [0.5, 1.0], so the sup sits at the right end
    assert legendre_sup(binomial, 0.5, 1.0) == pytest.approx(legendre(binomial, 1.0), abs=1e-9)
    assert legendre_sup(binomial, 0.0, 5.0) == pytest.approx(1.0, abs=1e-8)
    assert legendre_sup(binomial, 2.5, 3.0) is NEG_INF


def test_mixed_beta_and_legendre():
    m = IfsModel((0.5, 0.5), ((0.2, 0.8), (0.5, 0.5)))
    for q in ([0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [2.0, -1.0]):
        assert abs(beta_residual(m, q, beta(m, q))) < 1e-10
    # second row is uniform, so the second alpha coordinate is pinned at 1
    one = IfsModel((0.5, 0.5), ((0.2, 0.8),))
    assert legendre(m, [0.9, 1.0]) == pytest.approx(legendre(one, 0.9), abs=1e-6)
    assert legendre(m, [0.9, 1.2]) is NEG_INF


def test_spectrum_curve(binomial):
    curve = spectrum_curve(binomial, [[q] for q in np.linspace(-10, 10, 201)])
    assert len(curve) == 201
    f = np.array([s.f for s in curve.samples])
    assert f.max() == pytest.approx(1.0, abs=1e-10)
    assert curve.samples[100].q == [0.0]
