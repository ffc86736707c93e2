import mpmath
import numpy as np
import pytest

from ellipdilog import InvalidArgumentError, Lattice, TorusPoint, half_period_values, theta1, wp, wp_prime
from ellipdilog.weierstrass import d2log_theta1, dlog_theta1, log_theta1, wp_diff_divisor
from ellipdilog.efield import evaluate, function_from_divisor

TAUS = [0.15 + 1.1j, -0.3 + 0.8j, 0.45 + 0.5j, 0.05 + 1.7j]


def mp_wp(z, tau):
    """wp for <1, tau> from Jacobi theta constants (independent of the product code)."""
    p = mpmath.exp(1j * mpmath.pi * tau)
    t2, t3 = mpmath.jtheta(2, 0, p), mpmath.jtheta(3, 0, p)
    x = mpmath.pi * z
    main = (mpmath.pi * t2 * t3 * mpmath.jtheta(4, x, p) / mpmath.jtheta(1, x, p)) ** 2
    return complex(main - mpmath.pi ** 2 / 3 * (t2 ** 4 + t3 ** 4))


def sample(lat, n, seed):
    rng = np.random.default_rng(seed)
    return (rng.uniform(-2, 3, n) + rng.uniform(-2, 3, n) * lat.tau)


@pytest.mark.parametrize("tau", TAUS)
def test_theta1_matches_mpmath(tau):
    lat = Lattice(tau)
    p = complex(mpmath.exp(1j * mpmath.pi * tau))
    for z in sample(lat, 20, 1):
        want = complex(mpmath.jtheta(1, mpmath.pi * z, p))
        assert abs(theta1(z, lat) - want) <= 1e-12 * max(1, abs(want))


@pytest.mark.parametrize("tau", TAUS)
def test_log_theta1_exponentiates_to_theta1(tau):
    lat = Lattice(tau)
    z = sample(lat, 50, 2)
    assert np.max(np.abs(np.exp(log_theta1(z, lat)) / theta1(z, lat) - 1)) < 1e-11


@pytest.mark.parametrize("tau", TAUS)
def test_log_derivatives_by_finite_differences(tau):
    lat = Lattice(tau)
    z = sample(lat, 20, 3)
    h = 1e-5
    fd1 = (log_theta1(z + h, lat) - log_theta1(z - h, lat)) / (2 * h)
    assert np.max(np.abs(fd1 - dlog_theta1(z, lat)) / (1 + np.abs(fd1))) < 1e-8
    fd2 = (dlog_theta1(z + h, lat) - dlog_theta1(z - h, lat)) / (2 * h)
    assert np.max(np.abs(fd2 - d2log_theta1(z, lat)) / (1 + np.abs(fd2))) < 1e-7


@pytest.mark.parametrize("tau", TAUS)
def test_wp_matches_theta_constant_formula(tau):
    lat = Lattice(tau)
    for z in sample(lat, 15, 4):
        want = mp_wp(z, tau)
        assert abs(wp(z, lat) - want) <= 1e-11 * max(1, abs(want))


@pytest.mark.parametrize("tau", TAUS)
def test_wp_differential_equation(tau):
    lat = Lattice(tau)
    e = np.array(half_period_values(lat))
    assert abs(e.sum()) < 1e-11 * np.max(np.abs(e))
    z = sample(lat, 30, 5)
    lhs = wp_prime(z, lat) ** 2
    rhs = 4 * (wp(z, lat) - e[0]) * (wp(z, lat) - e[1]) * (wp(z, lat) - e[2])
    assert np.max(np.abs(lhs - rhs) / (1 + np.abs(lhs))) < 1e-9


def test_wp_laurent_expansion():
    lat = Lattice(TAUS[0])
    e = np.array(half_period_values(lat))
    g2 = 2 * np.sum(e ** 2)
    g3 = 4 * np.prod(e)
    for z in (1e-3, 1e-3j, 2e-3 * np.exp(0.7j), 1e-2 * np.exp(2.1j)):
        assert abs(z * z * wp(z, lat) - 1 - g2 * z ** 4 / 20 - g3 * z ** 6 / 28) < 1e-13


def test_wp_periodic_and_even():
    lat = Lattice(TAUS[1])
    z = sample(lat, 10, 6)
    assert np.allclose(wp(z, lat), wp(z + 1 - 2 * lat.tau, lat), rtol=1e-11)
    assert np.allclose(wp(z, lat), wp(-z, lat), rtol=1e-11)
    assert np.allclose(wp_prime(z, lat), -wp_prime(-z, lat), rtol=1e-10)


def test_wp_pole_rejected():
    lat = Lattice(TAUS[0])
    with pytest.raises(InvalidArgumentError):
        wp(1 + lat.tau + 1e-9, lat)


def test_wp_difference_divisor():
    lat = Lattice(TAUS[0])
    a = TorusPoint(0.21 + 0.33 * lat.tau, lat)
    b = TorusPoint(0.67 + 0.12 * lat.tau, lat)
    d = wp_diff_divisor(a, b)
    assert len(d.zeros()) == 4 and len(d.poles()) == 4
    for z in d.zeros():
        assert abs(wp(z - a.lift, lat) - wp(z - b.lift, lat)) < 1e-9
    f = function_from_divisor(d.zeros(), d.poles(), lat, scale=1.0)
    z = sample(lat, 5, 7)
    ratio = evaluate(f, z) / (wp(z - a.lift, lat) - wp(z - b.lift, lat))
    assert np.allclose(ratio, ratio[0], rtol=1e-9)
    with pytest.raises(InvalidArgumentError):
        wp_diff_divisor(a, a + 1)
