import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from landau_toeplitz.errors import CapacityExceeded, DimensionMismatch, DomainError
from landau_toeplitz.specfun import (
    DEGREE_CAP,
    degree_slice,
    gamma_ratio_deviation,
    graded_multi_indices,
    laguerre,
    log_gamma,
    multi_factorial,
    radial_ball_moment,
    radial_gaussian_moment,
    sphere_monomial_coefficient,
    sphere_monomial_integral,
    sphere_volume,
    unit,
)


def test_multi_factorial_examples():
    assert multi_factorial((0, 0)) == 1
    assert multi_factorial((2, 3)) == 12
    assert multi_factorial((5,)) == 120


def test_multi_factorial_refuses_beyond_cap():
    with pytest.raises(CapacityExceeded):
        multi_factorial((DEGREE_CAP + 1,))


def test_graded_order_degree_then_descending_lex():
    assert graded_multi_indices(2, 2) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert len(degree_slice(3, 4)) == math.comb(6, 2)
    assert unit(3, 2) == (0, 1, 0)


@pytest.mark.parametrize("x, expected", [(1.0, 0.0), (0.5, math.log(math.sqrt(math.pi))), (10.0, math.log(362880))])
def test_log_gamma_examples(x, expected):
    assert log_gamma(x) == pytest.approx(expected, rel=1e-13, abs=1e-15)


def test_log_gamma_domain():
    with pytest.raises(DomainError):
        log_gamma(0.0)


def test_gamma_ratio_deviation_examples():
    assert gamma_ratio_deviation(100.0, 0.5) == pytest.approx(-0.01249, abs=5e-6)
    assert abs(gamma_ratio_deviation(100.0, 0.5)) <= 0.2 * 100**-0.5
    assert gamma_ratio_deviation(37.0, 0.0) == 0.0
    assert gamma_ratio_deviation(50.0, 1.0) == pytest.approx(0.0, abs=1e-11)


def test_gamma_ratio_deviation_domain():
    with pytest.raises(DomainError):
        gamma_ratio_deviation(1.2, 0.5)


@pytest.mark.parametrize("a", [-0.5, 0.5, 1.5])
def test_gamma_remainder_bound(a):
    xs = np.geomspace(10, 1000, 100)
    scaled = [abs(gamma_ratio_deviation(x, a)) * x ** (1 - a) for x in xs]
    assert max(scaled) <= 1.0
    # the remainder constant is a(a-1)/2 to leading order
    assert scaled[-1] == pytest.approx(abs(a * (a - 1) / 2), rel=1e-2)


def test_laguerre_examples():
    assert laguerre(0, 3.7) == 1.0
    assert laguerre(1, 2.0) == -1.0
    assert laguerre(2, 1.0) == pytest.approx(-0.5, abs=1e-15)


def test_laguerre_matches_explicit_sum():
    for k in range(8):
        for x in (0.0, 0.3, 2.5, 7.0):
            explicit = sum((-1) ** j * math.comb(k, j) * x**j / math.factorial(j) for j in range(k + 1))
            assert laguerre(k, x) == pytest.approx(explicit, rel=1e-12, abs=1e-12)


def test_laguerre_recurrence():
    for x in np.linspace(0, 50, 41):
        for k in range(1, 30):
            lhs = (k + 1) * laguerre(k + 1, x)
            rhs = (2 * k + 1 - x) * laguerre(k, x) - k * laguerre(k - 1, x)
            assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12 * max(1.0, abs(lhs)))


def test_sphere_integral_examples():
    assert sphere_monomial_integral((0,), (0,)) == pytest.approx(2 * math.pi)
    assert sphere_monomial_integral((0, 0), (0, 0)) == pytest.approx(2 * math.pi**2)
    assert sphere_monomial_integral((1, 0), (1, 0)) == pytest.approx(math.pi**2)
    assert sphere_monomial_coefficient((1, 0), (1, 0)) == Fraction(1)
    assert sphere_volume(2) == pytest.approx(2 * math.pi**2)


def test_sphere_integral_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        sphere_monomial_coefficient((1,), (1, 0))


def _s3_quadrature(alpha, beta, nt=40, nphi=24):
    """Tensor oracle on S^3: Gauss-Legendre in t, trapezoid in the phases."""
    x, w = np.polynomial.legendre.leggauss(nt)
    t = (x + 1) * np.pi / 4
    wt = w * np.pi / 4
    p = 2 * np.pi * np.arange(nphi) / nphi
    T, P1, P2 = np.meshgrid(t, p, p, indexing="ij")
    z1 = np.cos(T) * np.exp(1j * P1)
    z2 = np.sin(T) * np.exp(1j * P2)
    f = z1 ** alpha[0] * z2 ** alpha[1] * np.conj(z1) ** beta[0] * np.conj(z2) ** beta[1]
    dens = np.cos(T) * np.sin(T) * wt[:, None, None] * (2 * np.pi / nphi) ** 2
    return np.sum(f * dens)


def test_sphere_integral_against_quadrature_n2():
    for alpha in graded_multi_indices(2, 4):
        for beta in graded_multi_indices(2, 4):
            exact = sphere_monomial_integral(alpha, beta)
            approx = _s3_quadrature(alpha, beta)
            assert abs(approx - exact) <= 1e-8 * max(1.0, abs(exact))


def test_sphere_integral_against_quadrature_n1():
    p = 2 * np.pi * np.arange(64) / 64
    for a in range(8):
        for b in range(8):
            approx = np.mean(np.exp(1j * (a - b) * p)) * 2 * np.pi
            assert abs(approx - sphere_monomial_integral((a,), (b,))) < 1e-12


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(1, 3),
    data=st.data(),
)
def test_sphere_integral_symmetry(n, data):
    idx = st.lists(st.integers(0, 8), min_size=n, max_size=n).map(tuple)
    alpha, beta = data.draw(idx), data.draw(idx)
    v = sphere_monomial_integral(alpha, beta)
    assert v == sphere_monomial_integral(beta, alpha)
    if alpha != beta:
        assert v == 0.0
    else:
        assert v > 0


def test_radial_gaussian_examples():
    assert radial_gaussian_moment(1) == 1.0
    assert radial_gaussian_moment(0) == pytest.approx(1.2533141373, rel=1e-10)
    assert radial_gaussian_moment(2) == pytest.approx(1.2533141373, rel=1e-10)


def test_radial_gaussian_against_quadrature():
    for p in range(12):
        val, _ = integrate.quad(lambda r: r**p * math.exp(-r * r / 2), 0, np.inf, epsabs=0, epsrel=1e-13)
        assert radial_gaussian_moment(p) == pytest.approx(val, rel=1e-10)
        assert radial_gaussian_moment(p) == pytest.approx(2 ** ((p - 1) / 2) * math.gamma((p + 1) / 2), rel=1e-13)


def test_radial_ball_moment():
    assert radial_ball_moment(0) == 1
    assert radial_ball_moment(2) == Fraction(1, 3)
    assert radial_ball_moment(5) == Fraction(1, 6)
