import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial import legendre as npleg
from scipy import special

from smoothconst import specfun
from smoothconst.specfun import DomainError


@pytest.mark.parametrize("x, expected", [(0.5, 1.7724538509055160), (1.0, 1.0), (1.5, 0.8862269254527580)])
def test_gamma_trivial_values(x, expected):
    assert specfun.gamma(x) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("x", [1e-3, 0.37, 2.5, 17.25, 99.5, 169.9])
def test_gamma_against_mpmath(x):
    assert specfun.gamma(x) == pytest.approx(float(mpmath.gamma(x)), rel=1e-12)


def test_gamma_domain():
    with pytest.raises(DomainError):
        specfun.gamma(0.0)
    with pytest.raises(DomainError):
        specfun.gamma(-2.0)


def test_gamma_ratio_large_arguments():
    expected = float(mpmath.gamma(200.5) / mpmath.gamma(199.0))
    assert specfun.gamma_ratio(200.5, 199.0) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 2.5, 7.0])
@pytest.mark.parametrize("x", [0.01, 0.7, 5.0, 42.0])
def test_bessel_functions_against_mpmath(nu, x):
    assert specfun.bessel_j(nu, x) == pytest.approx(float(mpmath.besselj(nu, x)), rel=1e-10, abs=1e-300)
    assert specfun.bessel_y(nu, x) == pytest.approx(float(mpmath.bessely(nu, x)), rel=1e-10)
    assert specfun.bessel_i(nu, x) == pytest.approx(float(mpmath.besseli(nu, x)), rel=1e-12)
    assert specfun.bessel_k(nu, x) == pytest.approx(float(mpmath.besselk(nu, x)), rel=1e-12)


@pytest.mark.parametrize("nu", [0.0, 0.5, 3.0])
@pytest.mark.parametrize("x", [1e-4, 1.0, 30.0, 1e3, 1e6])
def test_ik_product_against_mpmath(nu, x):
    expected = float(mpmath.besseli(nu, x) * mpmath.besselk(nu, x))
    assert specfun.bessel_ik_product(nu, x) == pytest.approx(expected, rel=1e-12)


def test_ik_product_half_order_closed_form():
    r = np.logspace(-3, 3, 50)
    assert np.allclose(specfun.bessel_ik_product(0.5, r), -np.expm1(-2 * r) / (2 * r), rtol=1e-13)


@pytest.mark.parametrize("nu", [0.0, 1.5, 10.0])
@pytest.mark.parametrize("x", [50.0, 2e4, 3e5])
def test_modulus_against_mpmath(nu, x):
    expected = float(mpmath.besselj(nu, x) ** 2 + mpmath.bessely(nu, x) ** 2)
    assert float(specfun.bessel_modulus_sq(nu, np.array([x]))[0]) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("nu", [0.0, 0.5, 2.0, 11.5])
def test_j_zeros_against_mpmath(nu):
    zeros = specfun.bessel_j_zeros(nu, 8)
    expected = [float(mpmath.besseljzero(nu, n)) for n in range(1, 9)]
    assert np.allclose(zeros, expected, rtol=1e-13)


@pytest.mark.parametrize("nu", [0.0, 1.0, 3.5])
def test_phase_crossings_hit_j_zeros(nu):
    x0 = max(20.0, 2 * nu) + 10
    pts = specfun.phase_crossings(nu, x0, math.pi / 2, 6)
    # Phase pi/2 + n pi/2 alternates between zeros of J and zeros of Y.
    values = np.array([specfun.bessel_j(nu, x) if i % 2 == 0 else specfun.bessel_y(nu, x) for i, x in enumerate(pts)])
    other = np.array([specfun.bessel_y(nu, x) if i % 2 == 0 else specfun.bessel_j(nu, x) for i, x in enumerate(pts)])
    assert np.all(pts > x0)
    assert np.all(np.diff(pts) > 1.0) and np.all(np.diff(pts) < 2.0)
    if specfun.bessel_j(nu, pts[0]) != pytest.approx(0, abs=1e-12):
        values, other = other, values
    assert np.max(np.abs(values)) < 1e-12 * np.max(np.abs(other))


def test_phase_crossings_equal_modulus_points():
    pts = specfun.phase_crossings(2.0, 30.0, math.pi / 4, 10)
    j, y = specfun.bessel_j(2.0, pts), specfun.bessel_y(2.0, pts)
    assert np.max(np.abs(j**2 - y**2)) < 1e-13


@pytest.mark.parametrize("k", range(7))
def test_legendre_two_dimensions_is_chebyshev(k):
    theta = np.linspace(0, math.pi, 41)
    assert np.allclose(specfun.legendre_d(k, 2, np.cos(theta)), np.cos(k * theta), atol=1e-13)


@pytest.mark.parametrize("k", range(7))
def test_legendre_three_dimensions(k):
    t = np.linspace(-1, 1, 41)
    coeffs = np.zeros(k + 1)
    coeffs[k] = 1
    assert np.allclose(specfun.legendre_d(k, 3, t), npleg.legval(t, coeffs), atol=1e-13)


@pytest.mark.parametrize("d", [4, 5, 7])
@pytest.mark.parametrize("k", [1, 3, 6])
def test_legendre_higher_dimensions_are_normalised_gegenbauer(d, k):
    t = np.linspace(-1, 1, 21)
    alpha = (d - 2) / 2
    expected = special.eval_gegenbauer(k, alpha, t) / special.eval_gegenbauer(k, alpha, 1.0)
    assert np.allclose(specfun.legendre_d(k, d, t), expected, atol=1e-13)


def test_legendre_all_rows_match_single():
    t = np.linspace(-1, 1, 9)
    rows = specfun.legendre_d_all(6, 5, t)
    for k in range(7):
        assert np.allclose(rows[k], specfun.legendre_d(k, 5, t), atol=1e-15)


@pytest.mark.parametrize("k", [0.0, 0.1, 0.5, 0.9, 0.999, 1.0])
def test_elliptic_e_against_scipy(k):
    assert specfun.elliptic_e(k) == pytest.approx(float(special.ellipe(k * k)), rel=1e-14)


def test_elliptic_e_domain():
    with pytest.raises(DomainError):
        specfun.elliptic_e(1.5)


@pytest.mark.parametrize("nu", [0.5, 1.0, 4.0])
def test_weber_schafheitlin_lambda_one(nu):
    # int J_nu^2 / t dt = 1 / (2 nu)
    assert specfun.weber_schafheitlin(1.0, nu) == pytest.approx(1 / (2 * nu), rel=1e-14)


@pytest.mark.parametrize("lam", [0.25, 0.5, 1.3, 1.9])
@pytest.mark.parametrize("a", [0.5, 1.0, 3.0])
def test_weber_schafheitlin_half_order(lam, a):
    # J_{1/2}(x)^2 = (1 - cos 2x) / (pi x) and
    # int_0^inf (1 - cos u) u^{-lam-1} du = -Gamma(-lam) cos(pi lam / 2).
    expected = a ** (lam - 1) * 2**lam * float(-mpmath.gamma(-lam) * mpmath.cos(mpmath.pi * lam / 2)) / math.pi
    assert specfun.weber_schafheitlin(lam, 0.5, a) == pytest.approx(expected, rel=1e-13)


def test_weber_schafheitlin_divergent():
    with pytest.raises(DomainError):
        specfun.weber_schafheitlin(2.5, 0.5)


@settings(max_examples=60, deadline=None)
@given(k=st.integers(0, 12), d=st.integers(2, 9), t=st.floats(-1, 1))
def test_legendre_bounded_by_one(k, d, t):
    assert abs(float(specfun.legendre_d(k, d, t))) <= 1 + 1e-12


@settings(max_examples=60, deadline=None)
@given(nu=st.floats(0, 6), r=st.floats(1e-3, 1e3), factor=st.floats(1.01, 10))
def test_ik_product_decreasing_in_r(nu, r, factor):
    assert specfun.bessel_ik_product(nu, r * factor) < specfun.bessel_ik_product(nu, r)
