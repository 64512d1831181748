import math

import mpmath
import numpy as np
import pytest
from scipy import special

from smoothconst import closedform, lambdak, search, weights
from smoothconst.closedform import HypothesisFailed

PI = math.pi

# sup_r (1+r^2)^{1/2} I_1(r) K_1(r), located by mpmath root finding on the derivative
_IK1 = lambda r: mpmath.sqrt(1 + r * r) * mpmath.besseli(1, r) * mpmath.besselk(1, r)
_IK1_ARGMAX = mpmath.findroot(lambda r: mpmath.diff(_IK1, r), 1.5)
IK1_SUP = float(_IK1(_IK1_ARGMAX))


def test_four_dimensional_power_constant_derived():
    assert IK1_SUP == pytest.approx(0.5023904894, rel=1e-9)
    assert closedform.type_a_schrodinger(4) == pytest.approx(PI * IK1_SUP, rel=1e-11)


def test_four_dimensional_power_constant_five_decimals():
    assert closedform.type_a_schrodinger(4) / PI == pytest.approx(0.50239, abs=1e-5)


@pytest.mark.parametrize("d, expected", [(3, PI), (5, PI / 2), (6, PI / 2), (9, PI / 2)])
def test_power_schrodinger(d, expected):
    assert closedform.type_a_schrodinger(d) == expected


@pytest.mark.parametrize(
    "d, m, expected",
    [(3, 0.0, 4 * PI / 3), (3, 1.0, 2 * PI), (4, 0.0, PI), (5, 0.0, PI), (5, 2.0, PI), (7, 0.5, PI)],
)
def test_power_dirac(d, m, expected):
    assert closedform.type_a_dirac(d, m) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("m", [0.3, 1.0, 4.0])
def test_power_dirac_four_dimensions_massive(m):
    def f(r):
        ratio = m / mpmath.sqrt(r * r + m * m)
        ik = lambda mu: mpmath.besseli(mu, r) * mpmath.besselk(mu, r)
        return mpmath.sqrt(1 + r * r) * ((1 + ratio) * ik(1) + (1 - ratio) * ik(2))

    grid = [float(x) for x in np.logspace(-3, 3, 121)]
    best = max(grid, key=lambda r: f(r))
    peak = max(f(best), 1.0)
    if best not in (grid[0], grid[-1]):
        peak = max(peak, f(mpmath.findroot(lambda r: mpmath.diff(f, r), best)))
    assert closedform.type_a_dirac(4, m) == pytest.approx(PI * float(peak), rel=1e-9)


def test_power_constants_need_three_dimensions():
    with pytest.raises(ValueError):
        closedform.type_a_schrodinger(2)
    with pytest.raises(ValueError):
        closedform.type_a_dirac(2, 0.0)


@pytest.mark.parametrize("d, s", [(2, 1.5), (3, 1.5), (3, 2.5), (4, 2.0), (5, 3.0), (6, 1.2)])
def test_homogeneous_constants(d, s):
    g = mpmath.gamma
    lam = lambda k: mpmath.sqrt(mpmath.pi) * g((s - 1) / 2) * g(k + (d - s) / 2) / (2 * g(s / 2) * g(k + (d + s) / 2 - 1))
    assert closedform.type_b(d, s) == pytest.approx(float(lam(0)), rel=1e-13)
    # massless Dirac: lambda_0 + lambda_1; massive: the m/phi -> 1 limit at r -> 0 gives 2 lambda_0
    assert closedform.type_b(d, s, 0.0) == pytest.approx(float(lam(0) + lam(1)), rel=1e-13)
    assert closedform.type_b(d, s, 1.0) == pytest.approx(float(2 * lam(0)), rel=1e-13)


def test_homogeneous_range():
    with pytest.raises(ValueError):
        closedform.type_b(3, 3.0)


@pytest.mark.parametrize("pair", [weights.type_c(2.0), weights.gaussian(), weights.exponential(), weights.bessel_k0()])
def test_integrable_weight_forms(pair):
    norm = weights.l1_norm(pair)
    assert closedform.type_c(3, pair).value == norm
    assert closedform.type_c(4, pair, 1.0).value == 2 * norm
    two = closedform.type_c(2, pair)
    assert (two.lower, two.upper) == (norm, 2 * norm)
    assert closedform.type_c(2, pair, 0.0).value == 2 * norm
    massive = closedform.type_c(2, pair, 1.0)
    assert (massive.lower, massive.upper) == (2 * norm, 4 * norm)


def test_integrable_weight_hypothesis_failure():
    with pytest.raises(HypothesisFailed):
        closedform.type_c(2, weights.fejer())


@pytest.mark.parametrize("s", [2.1, 2.5, 3.0, 5.0])
@pytest.mark.parametrize("m", [None, 0.0, 1.0])
def test_planar_brackets_are_ordered(s, m):
    b = closedform.type_a2d_bracket(s, m)
    assert 0 < b.lower < b.upper
    assert b.contains(b.lower) and b.contains(b.upper) and not b.contains(1.01 * b.upper)


def test_planar_bracket_terms():
    # s = 3: near = pi, far = sqrt(pi) Gamma(1) / Gamma(3/2) = 2
    b = closedform.type_a2d_bracket(3.0, None)
    assert b.lower == pytest.approx(PI) and b.upper == pytest.approx(PI + 2)
    with pytest.raises(ValueError):
        closedform.type_a2d_bracket(2.0, None)


def test_planar_limit_values():
    assert closedform.type_a2d_limit(0.0) == PI
    assert closedform.type_a2d_limit(1.0) == 2 * PI


@pytest.mark.parametrize("name, pair", [("gaussian", weights.gaussian()), ("typeC:s=2", weights.type_c(2.0)),
                                        ("exp", weights.exponential()), ("besselK0", weights.bessel_k0())])
@pytest.mark.parametrize("r", [0.1, 0.9, 4.0])
def test_ratio_curves_match_profile(name, pair, r):
    engine = lambdak.lambda_k(pair, 0, 2, r) / (2 * PI * weights.l1_norm(pair))
    assert float(closedform.RATIO_CURVES[name](r)) == pytest.approx(engine, rel=1e-9)


def test_exponential_ratio_against_mpmath():
    for r in (0.2, 1.0, 5.0):
        k_sq = 4 * r * r / (1 + 4 * r * r)
        expected = 2 * float(mpmath.ellipe(k_sq)) / math.sqrt(1 / r**2 + 4)
        assert closedform.ratio_exponential(r) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("name", list(closedform.REFERENCE_RATIO_MAXIMA))
def test_ratio_maxima_reference(name):
    value, where = closedform.REFERENCE_RATIO_MAXIMA[name]
    got_value, got_where = closedform.ratio_maximum(name)
    assert got_value == pytest.approx(value, abs=5e-5)
    assert got_where == pytest.approx(where, rel=5e-4)


def test_bessel_k0_ratio_is_monotone_to_one():
    r = np.logspace(-3, 4, 200)
    y = closedform.ratio_bessel_k0(r)
    assert np.all(np.diff(y) > 0) and y[-1] == pytest.approx(1.0, rel=1e-8)


def test_lookup_dispatch():
    assert closedform.lookup("schrodinger", 3, weights.type_b(1.5)).value == closedform.type_b(3, 1.5)
    assert closedform.lookup("dirac", 3, weights.type_a(2.0), 0.0).value == pytest.approx(4 * PI / 3)
    assert closedform.lookup("schrodinger", 3, weights.type_a(2.5)) is None
    assert closedform.lookup("schrodinger", 2, weights.type_a(2.5)).lower is not None
    sqrt_r = weights.type_a(2.0).with_psi("sqrt-r")
    assert closedform.lookup("schrodinger", 3, sqrt_r).value == pytest.approx(PI / 2)
    with pytest.raises(ValueError):
        closedform.lookup("dirac", 3, weights.gaussian())


def test_closed_forms_agree_with_engine():
    for d in (3, 5):
        assert search.optimal_constant(d, weights.type_a(2.0)).value == pytest.approx(
            closedform.type_a_schrodinger(d), rel=1e-6)
    assert search.optimal_constant(4, weights.type_a(2.0), 1.0).value == pytest.approx(
        closedform.type_a_dirac(4, 1.0), rel=1e-6)
