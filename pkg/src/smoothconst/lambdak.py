"""Restriction profiles lambda_k(r) of the Schrodinger smoothing operator.

Two independent routes:

bessel    lambda_k(r) = (1/2) (2 pi)^d psi(r)^2 int_0^inf t w(t) J_{k+d/2-1}(r t)^2 dt
legendre  lambda_k(r) = c_d r^{d-2} psi(r)^2 int_{-1}^{1} F(r sqrt(2(1-t))) P_k(t) (1-t^2)^{(d-3)/2} dt,
          c_d = pi^{(d-1)/2} / Gamma((d-1)/2), F the radial transform of w in R^d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import quadrature, specfun
from .weights import WeightPair, fourier_radial

ROUTES = ("auto", "bessel", "legendre")


class RouteUnavailable(LookupError):
    """The requested evaluation route does not apply to this pair."""


def bessel_order(k: int, d: int) -> float:
    return k + d / 2 - 1


def _check(k: int, d: int, r: float) -> None:
    if k < 0:
        raise ValueError("k must be non-negative")
    if d < 2:
        raise ValueError("d must be at least 2")
    if not r > 0:
        raise ValueError("r must be positive")


def type_b_constant(s: float, k: int, d: int) -> float:
    """The r-independent profile value of the homogeneous pair r^{-s}."""
    nu = bessel_order(k, d)
    return 0.5 * (2 * math.pi) ** d * specfun.weber_schafheitlin(s - 1, nu)


def lambda_k_bessel(
    pair: WeightPair, k: int, d: int, r: float, rel_tol: float = 1e-10, numeric: bool = False
) -> float:
    """Bessel route.  Homogeneous pairs use the closed Bessel moment unless ``numeric``."""
    _check(k, d, r)
    pair.check_dimension(d)
    nu = bessel_order(k, d)
    psi_sq = float(pair.psi_sq(r))
    if pair.kind == "typeB" and not numeric:
        moment = specfun.weber_schafheitlin(pair.s - 1, nu, r)
    else:
        moment = quadrature.integrate_bessel_tail(
            pair.bessel_integrand, nu, r, rel_tol, pair.t_max, pair.scales
        ).value
    return 0.5 * (2 * math.pi) ** d * psi_sq * moment


def _angle_breaks(pair: WeightPair, r: float) -> list[float]:
    # Angles where rho = 2 r sin(theta/2) crosses decades or a kink of F.
    # Geometric angles toward 0 speed up logarithmic singularities of F.
    marks = [10.0**e for e in range(-3, 13)] + list(pair.fhat_breaks)
    angles = [2 * math.asin(m / (2 * r)) for m in marks if m < 2 * r]
    return angles + [math.pi * 4.0**-j for j in range(1, 12)]


def legendre_prefactor(d: int) -> float:
    return math.pi ** ((d - 1) / 2) / specfun.gamma((d - 1) / 2)


def lambda_k_legendre(pair: WeightPair, k: int, d: int, r: float, rel_tol: float = 1e-11) -> float:
    """Legendre route; needs a closed-form transform of w in R^d."""
    _check(k, d, r)
    pair.check_dimension(d)
    if pair.kind == "typeB" or not pair.has_fhat(d):
        raise RouteUnavailable(f"no function-valued transform for {pair.id} in d={d}")

    def g(theta):
        rho = 2 * r * np.sin(0.5 * theta)
        return pair.fhat(d, rho) * specfun.legendre_d(k, d, np.cos(theta))

    res = quadrature.integrate_jacobi_angle(g, d, rel_tol, 1e-300, _angle_breaks(pair, r))
    return legendre_prefactor(d) * r ** (d - 2) * float(pair.psi_sq(r)) * res.value


def lambda_k(pair: WeightPair, k: int, d: int, r: float, route: str = "auto") -> float:
    if route == "auto":
        route = "legendre" if pair.kind != "typeB" and pair.has_fhat(d) else "bessel"
    if route == "bessel":
        return lambda_k_bessel(pair, k, d, r)
    if route == "legendre":
        return lambda_k_legendre(pair, k, d, r)
    raise ValueError(f"unknown route {route!r}")


@dataclass(frozen=True)
class LambdaProfile:
    pair_id: str
    k: int
    d: int
    grid: np.ndarray
    values: np.ndarray
    route: str
    max_route_discrepancy: float | None = None


def lambda_profile(
    pair: WeightPair,
    k: int,
    d: int,
    grid: Sequence[float],
    route: str = "auto",
    cross_check: bool = False,
) -> LambdaProfile:
    """lambda_k on a grid of r; ``cross_check`` also runs the other route."""
    grid = np.asarray(grid, dtype=float)
    values = np.array([lambda_k(pair, k, d, r, route) for r in grid])
    discrepancy = None
    if cross_check:
        if route == "bessel" or not pair.has_fhat(d) or pair.kind == "typeB":
            raise RouteUnavailable("cross-check needs the legendre route as primary")
        other = np.array([lambda_k_bessel(pair, k, d, r, numeric=True) for r in grid])
        discrepancy = float(np.max(np.abs(values - other) / np.abs(values)))
    return LambdaProfile(pair.id, k, d, grid, values, route, discrepancy)
