"""Two-dimensional spinor harmonics and the identities that reduce the
Dirac problem to 2x2 blocks.

Pauli matrices serve as the gamma matrices.  For degree k and mu = +-1 the
basis matrices are

    E^{+}(theta) = diag(e^{ik theta}, e^{i(k+1) theta}) / sqrt(2 pi)
    E^{-}(theta) = diag(e^{-i(k+1) theta}, e^{-ik theta}) / sqrt(2 pi)
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from . import lambdak, quadrature
from .dirac import projector
from .weights import WeightPair

SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
GAMMAS = (SIGMA1, SIGMA2, SIGMA3)
IDENTITY = np.eye(2, dtype=complex)


def anticommutation_defect(gammas: Sequence[np.ndarray] = GAMMAS) -> float:
    """max |g_j g_k + g_k g_j - 2 delta_jk I| over all pairs."""
    worst = 0.0
    for j, a in enumerate(gammas):
        for k, b in enumerate(gammas):
            target = 2 * IDENTITY if j == k else 0 * IDENTITY
            worst = max(worst, float(np.max(np.abs(a @ b + b @ a - target))))
    return worst


def hermitian_defect(gammas: Sequence[np.ndarray] = GAMMAS) -> float:
    return max(float(np.max(np.abs(g - g.conj().T))) for g in gammas)


def dirac_symbol(xi: Sequence[float], m: float) -> np.ndarray:
    """xi_1 g_1 + xi_2 g_2 + m g_3."""
    return xi[0] * SIGMA1 + xi[1] * SIGMA2 + m * SIGMA3


def degrees(k: int, mu: int) -> tuple[int, int]:
    """Signed angular frequencies on the diagonal of E^{mu}."""
    if mu == 1:
        return k, k + 1
    if mu == -1:
        return -(k + 1), -k
    raise ValueError("mu must be +1 or -1")


def basis_matrix(k: int, mu: int, theta: float) -> np.ndarray:
    a, b = degrees(k, mu)
    return np.diag([np.exp(1j * a * theta), np.exp(1j * b * theta)]) / math.sqrt(2 * math.pi)


def full_projector(nu: int, xi: Sequence[float], m: float) -> np.ndarray:
    """P_nu(xi) = (I + nu Phi_m(xi) / phi) / 2."""
    phi = math.sqrt(xi[0] ** 2 + xi[1] ** 2 + m * m)
    return 0.5 * (IDENTITY + nu * dirac_symbol(xi, m) / phi)


def intertwining_defects(k: int, mu: int, xi: Sequence[float], m: float) -> dict:
    """Max-norm residuals of the identities used to block-diagonalise."""
    r = math.hypot(*xi)
    theta = math.atan2(xi[1], xi[0])
    e = basis_matrix(k, mu, theta)
    out = {
        "symbol_square": float(np.max(np.abs(dirac_symbol(xi, m) @ dirac_symbol(xi, m) - (r * r + m * m) * IDENTITY))),
        "massless_symbol": float(np.max(np.abs(dirac_symbol(xi, 0.0) @ e - r * e @ SIGMA1))),
        "mass_term": float(np.max(np.abs(SIGMA3 @ e - e @ SIGMA3))),
    }
    out["projector"] = max(
        float(np.max(np.abs(full_projector(nu, xi, m) @ e - e @ projector(nu, r, m)))) for nu in (1, -1)
    )
    return out


def funk_hecke_circle(pair: WeightPair, k: int, mu: int, xi: Sequence[float], rel_tol: float = 1e-10):
    """Both sides of the circle convolution identity.

    Left:  (1/2) psi^2 int_{S^1} F(|xi| sqrt(2(1 - cos(theta - phi)))) E(phi) d phi
    Right: E(theta) diag(lambda_{|a|}, lambda_{|b|}) for the diagonal degrees a, b of E.
    """
    r = math.hypot(*xi)
    theta = math.atan2(xi[1], xi[0])
    psi_sq = float(pair.psi_sq(r))
    lhs = np.zeros((2, 2), dtype=complex)
    for slot, deg in enumerate(degrees(k, mu)):
        parts = []
        for part in (np.cos, np.sin):
            def f(phi, part=part, deg=deg):
                rho = 2 * r * np.abs(np.sin(0.5 * (theta - phi)))
                return pair.fhat(2, rho) * part(deg * phi)
            res = quadrature.integrate_finite(
                f, theta - math.pi, theta + math.pi, rel_tol, 1e-300, breakpoints=(theta,)
            )
            parts.append(res.value)
        lhs[slot, slot] = 0.5 * psi_sq * complex(parts[0], parts[1]) / math.sqrt(2 * math.pi)
    lam = [lambdak.lambda_k(pair, abs(deg), 2, r) for deg in degrees(k, mu)]
    rhs = basis_matrix(k, mu, theta) @ np.diag(lam)
    return lhs, rhs
