"""Dirac profiles built from pairs of Schrodinger profiles.

On each spinor harmonic block the Dirac operator sees the 2x2 matrix

    Lambda(r) = 2 sum_{nu=+-1} Q_nu diag(a, b) Q_nu,
    Q_nu = (I + nu (r sigma_1 + m sigma_3) / phi) / 2,  phi = sqrt(r^2 + m^2),

with a = lambda_k(r), b = lambda_{k+1}(r).  Its top eigenvalue is
a + b + (m / phi) |a - b|.
"""

from __future__ import annotations

import math

import numpy as np

SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]])
SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]])
IDENTITY = np.eye(2)


def projector(nu: int, r: float, m: float) -> np.ndarray:
    """Q_nu(r) for nu = +1 or -1."""
    phi = math.hypot(r, m)
    return 0.5 * (IDENTITY + nu * (r * SIGMA1 + m * SIGMA3) / phi)


def lambda_matrix(a: float, b: float, r: float, m: float) -> np.ndarray:
    """2 sum_nu Q_nu diag(a, b) Q_nu, formed by matrix products."""
    diag = np.diag([a, b])
    return 2 * sum(projector(nu, r, m) @ diag @ projector(nu, r, m) for nu in (1, -1))


def lambda_matrix_closed(a: float, b: float, r: float, m: float) -> np.ndarray:
    """Closed form (a+b) I + (m/phi^2)(a-b)(r sigma_1 + m sigma_3)."""
    phi_sq = r * r + m * m
    return (a + b) * IDENTITY + (m / phi_sq) * (a - b) * (r * SIGMA1 + m * SIGMA3)


def top_eigenvalue(a: float, b: float, r: float, m: float):
    """a + b + (m/phi)|a - b|; vectorised in a, b, r."""
    phi = np.hypot(r, m)
    return a + b + (m / phi) * np.abs(a - b)
