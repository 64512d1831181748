"""Known values and brackets for the optimal constants.

Everything here is evaluated from Gamma values and Bessel products; nothing
calls the quadrature engine, so comparing with ``search.optimal_constant``
checks two independent computations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import optimize, special

from .specfun import bessel_ik_product, elliptic_e, gamma
from .weights import DivergenceError, WeightPair, fhat_nonneg_all_dims, l1_norm

PI = math.pi


class HypothesisFailed(ValueError):
    """A closed form was requested for a pair that violates its hypothesis."""


@dataclass(frozen=True)
class ClosedForm:
    value: Optional[float] = None
    lower: Optional[float] = None
    upper: Optional[float] = None
    source: str = ""

    def contains(self, x: float, rel: float = 0.0) -> bool:
        lo = -math.inf if self.lower is None else self.lower * (1 - rel)
        hi = math.inf if self.upper is None else self.upper * (1 + rel)
        return lo <= x <= hi


# ---- power weight (1 + r^2)^{-1}, multiplier (1 + r^2)^{1/4} --------------

def japanese_ik(mu: float, r):
    """(1 + r^2)^{1/2} I_mu(r) K_mu(r)."""
    return np.sqrt(1 + np.square(r)) * bessel_ik_product(mu, r)


def japanese_ik_pair(mu: float, r, m: float = 0.0):
    """(1+r^2)^{1/2} ((1 + m/phi) I_mu K_mu + (1 - m/phi) I_{mu+1} K_{mu+1})."""
    ratio = m / np.hypot(r, m)
    return np.sqrt(1 + np.square(r)) * (
        (1 + ratio) * bessel_ik_product(mu, r) + (1 - ratio) * bessel_ik_product(mu + 1, r)
    )


def _sup_positive(f, boundary_values=()) -> float:
    """Sup over r > 0 of a smooth f: dense log scan, bounded Brent refinement."""
    x = np.logspace(-4, 4, 801)
    y = np.array([f(v) for v in x])
    i = int(np.argmax(y))
    best = max(y[i], *boundary_values)
    if 0 < i < x.size - 1:
        res = optimize.minimize_scalar(
            lambda t: -f(math.exp(t)), bounds=(math.log(x[i - 1]), math.log(x[i + 1])),
            method="bounded", options={"xatol": 1e-12},
        )
        best = max(best, -res.fun)
    return float(best)


def type_a_schrodinger(d: int) -> float:
    if d < 3:
        raise ValueError("the s = 2 power weight needs d >= 3")
    if d == 3:
        return PI
    if d == 4:
        return PI * _sup_positive(lambda r: japanese_ik(1.0, r), (0.5,))
    return PI / 2


def type_a_dirac(d: int, m: float) -> float:
    if d < 3:
        raise ValueError("the s = 2 power weight needs d >= 3")
    if d == 3:
        return 4 * PI / 3 if m == 0 else 2 * PI
    if d == 4:
        if m == 0:
            return PI
        return PI * _sup_positive(lambda r: japanese_ik_pair(1.0, r, m), (1.0,))
    return PI


# ---- homogeneous weight r^{-s} ----------------------------------------------

def type_b_profile(d: int, s: float, k: int) -> float:
    """The constant value of lambda_k for the pair (r^{-s}, r^{1-s/2})."""
    return (
        (2 * PI) ** (d - 1) * math.sqrt(PI) * gamma((s - 1) / 2) * gamma(k + (d - s) / 2)
        / (2 * gamma(s / 2) * gamma(k + (d + s) / 2 - 1))
    )


def type_b(d: int, s: float, m: Optional[float] = None) -> float:
    """Schrodinger (m=None) or Dirac constant for r^{-s}, 1 < s < d."""
    if not 1 < s < d:
        raise ValueError("need 1 < s < d")
    base = math.sqrt(PI) * gamma((s - 1) / 2) * gamma((d - s) / 2) / (
        2 * gamma(s / 2) * gamma((d + s) / 2 - 1)
    )
    if m is None:
        return base
    return base * (2 * (d - 1) / (d + s - 2) if m == 0 else 2.0)


# ---- integrable weights with multiplier r^{1/2} ---------------------------

def type_c(d: int, pair: WeightPair, m: Optional[float] = None) -> ClosedForm:
    """Closed form or bracket when psi^2 = r and the transform is non-negative."""
    if not fhat_nonneg_all_dims(pair, d, j_max=0):
        raise HypothesisFailed(f"transform of {pair.id} in d={d} is not verified non-negative")
    norm = l1_norm(pair)
    if d >= 3:
        value = norm if m is None else 2 * norm
        return ClosedForm(value=value, source="integrable weight, d >= 3")
    if m is None:
        return ClosedForm(lower=norm, upper=2 * norm, source="integrable weight, d = 2")
    if m == 0:
        return ClosedForm(value=2 * norm, source="integrable weight, d = 2, massless")
    return ClosedForm(lower=2 * norm, upper=4 * norm, source="integrable weight, d = 2, massive")


def type_a2d_bracket(s: float, m: Optional[float]) -> ClosedForm:
    """Bracket for (1+r^2)^{-s/2}, psi^2 = (1+r^2)^{1/2}, in d = 2 with s > 2."""
    if s <= 2:
        raise ValueError("need s > 2 in d = 2")
    near = PI / (s - 2)
    far = math.sqrt(PI) * gamma((s - 1) / 2) / gamma(s / 2)
    if m is None:
        return ClosedForm(lower=max(near, far / 2), upper=near + far, source="power weight, d = 2")
    if m == 0:
        return ClosedForm(lower=max(near, far), upper=near + far, source="power weight, d = 2, massless")
    return ClosedForm(lower=max(2 * near, far), upper=2 * (near + far), source="power weight, d = 2, massive")


def type_a2d_limit(m: Optional[float]) -> float:
    """lim_{s -> 2} (s - 2) times the constant."""
    return 2 * PI if m else PI


# ---- d = 2 profile ratios lambda_0 / (2 pi ||w||) ---------------------------

def ratio_gaussian(r):
    x = np.square(r)
    return math.sqrt(2 * PI) * r * special.ive(0, x)


def ratio_lorentz(r):
    return 2 * r * bessel_ik_product(0.0, r)


def ratio_exponential(r):
    r = np.atleast_1d(np.asarray(r, dtype=float))
    mod = np.sqrt(4 * r**2 / (1 + 4 * r**2))
    e = np.array([elliptic_e(v) for v in mod])
    out = 2 * e / np.sqrt(1 / r**2 + 4)
    return out if out.size > 1 else float(out[0])


def ratio_bessel_k0(r):
    return 2 * r / np.sqrt(1 + 4 * np.square(r))


RATIO_CURVES = {
    "gaussian": ratio_gaussian,
    "typeC:s=2": ratio_lorentz,
    "exp": ratio_exponential,
    "besselK0": ratio_bessel_k0,
}

# Reference maxima (value, location) of the ratio curves; besselK0 has none.
REFERENCE_RATIO_MAXIMA = {
    "gaussian": (1.17516, 0.888807),
    "typeC:s=2": (1.06673, 1.07503),
    "exp": (1.05481, 1.08983),
}


def ratio_maximum(name: str) -> tuple[float, float]:
    """(max, argmax) of a ratio curve by scan and bounded refinement."""
    f = RATIO_CURVES[name]
    x = np.logspace(-2, 2, 801)
    y = np.array([float(f(v)) for v in x])
    i = int(np.argmax(y))
    res = optimize.minimize_scalar(
        lambda t: -float(f(t)), bounds=(x[i - 1], x[i + 1]), method="bounded", options={"xatol": 1e-10}
    )
    return float(-res.fun), float(res.x)


# ---- dispatcher -------------------------------------------------------------

def lookup(equation: str, d: int, pair: WeightPair, m: Optional[float] = None) -> Optional[ClosedForm]:
    """Closed form or bracket for a case, or None when nothing is known."""
    dirac_mass = m if equation == "dirac" else None
    if equation == "dirac" and m is None:
        raise ValueError("dirac needs a mass")
    if pair.kind == "typeB":
        return ClosedForm(value=type_b(d, pair.s, dirac_mass), source="homogeneous weight")
    if pair.kind == "typeA" and pair.psi == "pair-default":
        if d == 2:
            return type_a2d_bracket(pair.s, dirac_mass)
        if pair.s == 2:
            value = type_a_schrodinger(d) if dirac_mass is None else type_a_dirac(d, dirac_mass)
            return ClosedForm(value=value, source="power weight s = 2")
        return None
    try:
        return type_c(d, pair, dirac_mass)
    except DivergenceError:
        return None
