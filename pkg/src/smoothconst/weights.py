"""Weight/multiplier pairs (w, psi) and their radial Fourier transforms.

A pair couples a radial weight w(|x|) with a multiplier psi(|xi|); only
psi^2 ever enters the computations, so that is what is stored.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import PchipInterpolator

from . import quadrature, specfun
from .specfun import gamma

Radial = Callable[[np.ndarray], np.ndarray]
Transform = Callable[[int, np.ndarray], np.ndarray]

# Exponentially decaying weights are cut where they fall below 1e-18.
_CUT = math.log(1e18)


class DivergenceError(ArithmeticError):
    """A norm or transform that does not exist as a finite number."""


class UnsupportedPair(ValueError):
    """Parameters or dimension outside the admissible range of a pair."""


@dataclass(frozen=True)
class WeightPair:
    id: str
    kind: str
    w: Radial
    psi_sq: Radial
    psi: str = "pair-default"
    s: Optional[float] = None
    fhat: Optional[Transform] = field(default=None, repr=False)
    fhat_dims: Optional[frozenset] = None
    l1: Optional[float] = None
    t_max: float = math.inf
    scales: tuple = (1.0,)
    fhat_breaks: tuple = ()

    def check_dimension(self, d: int) -> None:
        if d < 2:
            raise UnsupportedPair("dimension must be at least 2")
        s = self.s
        if self.kind == "typeA" and (s < 2 or (d == 2 and s <= 2)):
            raise UnsupportedPair(f"typeA needs s >= 2 (s > 2 when d = 2), got s={s}, d={d}")
        if self.kind == "typeB" and not 1 < s < d:
            raise UnsupportedPair(f"typeB needs 1 < s < d, got s={s}, d={d}")

    def has_fhat(self, d: int) -> bool:
        return self.fhat is not None and (self.fhat_dims is None or d in self.fhat_dims)

    def bessel_integrand(self, t):
        """t w(t), the radial factor of the Bessel-route integral."""
        return t * self.w(t)

    def with_psi(self, psi: str) -> "WeightPair":
        if psi == "pair-default":
            return self
        if psi == "sqrt-r":
            return replace(self, psi_sq=_identity, psi="sqrt-r")
        raise UnsupportedPair(f"unknown multiplier {psi!r}")


def _identity(r):
    return np.asarray(r, dtype=float)


def _japanese(r):
    return np.sqrt(1.0 + np.square(r))


def _power_fhat(s: float) -> Transform:
    def fhat(d, rho):
        rho = np.asarray(rho, dtype=float)
        order = (d - s) / 2
        c = (2 * math.pi) ** (d / 2) * 2 ** (1 - s / 2) / gamma(s / 2)
        return c * rho ** (-order) * specfun.bessel_k(order, rho)
    return fhat


def _power_l1(s: float) -> float:
    return math.sqrt(math.pi) * gamma((s - 1) / 2) / (2 * gamma(s / 2))


def _power_pair(kind: str, s: float, psi_sq: Radial) -> WeightPair:
    if s <= 1:
        raise UnsupportedPair(f"{kind} needs s > 1")
    return WeightPair(
        id=f"{kind}:s={s:g}",
        kind=kind,
        s=s,
        w=lambda t: (1.0 + np.square(t)) ** (-s / 2),
        psi_sq=psi_sq,
        fhat=_power_fhat(s),
        l1=_power_l1(s),
    )


def type_a(s: float = 2.0) -> WeightPair:
    return _power_pair("typeA", s, _japanese)


def type_c(s: float = 2.0) -> WeightPair:
    return _power_pair("typeC", s, _identity)


def type_b(s: float) -> WeightPair:
    if s <= 1:
        raise UnsupportedPair("typeB needs s > 1")
    return WeightPair(
        id=f"typeB:s={s:g}",
        kind="typeB",
        s=s,
        w=lambda t: np.asarray(t, dtype=float) ** (-s),
        psi_sq=lambda r: np.asarray(r, dtype=float) ** (2 - s),
        scales=(),
    )


def gaussian() -> WeightPair:
    return WeightPair(
        id="gaussian",
        kind="gaussian",
        w=lambda t: np.exp(-0.5 * np.square(t)),
        psi_sq=_identity,
        fhat=lambda d, rho: (2 * math.pi) ** (d / 2) * np.exp(-0.5 * np.square(rho)),
        l1=math.sqrt(math.pi / 2),
        t_max=math.sqrt(2 * _CUT),
    )


def exponential() -> WeightPair:
    def fhat(d, rho):
        c = 2**d * math.pi ** ((d - 1) / 2) * gamma((d + 1) / 2)
        return c * (1.0 + np.square(rho)) ** (-(d + 1) / 2)

    return WeightPair(
        id="exp",
        kind="exp",
        w=lambda t: np.exp(-np.asarray(t, dtype=float)),
        psi_sq=_identity,
        fhat=fhat,
        l1=1.0,
        t_max=_CUT,
    )


def bessel_k0() -> WeightPair:
    def fhat(d, rho):
        c = 2 ** (d - 1) * math.pi ** (d / 2) * gamma(d / 2)
        return c * (1.0 + np.square(rho)) ** (-d / 2)

    return WeightPair(
        id="besselK0",
        kind="besselK0",
        w=lambda t: specfun.bessel_k(0, t),
        psi_sq=_identity,
        fhat=fhat,
        l1=math.pi / 2,
        t_max=_CUT + 2,
    )


def fejer() -> WeightPair:
    """w = (1 - cos r) / r^2; its 3-dimensional transform is supported in [0, 1]."""

    def w(t):
        t = np.asarray(t, dtype=float)
        small = np.abs(t) < 1e-4
        safe = np.where(small, 1.0, t)
        return np.where(small, 0.5 - np.square(t) / 24, 2 * np.sin(safe / 2) ** 2 / np.square(safe))

    def fhat(d, rho):
        rho = np.asarray(rho, dtype=float)
        return np.where(rho < 1.0, 2 * math.pi**2 / np.where(rho > 0, rho, 1.0), 0.0)

    return WeightPair(
        id="fejer",
        kind="fejer",
        w=w,
        psi_sq=_identity,
        fhat=fhat,
        fhat_dims=frozenset({3}),
        l1=math.pi / 2,
        fhat_breaks=(1.0,),
    )


def custom_from_csv(path: str | Path) -> WeightPair:
    """Weight sampled in a CSV file with header ``r,w``.

    Monotone cubic interpolation inside the samples, the first value below
    them and zero beyond the last.  The multiplier defaults to psi^2 = r.
    """
    rows = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames[:2]] != ["r", "w"]:
            raise UnsupportedPair("custom weight CSV needs header 'r,w'")
        for row in reader:
            rows.append((float(row["r"]), float(row["w"])))
    rows.sort()
    r = np.array([p[0] for p in rows])
    v = np.array([p[1] for p in rows])
    if r.size < 4 or np.any(np.diff(r) <= 0) or r[0] < 0:
        raise UnsupportedPair("custom weight needs at least 4 distinct non-negative radii")
    interp = PchipInterpolator(r, v, extrapolate=False)
    r_end = float(r[-1])

    def w(t):
        t = np.asarray(t, dtype=float)
        out = interp(np.clip(t, r[0], r_end))
        return np.where(t > r_end, 0.0, np.nan_to_num(out))

    l1 = float(interp.integrate(r[0], r_end)) + r[0] * v[0]
    return WeightPair(
        id=f"custom:{path}",
        kind="custom",
        w=w,
        psi_sq=_identity,
        l1=l1,
        t_max=r_end,
        scales=(r_end,),
    )


CATALOG_IDS = ("typeA:s=2", "typeB:s=1.5", "typeC:s=2", "gaussian", "exp", "besselK0", "fejer")


def parse_weight(text: str, psi: str = "pair-default") -> WeightPair:
    """Build a pair from an id such as ``typeA:s=2``, ``gaussian``, ``custom:f.csv``."""
    name, _, arg = text.partition(":")
    if name in ("typeA", "typeB", "typeC"):
        key, _, value = arg.partition("=")
        if key != "s" or not value:
            raise UnsupportedPair(f"{name} needs a parameter, e.g. {name}:s=2")
        pair = {"typeA": type_a, "typeB": type_b, "typeC": type_c}[name](float(value))
    elif name == "custom":
        pair = custom_from_csv(arg)
    else:
        factories = {"gaussian": gaussian, "exp": exponential, "besselK0": bessel_k0, "fejer": fejer}
        if name not in factories or arg:
            raise UnsupportedPair(f"unknown weight {text!r}")
        pair = factories[name]()
    return pair.with_psi(psi)


def l1_norm(pair: WeightPair) -> float:
    """||w||_{L^1(0, inf)}."""
    if pair.kind == "typeB":
        raise DivergenceError("r^{-s} is not integrable on (0, inf)")
    if pair.l1 is not None:
        return pair.l1
    res = quadrature.integrate_finite(pair.w, 0.0, pair.t_max, 1e-12, 1e-300)
    return res.value


def fourier_radial(pair: WeightPair, d: int, rho, rel_tol: float = 1e-10):
    """Radial Fourier transform of w(|x|) on R^d at |xi| = rho.

    F(rho) = (2 pi)^{d/2} rho^{1-d/2} int_0^inf w(t) t^{d/2} J_{d/2-1}(rho t) dt,
    from the registered closed form when there is one.
    """
    if pair.kind == "typeB":
        raise DivergenceError("the transform of r^{-s} is a homogeneous distribution")
    rho_arr = np.atleast_1d(np.asarray(rho, dtype=float))
    if pair.has_fhat(d):
        out = pair.fhat(d, rho_arr)
    else:
        out = np.array([hankel_transform(pair, d, x, rel_tol) for x in rho_arr])
    return out if np.ndim(rho) else float(out[0])


def hankel_transform(pair: WeightPair, d: int, rho: float, rel_tol: float = 1e-10) -> float:
    """Quadrature route of ``fourier_radial`` (ignores closed forms)."""
    nu = d / 2 - 1
    try:
        res = quadrature.integrate_hankel(
            lambda t: pair.w(t) * t ** (d / 2), nu, rho, rel_tol, pair.t_max, pair.scales
        )
    except quadrature.QuadratureError as exc:
        raise DivergenceError(f"Hankel integral did not converge at rho={rho}") from exc
    return (2 * math.pi) ** (d / 2) * rho ** (1 - d / 2) * res.value


def fhat_nonneg_all_dims(pair: WeightPair, d: int, j_max: int = 4, samples: int = 121) -> bool:
    """Sampled check that the transforms in dimensions d, d+2, ..., d+2 j_max are >= 0.

    For r^{-s} the transform in R^n is a positive multiple of |xi|^{s-n}
    whenever s < n, so the answer is exact there.  Dimensions without a usable
    transform count as failures.
    """
    if pair.kind == "typeB":
        return pair.s < d
    rho = np.logspace(-3, 3, samples)
    for n in range(d, d + 2 * j_max + 1, 2):
        try:
            vals = np.asarray(fourier_radial(pair, n, rho))
        except DivergenceError:
            return False
        if not np.all(np.isfinite(vals)):
            return False
        if np.min(vals) < -1e-10 * np.max(np.abs(vals)):
            return False
    return True
