"""Suprema of the profiles over r > 0 and over the harmonic index k."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from . import dirac, lambdak
from .weights import WeightPair, fhat_nonneg_all_dims

INTERIOR = "interior"
BOUNDARY = "boundary-limit"
FLAT = "flat-interval"

_GOLD = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class SearchConfig:
    r_min: float = 1e-3
    r_max: float = 1e3
    points: int = 241
    r_rel_tol: float = 1e-10
    flat_run: int = 10
    flat_rel: float = 1e-9
    extrapolation_levels: int = 6
    extrapolation_ratio: float = 10.0
    k_max: int = 64
    k_slack: float = 1e-6


@dataclass(frozen=True)
class SupResult:
    value: float
    tag: str
    r_star: Optional[float] = None
    side: Optional[str] = None
    flat_range: Optional[tuple] = None
    k: Optional[int] = None


def boundary_limit(values, ratio: float = 10.0) -> tuple[float, float]:
    """Limit of f(h_j), h_j = h_0 / ratio^j, as h -> 0.

    Assumes f = L + a h^p + o(h^p) with p estimated from the last three
    samples, then removes the h^p term.  Samples are taken deep enough that
    the next order is negligible.  Returns (limit, error estimate).
    """
    f = np.asarray(values, dtype=float)
    scale = max(np.max(np.abs(f)), 1e-300)
    diffs = np.diff(f)
    if np.all(np.abs(diffs[-3:]) <= 1e-13 * scale):
        return float(f[-1]), float(abs(diffs[-1]))
    d0, d1, d2 = diffs[-3:]
    if d1 == 0 or d2 / d1 <= 0 or abs(d2) >= abs(d1):
        return float(f[-1]), float(abs(d2))
    q = d1 / d2
    limit = f[-1] + d2 / (q - 1)
    if d0 != 0 and d1 / d0 > 0 and abs(d1) < abs(d0):
        previous = f[-2] + d1 / (d0 / d1 - 1)
    else:
        previous = f[-1]
    return float(limit), float(abs(limit - previous))


def _golden_max(f: Callable[[float], float], lo: float, hi: float, rel_tol: float) -> tuple[float, float]:
    """Maximise f on [lo, hi] by golden-section search in log r."""
    a, b = math.log(lo), math.log(hi)
    c = b - _GOLD * (b - a)
    e = a + _GOLD * (b - a)
    fc, fe = f(math.exp(c)), f(math.exp(e))
    for _ in range(80):
        if b - a <= rel_tol:
            break
        if fc >= fe:
            b, e, fe = e, c, fc
            c = b - _GOLD * (b - a)
            fc = f(math.exp(c))
        else:
            a, c, fc = c, e, fe
            e = a + _GOLD * (b - a)
            fe = f(math.exp(e))
    return (math.exp(c), fc) if fc >= fe else (math.exp(e), fe)


def _flat_run(values: np.ndarray, peak: float, run: int, rel: float) -> Optional[tuple[int, int]]:
    close = np.abs(values - peak) <= rel * abs(peak)
    best, start = None, None
    for i, ok in enumerate(np.append(close, False)):
        if ok and start is None:
            start = i
        elif not ok and start is not None:
            if i - start >= run and (best is None or i - start > best[1] - best[0]):
                best = (start, i - 1)
            start = None
    return best


def sup_over_r(f: Callable[[float], float], config: SearchConfig = SearchConfig()) -> SupResult:
    """Supremum of f over r > 0 with an attainment tag."""
    grid = np.logspace(math.log10(config.r_min), math.log10(config.r_max), config.points)
    values = np.array([f(r) for r in grid])
    top = int(np.argmax(values))

    run = _flat_run(values, values[top], config.flat_run, config.flat_rel)
    interior = []
    if run is None:
        for i in range(1, grid.size - 1):
            left, mid, right = values[i - 1 : i + 2]
            if mid >= left and mid >= right and (mid > left or mid > right):
                interior.append(i)
        interior = sorted(interior, key=lambda i: -values[i])[:4]
    refined = [_golden_max(f, grid[i - 1], grid[i + 1], config.r_rel_tol) for i in interior]

    levels = range(1, config.extrapolation_levels + 1)
    q = config.extrapolation_ratio
    low = [values[0]] + [f(config.r_min / q**j) for j in levels]
    high = [values[-1]] + [f(config.r_max * q**j) for j in levels]
    limit0, _ = boundary_limit(low, q)
    limit_inf, _ = boundary_limit(high, q)
    best_interior = max([v for _, v in refined] + [float(np.max(values[1:-1]))])

    if run is not None:
        lo, hi = run
        edge = max(limit0 if lo == 0 else -math.inf, limit_inf if hi == grid.size - 1 else -math.inf)
        peak = float(np.max(values[lo:hi + 1]))
        if edge <= peak * (1 + config.flat_rel) or not math.isfinite(edge):
            return SupResult(peak, FLAT, float(grid[top]), flat_range=(float(grid[lo]), float(grid[hi])))

    limit, side = (limit0, "r->0") if limit0 >= limit_inf else (limit_inf, "r->inf")
    if limit > best_interior:
        return SupResult(limit, BOUNDARY, side=side)
    if refined:
        r_star, value = max(refined, key=lambda rv: rv[1])
        if value >= best_interior:
            return SupResult(value, INTERIOR, r_star)
    return SupResult(float(values[top]), INTERIOR, float(grid[top]))


@dataclass
class ConstantResult:
    equation: str
    d: int
    m: Optional[float]
    pair_id: str
    value: float
    per_k: list
    k_cut: int
    hypothesis: bool
    truncated: bool
    schrodinger_value: Optional[float] = None
    sandwich_ok: Optional[bool] = None
    warnings: list = field(default_factory=list)

    @property
    def best(self) -> SupResult:
        return max(self.per_k, key=lambda s: s.value)


class ProfileCache:
    """Memoised lambda_k(r) so Dirac and Schrodinger searches share work."""

    def __init__(self, pair: WeightPair, d: int, route: str = "auto"):
        self.pair, self.d, self.route = pair, d, route
        self._store: dict = {}

    def __call__(self, k: int, r: float) -> float:
        key = (k, r)
        if key not in self._store:
            self._store[key] = lambdak.lambda_k(self.pair, k, self.d, r, self.route)
        return self._store[key]

    def dirac(self, k: int, r: float, m: float) -> float:
        return float(dirac.top_eigenvalue(self(k, r), self(k + 1, r), r, m))


def _sweep_k(profile: Callable[[int], SupResult], config: SearchConfig, monotone: bool):
    sups: list[SupResult] = []
    for k in range(config.k_max + 1):
        sups.append(profile(k))
        if monotone and k >= 3:
            tail = [s.value for s in sups[-4:]]
            if all(b <= a * (1 + config.k_slack) for a, b in zip(tail, tail[1:])):
                return sups, False
    return sups, True


def optimal_constant(
    d: int,
    pair: WeightPair,
    m: Optional[float] = None,
    config: SearchConfig = SearchConfig(),
    route: str = "auto",
) -> ConstantResult:
    """Optimal smoothing constant; ``m=None`` is Schrodinger, else Dirac with mass m.

    The constant is sup_k sup_r of the profile divided by (2 pi)^{d-1}.
    """
    pair.check_dimension(d)
    if m is not None and m < 0:
        raise ValueError("mass must be non-negative")
    scale = (2 * math.pi) ** (d - 1)
    hypothesis = fhat_nonneg_all_dims(pair, d)
    cache = ProfileCache(pair, d, route)

    def schrodinger(k):
        return replace(sup_over_r(lambda r: cache(k, r), config), k=k)

    schr, schr_trunc = _sweep_k(schrodinger, config, hypothesis)
    schr_value = max(s.value for s in schr) / scale
    warnings = []
    if m is None:
        if schr_trunc:
            warnings.append(f"truncation: k sweep reached k_max={config.k_max} without a decreasing run")
        if not hypothesis:
            warnings.append("transform positivity in shifted dimensions not verified")
        return ConstantResult("schrodinger", d, None, pair.id, schr_value, schr, len(schr) - 1,
                              hypothesis, schr_trunc, warnings=warnings)

    def dirac_k(k):
        return replace(sup_over_r(lambda r: cache.dirac(k, r, m), config), k=k)

    dir_sups, dir_trunc = _sweep_k(dirac_k, config, hypothesis)
    value = max(s.value for s in dir_sups) / scale
    slack = 1e-6
    sandwich = schr_value * (1 - slack) <= value <= 2 * schr_value * (1 + slack)
    if dir_trunc:
        warnings.append(f"truncation: k sweep reached k_max={config.k_max} without a decreasing run")
    if not hypothesis:
        warnings.append("transform positivity in shifted dimensions not verified")
    if not sandwich:
        warnings.append("sandwich A <= A_dirac <= 2A violated beyond 1e-6")
    return ConstantResult("dirac", d, m, pair.id, value, dir_sups, len(dir_sups) - 1, hypothesis,
                          dir_trunc, schr_value, sandwich, warnings)
