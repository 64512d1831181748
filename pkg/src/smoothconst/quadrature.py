"""Adaptive and oscillatory quadrature on vectorised integrands.

Every integrand here is a callable taking a float ndarray and returning an
ndarray of the same shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import specfun

Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    evaluations: int


class QuadratureError(ArithmeticError):
    """Tolerance not reached; ``result`` holds the best estimate."""

    def __init__(self, message: str, result: QuadResult):
        super().__init__(message)
        self.result = result


# Gauss-Kronrod 10/21 nodes on [-1, 1] (QUADPACK qk21).
_XGK = np.array([
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0,
])
_WGK = np.array([
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980298534, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WG = np.array([
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS = np.zeros(21)
_GAUSS[1:10:2] = _WG
_GAUSS[11:20:2] = _WG[::-1]
_GL_X, _GL_W = np.polynomial.legendre.leggauss(24)
_GL_X12, _GL_W12 = np.polynomial.legendre.leggauss(12)

_EPS = np.finfo(float).eps


def _gk21(f: Integrand, a: np.ndarray, b: np.ndarray):
    """Kronrod estimates, QUADPACK error estimates and roundoff floors."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    x = mid[:, None] + half[:, None] * _NODES[None, :]
    fx = np.asarray(f(x), dtype=float)
    res_k = half * (fx @ _KRONROD)
    res_g = half * (fx @ _GAUSS)
    res_abs = np.abs(half) * (np.abs(fx) @ _KRONROD)
    res_asc = np.abs(half) * (np.abs(fx - (res_k / (2 * half))[:, None]) @ _KRONROD)
    err = np.abs(res_k - res_g)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = np.where(res_asc > 0, res_asc * np.minimum(1.0, (200 * err / res_asc) ** 1.5), err)
    floor = 50 * _EPS * res_abs
    return res_k, np.maximum(scaled, floor), floor


def integrate_finite(
    f: Integrand,
    a: float,
    b: float,
    rel_tol: float = 1e-10,
    abs_tol: float = 1e-14,
    breakpoints: Sequence[float] = (),
    limit: int = 4000,
) -> QuadResult:
    """Globally adaptive Gauss-Kronrod (10/21) integration over [a, b].

    Intervals whose error exceeds their share of the tolerance are bisected
    in batches.  Intervals already at their roundoff floor are not split, so
    results that cancel heavily stop at the attainable accuracy.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("integrate_finite needs finite limits")
    if a == b:
        return QuadResult(0.0, 0.0, 0)
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    pts = sorted({a, b, *(p for p in breakpoints if a < p < b)})
    lo = np.array(pts[:-1], dtype=float)
    hi = np.array(pts[1:], dtype=float)
    val, err, floor = _gk21(f, lo, hi)
    evals = 21 * lo.size
    while True:
        total = float(val.sum())
        total_err = float(err.sum())
        tol = max(abs_tol, rel_tol * abs(total))
        result = QuadResult(sign * total, total_err, evals)
        if total_err <= tol:
            return result
        width = hi - lo
        live = (err > 2 * floor) & (width > 64 * _EPS * np.maximum(np.abs(lo), np.abs(hi)))
        if float(err[live].sum()) <= tol:
            return result
        pick = live & (err > tol * width / (b - a))
        if not pick.any():
            pick = live & (err >= np.max(err[live]) * 0.1)
        if lo.size > limit:
            raise QuadratureError("adaptive quadrature did not converge", result)
        mid = 0.5 * (lo[pick] + hi[pick])
        new_lo = np.concatenate([lo[pick], mid])
        new_hi = np.concatenate([mid, hi[pick]])
        v, e, fl = _gk21(f, new_lo, new_hi)
        evals += 21 * new_lo.size
        keep = ~pick
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        val = np.concatenate([val[keep], v])
        err = np.concatenate([err[keep], e])
        floor = np.concatenate([floor[keep], fl])


def integrate_semi_infinite(
    f: Integrand,
    a: float,
    rel_tol: float = 1e-10,
    abs_tol: float = 1e-14,
) -> QuadResult:
    """int_a^inf f for a > 0 and non-oscillatory, algebraically decaying f.

    Substitutes x = a / u and integrates over u in (0, 1].
    """
    if a <= 0:
        raise ValueError("semi-infinite range must start at a > 0")

    def mapped(u):
        x = a / u
        return f(x) * (a / (u * u))

    return integrate_finite(mapped, 0.0, 1.0, rel_tol, abs_tol, breakpoints=(1e-6, 1e-3, 0.1))


def integrate_jacobi_angle(
    g: Integrand,
    d: int,
    rel_tol: float = 1e-11,
    abs_tol: float = 1e-15,
    breakpoints: Sequence[float] = (),
) -> QuadResult:
    """int_0^pi g(theta) sin(theta)^(d-2) d theta.

    This is int_{-1}^{1} G(t) (1-t^2)^{(d-3)/2} dt under t = cos(theta); the
    angle form removes the endpoint singularity for d = 2 and keeps 1 - t
    accurate near t = 1.
    """
    if d == 2:
        h = g
    else:
        def h(theta):
            return g(theta) * np.sin(theta) ** (d - 2)
    return integrate_finite(h, 0.0, math.pi, rel_tol, abs_tol, breakpoints)


def integrate_jacobi(
    f: Integrand,
    d: int,
    rel_tol: float = 1e-11,
    abs_tol: float = 1e-15,
) -> QuadResult:
    """int_{-1}^{1} f(t) (1-t^2)^{(d-3)/2} dt, d >= 2."""
    return integrate_jacobi_angle(lambda th: f(np.cos(th)), d, rel_tol, abs_tol)


def wynn_epsilon(partial_sums: Sequence[float]) -> tuple[float, float]:
    """Wynn's epsilon extrapolation of a sequence of partial sums.

    Returns (limit estimate, error estimate).  The error is the spread of the
    last three even-column diagonal estimates.
    """
    s = [float(v) for v in partial_sums]
    n = len(s)
    if n < 3:
        return s[-1], abs(s[-1] - s[0]) if n > 1 else math.inf
    prev = [0.0] * (n + 1)
    cur = s[:]
    estimates = [s[-1]]
    for col in range(1, n):
        nxt = []
        for i in range(len(cur) - 1):
            diff = cur[i + 1] - cur[i]
            if diff == 0.0:
                nxt.append(math.inf)
            else:
                nxt.append(prev[i + 1] + 1.0 / diff)
        prev, cur = cur, nxt
        if col % 2 == 0 and cur:
            if all(math.isfinite(v) for v in cur[-1:]):
                estimates.append(cur[-1])
        if len(cur) < 2:
            break
    finite = [e for e in estimates if math.isfinite(e)]
    best = finite[-1]
    tail = finite[-3:]
    spread = max(tail) - min(tail) if len(tail) > 1 else abs(s[-1] - s[-2])
    return best, spread


def _panel_integrals(f: Integrand, edges: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """24-point Gauss-Legendre on each panel, with a 12-point error check."""
    a, b = edges[:-1], edges[1:]
    half = 0.5 * (b - a)[:, None]
    mid = 0.5 * (a + b)[:, None]
    v24 = (half[:, 0]) * (np.asarray(f(mid + half * _GL_X)) @ _GL_W)
    v12 = (half[:, 0]) * (np.asarray(f(mid + half * _GL_X12)) @ _GL_W12)
    return v24, np.abs(v24 - v12)


def _oscillatory_tail(
    f: Integrand,
    nu: float,
    x0: float,
    offset: float,
    x_end: float,
    rel_tol: float,
    abs_scale: float,
) -> tuple[float, float]:
    """int_{x0}^{x_end} f on panels cut where the Bessel phase hits offset + n pi/2.

    With x_end infinite the partial sums are accelerated by the epsilon
    algorithm; otherwise panels are summed directly.
    """
    if math.isfinite(x_end):
        n = int((x_end - x0) / (np.pi / 2)) + 4
        cuts = specfun.phase_crossings(nu, x0, offset, n)
        cuts = cuts[cuts < x_end]
        edges = np.concatenate([[x0], cuts, [x_end]])
        vals, errs = _panel_integrals(f, edges)
        return float(vals.sum()), float(errs.sum())

    block = 40
    cuts = specfun.phase_crossings(nu, x0, offset, block + 1)
    head = _panel_integrals(f, np.array([x0, cuts[0]]))
    head_val, head_err = float(head[0][0]), float(head[1][0])
    edges = cuts
    panels = np.empty(0)
    panel_err = 0.0
    last = math.inf
    for _ in range(60):
        vals, errs = _panel_integrals(f, edges)
        panels = np.concatenate([panels, vals])
        panel_err += float(errs.sum())
        sums = np.cumsum(panels)
        estimate, spread = wynn_epsilon(sums[-min(sums.size, 60):])
        tol = max(rel_tol * abs(estimate), rel_tol * abs_scale, 1e-300)
        if spread <= tol and abs(estimate - last) <= tol:
            return head_val + estimate, head_err + panel_err + spread
        last = estimate
        more = specfun.phase_crossings(nu, edges[-1], offset, block + 1)
        edges = np.concatenate([[edges[-1]], more[more > edges[-1]][:block]])
    result = QuadResult(head_val + last, math.inf, panels.size * 36)
    raise QuadratureError("oscillatory tail acceleration did not settle", result)


def integrate_bessel_tail(
    g: Integrand,
    nu: float,
    r: float,
    rel_tol: float = 1e-10,
    t_max: float = math.inf,
    scales: Sequence[float] = (1.0,),
) -> QuadResult:
    """int_0^t_max g(t) J_nu(r t)^2 dt.

    After x = r t the range splits at x0 ~ max(20, 2 nu) + 10.  Below x0 the
    integrand is handled adaptively.  Above it J^2 = (M^2 + (J^2 - Y^2)) / 2
    with M^2 = J^2 + Y^2: the modulus part is smooth and integrated directly,
    the remaining part oscillates with alternating panels between sign changes
    of J^2 - Y^2.  ``scales`` lists t-values where g changes character and is
    used for breakpoints.
    """
    if r <= 0:
        raise ValueError("Bessel scale r must be positive")
    x0 = max(20.0, 2.0 * nu) + 10.0
    x_end = r * t_max

    def in_x(x):
        return g(x / r) / r

    def near(x):
        return in_x(x) * specfun.bessel_j(nu, x) ** 2

    upper = min(x0, x_end)
    bps = [r * s * f for s in scales for f in (0.1, 1.0, 10.0) if 0 < r * s * f < upper]
    bps += [upper * f for f in (1e-6, 1e-4, 1e-2, 0.5)]
    head = integrate_finite(near, 0.0, upper, rel_tol * 0.1, 1e-300, breakpoints=bps)
    value, error, evals = head.value, head.error, head.evaluations
    if x_end <= x0:
        return QuadResult(value, error, evals)

    def modulus_part(x):
        return 0.5 * in_x(x) * specfun.bessel_modulus_sq(nu, x)

    def wave_part(x):
        return 0.5 * in_x(x) * (specfun.bessel_j(nu, x) ** 2 - specfun.bessel_y(nu, x) ** 2)

    if math.isfinite(x_end):
        mod_bps = [x0 * f for f in (2.0, 10.0, 100.0) if x0 * f < x_end]
        mod = integrate_finite(modulus_part, x0, x_end, rel_tol * 0.1, 1e-300, breakpoints=mod_bps)
    else:
        mod = integrate_semi_infinite(modulus_part, x0, rel_tol * 0.1, 1e-300)
    scale = abs(value) + abs(mod.value)
    wave, wave_err = _oscillatory_tail(wave_part, nu, x0, math.pi / 4, x_end, rel_tol * 0.1, scale)
    total = value + mod.value + wave
    return QuadResult(total, error + mod.error + wave_err, evals + mod.evaluations)


def integrate_hankel(
    g: Integrand,
    nu: float,
    rho: float,
    rel_tol: float = 1e-10,
    t_max: float = math.inf,
    scales: Sequence[float] = (1.0,),
) -> QuadResult:
    """int_0^t_max g(t) J_nu(rho t) dt, panels cut at zeros of J_nu.

    Divergent-but-oscillating tails are summed in the Abel sense by the
    epsilon algorithm, which matches the distributional transform.
    """
    if rho <= 0:
        raise ValueError("Hankel frequency must be positive")
    x0 = max(20.0, 2.0 * nu) + 10.0
    x_end = rho * t_max

    def in_x(x):
        return g(x / rho) / rho * specfun.bessel_j(nu, x)

    upper = min(x0, x_end)
    bps = [rho * s * f for s in scales for f in (0.1, 1.0, 10.0) if 0 < rho * s * f < upper]
    bps += [upper * f for f in (1e-6, 1e-4, 1e-2, 0.25, 0.5, 0.75)]
    head = integrate_finite(in_x, 0.0, upper, rel_tol * 0.1, 1e-300, breakpoints=bps)
    if x_end <= x0:
        return head
    tail, tail_err = _oscillatory_tail(in_x, nu, x0, math.pi / 2, x_end, rel_tol * 0.1, abs(head.value))
    return QuadResult(head.value + tail, head.error + tail_err, head.evaluations)
