"""End-to-end verification checks.

Each check returns a ``Check`` with a pass flag, the worst deviation seen and
the tolerance it was held to.  ``run`` executes a selection, optionally in
worker processes (``SMOOTH_CONST_THREADS``).
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from . import closedform, dirac, lambdak, quadrature, spinor2d, specfun
from .search import FLAT, SearchConfig, optimal_constant, sup_over_r
from .weights import bessel_k0, exponential, fejer, gaussian, type_a, type_b, type_c

PI = math.pi


@dataclass
class Check:
    name: str
    passed: bool
    worst: float
    tolerance: float
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name:<22} worst={self.worst:.3e} tol={self.tolerance:.1e} ({self.seconds:.1f}s)"


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b) if b else abs(a)


def _integrable_pairs():
    return [type_c(2.0), gaussian(), exponential(), bessel_k0()]


def check_bessel_identity() -> Check:
    """int_0^inf t/(r^2+t^2) J_mu(t)^2 dt against I_mu(r) K_mu(r)."""
    tol = 1e-6
    worst = 0.0
    for mu in (0.0, 0.5, 1.0, 1.5, 2.0, 3.0):
        for r in np.logspace(-2, 2, 12):
            got = quadrature.integrate_bessel_tail(lambda t, r=r: t / (r * r + t * t), mu, 1.0).value
            worst = max(worst, _rel(got, specfun.bessel_ik_product(mu, r)))
    return Check("bessel-identity", worst <= tol, worst, tol)


def check_route_agreement() -> Check:
    tol = 1e-6
    worst = 0.0
    where = None
    for d in (2, 3, 4, 5):
        pairs = [type_a(2.5 if d == 2 else 2.0)] + _integrable_pairs()
        for pair in pairs:
            for k in range(5):
                for r in (0.3, 1.0, 3.0):
                    a = lambdak.lambda_k_bessel(pair, k, d, r)
                    b = lambdak.lambda_k_legendre(pair, k, d, r)
                    if _rel(a, b) > worst:
                        worst, where = _rel(a, b), (pair.id, k, d, r)
    return Check("route-agreement", worst <= tol, worst, tol, {"worst_case": where})


def check_dimension_shift() -> Check:
    """lambda_k in R^d equals (2 pi)^{-2} lambda_{k-1} in R^{d+2}."""
    tol = 1e-8
    worst = 0.0
    for d in (2, 3, 4, 5):
        pairs = ([] if d == 2 else [type_a(2.0)]) + _integrable_pairs()
        for pair in pairs:
            for k in range(1, 5):
                for r in (0.3, 1.0, 3.0):
                    low = lambdak.lambda_k(pair, k, d, r)
                    high = lambdak.lambda_k(pair, k - 1, d + 2, r)
                    worst = max(worst, _rel(low, high / (2 * PI) ** 2))
    return Check("dimension-shift", worst <= tol, worst, tol)


def check_matrix_identity(samples: int = 200, seed: int = 20240917) -> Check:
    tol = 1e-10
    rng = np.random.default_rng(seed)
    pairs = _integrable_pairs()
    worst = 0.0
    for _ in range(samples):
        pair = pairs[rng.integers(len(pairs))]
        k = int(rng.integers(0, 6))
        d = int(rng.integers(2, 6))
        r = float(10 ** rng.uniform(-2, 2))
        m = float(rng.uniform(0, 5))
        a = lambdak.lambda_k(pair, k, d, r)
        b = lambdak.lambda_k(pair, k + 1, d, r)
        full = dirac.lambda_matrix(a, b, r, m)
        closed = dirac.lambda_matrix_closed(a, b, r, m)
        scale = abs(a) + abs(b)
        top = float(np.max(np.linalg.eigvalsh(full)))
        worst = max(worst, float(np.max(np.abs(full - closed))) / scale,
                    _rel(top, float(dirac.top_eigenvalue(a, b, r, m))))
    return Check("matrix-identity", worst <= tol, worst, tol, {"samples": samples})


def check_homogeneous() -> Check:
    tol = 1e-6
    worst = 0.0
    tags_ok = True
    for d, s in ((2, 1.5), (3, 1.5), (3, 2.5), (4, 2.0), (5, 3.0)):
        pair = type_b(s)
        for m in (0.0, 1.0):
            res = optimal_constant(d, pair, m)
            worst = max(worst, _rel(res.value, closedform.type_b(d, s, m)))
            tag = res.best.tag
            tags_ok &= (tag == FLAT) if m == 0 else (tag != FLAT)
        res = optimal_constant(d, pair, None)
        worst = max(worst, _rel(res.value, closedform.type_b(d, s)))
        # The homogeneous Bessel moment by quadrature, against its closed form.
        for k in (0, 1):
            for r in (0.5, 2.0):
                numeric = lambdak.lambda_k_bessel(pair, k, d, r, numeric=True)
                worst = max(worst, _rel(numeric, closedform.type_b_profile(d, s, k)))
    return Check("homogeneous", worst <= tol and tags_ok, worst, tol, {"attainment_tags_ok": tags_ok})


def check_power_weight() -> Check:
    pair = type_a(2.0)
    cases = [
        ("schrodinger", 3, None, PI, 1e-6),
        ("schrodinger", 4, None, PI * 0.50239, 2e-4),
        ("schrodinger", 5, None, PI / 2, 1e-6),
        ("schrodinger", 6, None, PI / 2, 1e-6),
        ("dirac", 3, 0.0, 4 * PI / 3, 1e-4),
        ("dirac", 3, 1.0, 2 * PI, 1e-4),
        ("dirac", 4, 0.0, PI, 1e-4),
        ("dirac", 5, 0.0, PI, 1e-4),
        ("dirac", 5, 1.0, PI, 1e-4),
        ("dirac", 6, 0.5, PI, 1e-4),
    ]
    passed, worst_ratio, rows = True, 0.0, []
    for eq, d, m, expected, tol in cases:
        value = optimal_constant(d, pair, m).value
        dev = _rel(value, expected)
        passed &= dev <= tol
        worst_ratio = max(worst_ratio, dev / tol)
        rows.append({"equation": eq, "d": d, "m": m, "value": value, "deviation": dev})
    return Check("power-weight", passed, worst_ratio, 1.0, {"cases": rows, "worst_is": "deviation/tolerance"})


def check_integrable_weight() -> Check:
    tol = 1e-5
    worst = 0.0
    for pair in _integrable_pairs():
        norm = pair.l1
        for d in (3, 4):
            worst = max(worst, _rel(optimal_constant(d, pair, None).value, norm))
            for m in (0.0, 1.0):
                worst = max(worst, _rel(optimal_constant(d, pair, m).value, 2 * norm))
        worst = max(worst, _rel(optimal_constant(2, pair, 0.0).value, 2 * norm))
    return Check("integrable-weight", worst <= tol, worst, tol)


def check_ratio_maxima() -> Check:
    """Normalised sup in d = 2 and its location, against the reference values."""
    passed = True
    worst = 0.0
    rows = {}
    pairs = {"gaussian": gaussian(), "typeC:s=2": type_c(2.0), "exp": exponential()}
    for name, (value, where) in closedform.REFERENCE_RATIO_MAXIMA.items():
        pair = pairs[name]
        res = optimal_constant(2, pair, None)
        ratio = res.value / pair.l1
        r_star = res.best.r_star
        curve_value, curve_r = closedform.ratio_maximum(name)
        dv, dr = _rel(ratio, value), _rel(r_star, where)
        passed &= dv <= 5e-5 and dr <= 5e-4 and _rel(curve_value, value) <= 5e-5
        worst = max(worst, dv)
        rows[name] = {"ratio": ratio, "r_star": r_star, "curve": [curve_value, curve_r]}
    return Check("ratio-maxima", passed, worst, 5e-5, rows)


def check_planar_sandwich() -> Check:
    passed = True
    rows = {}
    for pair in _integrable_pairs():
        ratio = optimal_constant(2, pair, None).value / pair.l1
        rows[pair.id] = ratio
        if pair.kind == "besselK0":
            passed &= abs(ratio - 1) <= 1e-4
        else:
            passed &= 1 < ratio <= 2
    return Check("planar-sandwich", passed, abs(rows["besselK0"] - 1), 1e-4, rows)


def check_planar_bracket() -> Check:
    passed = True
    rows = []
    for s in (2.1, 2.5, 3.0):
        pair = type_a(s)
        for m in (0.0, 1.0):
            value = optimal_constant(2, pair, m).value
            bracket = closedform.type_a2d_bracket(s, m)
            inside = bracket.contains(value, 1e-9)
            passed &= inside
            rows.append({"s": s, "m": m, "value": value, "bracket": [bracket.lower, bracket.upper]})
    worst = 0.0
    for m in (0.0, 1.0):
        scaled = 0.02 * optimal_constant(2, type_a(2.02), m).value
        dev = _rel(scaled, closedform.type_a2d_limit(m))
        worst = max(worst, dev)
        rows.append({"s": 2.02, "m": m, "scaled": scaled})
    passed &= worst <= 0.1
    return Check("planar-bracket", passed, worst, 0.1, {"cases": rows})


def check_spinor(samples: int = 50, seed: int = 7) -> Check:
    rng = np.random.default_rng(seed)
    exact = spinor2d.anticommutation_defect() == 0.0 and spinor2d.hermitian_defect() == 0.0
    algebra = 0.0
    for _ in range(samples):
        xi = rng.normal(size=2) * 10 ** rng.uniform(-1, 1)
        m = float(rng.uniform(0, 3))
        defects = spinor2d.intertwining_defects(int(rng.integers(0, 6)), int(rng.choice([-1, 1])), xi, m)
        scale = float(np.hypot(*xi)) ** 2 + m * m
        algebra = max(algebra, defects["symbol_square"] / scale,
                      defects["massless_symbol"], defects["mass_term"], defects["projector"])
    circle = 0.0
    for pair in (gaussian(), bessel_k0()):
        for k in range(4):
            for mu in (1, -1):
                lhs, rhs = spinor2d.funk_hecke_circle(pair, k, mu, (0.8, -0.5))
                circle = max(circle, float(np.max(np.abs(lhs - rhs)) / np.max(np.abs(rhs))))
    passed = exact and algebra <= 1e-12 and circle <= 1e-6
    return Check("spinor", passed, max(algebra, circle), 1e-6,
                 {"exact_algebra": exact, "identities": algebra, "circle": circle})


def check_compact_transform() -> Check:
    """(1 - cos r)/r^2 in d = 3: flat Schrodinger plateau, Dirac strictly below twice it."""
    pair = fejer()
    d = 3
    config = SearchConfig()
    sup = sup_over_r(lambda r: lambdak.lambda_k(pair, 0, d, r), config)
    plateau = 2 * PI**3
    flat_ok = sup.tag == FLAT and sup.flat_range[0] <= 0.5 * 1.06 and _rel(sup.value, plateau) <= 1e-9
    grid = np.logspace(-3, 3, config.points)
    lam = np.array([[lambdak.lambda_k(pair, k, d, r) for r in grid] for k in range(5)])
    on_plateau = grid >= 0.5
    plateau_dev = float(np.max(np.abs(lam[0, on_plateau] - plateau)) / plateau)
    margin = math.inf
    for k in range(4):
        for m in (0.0, 1.0):
            tilde = dirac.top_eigenvalue(lam[k], lam[k + 1], grid, m)
            margin = min(margin, float(np.min((2 * lam[0] - tilde) / (2 * lam[0]))))
    passed = flat_ok and plateau_dev <= 1e-9 and margin > 0
    return Check("compact-transform", passed, plateau_dev, 1e-9,
                 {"tag": sup.tag, "flat_range": sup.flat_range, "min_relative_margin": margin})


def _bessel_product_violations(slack: float) -> int:
    """Monotonicity and limits of r -> I_mu(r) K_mu(r) on a log grid."""
    r = np.logspace(-3, 3, 400)
    mus = (0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0)
    ik = np.array([specfun.bessel_ik_product(mu, r) for mu in mus])
    bad = int(np.sum(np.diff(ik, axis=1) >= slack * ik[:, 1:]))
    rik = r * ik[1:]
    bad += int(np.sum(np.diff(rik, axis=1) <= -slack * rik[:, 1:]))
    bad += int(np.sum(np.diff(ik, axis=0) >= slack * ik[1:]))
    for mu in mus[1:]:
        bad += _rel(float(specfun.bessel_ik_product(mu, 1e-9)), 1 / (2 * mu)) > 1e-6
        bad += _rel(float(1e9 * specfun.bessel_ik_product(mu, 1e9)), 0.5) > 1e-6
    three_half = np.sqrt(1 + r**2) * ik[3]
    bad += int(np.sum(np.diff(three_half) <= -slack * three_half[1:]))
    bad += int(np.sum(np.sqrt(1 + r**2) * ik[1] >= 1.0))
    return bad


def check_properties() -> Check:
    slack = 1e-9
    violations = {"nonnegative": 0, "k_monotone": 0, "mass_monotone": 0, "bessel_product": 0}
    grid = np.logspace(-2, 2, 17)
    for d in (2, 3, 4, 5):
        pairs = ([type_a(2.5)] if d == 2 else [type_a(2.0)]) + _integrable_pairs()
        for pair in pairs:
            # The Bessel route keeps relative accuracy where lambda_k is tiny
            # (small r, large k); the Legendre route only has an absolute floor.
            lam = np.array([[lambdak.lambda_k(pair, k, d, r, "bessel") for r in grid] for k in range(7)])
            violations["nonnegative"] += int(np.sum(lam < 0))
            violations["k_monotone"] += int(np.sum(lam[1:] > lam[:-1] * (1 + slack)))
            for k in range(6):
                prev = None
                for m in (0.0, 0.5, 1.0, 2.0, 5.0):
                    cur = dirac.top_eigenvalue(lam[k], lam[k + 1], grid, m)
                    if prev is not None:
                        violations["mass_monotone"] += int(np.sum(cur < prev * (1 - slack)))
                    prev = cur
    violations["bessel_product"] = _bessel_product_violations(slack)
    total = sum(violations.values())
    return Check("properties", total == 0, float(total), 0.0, violations)


CHECKS: dict[str, Callable[[], Check]] = {
    "bessel-identity": check_bessel_identity,
    "route-agreement": check_route_agreement,
    "dimension-shift": check_dimension_shift,
    "matrix-identity": check_matrix_identity,
    "homogeneous": check_homogeneous,
    "power-weight": check_power_weight,
    "integrable-weight": check_integrable_weight,
    "ratio-maxima": check_ratio_maxima,
    "planar-sandwich": check_planar_sandwich,
    "planar-bracket": check_planar_bracket,
    "spinor": check_spinor,
    "compact-transform": check_compact_transform,
    "properties": check_properties,
}


# Short names accepted by ``--only`` in addition to the check names.
ALIASES = {"lemma-ik": "bessel-identity", "mathematica": "ratio-maxima"}


def resolve(name: str) -> str:
    return ALIASES.get(name, name)


def run_check(name: str) -> Check:
    start = time.perf_counter()
    check = CHECKS[name]()
    check.seconds = time.perf_counter() - start
    return check


def workers() -> int:
    try:
        return max(1, int(os.environ.get("SMOOTH_CONST_THREADS", "1")))
    except ValueError:
        return 1


def run(names: Optional[Iterable[str]] = None) -> list[Check]:
    """Run checks in a fixed order; results come back in that order."""
    selected = [resolve(n) for n in names] if names else list(CHECKS)
    unknown = [n for n in selected if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {', '.join(unknown)}")
    n = workers()
    if n == 1:
        return [run_check(name) for name in selected]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(run_check, selected))
