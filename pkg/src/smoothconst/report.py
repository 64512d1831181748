"""JSON reports for computed constants."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Optional

from . import closedform
from .search import ConstantResult, SearchConfig, optimal_constant
from .weights import WeightPair

KEYS = ("case", "computed", "closed_form", "bounds", "discrepancy", "attainment", "k_profile", "warnings")


@dataclass
class ConstantReport:
    case: dict
    computed: float
    closed_form: Optional[float]
    bounds: dict
    discrepancy: Optional[float]
    attainment: dict
    k_profile: list
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {key: getattr(self, key) for key in KEYS}

    def to_json(self, indent: int = 2) -> str:
        return dumps(self.to_dict(), indent)

    @classmethod
    def from_json(cls, text: str) -> "ConstantReport":
        data = json.loads(text)
        return cls(**{key: data[key] for key in KEYS})


def _float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def dumps(obj: Any, indent: int = 2, level: int = 0) -> str:
    """JSON text with every float written to 17 significant digits."""
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _float(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + dumps(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):
        return dumps(obj.item(), indent, level)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _attainment(result: ConstantResult) -> dict:
    best = result.best
    return {
        "tag": best.tag,
        "k": best.k,
        "r_star": best.r_star if best.tag == "interior" else None,
        "side": best.side,
        "flat_range": list(best.flat_range) if best.flat_range else None,
        "extremisers_hint": best.tag == "flat-interval",
    }


def build_report(
    equation: str,
    d: int,
    pair: WeightPair,
    m: Optional[float] = None,
    config: SearchConfig = SearchConfig(),
) -> ConstantReport:
    """Run the engine for one case and compare with any known closed form.

    Raises ``closedform.HypothesisFailed`` when a closed form is claimed for a
    pair whose transform is not non-negative.
    """
    if equation not in ("schrodinger", "dirac"):
        raise ValueError("equation must be 'schrodinger' or 'dirac'")
    pair.check_dimension(d)
    mass = m if equation == "dirac" else None
    if equation == "dirac" and mass is None:
        mass = 0.0
    known = closedform.lookup(equation, d, pair, mass)
    result = optimal_constant(d, pair, mass, config)
    scale = (2 * math.pi) ** (d - 1)

    closed = known.value if known else None
    discrepancy = abs(result.value - closed) / abs(closed) if closed else None
    bounds: dict = {"closed_form": None, "sandwich": None}
    warnings = list(result.warnings)
    if known and known.value is None:
        bounds["closed_form"] = [known.lower, known.upper]
        if not known.contains(result.value, 1e-9):
            warnings.append("computed value outside the closed-form bracket")
    if result.schrodinger_value is not None:
        bounds["sandwich"] = {
            "schrodinger": result.schrodinger_value,
            "lower": result.schrodinger_value,
            "upper": 2 * result.schrodinger_value,
            "ok": result.sandwich_ok,
        }
    case = {
        "equation": equation,
        "d": d,
        "m": mass,
        "weight": pair.id,
        "psi": pair.psi,
        "k_cut": result.k_cut,
        "transform_nonnegative": result.hypothesis,
        "truncated": result.truncated,
    }
    k_profile = [
        {"k": s.k, "sup": s.value / scale, "tag": s.tag, "r_star": s.r_star, "side": s.side}
        for s in result.per_k
    ]
    return ConstantReport(case, result.value, closed, bounds, discrepancy, _attainment(result),
                          k_profile, warnings)
