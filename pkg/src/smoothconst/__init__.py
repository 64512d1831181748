"""Optimal constants of smoothing estimates for the free Schrodinger and Dirac equations."""

from .closedform import ClosedForm, HypothesisFailed
from .lambdak import LambdaProfile, lambda_k, lambda_profile
from .report import ConstantReport, build_report
from .search import ConstantResult, SearchConfig, SupResult, optimal_constant, sup_over_r
from .weights import WeightPair, parse_weight

__all__ = [
    "ClosedForm",
    "ConstantReport",
    "ConstantResult",
    "HypothesisFailed",
    "LambdaProfile",
    "SearchConfig",
    "SupResult",
    "WeightPair",
    "build_report",
    "lambda_k",
    "lambda_profile",
    "optimal_constant",
    "parse_weight",
    "sup_over_r",
]

__version__ = "0.1.0"
