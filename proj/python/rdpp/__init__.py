"""Stochastic ratio-dependent predator-prey model: simulation and theorem checks."""

from ._rdpp import (
    CoefficientFn,
    CoefficientSet,
    Error,
    Mode,
    PathRecord,
    Scheme,
    SimConfig,
    Theorem2Constants,
    __version__,
    classify_hypothesis,
    ensemble_moment,
    fingerprint,
    gbm_oracle_moment,
    parse_config,
    predator_extinction_rate,
    prey_solo_criterion,
    simulate_path,
    strong_order,
    theorem2_constants,
    validate_coefficients,
    verify,
)

__all__ = [
    "CoefficientFn",
    "CoefficientSet",
    "Error",
    "Mode",
    "PathRecord",
    "Scheme",
    "SimConfig",
    "Theorem2Constants",
    "__version__",
    "classify_hypothesis",
    "ensemble_moment",
    "fingerprint",
    "gbm_oracle_moment",
    "parse_config",
    "predator_extinction_rate",
    "prey_solo_criterion",
    "simulate_path",
    "strong_order",
    "theorem2_constants",
    "validate_coefficients",
    "verify",
]
