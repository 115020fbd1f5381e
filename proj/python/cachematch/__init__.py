"""Coded caching with user-to-cache matching: rates, bounds and simulation."""

from ._cachematch import (
    DomainError,
    HardInvariantViolation,
    PolyKPoint,
    SystemConfig,
    classify,
    hcm_rate,
    lower_bound,
    optimality_gap,
    pam_shallow_rate,
    pam_steep_rate,
    pcd_rate,
    regime_map,
    simulate,
    validate,
    verify_bounds,
)

__all__ = [
    "DomainError",
    "HardInvariantViolation",
    "PolyKPoint",
    "SystemConfig",
    "classify",
    "hcm_rate",
    "lower_bound",
    "optimality_gap",
    "pam_shallow_rate",
    "pam_steep_rate",
    "pcd_rate",
    "regime_map",
    "simulate",
    "validate",
    "verify_bounds",
]
