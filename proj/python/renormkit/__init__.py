"""Renormalization combinatorics of circle rotations and the main cardioid."""

from ._core import (
    AmbiguousBranchError,
    BudgetError,
    DomainError,
    PrecisionError,
    antirenorm_rotation,
    area_estimate,
    cardioid_point,
    close_returns,
    dominant_points,
    escape_time,
    itinerary,
    periodic_point,
    prime_renorm,
    render,
    scaling_report,
    self_similarity,
    siegel_orbit,
    tiling,
)

__all__ = [
    "AmbiguousBranchError",
    "BudgetError",
    "DomainError",
    "PrecisionError",
    "antirenorm_rotation",
    "area_estimate",
    "cardioid_point",
    "close_returns",
    "dominant_points",
    "escape_time",
    "itinerary",
    "periodic_point",
    "prime_renorm",
    "render",
    "scaling_report",
    "self_similarity",
    "siegel_orbit",
    "tiling",
]
