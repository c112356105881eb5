"""Clothoid fitting for G1 Hermite data.

Fresnel integrals and their generalizations, a Newton solver for the single
scalar equation behind the fit, curve evaluation and clothoid splines.
"""

__version__ = "0.1.0"

from .curve import ClothoidSegment, CurvePoint, eval_at, sample
from .errors import DomainError, RegimeError, SolverError, SplineError
from .fresnel import FresnelPair, MomentaTable, fresnel, fresnel_momenta
from .gfresnel import (
    GFresnelValues,
    eval_xy,
    eval_xy_a_large,
    eval_xy_a_small,
    eval_xy_a_zero,
    r_lommel,
)
from .solver import (
    AtlasCell,
    HermiteData,
    ReducedAngles,
    SolverReport,
    build_clothoid,
    build_grid,
    endpoint_residual,
    find_a,
    guess_a,
    newton_statistics,
    normalize_angle,
    reduce_angles,
    theta,
    theta_prime,
)
from .spline import ClothoidSpline, fit_spline

__all__ = [
    "AtlasCell",
    "ClothoidSegment",
    "ClothoidSpline",
    "CurvePoint",
    "DomainError",
    "FresnelPair",
    "GFresnelValues",
    "HermiteData",
    "MomentaTable",
    "ReducedAngles",
    "RegimeError",
    "SolverError",
    "SolverReport",
    "SplineError",
    "build_clothoid",
    "build_grid",
    "endpoint_residual",
    "eval_at",
    "eval_xy",
    "eval_xy_a_large",
    "eval_xy_a_small",
    "eval_xy_a_zero",
    "find_a",
    "fresnel",
    "fresnel_momenta",
    "guess_a",
    "newton_statistics",
    "normalize_angle",
    "r_lommel",
    "reduce_angles",
    "sample",
    "theta",
    "theta_prime",
]
