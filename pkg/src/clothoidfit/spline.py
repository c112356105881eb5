"""Piecewise G1 clothoid splines through waypoints with given headings."""

from __future__ import annotations

from dataclasses import dataclass

from .curve import ClothoidSegment
from .errors import DomainError, SolverError, SplineError
from .solver import DEFAULT_TOL, HermiteData, build_clothoid

__all__ = ["ClothoidSpline", "fit_spline"]


@dataclass(frozen=True)
class ClothoidSpline:
    segments: tuple[ClothoidSegment, ...]

    @property
    def length(self) -> float:
        return sum(seg.length for seg in self.segments)

    def __len__(self) -> int:
        return len(self.segments)


def fit_spline(waypoints, tol: float = DEFAULT_TOL) -> ClothoidSpline:
    """One clothoid per consecutive pair of (x, y, theta) waypoints.

    Each segment starts exactly at its waypoint with its heading, so
    position and tangent are continuous at the joints up to the fitting
    residual.  A pair that cannot be fitted raises SplineError with its index.
    """
    pts = [tuple(map(float, w)) for w in waypoints]
    if len(pts) < 2:
        raise ValueError("a spline needs at least 2 waypoints")
    if any(len(p) != 3 for p in pts):
        raise ValueError("waypoints must be (x, y, theta) triples")
    segs = []
    for i, (p, q) in enumerate(zip(pts[:-1], pts[1:])):
        try:
            seg, _ = build_clothoid(HermiteData(*p, *q), tol)
        except (DomainError, SolverError) as exc:
            raise SplineError(f"pair {i} -> {i + 1}: {exc}", i, exc) from exc
        segs.append(seg)
    return ClothoidSpline(tuple(segs))
