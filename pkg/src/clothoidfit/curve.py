"""Clothoid segments: evaluation and sampling along arc length."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .gfresnel import xy_arrays

__all__ = ["ClothoidSegment", "CurvePoint", "eval_at", "sample", "sample_arrays"]


@dataclass(frozen=True)
class ClothoidSegment:
    """Clothoid starting at (x0, y0) with heading theta0.

    Curvature varies linearly, ``kappa + kappa_prime * s`` for s in [0, length].
    """

    x0: float
    y0: float
    theta0: float
    kappa: float
    kappa_prime: float
    length: float

    def theta_at(self, s):
        return self.theta0 + s * (self.kappa + 0.5 * self.kappa_prime * s)

    def kappa_at(self, s):
        return self.kappa + self.kappa_prime * s

    @property
    def theta1(self) -> float:
        return self.theta_at(self.length)

    def end_point(self) -> tuple[float, float]:
        p = eval_at(self, self.length)
        return p.x, p.y


class CurvePoint(NamedTuple):
    s: float
    x: float
    y: float
    theta: float
    kappa: float
    extrapolated: bool = False


def _positions(seg, s):
    # x(s) = x0 + s X_0(kappa' s^2, kappa s, theta0), likewise y with Y_0
    s = np.asarray(s, dtype=float)
    x, y = xy_arrays(seg.kappa_prime * s * s, seg.kappa * s, seg.theta0, 0)
    return seg.x0 + s * x[0], seg.y0 + s * y[0]


def eval_at(seg: ClothoidSegment, s: float) -> CurvePoint:
    """Point, heading and curvature at arc length s.

    s outside [0, length] is evaluated with the same formulas and flagged as
    extrapolated.
    """
    if not math.isfinite(s):
        raise DomainError(f"arc length must be finite, got {s!r}")
    x, y = _positions(seg, np.array([float(s)]))
    return CurvePoint(
        float(s),
        float(x[0]),
        float(y[0]),
        float(seg.theta_at(s)),
        float(seg.kappa_at(s)),
        not 0.0 <= s <= seg.length,
    )


def sample_arrays(seg: ClothoidSegment, n: int):
    """Arrays (s, x, y, theta, kappa) at n uniformly spaced arc lengths."""
    if int(n) != n or n < 2:
        raise ValueError(f"need at least 2 samples, got {n!r}")
    s = np.linspace(0.0, seg.length, int(n))
    x, y = _positions(seg, s)
    return s, x, y, seg.theta_at(s), seg.kappa_at(s)


def sample(seg: ClothoidSegment, n: int) -> list[CurvePoint]:
    s, x, y, th, k = sample_arrays(seg, n)
    return [CurvePoint(*map(float, row)) for row in zip(s, x, y, th, k)]
