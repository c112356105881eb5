"""G1 Hermite interpolation with a single clothoid.

Writing the unknown clothoid over the unit parameter interval turns the
three fitting equations into one scalar equation in A = kappa' L^2 / 2:

    Theta(A; dtheta, dphi) = int_0^1 sin(A tau^2 + (dtheta - A) tau + dphi) dtau = 0

with dtheta = theta1 - theta0 and dphi = theta0 - phi (phi the chord angle).
Given a root A,

    L = r / Theta(A; dtheta, dphi + pi/2),  kappa = (dtheta - A) / L,
    kappa' = 2 A / L^2.

Newton's method started from a planar fit of the root surface
(``guess_a``) converges in a handful of steps.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .curve import ClothoidSegment, eval_at
from .errors import DomainError, SolverError
from .gfresnel import xy_arrays

__all__ = [
    "AtlasCell",
    "HermiteData",
    "ReducedAngles",
    "SolverReport",
    "build_clothoid",
    "build_grid",
    "endpoint_residual",
    "find_a",
    "guess_a",
    "newton_statistics",
    "normalize_angle",
    "reduce_angles",
    "theta",
    "theta_prime",
]

GUESS_DTHETA = 2.4674
GUESS_DPHI = 5.2478
DEFAULT_TOL = 1e-10
MAX_ITER = 50
A_RANGE = 20.0

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class HermiteData:
    x0: float
    y0: float
    theta0: float
    x1: float
    y1: float
    theta1: float


class ReducedAngles(NamedTuple):
    r: float
    phi: float
    dtheta: float
    dphi: float


@dataclass(frozen=True)
class SolverReport:
    a_root: float
    iterations: int
    residual: float
    converged: bool


@dataclass(frozen=True)
class AtlasCell:
    dphi: float
    dtheta: float
    a: float
    length: float
    solved: bool


def normalize_angle(phi: float) -> float:
    """Shift phi by a multiple of 2 pi into [-pi, pi]."""
    if not math.isfinite(phi):
        raise DomainError(f"angle must be finite, got {phi!r}")
    if abs(phi) > 8 * math.pi:
        phi = math.fmod(phi, _TWO_PI)
    while phi > math.pi:
        phi -= _TWO_PI
    while phi < -math.pi:
        phi += _TWO_PI
    return phi


def reduce_angles(data: HermiteData) -> ReducedAngles:
    dx = data.x1 - data.x0
    dy = data.y1 - data.y0
    r = math.hypot(dx, dy)
    if r == 0:
        raise DomainError("endpoints coincide")
    phi = math.atan2(dy, dx)
    return ReducedAngles(
        r,
        phi,
        normalize_angle(data.theta1 - data.theta0),
        normalize_angle(data.theta0 - phi),
    )


def guess_a(dtheta: float, dphi: float) -> float:
    """Planar approximation of the root surface A(dtheta, dphi)."""
    return GUESS_DTHETA * dtheta + GUESS_DPHI * dphi


def theta_arrays(a, dtheta, dphi):
    a = np.asarray(a, dtype=float)
    _, y = xy_arrays(2.0 * a, dtheta - a, dphi, 0)
    return y[0]


def theta_and_derivative(a, dtheta, dphi):
    """Theta and dTheta/dA = int_0^1 (tau^2 - tau) cos(...) dtau, vectorized."""
    a = np.asarray(a, dtype=float)
    x, y = xy_arrays(2.0 * a, dtheta - a, dphi, 2)
    return y[0], x[2] - x[1]


def theta(a: float, dtheta: float, dphi: float) -> float:
    return float(theta_arrays(float(a), float(dtheta), float(dphi)))


def theta_prime(a: float, dtheta: float, dphi: float) -> float:
    return float(theta_and_derivative(float(a), float(dtheta), float(dphi))[1])


def newton_arrays(a0, dtheta, dphi, tol=DEFAULT_TOL, max_iter=MAX_ITER):
    """Independent Newton iterations on Theta for arrays of start points.

    Returns (A, iterations, |Theta(A)|, converged) arrays.  An element stops
    as soon as |Theta| <= tol, when the derivative vanishes, or after
    ``max_iter`` updates.
    """
    a, dtheta, dphi = np.broadcast_arrays(
        np.asarray(a0, dtype=float), np.asarray(dtheta, dtype=float), np.asarray(dphi, dtype=float)
    )
    a = a.astype(float).ravel()
    dtheta = dtheta.ravel()
    dphi = dphi.ravel()
    iters = np.zeros(a.shape, dtype=int)
    resid = np.full(a.shape, np.inf)
    conv = np.zeros(a.shape, dtype=bool)
    active = np.arange(a.size)
    for step in range(max_iter + 1):
        if active.size == 0:
            break
        g, dg = theta_and_derivative(a[active], dtheta[active], dphi[active])
        resid[active] = np.abs(g)
        done = np.abs(g) <= tol
        conv[active[done]] = True
        if step == max_iter:
            break
        keep = ~done & (dg != 0) & np.isfinite(dg) & np.isfinite(g)
        idx = active[keep]
        a[idx] -= g[keep] / dg[keep]
        iters[idx] += 1
        active = idx
    return a, iters, resid, conv


def find_a(a_guess: float, dtheta: float, dphi: float, tol: float = DEFAULT_TOL,
           max_iter: int = MAX_ITER) -> SolverReport:
    """Newton iteration for a root of Theta(.; dtheta, dphi) from a_guess."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    a, it, res, conv = newton_arrays(a_guess, dtheta, dphi, tol, max_iter)
    return SolverReport(float(a[0]), int(it[0]), float(res[0]), bool(conv[0]))


def build_clothoid(data: HermiteData, tol: float = DEFAULT_TOL):
    """Fit the clothoid through ``data``; returns (ClothoidSegment, SolverReport).

    The root is the one reached from the planar guess, which selects a branch
    varying continuously with the angles rather than the globally shortest
    curve (see :func:`build_grid` for the latter).
    """
    for name in ("x0", "y0", "theta0", "x1", "y1", "theta1"):
        if not math.isfinite(getattr(data, name)):
            raise DomainError(f"{name} must be finite")
    r, _, dtheta, dphi = reduce_angles(data)
    report = find_a(guess_a(dtheta, dphi), dtheta, dphi, tol)
    if not report.converged:
        raise SolverError(f"Newton iteration did not converge: {report}", report)
    a = report.a_root
    h = theta(a, dtheta, dphi + 0.5 * math.pi)
    length = r / h
    if not length > 0:
        raise SolverError(f"root A={a} gives non-positive length {length}", report)
    seg = ClothoidSegment(
        data.x0, data.y0, data.theta0,
        kappa=(dtheta - a) / length,
        kappa_prime=2.0 * a / (length * length),
        length=length,
    )
    return seg, report


def endpoint_residual(data: HermiteData, seg: ClothoidSegment) -> float:
    """Distance between the far end of ``seg`` and (x1, y1)."""
    p = eval_at(seg, seg.length)
    return math.hypot(p.x - data.x1, p.y - data.y1)


# --------------------------------------------------------------------------
# atlas of minimal-length roots

def _atlas_chunk(dphi, dtheta, guesses, tol):
    n = dphi.size
    th = theta_arrays(guesses[None, :], dtheta[:, None], dphi[:, None])
    cell, k = np.nonzero(th[:, 1:] * th[:, :-1] <= 0)
    a_best = np.full(n, np.nan)
    l_best = np.full(n, np.inf)
    if cell.size == 0:
        return a_best, l_best
    mid = 0.5 * (guesses[k] + guesses[k + 1])
    a, _, _, conv = newton_arrays(mid, dtheta[cell], dphi[cell], tol)
    h = theta_arrays(a, dtheta[cell], dphi[cell] + 0.5 * math.pi)
    with np.errstate(divide="ignore"):
        length = 1.0 / h
    ok = conv & (length > 0) & np.isfinite(length)
    cell, a, length = cell[ok], a[ok], length[ok]
    # smallest L per cell, ties broken toward smaller |A|
    order = np.lexsort((np.abs(a), length, cell))
    cell, a, length = cell[order], a[order], length[order]
    first = np.ones(cell.size, dtype=bool)
    first[1:] = cell[1:] != cell[:-1]
    a_best[cell[first]] = a[first]
    l_best[cell[first]] = length[first]
    return a_best, l_best


def atlas_arrays(dphi, dtheta, m, tol=DEFAULT_TOL, chunk=2048, workers=None):
    """Minimal-length root A and length L (unit chord) for each angle pair.

    A is scanned on m + 1 equally spaced points of [-20, 20]; Newton runs from
    the midpoint of every bracket where Theta changes sign.  Unsolved cells
    get A = nan, L = inf.
    """
    dphi = np.asarray(dphi, dtype=float).ravel()
    dtheta = np.asarray(dtheta, dtype=float).ravel()
    guesses = np.linspace(-A_RANGE, A_RANGE, int(m) + 1)
    starts = range(0, dphi.size, chunk)

    def run(i):
        return _atlas_chunk(dphi[i:i + chunk], dtheta[i:i + chunk], guesses, tol)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, starts))
    else:
        parts = [run(i) for i in starts]
    if not parts:
        return np.empty(0), np.empty(0)
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def grid_angles(n):
    """The (n + 1)^2 grid nodes 2 pi i / n - pi, row-major with dphi outer."""
    v = _TWO_PI * np.arange(n + 1) / n - math.pi
    dphi, dtheta = np.meshgrid(v, v, indexing="ij")
    return dphi.ravel(), dtheta.ravel()


def build_grid(n: int, m: int, tol: float = DEFAULT_TOL, workers: int | None = None) -> list[AtlasCell]:
    """Minimal-length atlas over [-pi, pi]^2 in (dphi, dtheta), (n+1)^2 cells."""
    if int(n) != n or int(m) != m or n < 2 or m < 2:
        raise ValueError("grid sizes must be integers >= 2")
    dphi, dtheta = grid_angles(int(n))
    a, length = atlas_arrays(dphi, dtheta, m, tol, workers=workers)
    return [
        AtlasCell(float(p), float(t), float(ai), float(li), bool(np.isfinite(li)))
        for p, t, ai, li in zip(dphi, dtheta, a, length)
    ]


# --------------------------------------------------------------------------
# Newton iteration counts over the angle square

def newton_statistics(n: int, tol: float = DEFAULT_TOL, window: float = math.pi,
                      chunk: int = 65536, workers: int | None = None):
    """Run Newton from ``guess_a`` on an n x n grid of cell centres covering
    (-window, window)^2.

    Cell centres keep the sampling off the boundary +-pi, where the root
    surface jumps.  The count per cell is the number of residual evaluations
    of the loop ``while |g(A)| > tol: A -= g/g'``, i.e. Newton updates + 1,
    so an exact guess counts as 1.  Returns (counts, converged) arrays in
    row-major order with dphi outer.
    """
    v = -window + window * (2 * np.arange(n) + 1) / n
    dphi, dtheta = (g.ravel() for g in np.meshgrid(v, v, indexing="ij"))
    starts = range(0, dphi.size, chunk)

    def run(i):
        sl = slice(i, i + chunk)
        _, it, _, conv = newton_arrays(guess_a(dtheta[sl], dphi[sl]), dtheta[sl], dphi[sl], tol)
        return it + 1, conv

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, starts))
    else:
        parts = [run(i) for i in starts]
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])
