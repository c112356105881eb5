"""Fresnel integrals C(t), S(t) and their momenta.

Normalization is the one of Abramowitz & Stegun::

    C(t) = int_0^t cos(pi/2 tau^2) dtau,   S(t) = int_0^t sin(pi/2 tau^2) dtau

For |t| <= 1.6 a power series is summed directly.  Beyond that the integrals
are assembled from the complex auxiliary function

    G(x) = ((1 + i)/2 - (C(x) + i S(x))) * exp(-i pi x^2 / 2),

which is smooth and slowly varying, evaluated with the Laplace continued
fraction of erfc.  ``fresnel_aux`` is exported because the generalized
integrals in :mod:`clothoidfit.gfresnel` combine it with their own phase
instead of going through C and S.

All private helpers accept numpy arrays; the public functions take scalars.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError

__all__ = [
    "FresnelPair",
    "MomentaTable",
    "MAX_MOMENTA_ORDER",
    "fresnel",
    "fresnel_aux",
    "fresnel_momenta",
]

MAX_MOMENTA_ORDER = 32
SERIES_LIMIT = 1.6

_SERIES_TERMS = 36
_SQRT_PI = math.sqrt(math.pi)
_VELTKAMP = 134217729.0  # 2**27 + 1


class FresnelPair(NamedTuple):
    c: float
    s: float


@dataclass(frozen=True)
class MomentaTable:
    """C_j(t), S_j(t) for j = 0..order."""

    t: float
    order: int
    c_moments: np.ndarray
    s_moments: np.ndarray


def _require_finite(**values):
    for name, v in values.items():
        if not np.all(np.isfinite(v)):
            raise DomainError(f"{name} must be finite, got {v!r}")


def half_pi_square_trig(t, scale=1.0, dtype=float):
    """Return ``cos(scale pi t^2 / 2), sin(scale pi t^2 / 2)`` without the
    absolute phase error of forming ``pi * t * t / 2`` directly.

    t^2 is split exactly into hi + lo and hi is reduced modulo the period
    ``4 / scale`` (exact in binary floating point for scale a power of two);
    only the reduced angle is multiplied by pi.  ``dtype=np.longdouble``
    carries the reduced angle and the trig calls in extended precision.
    """
    t = np.asarray(t, dtype=float)
    period = 4.0 / scale
    c = _VELTKAMP * t
    th = c - (c - t)
    tl = t - th
    hi = t * t
    lo = ((th * th - hi) + 2.0 * th * tl) + tl * tl
    # the split overflows for |t| > ~1e150; drop the low part there
    lo = np.where(np.isfinite(lo), lo, 0.0)
    r = np.fmod(hi, period).astype(dtype) + lo.astype(dtype)
    two_pi = 8 * np.arctan(np.ones((), dtype=dtype))
    ang = (two_pi / dtype(period)) * r
    return np.cos(ang), np.sin(ang)


def _series(t):
    # C = t sum_m even (-1)^(m/2) u^m / (m! (2m+1)), S likewise over odd m,
    # with u = pi t^2 / 2.
    t = np.asarray(t, dtype=float)
    u = 0.5 * math.pi * t * t
    term = np.ones_like(t)
    c = np.zeros_like(t)
    s = np.zeros_like(t)
    for m in range(_SERIES_TERMS):
        if m:
            term = term * u / m
        sign = -1.0 if (m // 2) % 2 else 1.0
        if m % 2 == 0:
            c += sign * term / (2 * m + 1)
        else:
            s += sign * term / (2 * m + 1)
    return t * c, t * s


def _cf_depth(x):
    if x < 2.0:
        return 140
    if x < 3.0:
        return 70
    if x < 5.0:
        return 36
    return 20


def _aux_cf(x):
    # erfc(w) = exp(-w^2)/sqrt(pi) * 1/(w + (1/2)/(w + 1/(w + (3/2)/(w + ...))))
    # with w = sqrt(pi)/2 (1 - i) x, so that exp(-w^2) = exp(i pi x^2 / 2).
    x = np.asarray(x, dtype=float)
    out = np.empty(x.shape, dtype=complex)
    bounds = (0.0, 2.0, 3.0, 5.0, np.inf)
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        sel = (x >= lo) & (x < hi)
        if not np.any(sel):
            continue
        xs = x[sel]
        w = (0.5 * _SQRT_PI) * (1.0 - 1.0j) * xs
        acc = w.copy()
        for m in range(_cf_depth(lo), 0, -1):
            acc = w + (0.5 * m) / acc
        out[sel] = (0.5 + 0.5j) / (_SQRT_PI * acc)
    return out


def fresnel_aux(x):
    """Complex auxiliary function G(x) = g(x) + i f(x) for x >= 0.

    Satisfies ``C(x) + i S(x) = (1 + i)/2 - G(x) exp(i pi x^2 / 2)``;
    |G(x)| ~ 1/(pi x) for large x.  Accepts arrays.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("fresnel_aux is defined for x >= 0")
    out = np.empty(x.shape, dtype=complex)
    small = x <= SERIES_LIMIT
    if np.any(small):
        xs = x[small]
        c, s = _series(xs)
        cp, sp = half_pi_square_trig(xs)
        out[small] = ((0.5 - c) + 1j * (0.5 - s)) * (cp - 1j * sp)
    if np.any(~small):
        out[~small] = _aux_cf(x[~small])
    return out


def fresnel_cs(t):
    """Vectorized C(t), S(t)."""
    t = np.asarray(t, dtype=float)
    c = np.empty_like(t)
    s = np.empty_like(t)
    small = np.abs(t) <= SERIES_LIMIT
    if np.any(small):
        c[small], s[small] = _series(t[small])
    if np.any(~small):
        tl = t[~small]
        ax = np.abs(tl)
        g = _aux_cf(ax)
        cp, sp = half_pi_square_trig(ax)
        f = (0.5 + 0.5j) - g * (cp + 1j * sp)
        sg = np.sign(tl)
        c[~small] = sg * f.real
        s[~small] = sg * f.imag
    return c, s


def fresnel(t: float) -> FresnelPair:
    """Fresnel integrals (C(t), S(t)) for a finite real t."""
    _require_finite(t=t)
    c, s = fresnel_cs(np.asarray(float(t)))
    return FresnelPair(float(c), float(s))


def momenta_arrays(t, k):
    """Vectorized momenta; returns arrays of shape (k + 1,) + t.shape.

    The recurrence runs in extended precision: C_k(t) grows like t^(k-1), and
    at |t| = 5, k = 10 plain doubles lose a couple of ulps of a 1e6-sized
    value.
    """
    t = np.asarray(t, dtype=float)
    ld = np.longdouble
    pi = 4 * np.arctan(np.ones((), dtype=ld))
    cm = np.empty((k + 1,) + t.shape, dtype=ld)
    sm = np.empty((k + 1,) + t.shape, dtype=ld)
    c0, s0 = fresnel_cs(t)
    cm[0], sm[0] = c0, s0
    if k > 0:
        cp, sp = half_pi_square_trig(t, dtype=ld)
        cm[1] = sp / pi
        # 1 - cos(x) = 2 sin(x/2)^2 keeps S_1 accurate near t = 0
        _, sp_half = half_pi_square_trig(t, scale=0.5, dtype=ld)
        sm[1] = 2 * sp_half * sp_half / pi
        tk = np.ones(t.shape, dtype=ld)
        tl = t.astype(ld)
        for j in range(1, k):
            tk = tk * tl
            cm[j + 1] = (tk * sp - j * sm[j - 1]) / pi
            sm[j + 1] = (j * cm[j - 1] - tk * cp) / pi
    return cm.astype(float), sm.astype(float)


def fresnel_momenta(t: float, k: int) -> MomentaTable:
    """Momenta C_j(t) = int_0^t tau^j cos(pi/2 tau^2), S_j likewise, j <= k.

    Orders above one come from the forward integration-by-parts recurrence
    seeded with C(t), S(t) and the closed forms of C_1, S_1.
    """
    _require_finite(t=t)
    if int(k) != k or k < 0:
        raise ValueError(f"order must be a non-negative integer, got {k!r}")
    if k > MAX_MOMENTA_ORDER:
        raise ValueError(f"order {k} exceeds the maximum {MAX_MOMENTA_ORDER}")
    cm, sm = momenta_arrays(np.asarray(float(t)), int(k))
    return MomentaTable(float(t), int(k), cm.copy(), sm.copy())
