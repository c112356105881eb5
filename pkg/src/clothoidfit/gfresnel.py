"""Generalized Fresnel integrals

    X_k(a, b, c) = int_0^1 tau^k cos(a/2 tau^2 + b tau + c) dtau
    Y_k(a, b, c) = int_0^1 tau^k sin(a/2 tau^2 + b tau + c) dtau

The phase c is applied last as a rotation.  For |a| >= EPS_A the values come
from the standard Fresnel integrals plus the integration-by-parts recurrence
in k; for |a| < EPS_A from a power series in a whose coefficients are the
a = 0 integrals, themselves given by reduced Lommel series.

Every function here has a vectorized private twin (``xy_arrays`` and the
``_xy_*`` helpers) working on numpy arrays of equal shape; results are
stacked along a new leading axis indexed by k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.linalg import solve_banded

from .errors import DomainError, RegimeError
from .fresnel import fresnel_aux

__all__ = [
    "EPS_A",
    "SERIES_ORDER",
    "GFresnelValues",
    "ReductionParams",
    "eval_xy",
    "eval_xy_a_large",
    "eval_xy_a_small",
    "eval_xy_a_zero",
    "r_lommel",
    "reduction_params",
    "xy_arrays",
]

EPS_A = 1e-2
SERIES_ORDER = 5
MAX_PUBLIC_ORDER = 3
MAX_ZERO_ORDER = 48
MAX_SERIES_ORDER = 10

TAYLOR_B = 1e-3
# beyond this |b| the reduced Lommel series cancels badly (1e-13 at |b| = 15)
LOMMEL_B_LIMIT = 10.0
# past this amplification of the Z_0 error the forward recurrence in k is
# abandoned for a backward sweep or a boundary value solve
_FORWARD_GROWTH_LIMIT = 1e2
# backward sweep amplifies errors by at most (|a|+|b|)^m / m!, ~400 here
_BACKWARD_LIMIT = 8.0


@dataclass(frozen=True)
class GFresnelValues:
    """X_j(a, b, c) and Y_j(a, b, c) for j = 0..order."""

    a: float
    b: float
    c: float
    order: int
    x: np.ndarray
    y: np.ndarray


class ReductionParams(NamedTuple):
    """Completing the square: a/2 tau^2 + b tau = pi/2 sgn (tau z + ell)^2 + gamma."""

    sgn: float
    z: float
    ell: float
    gamma: float


def reduction_params(a: float, b: float) -> ReductionParams:
    if a == 0:
        raise DomainError("the quadratic reduction needs a != 0")
    aa = abs(a)
    sgn = math.copysign(1.0, a)
    return ReductionParams(
        sgn=sgn,
        z=math.sqrt(aa / math.pi),
        ell=sgn * b / math.sqrt(math.pi * aa),
        gamma=-sgn * b * b / (2.0 * aa),
    )


def _check_finite(**values):
    for name, v in values.items():
        if not math.isfinite(v):
            raise DomainError(f"{name} must be finite, got {v!r}")


def _check_order(k, limit):
    if int(k) != k or k < 0:
        raise ValueError(f"order must be a non-negative integer, got {k!r}")
    if k > limit:
        raise ValueError(f"order {k} exceeds the maximum {limit}")
    return int(k)


# --------------------------------------------------------------------------
# reduced Lommel function

def _lommel_arrays(mu, nu, b):
    b = np.asarray(b, dtype=float)
    d0 = (mu + nu + 1.0) * (mu - nu + 1.0)
    if d0 == 0:
        raise DomainError(f"reduced Lommel series has a pole at mu={mu}, nu={nu}")
    term = np.full(b.shape, 1.0 / d0)
    total = term.copy()
    active = np.ones(b.shape, dtype=bool)
    b2 = b * b
    n = 1
    while np.any(active):
        den = (2 * n + mu - nu + 1.0) * (2 * n + mu + nu + 1.0)
        if den == 0:
            raise DomainError(f"reduced Lommel series has a pole at mu={mu}, nu={nu}")
        term = np.where(active, -term * b2 / den, 0.0)
        total += term
        active &= np.abs(term) > 1e-50 + 1e-18 * np.abs(total)
        n += 1
        if n > 2000:
            raise DomainError("reduced Lommel series failed to converge")
    return total


def r_lommel(mu: float, nu: float, b: float) -> float:
    """Reduced Lommel function w_{mu,nu}(b) = sum_n (-b^2)^n / alpha_{n+1}(mu, nu).

    ``alpha_n = prod_{m=1..n} ((mu + 2m - 1)^2 - nu^2)``; the Lommel function
    itself is ``s_{mu,nu}(b) = b^(mu+1) w_{mu,nu}(b)``.
    """
    _check_finite(mu=mu, nu=nu, b=b)
    return float(_lommel_arrays(float(mu), float(nu), np.array([float(b)]))[0])


def _scaled_lommel(coef, mu, nu, b):
    # coef * w_{mu,nu}(b), skipping the series wherever coef is exactly zero
    out = np.zeros(np.shape(b))
    nz = coef != 0
    if np.any(nz):
        out[nz] = coef[nz] * _lommel_arrays(mu, nu, b[nz])
    return out


# --------------------------------------------------------------------------
# a = 0

def _zero_recurrence(b, kmax):
    """Z_j = X_j(0, b) + i Y_j(0, b) for |b| large, from j Z_{j-1} + i b Z_j = e^{ib}.

    Upward where j <= |b| and downward from a far starting order where
    j > |b|; each direction only damps errors.
    """
    eib = complex(math.cos(b), math.sin(b))
    z = np.empty(kmax + 1, dtype=complex)
    z[0] = complex(math.sin(b) / b, 2.0 * math.sin(0.5 * b) ** 2 / b)
    m = min(kmax, int(abs(b)))
    for j in range(1, m + 1):
        z[j] = (eib - j * z[j - 1]) / (1j * b)
    if m < kmax:
        top = kmax + 40 + int(2 * abs(b))
        zj = eib / (top + 1 + 1j * b)
        for j in range(top, m + 1, -1):
            zj = (eib - 1j * b * zj) / j
            if j - 1 <= kmax:
                z[j - 1] = zj
    return z


def _xy_zero(b, kmax):
    b = np.asarray(b, dtype=float)
    x = np.empty((kmax + 1,) + b.shape)
    y = np.empty((kmax + 1,) + b.shape)
    sb, cb = np.sin(b), np.cos(b)
    tiny = np.abs(b) < TAYLOR_B
    bsafe = np.where(tiny, 1.0, b)
    b2 = b * b
    x[0] = np.where(tiny, 1.0 - b2 / 6.0 * (1.0 - b2 / 20.0), sb / bsafe)
    y[0] = np.where(
        tiny,
        0.5 * b * (1.0 - b2 / 12.0 * (1.0 - b2 / 30.0)),
        2.0 * np.sin(0.5 * b) ** 2 / bsafe,
    )
    if kmax == 0:
        return x, y

    lom = np.abs(b) <= LOMMEL_B_LIMIT
    if np.any(lom):
        bl, sl, cl = b[lom], sb[lom], cb[lom]
        d = sl - bl * cl
        for j in range(1, kmax + 1):
            coef_a = j * bl * sl / (1 + j)
            coef_b = d * bl / (1 + j)
            x[j][lom] = (
                _scaled_lommel(coef_a, j + 0.5, 1.5, bl)
                + _scaled_lommel(coef_b, j + 1.5, 0.5, bl)
                + cl / (1 + j)
            )
            coef_c = -bl * bl * sl / (2 + j)
            y[j][lom] = (
                _scaled_lommel(coef_c, j + 1.5, 1.5, bl)
                + _scaled_lommel(d, j + 0.5, 0.5, bl)
                + sl / (2 + j)
            )
    for idx in zip(*np.nonzero(~lom)):
        zz = _zero_recurrence(float(b[idx]), kmax)
        x[(slice(None),) + idx] = zz.real
        y[(slice(None),) + idx] = zz.imag
    return x, y


def eval_xy_a_zero(b: float, k: int) -> GFresnelValues:
    """X_j(0, b), Y_j(0, b) for j = 0..k."""
    _check_finite(b=b)
    k = _check_order(k, MAX_ZERO_ORDER)
    x, y = _xy_zero(np.array([float(b)]), k)
    return GFresnelValues(0.0, float(b), 0.0, k, x[:, 0], y[:, 0])


# --------------------------------------------------------------------------
# small |a|: power series in a

def _xy_small(a, b, kmax, p):
    a = np.asarray(a, dtype=float)
    x0, y0 = _xy_zero(b, kmax + 4 * p + 2)
    x = np.zeros((kmax + 1,) + a.shape)
    y = np.zeros((kmax + 1,) + a.shape)
    q = 0.25 * a * a
    # highest power first
    coefs = [np.ones_like(a)]
    for n in range(1, p + 1):
        coefs.append(-coefs[-1] * q / ((2 * n) * (2 * n - 1)))
    for n in range(p, -1, -1):
        h = a / (2.0 * (2 * n + 1))
        for j in range(kmax + 1):
            x[j] += coefs[n] * (x0[4 * n + j] - h * y0[4 * n + 2 + j])
            y[j] += coefs[n] * (y0[4 * n + j] + h * x0[4 * n + 2 + j])
    return x, y


def eval_xy_a_small(a: float, b: float, k: int, p: int = SERIES_ORDER,
                    strict: bool = True) -> GFresnelValues:
    """Series evaluation for |a| < EPS_A, truncated after the a^(2p) term.

    The truncation error is bounded by (|a|/2)^(2p) cosh(a).  ``strict=False``
    lifts the regime check.
    """
    _check_finite(a=a, b=b)
    if strict and abs(a) >= EPS_A:
        raise RegimeError(f"|a| = {abs(a)} is not below the series threshold {EPS_A}")
    if int(p) != p or not 1 <= p <= MAX_SERIES_ORDER:
        raise ValueError(f"series order p must be an integer in [1, {MAX_SERIES_ORDER}]")
    k = _check_order(k, MAX_ZERO_ORDER - 4 * int(p) - 2)
    x, y = _xy_small(np.array([float(a)]), np.array([float(b)]), k, int(p))
    return GFresnelValues(float(a), float(b), 0.0, k, x[:, 0], y[:, 0])


# --------------------------------------------------------------------------
# large |a|: Fresnel integrals + recurrence in k

def _forward_growth(aa, bs, kmax):
    # bound on how much the forward recurrence amplifies an error in Z_0
    g_prev = np.ones_like(aa)
    g = np.abs(bs) / aa
    for j in range(1, kmax):
        g_prev, g = g, (j * g_prev + np.abs(bs) * g) / aa
    return g


def _recurrence_backward(aa, bs, kmax):
    """Z_1..Z_kmax by running j Z_{j-1} + i b Z_j + i a Z_{j+1} = e^{it} downward
    from a far order where Z_j ~ e^{it} / (j + 1 + i (a + b))."""
    t = 0.5 * aa + bs
    eit = np.cos(t) + 1j * np.sin(t)
    top = kmax + 40 + int(2 * _BACKWARD_LIMIT)
    d = 1j * (aa + bs)
    z_hi = eit / (top + 2 + d)
    z_mid = eit / (top + 1 + d)
    out = np.empty((kmax,) + aa.shape, dtype=complex)
    for j in range(top, 1, -1):
        z_lo = (eit - 1j * bs * z_mid - 1j * aa * z_hi) / j
        if j - 1 <= kmax:
            out[j - 2] = z_lo
        z_hi, z_mid = z_mid, z_lo
    return out


def _recurrence_bvp(aa, bs, z0, kmax):
    """Solve j Z_{j-1} + i b Z_j + i a Z_{j+1} = e^{it} for Z_1..Z_kmax.

    Z_0 is pinned and Z_K at a far order K is set to its leading asymptotic
    value; the influence of that guess decays geometrically toward low k.
    """
    t = 0.5 * aa + bs
    eit = complex(math.cos(t), math.sin(t))
    big_k = kmax + 30 + int(3 * (aa + abs(bs)))
    ab = np.zeros((3, big_k), dtype=complex)
    ab[0, 1:] = 1j * aa
    ab[1, :] = 1j * bs
    ab[2, :-2] = np.arange(2, big_k)
    # last row pins Z_K
    ab[1, -1] = 1.0
    rhs = np.full(big_k, eit, dtype=complex)
    rhs[0] -= z0
    rhs[-1] = eit / (big_k + 1 + 1j * (aa + bs))
    sol = solve_banded((1, 1), ab, rhs)
    return sol[:kmax]


def _xy_large(a, b, kmax):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    sgn = np.where(a < 0, -1.0, 1.0)
    aa = np.abs(a)
    bs = sgn * b
    # integrals for (-a, -b) are the conjugates of those for (a, b)
    z = np.sqrt(aa / math.pi)
    ell = bs / np.sqrt(math.pi * aa)
    ell1 = ell + z
    t = 0.5 * aa + bs
    eit = np.cos(t) + 1j * np.sin(t)
    sg0 = np.where(ell >= 0, 1.0, -1.0)
    sg1 = np.where(ell1 >= 0, 1.0, -1.0)
    # exp(i gamma) (F(ell + z) - F(ell)) with F = C + iS, written through the
    # auxiliary function so the large phases gamma + pi/2 x^2 cancel exactly
    acc = sg0 * fresnel_aux(np.abs(ell)) - sg1 * fresnel_aux(np.abs(ell1)) * eit
    cross = sg0 != sg1
    if np.any(cross):
        gam = -bs[cross] ** 2 / (2.0 * aa[cross])
        acc[cross] += (sg1[cross] - sg0[cross]) * (0.5 + 0.5j) * np.exp(1j * gam)
    zk = np.empty((kmax + 1,) + a.shape, dtype=complex)
    zk[0] = acc / z
    if kmax >= 1:
        # e^{it} - 1 written to avoid cancellation for small t
        em1 = -2.0 * np.sin(0.5 * t) ** 2 + 1j * np.sin(t)
        zk[1] = (em1 - 1j * bs * zk[0]) / (1j * aa)
    for j in range(1, kmax):
        zk[j + 1] = (eit - j * zk[j - 1] - 1j * bs * zk[j]) / (1j * aa)
    if kmax >= 2:
        with np.errstate(over="ignore"):
            growth = _forward_growth(aa, bs, kmax)
        unstable = growth > _FORWARD_GROWTH_LIMIT
        back = unstable & (aa + np.abs(bs) <= _BACKWARD_LIMIT)
        if np.any(back):
            zk[1:, back] = _recurrence_backward(aa[back], bs[back], kmax)
        for idx in zip(*np.nonzero(unstable & ~back)):
            zk[(slice(1, None),) + idx] = _recurrence_bvp(
                float(aa[idx]), float(bs[idx]), complex(zk[(0,) + idx]), kmax
            )
    return zk.real, sgn * zk.imag


def eval_xy_a_large(a: float, b: float, k: int, strict: bool = True) -> GFresnelValues:
    """Evaluation for |a| >= EPS_A through Fresnel integrals and the
    integration-by-parts recurrence in k (phase 0).

    ``strict=False`` lifts the regime check (a != 0 is still required), for
    comparing the two paths near the threshold.
    """
    _check_finite(a=a, b=b)
    if a == 0:
        raise DomainError("the large-a path needs a != 0")
    if strict and abs(a) < EPS_A:
        raise RegimeError(f"|a| = {abs(a)} is below the threshold {EPS_A}")
    k = _check_order(k, MAX_ZERO_ORDER)
    x, y = _xy_large(np.array([float(a)]), np.array([float(b)]), k)
    return GFresnelValues(float(a), float(b), 0.0, k, x[:, 0], y[:, 0])


# --------------------------------------------------------------------------
# dispatch

def xy_arrays(a, b, c, kmax, p=SERIES_ORDER):
    """Vectorized X_j(a, b, c), Y_j(a, b, c), j = 0..kmax."""
    a, b, c = np.broadcast_arrays(
        np.asarray(a, dtype=float), np.asarray(b, dtype=float), np.asarray(c, dtype=float)
    )
    shape = a.shape
    a, b, c = a.ravel(), b.ravel(), c.ravel()
    x0 = np.empty((kmax + 1,) + a.shape)
    y0 = np.empty((kmax + 1,) + a.shape)
    small = np.abs(a) < EPS_A
    if np.any(small):
        xs, ys = _xy_small(a[small], b[small], kmax, p)
        x0[:, small], y0[:, small] = xs, ys
    if np.any(~small):
        xl, yl = _xy_large(a[~small], b[~small], kmax)
        x0[:, ~small], y0[:, ~small] = xl, yl
    cc, sc = np.cos(c), np.sin(c)
    x = (x0 * cc - y0 * sc).reshape((kmax + 1,) + shape)
    y = (x0 * sc + y0 * cc).reshape((kmax + 1,) + shape)
    return x, y


def eval_xy(a: float, b: float, c: float, k: int) -> GFresnelValues:
    """X_j(a, b, c), Y_j(a, b, c) for j = 0..k (k <= 3)."""
    _check_finite(a=a, b=b, c=c)
    k = _check_order(k, MAX_PUBLIC_ORDER)
    x, y = xy_arrays(float(a), float(b), float(c), k)
    return GFresnelValues(float(a), float(b), float(c), k, x, y)
