"""Integral transforms built on the quadrature layer.

The four Beltrami kernels, the Abel transform and its inverse, the
Tricomi (finite Hilbert) transform and Landen's descending map.
"""

from __future__ import annotations

import math
from enum import Enum

import numpy as np

from .errors import DomainError
from .quadrature import IntegrandSpec, QuadResult, halfline, principal_value, tanh_sinh, tanh_sinh_vec

__all__ = [
    "BeltramiVariant",
    "beltrami_kernel",
    "beltrami_transform",
    "abel_forward",
    "abel_solve",
    "tricomi_pv",
    "landen_descend",
    "landen_k",
]

_TWO_OVER_PI = 2.0 / math.pi


class BeltramiVariant(str, Enum):
    B = "B"
    iB = "iB"
    LB = "LB"
    iLB = "iLB"


def beltrami_kernel(variant, k, kappa):
    """Kernel K_v(k, kappa) with K(k) = int_0^1 K_v(k, kappa) K(sqrt(1 - kappa^2)) dkappa.

    Vectorized in ``k`` and ``kappa``; k must lie in [0, 1) and kappa in [0, 1].
    """
    variant = BeltramiVariant(variant)
    k = np.asarray(k, dtype=float)
    kappa = np.asarray(kappa, dtype=float)
    if np.any((k < 0) | (k >= 1) | ~np.isfinite(k)):
        raise DomainError("modulus must lie in [0, 1)")
    if np.any((kappa < 0) | (kappa > 1) | ~np.isfinite(kappa)):
        raise DomainError("kappa must lie in [0, 1]")
    k2 = k * k
    kap2 = kappa * kappa
    if variant is BeltramiVariant.B:
        out = 1.0 / (1.0 - k2 * kap2)
    elif variant is BeltramiVariant.iB:
        kc2 = (1.0 - k) * (1.0 + k)
        out = np.sqrt(kc2) / (kc2 + k2 * kap2)
    elif variant is BeltramiVariant.LB:
        out = (1.0 + k) / ((1.0 - k) ** 2 + 4.0 * k * (1.0 - kappa) * (1.0 + kappa))
    else:
        out = (1.0 - k) / ((1.0 - k) ** 2 + 4.0 * k * kap2)
    out = _TWO_OVER_PI * out
    return float(out) if out.ndim == 0 else out


def beltrami_transform(variant, f, kappa, tol=1e-12):
    """Transformed weight T(kappa) = int_0^1 K_v(xi, kappa) f(xi) dxi.

    With it, int_0^1 K(k) f(k) dk = int_0^1 K(sqrt(1 - kappa^2)) T(kappa) dkappa.
    ``f`` must be vectorized.  For an array ``kappa`` the value field of the
    result is an array.
    """
    variant = BeltramiVariant(variant)
    kap = np.atleast_1d(np.asarray(kappa, dtype=float))
    if np.any((kap < 0) | (kap > 1)):
        raise DomainError("kappa must lie in [0, 1]")

    def integrand(xi, dl, dr):
        # the kernel is evaluated with the distance 1 - xi to stay accurate near xi = 1
        k2 = xi * xi
        kap2 = kap[None, :] ** 2
        if variant is BeltramiVariant.B:
            ker = 1.0 / (dr * (1.0 + xi) + k2 * (1.0 - kap2))
        elif variant is BeltramiVariant.iB:
            kc2 = dr * (1.0 + xi)
            ker = np.sqrt(kc2) / (kc2 + k2 * kap2)
        elif variant is BeltramiVariant.LB:
            ker = (1.0 + xi) / (dr * dr + 4.0 * xi * (1.0 - kap2))
        else:
            ker = dr / (dr * dr + 4.0 * xi * kap2)
        return _TWO_OVER_PI * ker * np.asarray(f(xi))

    values, err, ok = tanh_sinh_vec(integrand, 0.0, 1.0, tol)
    n = values.size
    if np.ndim(kappa) == 0:
        return QuadResult(float(values[0]), err, n, ok and err <= tol)
    return QuadResult(values, err, n, ok and err <= tol)


def abel_forward(f, x, tol=1e-12):
    """Abel transform int_x^inf 2 f(r) r / sqrt(r^2 - x^2) dr.

    Uses r = sqrt(x^2 + s^2), which turns it into int_0^inf 2 f(sqrt(x^2 + s^2)) ds.
    """
    x = float(x)
    if x < 0:
        raise DomainError("abel_forward needs x >= 0")
    return halfline(lambda s: 2.0 * f(np.hypot(x, s)), tol)


def abel_solve(f, x, tol=1e-12):
    """Integral of the solution of the Abel equation over [0, x].

    If int_0^y phi(t)/sqrt(y - t) dt = f(y) then
    int_0^x phi = (1/pi) int_0^x f(y)/sqrt(x - y) dy.
    """
    x = float(x)
    if x < 0:
        raise DomainError("abel_solve needs x >= 0")
    if x == 0:
        return QuadResult(0.0, 0.0, 1, True)
    res = tanh_sinh(IntegrandSpec(lambda y, dl, dr: f(y) / np.sqrt(dr), 0.0, x, (True, True), True), tol=tol)
    return QuadResult(res.value / math.pi, res.err_est / math.pi, res.n_evals, res.converged)


def tricomi_pv(f, x, tol=1e-12, breakpoints=(), with_distances=False):
    """Finite Hilbert transform (1/pi) PV int_{-1}^{1} f(xi)/(x - xi) dxi.

    Points where f itself is singular (for instance xi = 0 for
    K(sqrt(1 - xi^2))) should be passed as ``breakpoints``.  With
    ``with_distances`` f is called as f(xi, 1 + xi, 1 - xi).
    """
    if with_distances:
        g = lambda xi, dl, dr: f(xi, dl, dr) / math.pi
    else:
        g = lambda xi: f(xi) / math.pi
    return principal_value(g, x, tol, -1.0, 1.0, breakpoints=breakpoints, with_distances=with_distances)


def landen_descend(k):
    """Descending Landen map k -> (1 - k')/(1 + k') = k^2/(1 + k')^2."""
    k = float(k)
    if not 0.0 <= k < 1.0:
        raise DomainError("landen_descend needs k in [0, 1)")
    kc = math.sqrt((1.0 - k) * (1.0 + k))
    return k * k / (1.0 + kc) ** 2


def landen_k(k):
    """K(k) from the descending Landen chain K(k) = (1 + k1) K(k1)."""
    factor = 1.0
    while k > 1e-9:
        k = landen_descend(k)
        factor *= 1.0 + k
    # K(k) = pi/2 (1 + k^2/4 + ...) for the final tiny modulus
    return 0.5 * math.pi * factor * (1.0 + 0.25 * k * k)
