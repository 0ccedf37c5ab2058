"""Moment formulas, exact recurrences and closed-form series.

Includes the moments of K(sqrt(1 - kappa^2)), the rational sequence
behind the moments of K(sqrt t) K(sqrt(1 - t)), the W and M functions of
the sum rule in terms of 3F2(1,1,1; 3/2,3/2; x), hyperbolic series of
Ramanujan type, and slowly convergent single series for 2 pi G and
7 zeta(3)/2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .quadrature import IntegrandSpec, tanh_sinh
from .specfun import HypergeometricParams, ellip_kc, pfq

__all__ = [
    "k_moment",
    "MomentSequence",
    "kk_moment_rational",
    "hyp3f2_111",
    "hyp3f2_111_integral",
    "w_func",
    "m_func",
    "hyperbolic_sum",
    "hyperbolic_sum_cplx",
    "GosperSums",
    "gosper_splits",
    "md_projection",
    "tricomi_fourier_k",
]


def k_moment(n):
    """int_0^1 kappa^n K(sqrt(1 - kappa^2)) dkappa = (pi/4) [Gamma((n+1)/2)/Gamma((n+2)/2)]^2."""
    if n < 0:
        raise DomainError("moment order must be non-negative")
    return 0.25 * math.pi * math.exp(2.0 * (math.lgamma(0.5 * (n + 1)) - math.lgamma(0.5 * (n + 2))))


@dataclass(frozen=True)
class MomentSequence:
    """Exact values c_n with int_0^1 K(sqrt t) K(sqrt(1-t)) t^n dt = c_n pi^3."""

    values: tuple
    base_symbol: str = "pi^3"

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return len(self.values)

    def moment(self, n):
        return float(self.values[n]) * math.pi**3


def kk_moment_rational(n_max):
    """c_0 .. c_{n_max} from the three-term recurrence, as exact fractions."""
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    c = [Fraction(1, 8), Fraction(1, 16)]
    for n in range(1, n_max):
        nxt = ((1 + 2 * n * (2 * n * n + 3 * n + 2)) * c[n] - 2 * n**3 * c[n - 1]) / (2 * (n + 1) ** 3)
        c.append(nxt)
    return MomentSequence(tuple(c[: n_max + 1]))


SERIES_LIMIT_3F2 = 0.999


def hyp3f2_111(x, max_terms=1_000_000):
    """3F2(1,1,1; 3/2,3/2; x) for real x < 1 (series plus modelled tail).

    Above ``SERIES_LIMIT_3F2`` the terms decay too slowly for the tail model
    and the integral form is used instead.
    """
    x = float(x)
    if x >= 1.0:
        raise DomainError("3F2(1,1,1;3/2,3/2;x) needs x < 1 here")
    if x < -1.0:
        raise DomainError("the series diverges for x < -1")
    if x > SERIES_LIMIT_3F2:
        return hyp3f2_111_integral(x)
    res = pfq(HypergeometricParams((1, 1, 1), (1.5, 1.5), x), max_terms=max_terms)
    return res.value.real + res.tail_estimate.real


def hyp3f2_111_integral(x, tol=1e-13):
    """3F2(1,1,1; 3/2,3/2; x) = int_0^1 kappa K(sqrt(1 - kappa^2))/(1 - x kappa^2) dkappa.

    Valid for complex x off the cut [1, inf); returns a complex number when
    x is complex.  This is the route to use where the series converges
    slowly or not at all (|x| >= 1).
    """
    x = complex(x)
    if x.imag == 0.0 and x.real >= 1.0:
        raise DomainError("x lies on the branch cut [1, inf)")
    real = x.imag == 0.0

    def f(kappa, dl, dr):
        with np.errstate(divide="ignore"):
            kk = ellip_kc(kappa)
        # 1 - x kappa^2 written to stay accurate when x and kappa are near 1
        xx = x.real if real else x
        return kappa * kk / ((1.0 - xx) + xx * dr * (1.0 + kappa))

    res = tanh_sinh(IntegrandSpec(f, 0.0, 1.0, (True, True), True), tol=tol)
    return res.value if not real else float(res.value)


def _sum_rule_total(r):
    """(pi/2) (1+r^2)^(-1/2) K(r/sqrt(1+r^2))."""
    kc = 1.0 / math.sqrt(1.0 + r * r)
    return 0.5 * math.pi * kc * ellip_kc(kc)


def m_func(r):
    """M(r) = int_0^1 r xi K(xi)/(1 + r^2 xi^2) dxi via 3F2 at r^2/(1+r^2)."""
    r = float(r)
    if not r > 0:
        raise DomainError("M(r) needs r > 0")
    x = r * r / (1.0 + r * r)
    return r / (1.0 + r * r) * hyp3f2_111(x)


def w_func(r):
    """W(r) = int_0^1 r K(xi)/(r^2 + xi^2) dxi from the sum rule and M(r)."""
    r = float(r)
    if not r > 0:
        raise DomainError("W(r) needs r > 0")
    return _sum_rule_total(r) - m_func(r)


def hyperbolic_sum(y, max_terms=60, cutoff=1e-18):
    """The three hyperbolic series whose total is pi^2 (1 + i y)/8.

    Returns (value, terms_used); summation stops once every series' term
    falls below ``cutoff`` in magnitude.
    """
    y = float(y)
    if not y > 0:
        raise DomainError("hyperbolic_sum needs y > 0")
    iy = 1j * y
    w = (iy - 1.0) / (2j * (iy + 1.0))
    total = []
    n_used = 0
    for n in range(max_terms):
        m = 2 * n + 1
        sign = -1.0 if n % 2 else 1.0
        a = 1j * sign / (m * m * math.sinh(m * math.pi * y / 2.0))
        b = y * sign / (m * m * math.sinh(m * math.pi / (2.0 * y)))
        c = 2.0 * (1.0 + iy) / (m * m * cmath.cosh(m * math.pi * w))
        total.extend((a, b, c))
        n_used = n + 1
        if max(abs(a), abs(b), abs(c)) < cutoff:
            break
    value = complex(math.fsum(t.real for t in total), math.fsum(t.imag for t in total))
    return value, n_used


def hyperbolic_sum_cplx(z, max_terms=200, cutoff=1e-18):
    """Complex-parameter hyperbolic series expected to equal pi^2/8 for z off the real line.

    Returns (value, terms_used).
    """
    z = complex(z)
    if z.imag == 0.0:
        raise DomainError("hyperbolic_sum_cplx needs a non-real z")
    w1 = (z + 1.0) / 2j
    w2 = (z - 1.0) / (2j * z)
    w3 = (z - 1.0) / (2j * (z + 1.0))
    parts = []
    n_used = 0
    for n in range(max_terms):
        m = 2 * n + 1
        t1 = 1.0 / (m * m * (1.0 + z) * cmath.cosh(m * math.pi * w1))
        t2 = -z / (m * m * (1.0 + z) * cmath.cosh(m * math.pi * w2))
        t3 = 2.0 / (m * m * cmath.cosh(m * math.pi * w3))
        parts.extend((t1, t2, t3))
        n_used = n + 1
        if max(abs(t1), abs(t2), abs(t3)) < cutoff:
            break
    value = complex(math.fsum(t.real for t in parts), math.fsum(t.imag for t in parts))
    return value, n_used


@dataclass(frozen=True)
class GosperSums:
    """Single series for 2 pi G and 7 zeta(3)/2 with algebraic tail estimates."""

    g_sum: float
    zeta3_sum: float
    g_partial: float
    zeta3_partial: float
    g_tail: float
    zeta3_tail: float
    n_terms: int


def _power_tail(t, n_last):
    """Tail sum_{n > n_last} t_n for terms decaying like a power of n.

    The exponent is fitted from the last two terms and the sum replaced by
    the integral from n_last + 1/2.
    """
    t1, t2 = t[-2], t[-1]
    p = math.log(t1 / t2) / math.log(n_last / (n_last - 1.0))
    return t2 * n_last**p * (n_last + 0.5) ** (1.0 - p) / (p - 1.0)


def gosper_splits(n_terms=100_000):
    """Partial sums of the series for 2 pi G and 7 zeta(3)/2, with tails.

    q_n = [2^n n!/(2n+1)!!]^2;  2 pi G = sum 2(3n+2)/((n+1)(2n+1)) q_n and
    7 zeta(3)/2 = sum (4n+3)/((n+1)(2n+1)) q_n.  Both series decay like
    n^-2; ``g_sum`` and ``zeta3_sum`` include the modelled tails.
    """
    if n_terms < 3:
        raise DomainError("gosper_splits needs at least 3 terms for the tail fit")
    n = np.arange(n_terms, dtype=float)
    ratio = (2.0 * (n[:-1] + 1.0) / (2.0 * n[:-1] + 3.0)) ** 2
    q = np.concatenate([[1.0], np.cumprod(ratio)])
    g_terms = 2.0 * (3.0 * n + 2.0) / ((n + 1.0) * (2.0 * n + 1.0)) * q
    z_terms = (4.0 * n + 3.0) / ((n + 1.0) * (2.0 * n + 1.0)) * q
    g_part = math.fsum(g_terms)
    z_part = math.fsum(z_terms)
    g_tail = _power_tail(g_terms, n_terms - 1.0)
    z_tail = _power_tail(z_terms, n_terms - 1.0)
    return GosperSums(g_part + g_tail, z_part + z_tail, g_part, z_part, g_tail, z_tail, n_terms)


def md_projection(n):
    """Closed form of int_0^pi K(sin(beta/2)) sin(beta) cos(n beta/2) dbeta for odd n."""
    if n < 1 or n % 2 == 0:
        raise DomainError("md_projection is defined for odd n >= 1")
    if n == 1:
        return math.pi**2 / 4.0
    if n % 4 == 1:
        return 0.0
    dfact = math.prod(range((n - 1) // 2, 0, -2))
    ratio = dfact / math.factorial((n + 1) // 4)
    return -(math.pi**2) * n / (2.0 ** ((n + 1) / 2.0) * (n - 1) ** 2) * ratio * ratio


def tricomi_fourier_k(theta, n_terms=200, tail_orders=8):
    """K(|sin theta|) from sum [Gamma(n+1/2)/n!]^2 sin((4n+1) theta), 0 < theta < pi.

    The coefficients decay only like 1/n, so after ``n_terms`` terms the
    remaining tail is summed by repeated summation by parts,
    sum_{n>=N} c_n z^n = sum_j (Delta^j c)_N z^(N+j)/(1-z)^(j+1).
    """
    theta = float(theta)
    if not 0.0 < theta < math.pi:
        raise DomainError("theta must lie in (0, pi)")
    total_len = n_terms + tail_orders + 1
    c = np.empty(total_len)
    c[0] = math.pi  # Gamma(1/2)^2
    for n in range(total_len - 1):
        c[n + 1] = c[n] * ((n + 0.5) / (n + 1.0)) ** 2
    n = np.arange(n_terms)
    head = math.fsum(c[:n_terms] * np.sin((4 * n + 1) * theta))
    z = cmath.exp(4j * theta)
    diffs = c[n_terms:].copy()
    tail = 0j
    for j in range(tail_orders):
        tail += diffs[0] * z ** (n_terms + j) / (1.0 - z) ** (j + 1)
        diffs = np.diff(diffs)
    tail *= cmath.exp(1j * theta)
    return head + tail.imag
