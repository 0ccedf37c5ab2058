"""Reference constants computed by independent routes.

Each constant has at least two methods so that the catalog can use one as
a right-hand side while tests check that the methods agree.  Term counts
are fixed, so repeated evaluations are bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError
from .specfun import _bernoulli_even, agm

__all__ = [
    "NamedConstant",
    "catalan_g",
    "zeta3",
    "gamma_special",
    "pi_value",
    "all_constants",
    "G",
    "ZETA3",
    "PI",
]

_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class NamedConstant:
    name: str
    value: float
    method: str
    est_error: float

    def __float__(self):
        return self.value


def _rounding(value, ulps=4):
    return ulps * _EPS * abs(value)


# ---------------------------------------------------------------------------
# Catalan's constant


def _s_series(x2, n_terms):
    """sum_n x^(2n) 2^n (n!)^2 / ((2n+1)! (2n+1)), given x2 = x^2."""
    terms = []
    t = 1.0  # x^(2n) 2^n (n!)^2 / (2n+1)!
    for n in range(n_terms):
        terms.append(t / (2 * n + 1))
        t *= x2 * 2.0 * (n + 1) ** 2 / ((2 * n + 2) * (2 * n + 3))
    return math.fsum(terms), t / (2 * n_terms + 1)


def _catalan_ramanujan(n_terms=32):
    terms = []
    t = 1.0  # (n!)^2 / (2n)!
    for n in range(n_terms):
        terms.append(t / (2 * n + 1) ** 2)
        t *= (n + 1) / (2.0 * (2 * n + 1))
    series = math.fsum(terms)
    value = math.fsum([math.pi / 8.0 * math.log(2.0 + math.sqrt(3.0)), 3.0 / 8.0 * series])
    tail = 3.0 / 8.0 * t / (2 * n_terms + 1) ** 2 * 4.0 / 3.0
    return value, tail


def _catalan_bradley(n_terms=120):
    s5 = math.sqrt(5.0)
    # 50 - 22 sqrt5 = 80/(50 + 22 sqrt5), avoiding the cancellation
    root = math.sqrt(80.0 / (50.0 + 22.0 * s5))
    log_part = math.pi / 8.0 * math.log((10.0 + root) / (10.0 - root))
    xa2 = 0.25 * (3.0 + s5)  # 2/(sqrt5 - 1)^2
    xb2 = 1.0 / (3.0 + s5)  # 2/(sqrt5 + 1)^2
    sa, ta = _s_series(xa2, n_terms)
    sb, tb = _s_series(xb2, n_terms)
    value = math.fsum([log_part, 1.25 * sa / (s5 - 1.0), -1.25 * sb / (s5 + 1.0)])
    # the term ratio tends to x^2/2 < 0.66
    tail = 1.25 * ta / (s5 - 1.0) / (1.0 - xa2 / 2.0)
    return value, tail


@lru_cache(maxsize=None)
def _catalan_alternating(n_terms=64):
    """Euler transform of sum (-1)^n/(2n+1)^2 in exact rational arithmetic."""
    row = [Fraction(1, (2 * n + 1) ** 2) for n in range(n_terms)]
    total = Fraction(0)
    last = Fraction(0)
    for k in range(n_terms):
        # row[0] is the k-th forward difference (with sign (-1)^k) of a_n
        last = row[0] / 2 ** (k + 1)
        total += last
        row = [row[i] - row[i + 1] for i in range(len(row) - 1)]
    return float(total), float(abs(last))


def catalan_g(method="bradley"):
    """Catalan's constant G by Bradley's or Ramanujan's accelerated series or
    by an Euler-transformed alternating series."""
    if method == "bradley":
        value, tail = _catalan_bradley()
    elif method == "ramanujan":
        value, tail = _catalan_ramanujan()
    elif method == "alternating":
        value, tail = _catalan_alternating()
    else:
        raise DomainError(f"unknown method {method!r}")
    return NamedConstant("G", value, method, max(tail, _rounding(value)))


# ---------------------------------------------------------------------------
# Apery's constant


def _zeta3_apery(n_terms=40):
    terms = []
    c = 1  # central binomial C(2n, n)
    for n in range(1, n_terms + 1):
        c = c * 2 * (2 * n - 1) // n
        terms.append((-1) ** (n - 1) / (n**3 * float(c)))
    return 2.5 * math.fsum(terms), 2.5 / ((n_terms + 1) ** 3 * 4.0 ** (n_terms + 1))


def _zeta3_direct_em(n=20, n_corr=8):
    head = [1.0 / k**3 for k in range(1, n)]
    bern = _bernoulli_even(2 * n_corr)
    tail = [1.0 / (2.0 * n**2), 1.0 / (2.0 * n**3)]
    for j in range(1, n_corr + 1):
        tail.append(float(bern[2 * j] * (2 * j + 1) / 2) / float(n) ** (2 * j + 2))
    last = abs(float(bern[2 * n_corr] * (2 * n_corr + 1) / 2) / float(n) ** (2 * n_corr + 2))
    return math.fsum(head + tail), last


def zeta3(method="apery_binomial"):
    """zeta(3) by the central-binomial series or by a direct sum with an
    Euler-Maclaurin tail."""
    if method == "apery_binomial":
        value, tail = _zeta3_apery()
    elif method == "direct_em":
        value, tail = _zeta3_direct_em()
    else:
        raise DomainError(f"unknown method {method!r}")
    return NamedConstant("zeta3", value, method, max(tail, _rounding(value)))


# ---------------------------------------------------------------------------
# Gamma at 1/4 and 1/3


def _k_from_complement(kc):
    return math.pi / (2.0 * agm(1.0, kc))


def gamma_special(which="quarter", method="agm"):
    """Gamma(1/4) or Gamma(1/3).

    The ``agm`` route inverts the special values of K at 1/sqrt(2) and
    sin(pi/12); ``stdlib`` uses math.gamma as a second opinion.
    """
    if which not in ("quarter", "third"):
        raise DomainError(f"unknown special gamma value {which!r}")
    if method == "stdlib":
        value = math.gamma(0.25 if which == "quarter" else 1.0 / 3.0)
    elif method == "agm":
        if which == "quarter":
            kk = _k_from_complement(math.sqrt(0.5))
            value = math.sqrt(4.0 * math.sqrt(math.pi) * kk)
        else:
            kc = (math.sqrt(6.0) + math.sqrt(2.0)) / 4.0  # cos(pi/12)
            kk = _k_from_complement(kc)
            value = (2.0 ** (7.0 / 3.0) * math.pi * kk / 3.0**0.25) ** (1.0 / 3.0)
    else:
        raise DomainError(f"unknown method {method!r}")
    name = "gamma_quarter" if which == "quarter" else "gamma_third"
    return NamedConstant(name, value, method, _rounding(value))


# ---------------------------------------------------------------------------
# pi


def _pi_gauss_legendre():
    a, b, t, p = 1.0, math.sqrt(0.5), 0.25, 1.0
    for _ in range(4):
        a_next = 0.5 * (a + b)
        b = math.sqrt(a * b)
        t -= p * (a - a_next) ** 2
        a = a_next
        p *= 2.0
    return (a + b) ** 2 / (4.0 * t)


def pi_value(method="platform"):
    if method == "platform":
        value = math.pi
    elif method == "gauss_legendre":
        value = _pi_gauss_legendre()
    else:
        raise DomainError(f"unknown method {method!r}")
    return NamedConstant("pi", value, method, _rounding(value, 2))


def all_constants():
    """Every constant under every method, in a fixed order."""
    out = [pi_value(m) for m in ("platform", "gauss_legendre")]
    out += [catalan_g(m) for m in ("bradley", "ramanujan", "alternating")]
    out += [zeta3(m) for m in ("apery_binomial", "direct_em")]
    for which in ("quarter", "third"):
        out += [gamma_special(which, m) for m in ("agm", "stdlib")]
    return out


PI = math.pi
G = catalan_g("bradley").value
ZETA3 = zeta3("apery_binomial").value
