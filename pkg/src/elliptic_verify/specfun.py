"""Special functions in double precision.

Complete elliptic integrals through the arithmetic-geometric mean, the
dilogarithm and Legendre's chi function, Legendre polynomials and partial
sums of generalized hypergeometric series.  Most routines accept numpy
arrays so that they can sit inside vectorized quadrature integrands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DivergenceError, DomainError, NonConvergenceError

__all__ = [
    "Modulus",
    "HypergeometricParams",
    "PfqResult",
    "agm",
    "ellip_k",
    "ellip_e",
    "ellip_kc",
    "ellip_ec",
    "elliptic_kdb",
    "ellip_d",
    "ellip_b",
    "dilog",
    "chi2",
    "legendre_p",
    "pfq",
    "hyp3f2_unit",
]

_EPS = np.finfo(float).eps
_HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class Modulus:
    """An elliptic modulus k in [0, 1] together with k' = sqrt(1 - k^2).

    Build it with ``Modulus.from_k`` or, when k is close to 1, with
    ``Modulus.from_complement`` so that k' keeps full relative precision.
    """

    k: float
    k_comp: float

    def __post_init__(self):
        for v in (self.k, self.k_comp):
            if not math.isfinite(v) or v < 0.0 or v > 1.0:
                raise DomainError(f"modulus components must lie in [0, 1], got {v!r}")

    @classmethod
    def from_k(cls, k):
        k = float(k)
        if not math.isfinite(k) or k < 0.0 or k > 1.0:
            raise DomainError(f"modulus must lie in [0, 1], got {k!r}")
        return cls(k, math.sqrt((1.0 - k) * (1.0 + k)))

    @classmethod
    def from_complement(cls, kc):
        kc = float(kc)
        if not math.isfinite(kc) or kc < 0.0 or kc > 1.0:
            raise DomainError(f"complementary modulus must lie in [0, 1], got {kc!r}")
        return cls(math.sqrt((1.0 - kc) * (1.0 + kc)), kc)

    def complement(self):
        return Modulus(self.k_comp, self.k)


def _as_modulus(m):
    if isinstance(m, Modulus):
        return m
    return Modulus.from_k(m)


# ---------------------------------------------------------------------------
# AGM and complete elliptic integrals


def _agm_arrays(a, b):
    a = np.array(a, dtype=float, copy=True)
    b = np.array(b, dtype=float, copy=True)
    a, b = np.broadcast_arrays(a, b)
    a = a.copy()
    b = b.copy()
    zero = b == 0.0
    for _ in range(64):
        if np.all(np.abs(a - b) <= 2.0 * _EPS * a):
            break
        a, b = 0.5 * (a + b), np.sqrt(a * b)
    out = np.where(zero, 0.0, 0.5 * (a + b))
    return out


def agm(a, b):
    """Arithmetic-geometric mean of a > 0 and b >= 0."""
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)) or a < 0.0 or b < 0.0:
        raise DomainError(f"agm needs finite non-negative arguments, got ({a!r}, {b!r})")
    if a == 0.0 or b == 0.0:
        if a == 0.0 and b == 0.0:
            raise DomainError("agm needs at least one positive argument")
        return 0.0
    return float(_agm_arrays(a, b))


def ellip_kc(kc):
    """K evaluated from the complementary modulus: K(sqrt(1 - kc^2)).

    Accepts scalars or arrays.  kc = 0 gives +inf for arrays and raises
    DivergenceError for scalars.
    """
    kc_arr = np.asarray(kc, dtype=float)
    if np.any((kc_arr < 0.0) | (kc_arr > 1.0) | ~np.isfinite(kc_arr)):
        raise DomainError("complementary modulus must lie in [0, 1]")
    if kc_arr.ndim == 0:
        if kc_arr == 0.0:
            raise DivergenceError("K(1) is infinite")
        return _HALF_PI / float(_agm_arrays(1.0, kc_arr))
    with np.errstate(divide="ignore"):
        return _HALF_PI / _agm_arrays(1.0, kc_arr)


def _kdb_core(k, kc):
    """K, (K - E)/k^2 and (E - kc^2 K)/k^2 for k <= 0.9 (no cancellation)."""
    # start from (a_1, b_1); c_1 = (a_0 - b_0)/2 written without cancellation
    a = 0.5 * (1.0 + kc)
    b = np.sqrt(kc)
    c = k * k / (2.0 * (1.0 + kc))
    # sigma accumulates sum_{n>=1} 2^{n-1} (c_n / k)^2 
    safe_k = np.where(k == 0.0, 1.0, k)
    ratio = c / safe_k
    sigma = ratio * ratio
    weight = 1.0
    for _ in range(64):
        a_next = 0.5 * (a + b)
        b = np.sqrt(a * b)
        a = a_next
        c = c * c / (4.0 * a)
        weight *= 2.0
        ratio = c / safe_k
        term = weight * ratio * ratio
        sigma = sigma + term
        if np.all(term <= _EPS * sigma) and np.all(np.abs(a - b) <= 2.0 * _EPS * a):
            break
    K = _HALF_PI / (0.5 * (a + b))
    return K, K * (0.5 + sigma), K * (0.5 - sigma)


def elliptic_kdb(k, kc=None):
    """Return arrays (K, D, B) with D = (K - E)/k^2 and B = (E - k'^2 K)/k^2.

    D and B are the cancellation-free combinations that appear whenever
    K - E or E - k'^2 K is divided by a small k^2.  Passing ``kc`` keeps full
    precision near k = 1.  E itself is B + k'^2 D.  At k = 1 the values
    (inf, inf, 1) are returned.
    """
    k = np.atleast_1d(np.asarray(k, dtype=float))
    if kc is None:
        kc = np.sqrt((1.0 - k) * (1.0 + k))
    else:
        kc = np.atleast_1d(np.asarray(kc, dtype=float))
    k, kc = np.broadcast_arrays(k, kc)
    if np.any((k < 0) | (k > 1) | (kc < 0) | (kc > 1) | ~np.isfinite(k) | ~np.isfinite(kc)):
        raise DomainError("modulus must lie in [0, 1]")
    K = np.empty(k.shape)
    D = np.empty(k.shape)
    B = np.empty(k.shape)
    low = k <= 0.9
    if np.any(low):
        K[low], D[low], B[low] = _kdb_core(k[low], kc[low])
    high = ~low
    if np.any(high):
        kh = k[high]
        kch = kc[high]
        Kp, Dp, _ = _kdb_core(kch, kh)  # complementary quantities K', D'
        with np.errstate(divide="ignore", invalid="ignore"):
            Kh = _HALF_PI / _agm_arrays(1.0, kch)
            # Legendre relation: E K' = pi/2 + K (K' - E') with K' - E' = k^2 D'
            Eh = np.where(kch == 0.0, 1.0, (_HALF_PI + Kh * kch * kch * Dp) / Kp)
            k2 = kh * kh
            K[high] = Kh
            D[high] = (Kh - Eh) / k2
            B[high] = np.where(kch == 0.0, 1.0, (Eh - kch * kch * Kh) / k2)
    return K, D, B


def _scalar_or_array(x, like):
    if np.ndim(like) == 0 and not isinstance(like, np.ndarray):
        return float(x[0])
    return x.reshape(np.shape(like))


def ellip_k(m):
    """Complete elliptic integral of the first kind K(k).

    ``m`` may be a Modulus, a float or an array of moduli.  Scalars at k = 1
    raise DivergenceError; arrays get +inf there.
    """
    if isinstance(m, Modulus):
        if m.k_comp == 0.0:
            raise DivergenceError("K(1) is infinite")
        return ellip_kc(m.k_comp)
    k = np.asarray(m, dtype=float)
    if np.any((k < 0) | (k > 1) | ~np.isfinite(k)):
        raise DomainError("modulus must lie in [0, 1]")
    kc = np.sqrt((1.0 - k) * (1.0 + k))
    if k.ndim == 0:
        return ellip_kc(float(kc))
    return ellip_kc(kc)


def ellip_e(m):
    """Complete elliptic integral of the second kind E(k) on [0, 1]."""
    if isinstance(m, Modulus):
        K, D, B = elliptic_kdb(m.k, m.k_comp)
        return float(B[0] + m.k_comp**2 * D[0]) if m.k_comp > 0 else 1.0
    k = np.asarray(m, dtype=float)
    kc = np.sqrt((1.0 - k) * (1.0 + k))
    return ellip_ec(kc) if k.ndim else float(ellip_ec(kc))


def ellip_ec(kc):
    """E evaluated from the complementary modulus: E(sqrt(1 - kc^2))."""
    kc_arr = np.asarray(kc, dtype=float)
    k = np.sqrt((1.0 - kc_arr) * (1.0 + kc_arr))
    _, D, B = elliptic_kdb(k, kc_arr)
    kc1 = np.atleast_1d(kc_arr)
    E = np.where(kc1 == 0.0, 1.0, B + kc1 * kc1 * np.where(kc1 == 0.0, 0.0, D))
    return _scalar_or_array(E, kc)


def ellip_d(k, kc=None):
    """(K(k) - E(k)) / k^2, finite at k = 0 where it equals pi/4."""
    _, D, _ = elliptic_kdb(k, kc)
    return _scalar_or_array(D, k)


def ellip_b(k, kc=None):
    """(E(k) - k'^2 K(k)) / k^2, finite at k = 0 where it equals pi/4."""
    _, _, B = elliptic_kdb(k, kc)
    return _scalar_or_array(B, k)


# ---------------------------------------------------------------------------
# Dilogarithm


@lru_cache(maxsize=None)
def _bernoulli_even(n_max):
    """Bernoulli numbers B_0..B_n_max as Fractions (Akiyama-Tanigawa)."""
    out = []
    a = [Fraction(0)] * (n_max + 1)
    for m in range(n_max + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    # this recurrence yields B_1 = +1/2; only the even ones are used below
    return tuple(out)


@lru_cache(maxsize=None)
def _dilog_coefficients(n_terms=30):
    """Coefficients B_{2j}/(2j+1)! for j = 1..n_terms."""
    bern = _bernoulli_even(2 * n_terms)
    return np.array(
        [float(bern[2 * j] / math.factorial(2 * j + 1)) for j in range(1, n_terms + 1)]
    )


def _clog1p(w):
    """log(1 + w) for complex arrays, accurate for small |w| (Kahan's trick)."""
    w = np.asarray(w, dtype=complex)
    tiny = np.abs(w) < 1e-8
    u = 1.0 + w
    d = u - 1.0
    safe = np.where(tiny | (d == 0), 1.0, d)
    series = w * (1.0 - w * (0.5 - w / 3.0))
    return np.where(tiny, series, np.log(u) * (w / safe))


def _dilog_series(u):
    """Li2(1 - exp(-u)) = u - u^2/4 + sum_j B_2j u^(2j+1)/(2j+1)!."""
    coef = _dilog_coefficients()
    u2 = u * u
    acc = np.zeros_like(u)
    for c in coef[::-1]:
        acc = acc * u2 + c
    return u - 0.25 * u2 + u * u2 * acc


def dilog(z):
    """Principal-branch dilogarithm Li2(z) for complex scalars or arrays.

    The argument is mapped into a region where u = -log(1 - w) is small
    (using the reflection z -> 1 - z and the inversion z -> 1/z) and the
    Bernoulli series in u is summed.  Points on the unit circle, including
    the neighbourhood of z = 1, are covered by the same scheme.
    """
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if not np.all(np.isfinite(z)):
        raise DomainError("dilog needs a finite argument")
    out = np.empty(z.shape, dtype=complex)
    x = z.real
    r2 = x * x + z.imag * z.imag
    zeta2 = math.pi**2 / 6.0
    is_one = z == 1.0
    left = (x <= 0.5) & ~is_one
    near_one = (x > 0.5) & (r2 <= 2.0 * x) & ~is_one
    inner = left & (r2 <= 1.0)
    outer = ~inner & ~near_one & ~is_one
    if np.any(inner):
        w = z[inner]
        out[inner] = _dilog_series(-_clog1p(-w))
    if np.any(near_one):
        w = z[near_one]
        out[near_one] = -_dilog_series(-np.log(w)) + zeta2 - np.log(w) * _clog1p(-w)
    if np.any(outer):
        w = z[outer]
        lmz = np.log(-w)
        out[outer] = -_dilog_series(-_clog1p(-1.0 / w)) - zeta2 - 0.5 * lmz * lmz
    out[is_one] = zeta2
    # on the cut itself take the limit from below: Im Li2(x) = -pi log x
    cut = (z.imag == 0.0) & (x > 1.0)
    if np.any(cut):
        out[cut] = out[cut].real - 1j * math.pi * np.log(x[cut])
    return complex(out[0]) if scalar else out


def chi2(z):
    """Legendre chi function chi2(z) = (Li2(z) - Li2(-z)) / 2."""
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    val = 0.5 * (dilog(z) - dilog(-z))
    return complex(val[0]) if scalar else val


# ---------------------------------------------------------------------------
# Legendre polynomials


def legendre_p(l, x):
    """Legendre polynomial P_l(x) for integer 0 <= l <= 10^6 and x in [-1, 1]."""
    if int(l) != l or l < 0 or l > 10**6:
        raise DomainError(f"degree must be an integer in [0, 10^6], got {l!r}")
    l = int(l)
    xa = np.asarray(x, dtype=float)
    if np.any((xa < -1.0) | (xa > 1.0) | ~np.isfinite(xa)):
        raise DomainError("argument must lie in [-1, 1]")
    p_prev = np.ones_like(xa)
    if l == 0:
        return p_prev if xa.ndim else float(p_prev)
    p = xa.copy()
    for n in range(1, l):
        p_prev, p = p, ((2 * n + 1) * xa * p - n * p_prev) / (n + 1)
    return p if xa.ndim else float(p)


# ---------------------------------------------------------------------------
# Generalized hypergeometric series


def _is_nonpositive_int(v):
    return float(v) == math.floor(float(v)) and float(v) <= 0


@dataclass(frozen=True)
class HypergeometricParams:
    """Parameters of pFq(upper; lower; argument)."""

    upper: tuple
    lower: tuple
    argument: complex

    def __init__(self, upper, lower, argument):
        object.__setattr__(self, "upper", tuple(float(a) for a in upper))
        object.__setattr__(self, "lower", tuple(float(b) for b in lower))
        object.__setattr__(self, "argument", complex(argument))
        if any(_is_nonpositive_int(b) for b in self.lower):
            raise DomainError("lower parameters must not be non-positive integers")
        if not (math.isfinite(self.argument.real) and math.isfinite(self.argument.imag)):
            raise DomainError("argument must be finite")
        if len(self.upper) > len(self.lower) + 1 and not self.terminating:
            raise NonConvergenceError("p > q + 1 gives a divergent series")

    @property
    def terminating(self):
        return any(_is_nonpositive_int(a) for a in self.upper)


@dataclass(frozen=True)
class PfqResult:
    """Partial sum of a hypergeometric series and what is known about its tail."""

    value: complex
    terms_used: int
    tail_bound: float
    converged: bool
    tail_estimate: complex = 0j

    @property
    def corrected(self):
        """Partial sum plus the modelled tail."""
        return self.value + self.tail_estimate


def pfq(params, max_terms=1_000_000, tol=1e-16):
    """Sum pFq by the term-ratio recurrence.

    Summation stops at the first term with |term| < tol * |partial sum| or
    after ``max_terms`` terms.  The tail beyond the last summed term is
    modelled as geometric for |z| < 1, as an alternating series for
    |z| = 1, z != 1, and as algebraic decay n^-(s+1) with
    s = Re(sum(lower) - sum(upper)) at z = 1.
    """
    if not isinstance(params, HypergeometricParams):
        params = HypergeometricParams(*params)
    a = np.array(params.upper, dtype=float)
    b = np.array(params.lower, dtype=float)
    z = params.argument
    az = abs(z)
    excess = float(b.sum() - a.sum())
    on_circle = abs(az - 1.0) <= 8 * _EPS
    if params.terminating:
        n_stop = int(min(-v for v in params.upper if _is_nonpositive_int(v))) + 1
        max_terms = min(max_terms, n_stop)
    elif len(a) == len(b) + 1:
        if az > 1.0 and not on_circle:
            raise NonConvergenceError(f"|z| = {az} > 1: series diverges")
        if on_circle:
            if z == 1.0 and excess <= 0.0:
                raise NonConvergenceError("unit argument needs sum(lower) - sum(upper) > 0")
            if z != 1.0 and excess <= -1.0:
                raise NonConvergenceError("|z| = 1 needs sum(lower) - sum(upper) > -1")

    total = 0j
    comp = 0j  # Kahan compensation
    term = 1.0 + 0j
    n0 = 0
    chunk = 128
    used = None
    next_term = 0j
    last_ratio = 0j
    while n0 < max_terms:
        m = min(chunk, max_terms - n0)
        n = np.arange(n0, n0 + m, dtype=float)
        num = np.ones(m)
        for av in a:
            num = num * (av + n)
        den = n + 1.0
        for bv in b:
            den = den * (bv + n)
        ratios = num / den * z
        terms = np.empty(m, dtype=complex)
        terms[0] = term
        if m > 1:
            terms[1:] = term * np.cumprod(ratios[:-1])
        partial = total + np.cumsum(terms)
        small = np.abs(terms) < tol * np.abs(partial)
        small[0] = small[0] and n0 > 0
        hit = np.flatnonzero(small)
        if hit.size:
            idx = int(hit[0])
            used = n0 + idx + 1
            seg = terms[: idx + 1]
            next_term = terms[idx + 1] if idx + 1 < m else terms[idx] * ratios[idx]
            last_ratio = ratios[idx]
        else:
            seg = terms
            next_term = terms[-1] * ratios[-1]
            last_ratio = ratios[-1]
        y = complex(np.sum(seg)) - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if used is not None:
            break
        n0 += m
        term = next_term
        chunk = min(chunk * 2, 1 << 16)
        if term == 0:
            used = n0
            break
    converged = used is not None
    if used is None:
        used = max_terms
    n_next = used
    if params.terminating and used >= max_terms:
        return PfqResult(total, used, 0.0, True, 0j)
    if next_term == 0:
        return PfqResult(total, used, 0.0, True, 0j)
    if not on_circle:
        rho = max(abs(last_ratio), az)
        if rho < 1.0:
            bound = abs(next_term) / (1.0 - rho)
            est = next_term / (1.0 - last_ratio)
        else:
            bound, est = math.inf, 0j
    elif z == 1.0:
        est = next_term * (n_next / excess + 0.5)
        bound = abs(est)
    else:
        est = next_term / (1.0 - z)
        bound = 2.0 * abs(next_term) / abs(1.0 - z)
    return PfqResult(total, used, float(bound), converged, complex(est))


def hyp3f2_unit(x, max_terms=1_000_000):
    """3F2(1,1,1; 3/2,3/2; x) for real x < 1 by direct summation."""
    res = pfq(HypergeometricParams((1, 1, 1), (1.5, 1.5), x), max_terms=max_terms)
    return res.value.real + res.tail_estimate.real
