"""Monte Carlo estimates of sphere coupling integrals and their box forms.

A coupling integral is a chain n -> n1 -> n2 -> n' of three factors,
integrated over n1 and n2 with normalized surface measure on S^2 or S^3.
The first factor is sampled exactly from its own normalized density.  The
second point n2 is drawn from an equal mixture of the densities of the
second and third factors, so that neither singular factor is left to the
raw estimator.  Batches use disjoint counter ranges of a Philox generator,
and the reported robust value is the median of 32 batch means.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .quadrature import QuadResult, cubature_nd
from .specfun import ellip_b

__all__ = [
    "RngState",
    "InverseDistance",
    "HeavisideSqrt",
    "ScaledInverseSq",
    "KernelSpec",
    "McEstimate",
    "KERNELS",
    "kernel",
    "sample_sphere",
    "sample_inverse_distance",
    "mc_coupling",
    "box_integral",
    "BOX_FORMS",
]

N_BATCHES = 32


@dataclass(frozen=True)
class RngState:
    """Seed (Philox key) and counter offset of a random stream."""

    seed: int
    counter: int = 0

    def generator(self):
        counter = [self.counter & (2**64 - 1), self.counter >> 64, 0, 0]
        return np.random.Generator(np.random.Philox(key=self.seed, counter=counter))


def _as_generator(rng):
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, RngState):
        return rng.generator()
    return RngState(int(rng)).generator()


def sample_sphere(dim, rng, n=None):
    """Uniform points on S^dim (in R^(dim+1)) by normalizing Gaussian vectors."""
    if dim not in (2, 3):
        raise DomainError("dim must be 2 or 3")
    gen = _as_generator(rng)
    size = 1 if n is None else n
    g = gen.standard_normal((size, dim + 1))
    v = g / np.linalg.norm(g, axis=1, keepdims=True)
    return v[0] if n is None else v


def _orthogonal_unit(anchor, gen):
    """A random unit vector orthogonal to each row of ``anchor``."""
    g = gen.standard_normal(anchor.shape)
    g -= np.sum(g * anchor, axis=1, keepdims=True) * anchor
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def _place(anchor, cos_t, sin_t, gen):
    perp = _orthogonal_unit(anchor, gen)
    return cos_t[:, None] * anchor + sin_t[:, None] * perp


def _rows(anchor, n):
    anchor = np.asarray(anchor, dtype=float)
    if anchor.ndim == 1:
        anchor = np.broadcast_to(anchor, (n, anchor.size))
    return np.ascontiguousarray(anchor)


# ---------------------------------------------------------------------------
# factor types


@dataclass(frozen=True)
class InverseDistance:
    """|x - sign*y|^-power; power 1 on S^2, power 2 on S^3."""

    power: int = 1
    sign: int = 1

    def value(self, x, y):
        d2 = np.sum((x - self.sign * y) ** 2, axis=1)
        return d2 ** (-0.5 * self.power)

    def mean(self, dim):
        return 1.0

    def sample(self, anchor, dim, gen, n):
        anchor = self.sign * _rows(anchor, n)
        if dim == 2:
            # the distance to the anchor is uniform on (0, 2)
            d = 2.0 * (1.0 - gen.random(n))
            one_minus = 0.5 * d * d
            cos_t = 1.0 - one_minus
            sin_t = np.sqrt(one_minus * (2.0 - one_minus))
        else:
            psi = _invert_cdf(lambda p: (p + np.sin(p)) / math.pi, gen.random(n))
            cos_t, sin_t = np.cos(psi), np.sin(psi)
        return _place(anchor, cos_t, sin_t, gen)


@dataclass(frozen=True)
class HeavisideSqrt:
    """theta(cos(beta) - x.y)/sqrt(2 (cos(beta) - x.y)) on S^2."""

    beta: float

    def value(self, x, y):
        c = math.cos(self.beta)
        gap = c - np.sum(x * y, axis=1)
        out = np.zeros_like(gap)
        pos = gap > 0
        out[pos] = 1.0 / np.sqrt(2.0 * gap[pos])
        return out

    def mean(self, dim):
        return math.cos(0.5 * self.beta)

    def sample(self, anchor, dim, gen, n):
        anchor = _rows(anchor, n)
        c = math.cos(self.beta)
        v = 1.0 - gen.random(n)
        cos_t = c - (c + 1.0) * v * v
        sin_t = np.sqrt(np.clip((1.0 - cos_t) * (1.0 + cos_t), 0.0, None))
        return _place(anchor, cos_t, sin_t, gen)


@dataclass(frozen=True)
class ScaledInverseSq:
    """1/|x - k y|^2 on S^3 with 0 < k < 1 (normalized mean 1)."""

    k: float

    def value(self, x, y):
        mu = np.sum(x * y, axis=1)
        return 1.0 / (1.0 - 2.0 * self.k * mu + self.k * self.k)

    def mean(self, dim):
        return 1.0

    def sample(self, anchor, dim, gen, n):
        # rejection from the uniform density; the factor is bounded by (1-k)^-2
        anchor = _rows(anchor, n)
        out = np.empty_like(anchor)
        bound = (1.0 - self.k) ** 2
        pending = np.arange(n)
        while pending.size:
            cand = sample_sphere(dim, gen, pending.size)
            acc = gen.random(pending.size) < self.value(anchor[pending], cand) * bound
            out[pending[acc]] = cand[acc]
            pending = pending[~acc]
        return out


def _invert_cdf(cdf, u, lo=0.0, hi=math.pi, iters=60):
    a = np.full_like(u, lo)
    b = np.full_like(u, hi)
    for _ in range(iters):
        m = 0.5 * (a + b)
        below = cdf(m) < u
        a = np.where(below, m, a)
        b = np.where(below, b, m)
    return 0.5 * (a + b)


# ---------------------------------------------------------------------------
# kernels and estimates


@dataclass(frozen=True)
class KernelSpec:
    """Chain n -> n1 -> n2 -> n' of three factors; ``separation`` is the angle between n and n'."""

    dimension: int
    factors: tuple
    separation: float = 0.0
    name: str = ""
    target: float = math.nan

    def __post_init__(self):
        if self.dimension not in (2, 3):
            raise DomainError("kernel dimension must be 2 or 3")
        if len(self.factors) != 3:
            raise DomainError("a coupling kernel has exactly three factors")
        want = 1 if self.dimension == 2 else 2
        for f in self.factors:
            if isinstance(f, InverseDistance) and (f.power != want or f.sign not in (1, -1)):
                raise DomainError("inverse-distance power must be 1 on S^2 and 2 on S^3")
            if isinstance(f, HeavisideSqrt) and (self.dimension != 2 or not 0 <= f.beta < math.pi):
                raise DomainError("Heaviside factors need S^2 and beta in [0, pi)")
            if isinstance(f, ScaledInverseSq) and (self.dimension != 3 or not 0 < f.k < 1):
                raise DomainError("scaled factors need S^3 and 0 < k < 1")
        if isinstance(self.factors[0], ScaledInverseSq) or isinstance(self.factors[0], HeavisideSqrt):
            raise DomainError("the first factor must be an inverse distance")


@dataclass(frozen=True)
class McEstimate:
    mean: float
    median_of_means: float
    stderr: float
    n_samples: int
    seed: int
    batch_means: tuple = field(default=(), repr=False)

    def to_dict(self):
        return {
            "mean": self.mean,
            "median_of_means": self.median_of_means,
            "stderr": self.stderr,
            "n_samples": self.n_samples,
            "seed": self.seed,
        }


def _l_beta_closed(beta):
    """G + (1/4) int_0^beta log tan((pi - a)/4) da, by Gauss-Kronrod."""
    from .constants import G
    from .quadrature import adaptive

    if beta == 0:
        return G
    res = adaptive(lambda a: np.log(np.tan((math.pi - a) / 4.0)), 1e-14, 0.0, beta)
    return G + 0.25 * res.value


def kernel(name, **params):
    """Build one of the named kernels with its reference value."""
    from .constants import G
    from .specfun import dilog

    s2 = InverseDistance(1, 1)
    s3 = InverseDistance(2, 1)
    if name == "eq_a":
        return KernelSpec(2, (s2, s2, s2), 0.0, name, math.pi**2 / 8)
    if name == "eq_b":
        return KernelSpec(2, (s2, s2, InverseDistance(1, -1)), 0.0, name, G)
    if name == "eq_beta":
        beta = float(params.get("beta", 0.0))
        return KernelSpec(2, (s2, HeavisideSqrt(beta), s2), 0.0, name, math.pi * (math.pi - beta) / 8)
    if name == "eq_beta_prime":
        beta = float(params.get("beta", 0.0))
        return KernelSpec(2, (s2, HeavisideSqrt(beta), InverseDistance(1, -1)), 0.0, name, _l_beta_closed(beta))
    if name == "eq_G_S3":
        return KernelSpec(3, (s3, s3, s3), 0.5 * math.pi, name, G)
    if name == "eq_ImLi2":
        k = float(params.get("k", 0.5))
        theta = float(params.get("theta", 0.5 * math.pi))
        target = dilog(k * complex(math.cos(theta), math.sin(theta))).imag / (k * math.sin(theta))
        middle = s3 if k == 1.0 else ScaledInverseSq(k)
        return KernelSpec(3, (s3, middle, s3), theta, name, target)
    raise DomainError(f"unknown kernel {name!r}")


KERNELS = ("eq_a", "eq_b", "eq_beta", "eq_beta_prime", "eq_G_S3", "eq_ImLi2")


def sample_inverse_distance(anchor, dim, rng, n=None):
    """Points with density proportional to 1/|anchor - p| on S^2 (weight = 1/density)."""
    if dim != 2:
        raise DomainError("sample_inverse_distance is defined on S^2")
    gen = _as_generator(rng)
    size = 1 if n is None else n
    anchor = np.asarray(anchor, dtype=float)
    pts = InverseDistance(1, 1).sample(anchor, 2, gen, size)
    weight = np.linalg.norm(pts - anchor, axis=1)
    if n is None:
        return pts[0], float(weight[0])
    return pts, weight


def _outer_vectors(dim, theta, rotation):
    n0 = np.zeros(dim + 1)
    n0[-1] = 1.0
    n1 = np.zeros(dim + 1)
    n1[-1] = math.cos(theta)
    n1[0] = math.sin(theta)
    if rotation is not None:
        rotation = np.asarray(rotation, dtype=float)
        n0 = rotation @ n0
        n1 = rotation @ n1
    return n0, n1


def _batch(spec, n_out, n_end, m, gen):
    f1, f2, f3 = spec.factors
    dim = spec.dimension
    p1 = f1.sample(n_out, dim, gen, m)
    pick = gen.random(m) < 0.5
    p2 = np.empty_like(p1)
    k2 = int(pick.sum())
    if k2:
        p2[pick] = f2.sample(p1[pick], dim, gen, k2)
    if m - k2:
        p2[~pick] = f3.sample(n_end, dim, gen, m - k2)
    v2 = f2.value(p1, p2)
    v3 = f3.value(p2, _rows(n_end, m))
    e1, e2, e3 = f1.mean(dim), f2.mean(dim), f3.mean(dim)
    q = 0.5 * v2 / e2 + 0.5 * v3 / e3
    w = e1 * v2 * v3 / q
    return math.fsum(w) / m


def mc_coupling(spec, n=1_000_000, seed=0, rotation=None):
    """Estimate the normalized double surface integral of a coupling kernel."""
    if isinstance(spec, str):
        spec = kernel(spec)
    if n < 10_000:
        raise DomainError("mc_coupling needs at least 10^4 samples")
    m = n // N_BATCHES
    n_out, n_end = _outer_vectors(spec.dimension, spec.separation, rotation)
    means = []
    for b in range(N_BATCHES):
        gen = RngState(seed, b << 64).generator()
        means.append(_batch(spec, n_out, n_end, m, gen))
    arr = np.array(means)
    mean = math.fsum(means) / N_BATCHES
    stderr = float(np.std(arr, ddof=1) / math.sqrt(N_BATCHES))
    return McEstimate(mean, float(np.median(arr)), stderr, m * N_BATCHES, int(seed), tuple(means))


# ---------------------------------------------------------------------------
# unit-box forms


def _box_a(xs, dls, drs, **_):
    u, v, w = xs
    du, dv, dw = drs
    return 1.0 / (8.0 * math.pi * np.sqrt(u * du * (du + u * w)) * np.sqrt(v * w * dv))


def _box_b(xs, dls, drs, **_):
    u, v, w = xs
    du, dv, dw = drs
    return 1.0 / (8.0 * math.pi * np.sqrt(u * du * (du + u * w)) * np.sqrt(dv + v * dw) * np.sqrt(w * dv))


def _box_beta(xs, dls, drs, beta=0.0):
    q, r, s = xs
    dq, dr, ds = drs
    t2 = math.tan(0.5 * beta) ** 2
    return 1.0 / (8.0 * math.pi * np.sqrt(dr * ds * r * s * dq) * np.sqrt(q + t2))


def _box_beta_prime(xs, dls, drs, beta=0.0):
    q, r, s = xs
    dq, dr, ds = drs
    t2 = math.tan(0.5 * beta) ** 2
    # sec^2(beta/2) - s (q r + tan^2(beta/2)) = 1 - s q r + tan^2 (1 - s)
    one_minus_sqr = ds + s * dq + s * q * dr
    return 1.0 / (8.0 * math.pi * np.sqrt(dr * ds * r * s * dq) * np.sqrt(one_minus_sqr + t2 * ds))


def _box_L_half(xs, dls, drs, **_):
    q, r, s = xs
    dq, dr, ds = drs
    one_qr = dq + q * dr
    one_qrs = ds + s * one_qr
    m = np.sqrt(one_qr * s / one_qrs)
    mc = np.sqrt(ds / one_qrs)
    return ellip_b(m, mc) / (16.0 * np.sqrt(dr * ds * r * s * dq * one_qrs))


def _box_L_int(xs, dls, drs, **_):
    q, r, s = xs
    dq, dr, ds = drs
    one_qr = dq + q * dr
    at = np.arctan2(np.sqrt(one_qr * s), np.sqrt(ds))
    return at / (4.0 * math.pi * s * np.sqrt(dr * ds * r * dq * one_qr))


BOX_FORMS = {
    "eq_a_uvw": _box_a,
    "eq_b_uvw": _box_b,
    "eq_beta_qrs": _box_beta,
    "eq_beta_prime_qrs": _box_beta_prime,
    "L_half_qrs": _box_L_half,
    "L_int_qrs": _box_L_int,
}


def box_integral(form, tol=1e-6, **params):
    """Tensor tanh-sinh cubature of a registered unit-cube integrand."""
    try:
        f = BOX_FORMS[form]
    except KeyError:
        raise DomainError(f"unknown box form {form!r}") from None
    return cubature_nd(lambda xs, dls, drs: f(xs, dls, drs, **params), 3, tol, with_distances=True)
