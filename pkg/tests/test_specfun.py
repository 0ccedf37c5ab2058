import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import mp_E, mp_K
from elliptic_verify.constants import G
from elliptic_verify.errors import DivergenceError, DomainError, NonConvergenceError
from elliptic_verify.quadrature import IntegrandSpec, tanh_sinh
from elliptic_verify.specfun import (
    HypergeometricParams,
    Modulus,
    agm,
    chi2,
    dilog,
    ellip_b,
    ellip_d,
    ellip_e,
    ellip_k,
    ellip_kc,
    hyp3f2_unit,
    legendre_p,
    pfq,
)

unit = st.floats(min_value=1e-6, max_value=1 - 1e-6)


# ---------------------------------------------------------------------------
# Modulus


def test_modulus_components():
    m = Modulus.from_k(0.6)
    assert m.k == 0.6 and m.k_comp == pytest.approx(0.8, abs=1e-16)


def test_modulus_from_complement_keeps_k_comp_bits():
    kc = 1e-9
    m = Modulus.from_complement(kc)
    assert m.k_comp == kc
    # k itself rounds to 1.0 but K stays finite because it is built from k'
    assert ellip_k(m) == pytest.approx(mp_K(1 - mpmath.mpf(kc) ** 2 / 2), rel=1e-15)


@given(unit)
def test_modulus_pythagoras(k):
    m = Modulus.from_k(k)
    assert abs(m.k**2 + m.k_comp**2 - 1.0) <= 4 * np.finfo(float).eps


@pytest.mark.parametrize("bad", [-0.1, 1.1, math.nan, math.inf])
def test_modulus_rejects_bad_input(bad):
    with pytest.raises(DomainError):
        Modulus.from_k(bad)


# ---------------------------------------------------------------------------
# AGM and K, E


def test_agm_examples():
    assert agm(1, 1) == 1.0
    assert agm(1, 0) == 0.0
    assert agm(1, 1 / math.sqrt(2)) == pytest.approx(0.847213084793979, abs=1e-15)


@given(st.floats(1e-3, 1e3), st.floats(1e-3, 1e3))
def test_agm_symmetric_and_between_means(a, b):
    m = agm(a, b)
    assert m == pytest.approx(agm(b, a), rel=1e-15)
    assert min(a, b) * (1 - 1e-15) <= m <= max(a, b) * (1 + 1e-15)
    assert m >= math.sqrt(a * b) * (1 - 1e-15)
    assert m <= 0.5 * (a + b) * (1 + 1e-15)


@pytest.mark.parametrize("args", [(-1, 1), (1, -1), (math.inf, 1), (math.nan, 1)])
def test_agm_domain(args):
    with pytest.raises(DomainError):
        agm(*args)


def test_ellip_k_examples():
    assert ellip_k(0.0) == 0.5 * math.pi
    assert ellip_k(1 / math.sqrt(2)) == pytest.approx(1.854074677301372, rel=1e-15)
    assert ellip_k(math.sin(math.pi / 12)) == pytest.approx(1.598142002112540, rel=1e-15)
    closed = math.gamma(0.25) ** 2 / (4 * math.sqrt(math.pi))
    assert ellip_k(Modulus.from_k(1 / math.sqrt(2))) == pytest.approx(closed, rel=1e-15)


def test_ellip_k_diverges_at_one():
    with pytest.raises(DivergenceError):
        ellip_k(1.0)
    with pytest.raises(DivergenceError):
        ellip_k(Modulus.from_k(1.0))
    assert np.isinf(ellip_k(np.array([0.5, 1.0]))[1])


def test_ellip_k_array_matches_scalar():
    ks = np.linspace(0, 0.99, 17)
    assert np.array_equal(ellip_k(ks), np.array([ellip_k(float(k)) for k in ks]))


@pytest.mark.parametrize("k", [1e-8, 0.1, 0.5, 0.9, 0.999, 1 - 1e-10])
def test_ellip_k_vs_mpmath(k):
    assert ellip_k(k) == pytest.approx(mp_K(k), rel=2e-15)


@pytest.mark.parametrize("kc", [1e-300, 1e-15, 1e-8, 0.3])
def test_ellip_kc_near_singular_end(kc):
    expected = float(mpmath.pi / (2 * mpmath.agm(1, kc)))
    assert ellip_kc(kc) == pytest.approx(expected, rel=1e-15)


def test_ellip_e_examples():
    assert ellip_e(0.0) == pytest.approx(0.5 * math.pi, rel=1e-16)
    assert ellip_e(1.0) == 1.0
    k = 0.3
    kc = math.sqrt(1 - k * k)
    lhs = ellip_e(k) * ellip_k(kc) + ellip_e(kc) * ellip_k(k) - ellip_k(k) * ellip_k(kc)
    assert lhs == pytest.approx(0.5 * math.pi, abs=1e-14)


@pytest.mark.parametrize("k", [1e-6, 0.2, 0.7, 0.99, 1 - 1e-12])
def test_ellip_e_vs_mpmath(k):
    assert ellip_e(k) == pytest.approx(mp_E(k), rel=1e-14)


@pytest.mark.parametrize("k", [0.0, 1e-5, 0.4, 0.95])
def test_ellip_d_b_definitions(k):
    if k == 0:
        assert ellip_d(0.0) == pytest.approx(math.pi / 4, rel=1e-15)
        assert ellip_b(0.0) == pytest.approx(math.pi / 4, rel=1e-15)
        return
    m = mpmath.mpf(k) ** 2
    K, E = mpmath.ellipk(m), mpmath.ellipe(m)
    assert ellip_d(k) == pytest.approx(float((K - E) / m), rel=1e-13)
    assert ellip_b(k) == pytest.approx(float((E - (1 - m) * K) / m), rel=1e-13)


@given(st.floats(0.01, 0.99))
def test_agm_matches_defining_integral(k):
    res = tanh_sinh(lambda t: 1.0 / np.sqrt(1.0 - (k * np.sin(t)) ** 2), 1e-15, 0.0, 0.5 * math.pi,
                    singular=(False, False))
    assert ellip_k(k) == pytest.approx(res.value, rel=1e-15)


def test_agm_matches_defining_integral_100_random_k():
    rng = np.random.default_rng(7)
    for k in rng.uniform(0.0, 1.0, 100):
        res = tanh_sinh(lambda t: 1.0 / np.sqrt(1.0 - (k * np.sin(t)) ** 2), 1e-15, 0.0, 0.5 * math.pi,
                        singular=(False, False))
        assert abs(ellip_k(k) - res.value) <= 1e-15 * res.value + 1e-15 * ellip_k(k)


@given(st.floats(1e-4, 1 - 1e-4))
def test_landen_invariance(xi):
    lhs = ellip_kc(xi)
    rhs = 2.0 / (1.0 + xi) * ellip_k((1.0 - xi) / (1.0 + xi))
    assert lhs == pytest.approx(rhs, rel=1e-14)


@given(unit)
def test_legendre_relation(k):
    kc = math.sqrt((1 - k) * (1 + k))
    K, Kp = ellip_k(k), ellip_kc(k)
    E, Ep = ellip_e(k), ellip_e(kc)
    assert E * Kp + Ep * K - K * Kp == pytest.approx(0.5 * math.pi, abs=1e-13)


# ---------------------------------------------------------------------------
# dilogarithm


def test_dilog_examples():
    assert dilog(0) == 0
    assert dilog(1) == pytest.approx(math.pi**2 / 6, rel=1e-16)
    assert dilog(1j) - dilog(-1j) == pytest.approx(2j * G, abs=1e-14)


def _mp_li2(z):
    return complex(mpmath.polylog(2, z))


def test_dilog_vs_mpmath_disk_and_circle():
    rng = np.random.default_rng(3)
    pts = list(rng.uniform(-1, 1, 300) + 1j * rng.uniform(-1, 1, 300))
    pts += [cmath.exp(1j * t) for t in np.linspace(-math.pi, math.pi, 201) if abs(t) > 1e-9]
    pts += [0.999999 + 1e-7j, 1 + 1e-9j, -1.0, 0.5, -0.5 + 0.5j]
    worst = max(abs(dilog(z) - _mp_li2(z)) for z in pts)
    assert worst <= 1e-14


def test_dilog_outside_disk_and_cut():
    for z in [2.0 + 1j, -3.0, 5j, -2 - 7j, 1.5 - 0.2j]:
        assert dilog(z) == pytest.approx(_mp_li2(z), abs=1e-13)
    assert dilog(3.0).imag == pytest.approx(-math.pi * math.log(3.0), abs=1e-14)


def test_dilog_vectorized():
    z = np.array([0.1, 0.5j, -0.9])
    assert np.allclose(dilog(z), [dilog(complex(v)) for v in z], rtol=0, atol=0)


def test_dilog_rejects_non_finite():
    with pytest.raises(DomainError):
        dilog(complex(math.nan, 0))


@given(st.floats(0, 0.999), st.floats(-math.pi, math.pi))
def test_dilog_reflection(r, t):
    z = r * cmath.exp(1j * t)
    if abs(z) < 1e-12 or abs(1 - z) < 1e-12:
        return
    lhs = dilog(z) + dilog(1 - z)
    rhs = math.pi**2 / 6 - cmath.log(z) * cmath.log(1 - z)
    assert abs(lhs - rhs) <= 1e-13


def test_dilog_reflection_200_random():
    rng = np.random.default_rng(11)
    r = np.sqrt(rng.uniform(0, 1, 200))
    t = rng.uniform(-math.pi, math.pi, 200)
    z = r * np.exp(1j * t)
    lhs = dilog(z) + dilog(1 - z)
    rhs = math.pi**2 / 6 - np.log(z) * np.log(1 - z)
    assert np.max(np.abs(lhs - rhs)) <= 1e-13


def test_chi2_examples():
    assert chi2(0) == 0
    assert chi2(1) == pytest.approx(math.pi**2 / 8, rel=1e-16)
    z = 0.3
    lhs = chi2((1 - z) / (1 + z)) + chi2(z)
    rhs = math.pi**2 / 8 + 0.5 * math.log(z) * math.log((1 + z) / (1 - z))
    assert lhs == pytest.approx(rhs, abs=1e-15)


@given(st.floats(-1, 1), st.floats(-1, 1))
def test_chi2_is_half_difference(x, y):
    z = complex(x, y)
    assert chi2(z) == pytest.approx(0.5 * (dilog(z) - dilog(-z)), abs=4e-16 * (1 + abs(chi2(z))))


# ---------------------------------------------------------------------------
# Legendre polynomials


def test_legendre_examples():
    assert legendre_p(0, 0.3) == 1.0
    assert legendre_p(1, 0.7) == 0.7
    assert legendre_p(2, 0.5) == pytest.approx(-0.125, abs=1e-16)


@given(st.integers(0, 200), st.floats(-1, 1))
def test_legendre_bounded_and_matches_mpmath(l, x):
    p = legendre_p(l, x)
    assert abs(p) <= 1 + 1e-12
    assert p == pytest.approx(float(mpmath.legendre(l, x)), abs=1e-12)


@pytest.mark.parametrize("args", [(-1, 0.5), (1.5, 0.5), (2, 1.5), (10**6 + 1, 0.1)])
def test_legendre_domain(args):
    with pytest.raises(DomainError):
        legendre_p(*args)


# ---------------------------------------------------------------------------
# generalized hypergeometric series


def test_pfq_2f1_unit():
    r = pfq(HypergeometricParams((0.5, 0.5), (2,), 1.0))
    assert r.corrected.real == pytest.approx(4 / math.pi, abs=1e-10)


def test_pfq_catalan_3f2_slow():
    r = pfq(HypergeometricParams((0.5, 0.5, 0.5), (1, 1.5), 1.0), max_terms=100_000)
    assert not r.converged
    assert r.terms_used == 100_000
    assert abs(r.value.real - 4 * G / math.pi) <= 1e-5
    assert abs(r.corrected.real - 4 * G / math.pi) <= 1e-10


def test_pfq_alternating_3f2():
    r = pfq(HypergeometricParams((0.5, 1, 1), (1.5, 1.5), -1.0))
    expected = math.pi**2 / 8 - 0.5 * math.log(math.sqrt(2) - 1) ** 2
    assert r.corrected.real == pytest.approx(expected, abs=1e-12)


def test_hyp3f2_unit_vs_mpmath():
    for x in (-1.0, -0.5, 0.3, 0.9):
        assert hyp3f2_unit(x) == pytest.approx(float(mpmath.hyp3f2(1, 1, 1, 1.5, 1.5, x)), abs=1e-12)


@given(st.floats(-1, 1), st.floats(-1, 1))
def test_pfq_0f0_is_exp(x, y):
    z = complex(x, y)
    if abs(z) > 1:
        z /= abs(z)
    r = pfq(HypergeometricParams((), (), z))
    assert r.converged
    assert abs(r.value - cmath.exp(z)) <= 1e-14


@given(st.floats(-0.9, 0.9))
def test_pfq_1f0_is_binomial(z):
    r = pfq(HypergeometricParams((0.5,), (), z))
    assert r.corrected.real == pytest.approx((1 - z) ** -0.5, rel=1e-13)


def test_pfq_terminating():
    r = pfq(HypergeometricParams((-3, 2), (1,), 0.5))
    assert r.converged
    assert r.value.real == pytest.approx(float(mpmath.hyp2f1(-3, 2, 1, 0.5)), abs=1e-15)


def test_pfq_errors():
    with pytest.raises(DomainError):
        HypergeometricParams((1,), (0,), 0.5)
    with pytest.raises(NonConvergenceError):
        HypergeometricParams((1, 1, 1), (1,), 0.5)
    with pytest.raises(NonConvergenceError):
        pfq(HypergeometricParams((1, 1), (1,), 1.0))


@pytest.mark.parametrize("t", [0.1, 0.3, 0.5, 0.7, 0.9])
def test_legendre_equation_for_k_of_sqrt_t(t):
    # d/dt [t (1 - t) dK(sqrt t)/dt] = K(sqrt t)/4, by nested five-point differences
    h = 0.01 * min(t, 1 - t)

    def deriv(f, s):
        return (f(s - 2 * h) - 8 * f(s - h) + 8 * f(s + h) - f(s + 2 * h)) / (12 * h)

    def flux(s):
        return s * (1 - s) * deriv(lambda v: ellip_k(math.sqrt(v)), s)

    assert deriv(flux, t) == pytest.approx(ellip_k(math.sqrt(t)) / 4, abs=1e-6)


@pytest.mark.parametrize("z", [5e-324j, -5e-324, 1e-300 + 1e-300j])
def test_dilog_tiny_arguments(z):
    assert dilog(z) == z
    assert chi2(z) == z


@pytest.mark.parametrize("z", [3e-9, -2e-9j, 1e-9 + 4e-9j])
def test_dilog_small_arguments(z):
    assert abs(dilog(z) - complex(mpmath.polylog(2, z))) <= 1e-16 * abs(z)
