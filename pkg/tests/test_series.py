import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from elliptic_verify.constants import G, ZETA3
from elliptic_verify.errors import DomainError
from elliptic_verify.identities import run_plan
from elliptic_verify.quadrature import IntegrandSpec, tanh_sinh
from elliptic_verify.series import (
    GosperSums,
    MomentSequence,
    gosper_splits,
    hyp3f2_111,
    hyp3f2_111_integral,
    hyperbolic_sum,
    hyperbolic_sum_cplx,
    k_moment,
    kk_moment_rational,
    m_func,
    md_projection,
    tricomi_fourier_k,
    w_func,
)
from elliptic_verify.specfun import ellip_k, ellip_kc


def _quad(f, tol=1e-14, singular=(True, True)):
    with np.errstate(divide="ignore"):
        return tanh_sinh(IntegrandSpec(f, 0.0, 1.0, singular, True), tol).value


def test_k_moment_examples():
    assert k_moment(0) == pytest.approx(math.pi**2 / 4, rel=1e-15)
    assert k_moment(1) == pytest.approx(1.0, rel=1e-15)
    assert k_moment(2) == pytest.approx(math.pi**2 / 16, rel=1e-15)
    with pytest.raises(DomainError):
        k_moment(-1)


@pytest.mark.parametrize("n", range(21))
def test_k_moment_vs_quadrature(n):
    q = _quad(lambda x, dl, dr: x**n * ellip_kc(x), singular=(True, False))
    assert abs(k_moment(n) - q) <= 1e-12


def test_kk_moment_exact_values():
    c = kk_moment_rational(8)
    assert isinstance(c, MomentSequence) and len(c) == 9 and c.base_symbol == "pi^3"
    assert c[0] == Fraction(1, 8)
    assert c[1] == Fraction(1, 16)
    assert c[2] == Fraction(11, 256)
    for n in range(1, 9):
        assert 0 < c[n] < c[n - 1]
        assert isinstance(c[n], Fraction)
    with pytest.raises(DomainError):
        kk_moment_rational(0)


def test_kk_moment_recurrence_holds_exactly():
    c = kk_moment_rational(30)
    for n in range(1, 30):
        assert 2 * (n + 1) ** 3 * c[n + 1] == (1 + 2 * n * (2 * n * n + 3 * n + 2)) * c[n] - 2 * n**3 * c[n - 1]


def _kk_moment_quad(n):
    # t = x^2 keeps K(sqrt t) K(sqrt(1 - t)) accurate at both ends
    return _quad(lambda x, dl, dr: 2.0 * x ** (2 * n + 1) * ellip_kc(np.sqrt(dr * (1 + x))) * ellip_kc(x)) / math.pi**3


@pytest.mark.parametrize("n", range(9))
def test_kk_moment_vs_quadrature(n):
    c = kk_moment_rational(8)
    assert abs(float(c[n]) - _kk_moment_quad(n)) <= 1e-7
    assert c.moment(n) == pytest.approx(float(c[n]) * math.pi**3)


def test_hyp3f2_111_routes_agree():
    for x in (-1.0, -0.3, 0.2, 0.5, 0.9):
        ref = float(mpmath.hyp3f2(1, 1, 1, 1.5, 1.5, x))
        assert hyp3f2_111(x) == pytest.approx(ref, abs=1e-12)
        assert hyp3f2_111_integral(x) == pytest.approx(ref, abs=1e-12)
    z = 0.5 + 0.5j
    assert hyp3f2_111_integral(z) == pytest.approx(complex(mpmath.hyp3f2(1, 1, 1, 1.5, 1.5, z)), abs=1e-12)
    with pytest.raises(DomainError):
        hyp3f2_111(1.0)
    with pytest.raises(DomainError):
        hyp3f2_111_integral(2.0)


def test_w_func_examples():
    r = 1e4
    assert r * w_func(r) == pytest.approx(2 * G, abs=1e-6)
    q = _quad(lambda x, dl, dr: ellip_kc(np.sqrt(dr * (1 + x))) / (1 + x * x), singular=(False, True))
    assert abs(w_func(1.0) - q) <= 1e-10
    total = math.pi / 2 * ellip_k(1 / math.sqrt(2)) / math.sqrt(2)
    assert w_func(1.0) + m_func(1.0) == pytest.approx(total, abs=1e-14)


def test_m_func_examples():
    assert m_func(1e-4) / 1e-4 == pytest.approx(1.0, abs=1e-7)
    for x in (0.9995, 1 - 1e-6, 1 - 1e-8):
        assert hyp3f2_111(x) == pytest.approx(float(mpmath.hyp3f2(1, 1, 1, 1.5, 1.5, x)), rel=1e-12)
    assert m_func(1.0) == pytest.approx(0.5 * float(mpmath.hyp3f2(1, 1, 1, 1.5, 1.5, 0.5)), abs=1e-14)
    for bad in (0.0, -1.0):
        with pytest.raises(DomainError):
            m_func(bad)
        with pytest.raises(DomainError):
            w_func(bad)


@given(st.floats(0.1, 10.0))
def test_w_and_m_match_quadrature(r):
    assert abs(w_func(r) - run_plan("int_W", {"r": r}, 1e-12).value) <= 1e-10
    assert abs(m_func(r) - run_plan("int_M", {"r": r}, 1e-12).value) <= 1e-10


def test_sum_rule_10_random_r():
    rng = np.random.default_rng(5)
    for r in rng.uniform(0.1, 10.0, 10):
        quad = run_plan("int_W", {"r": r}, 1e-12).value + run_plan("int_M", {"r": r}, 1e-12).value
        closed = math.pi / 2 / math.sqrt(1 + r * r) * ellip_k(r / math.sqrt(1 + r * r))
        assert abs(quad - closed) <= 1e-10


@pytest.mark.parametrize("y,expected", [
    (1.0, math.pi**2 / 8 * (1 + 1j)),
    (math.sqrt(3), math.pi**2 / 8 * (1 + 1j * math.sqrt(3))),
    (1 / math.sqrt(3), math.pi**2 / 8 * (1 + 1j / math.sqrt(3))),
])
def test_hyperbolic_named_cases(y, expected):
    value, n = hyperbolic_sum(y)
    assert abs(value.real - expected.real) <= 1e-12
    assert abs(value.imag - complex(expected).imag) <= 1e-12
    assert n < 30


@given(st.floats(0.25, 4.0))
def test_hyperbolic_sum_value(y):
    value, _ = hyperbolic_sum(y)
    expected = math.pi**2 / 8 * (1 + 1j * y)
    assert abs(value.real - expected.real) <= 1e-12 and abs(value.imag - expected.imag) <= 1e-12


@pytest.mark.xfail(strict=True, reason="the 1e-18 cutoff needs 43-45 terms at y = 1/4 and y = 4")
def test_hyperbolic_sum_at_most_30_terms_on_quarter_to_four():
    assert max(hyperbolic_sum(y)[1] for y in np.linspace(0.25, 4.0, 61)) <= 30


@pytest.mark.parametrize("z", [1 + 1j, 0.5 + 2j, 2 + 0.5j, 1j, -0.5 + 1.5j, 3 - 1j])
def test_hyperbolic_complex(z):
    value, _ = hyperbolic_sum_cplx(z)
    assert abs(value - math.pi**2 / 8) <= 1e-12


def test_hyperbolic_domain():
    with pytest.raises(DomainError):
        hyperbolic_sum(0.0)
    with pytest.raises(DomainError):
        hyperbolic_sum_cplx(2.0)


def test_gosper_splits():
    s = gosper_splits()
    assert isinstance(s, GosperSums) and s.n_terms == 100_000
    assert abs(s.g_sum / (2 * math.pi) - G) <= 1e-6
    assert abs(s.zeta3_sum * 2 / 7 - ZETA3) <= 1e-6
    # the bare partial sums carry the O(1/n) tail the estimates account for
    assert s.g_partial < s.g_sum and s.zeta3_partial < s.zeta3_sum


def test_gosper_first_terms():
    s = gosper_splits(3)
    second = 2 * 5 / (2 * 3) * (2 / 3) ** 2
    third = 2 * 8 / (3 * 5) * (8 / 15) ** 2
    assert s.g_partial - second - third == pytest.approx(4.0, abs=1e-15)
    with pytest.raises(DomainError):
        gosper_splits(2)


def _md_quad(n):
    f = lambda b: ellip_k(np.sin(0.5 * b)) * np.sin(b) * np.cos(0.5 * n * b)
    with np.errstate(divide="ignore", invalid="ignore"):
        return tanh_sinh(IntegrandSpec(f, 0.0, math.pi, (False, True)), 1e-13).value


def test_md_projection_closed_form():
    assert md_projection(1) == pytest.approx(math.pi**2 / 4)
    assert md_projection(3) == pytest.approx(-3 * math.pi**2 / 16)
    assert md_projection(5) == 0.0 and md_projection(9) == 0.0
    for bad in (0, 2, -1):
        with pytest.raises(DomainError):
            md_projection(bad)


@pytest.mark.parametrize("n", [1, 3, 5, 7, 9, 11])
def test_md_projection_vs_quadrature(n):
    tol = 1e-9 if n % 4 == 1 and n > 1 else 1e-8
    assert abs(_md_quad(n) - md_projection(n)) <= tol


@pytest.mark.parametrize("theta", [0.3, 1.0, 2.0, 3.0])
def test_tricomi_fourier(theta):
    assert abs(tricomi_fourier_k(theta) - ellip_k(abs(math.sin(theta)))) <= 1e-5
    assert abs(tricomi_fourier_k(theta) - ellip_k(abs(math.sin(theta)))) <= 1e-12


def test_tricomi_fourier_domain():
    with pytest.raises(DomainError):
        tricomi_fourier_k(0.0)
