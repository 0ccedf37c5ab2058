import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import mp_E, mp_K
from elliptic_verify.constants import G
from elliptic_verify.errors import DomainError
from elliptic_verify.identities import run_plan
from elliptic_verify.quadrature import IntegrandSpec, tanh_sinh
from elliptic_verify.specfun import ellip_e, ellip_k, ellip_kc
from elliptic_verify.transforms import (
    BeltramiVariant,
    abel_forward,
    abel_solve,
    beltrami_kernel,
    beltrami_transform,
    landen_descend,
    landen_k,
    tricomi_pv,
)

VARIANTS = list(BeltramiVariant)


def _reproduce(variant, k):
    """int_0^1 kernel(k, kappa) K(sqrt(1 - kappa^2)) dkappa."""
    f = lambda kap: beltrami_kernel(variant, k, kap) * ellip_kc(kap)
    with np.errstate(divide="ignore"):
        return tanh_sinh(IntegrandSpec(f, 0.0, 1.0, (True, False)), 1e-13).value


def test_kernel_at_zero_modulus():
    for kap in (0.0, 0.3, 1.0):
        assert beltrami_kernel("B", 0.0, kap) == pytest.approx(2 / math.pi, rel=1e-16)


def test_kernel_closed_forms():
    k, kap = 0.4, 0.7
    c = 2 / math.pi
    assert beltrami_kernel("B", k, kap) == pytest.approx(c / (1 - k * k * kap * kap))
    assert beltrami_kernel("iB", k, kap) == pytest.approx(c * math.sqrt(1 - k * k) / (1 - k * k * (1 - kap * kap)))
    assert beltrami_kernel("LB", k, kap) == pytest.approx(c * (1 + k) / ((1 + k) ** 2 - 4 * k * kap * kap))
    assert beltrami_kernel("iLB", k, kap) == pytest.approx(c * (1 - k) / ((1 - k) ** 2 + 4 * k * kap * kap))


def test_kernel_domain():
    with pytest.raises(DomainError):
        beltrami_kernel("B", 1.0, 0.5)
    with pytest.raises(DomainError):
        beltrami_kernel("B", 0.5, 1.5)
    with pytest.raises(ValueError):
        beltrami_kernel("X", 0.5, 0.5)


@pytest.mark.parametrize("variant", ["B", "iLB"])
def test_kernel_examples_reproduce_K_half(variant):
    assert _reproduce(variant, 0.5) == pytest.approx(ellip_k(0.5), abs=1e-12)


@pytest.mark.parametrize("variant", VARIANTS)
def test_beltrami_reproduction_20_random_k(variant):
    rng = np.random.default_rng(2024)
    for k in rng.uniform(0.05, 0.95, 20):
        assert abs(_reproduce(variant, k) - ellip_k(k)) <= 1e-10


@given(st.sampled_from(VARIANTS), st.floats(0.05, 0.95))
def test_beltrami_reproduction_property(variant, k):
    assert abs(_reproduce(variant, k) - ellip_k(k)) <= 1e-10


def _weighted(variant, f):
    """int_0^1 K(sqrt(1 - kappa^2)) T(kappa) dkappa with T the transformed weight."""

    def outer(kap):
        with np.errstate(divide="ignore"):
            return ellip_kc(kap) * beltrami_transform(variant, f, kap, 1e-13).value

    return tanh_sinh(IntegrandSpec(outer, 0.0, 1.0, (True, False)), 1e-11).value


def test_transform_constant_weight_iB_gives_2G():
    assert abs(_weighted("iB", lambda x: np.ones_like(x)) - 2 * G) <= 1e-9


def test_transform_a_weight_B_gives_pi2_8():
    assert abs(_weighted("B", lambda x: 1 / (1 + x)) - math.pi**2 / 8) <= 1e-9


def test_transform_zero_weight():
    r = beltrami_transform("LB", lambda x: np.zeros_like(x), 0.4)
    assert r.value == 0.0 and r.converged


def test_transform_array_kappa():
    kap = np.array([0.1, 0.5, 0.9])
    arr = beltrami_transform("iLB", lambda x: x, kap).value
    single = [beltrami_transform("iLB", lambda x: x, float(k)).value for k in kap]
    assert np.allclose(arr, single, rtol=0, atol=1e-15)


def test_abel_forward_examples():
    assert abel_forward(lambda r: 1 / (1 + r * r) ** 2, 0.0).value == pytest.approx(math.pi / 2, abs=1e-12)
    assert abel_forward(lambda r: 1 / (1 + r * r), 1.0).value == pytest.approx(math.pi / math.sqrt(2), abs=1e-12)
    assert abel_forward(lambda r: np.exp(-r * r), 0.0).value == pytest.approx(math.sqrt(math.pi), abs=1e-12)
    with pytest.raises(DomainError):
        abel_forward(np.exp, -1.0)


@given(st.floats(0.0, 5.0))
def test_abel_forward_lorentzian(x):
    assert abel_forward(lambda r: 1 / (1 + r * r), x).value == pytest.approx(math.pi / math.sqrt(1 + x * x), abs=1e-11)


def test_abel_solve_examples():
    r = abel_solve(lambda y: math.pi * np.arcsin(np.sqrt(y)), 0.5)
    s = math.sqrt(0.5)
    assert r.value == pytest.approx(2 * (ellip_e(s) - 0.5 * ellip_k(s)), abs=1e-12)
    assert abel_solve(lambda y: np.zeros_like(y), 0.7).value == 0.0
    r = abel_solve(lambda y: math.pi * np.log(np.sqrt(y) + np.sqrt(1 + y)), 1.0)
    assert r.value == pytest.approx(2 * math.sqrt(2) * (mp_K(s) - mp_E(s)), abs=1e-12)


@given(st.lists(st.floats(-2, 2), min_size=1, max_size=4), st.floats(0.05, 3.0))
def test_abel_round_trip(coeffs, x):
    # f(x) = int_0^x phi(y)/sqrt(x - y) dy for phi = sum c_n y^n is sum c_n B(n+1, 1/2) x^(n+1/2)
    beta = [math.gamma(n + 1) * math.gamma(0.5) / math.gamma(n + 1.5) for n in range(len(coeffs))]
    f = lambda y: sum(c * b * y ** (n + 0.5) for n, (c, b) in enumerate(zip(coeffs, beta)))
    expected = sum(c * x ** (n + 1) / (n + 1) for n, c in enumerate(coeffs))
    assert abel_solve(f, x).value == pytest.approx(expected, abs=1e-9)


def test_tricomi_examples():
    r = tricomi_pv(lambda xi: ellip_kc(np.abs(xi)), 0.7, 1e-12, breakpoints=(0.0,))
    assert r.value == pytest.approx(ellip_k(0.7), abs=1e-10)
    # the transform at 0 vanishes for even f; odd f gives -(1/pi) int f(xi)/xi
    assert abs(tricomi_pv(lambda xi: xi**2 + np.cos(xi), 0.0).value) <= 1e-14
    assert tricomi_pv(lambda xi: xi**3 - xi, 0.0).value == pytest.approx(4 / (3 * math.pi), abs=1e-14)
    x = 0.2
    r = tricomi_pv(lambda xi, dl, dr: np.log(0.5 * dl) / np.sqrt(dl * dr), x, 1e-13, with_distances=True)
    assert r.value * math.sqrt(1 - x * x) == pytest.approx(-math.acos(x), abs=1e-10)


@pytest.mark.parametrize("k", [0.2, 0.5, 0.8])
def test_tricomi_BT(k):
    r = tricomi_pv(lambda xi: ellip_kc(np.abs(xi)), k, 1e-12, breakpoints=(0.0,))
    assert abs(r.value - ellip_k(k)) <= 1e-6


def test_landen_examples():
    assert landen_descend(1e-4) == pytest.approx(0.25e-8, rel=1e-8)
    assert landen_descend(1 / math.sqrt(2)) == pytest.approx(3 - 2 * math.sqrt(2), rel=1e-14)
    with pytest.raises(DomainError):
        landen_descend(1.0)


@given(st.floats(0.0, 0.999999))
def test_landen_chain_matches_agm(k):
    assert landen_k(k) == pytest.approx(ellip_k(k), rel=1e-14)


@pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
def test_sum_rule(r):
    lhs = run_plan("sum_rule_lhs", {"r": r}, 1e-12).value
    rhs = math.pi / 2 / math.sqrt(1 + r * r) * ellip_k(r / math.sqrt(1 + r * r))
    assert abs(lhs - rhs) <= 1e-10


@pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
def test_W_functional_equation(r):
    lhs = run_plan("f_eq_W_lhs", {"r": r}, 1e-11).value
    rhs = run_plan("f_eq_W_rhs", {"r": r}, 1e-11).value
    assert abs(lhs - rhs) <= 1e-9
