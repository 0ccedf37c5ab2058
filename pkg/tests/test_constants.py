import itertools
import math

import mpmath
import pytest

from elliptic_verify import catalog
from elliptic_verify.constants import (
    G,
    ZETA3,
    NamedConstant,
    all_constants,
    catalan_g,
    gamma_special,
    pi_value,
    zeta3,
)
from elliptic_verify.errors import DomainError
from elliptic_verify.quadrature import IntegrandSpec, tanh_sinh
from elliptic_verify.specfun import ellip_kc

MP_G = float(mpmath.catalan)
MP_Z3 = float(mpmath.zeta(3))


@pytest.mark.parametrize("method", ["bradley", "ramanujan", "alternating"])
def test_catalan_methods(method):
    c = catalan_g(method)
    assert isinstance(c, NamedConstant) and c.name == "G" and c.method == method
    assert abs(c.value - MP_G) <= 2e-16
    assert c.est_error <= 1e-15 * c.value


def test_catalan_examples():
    assert abs(catalan_g("bradley").value - catalan_g("ramanujan").value) <= 1e-15
    assert G == pytest.approx(0.915965594177219, abs=1e-15)
    K_int = tanh_sinh(IntegrandSpec(lambda k, dl, dr: ellip_kc(dr**0.5 * (1 + k) ** 0.5), 0, 1, (False, True), True),
                      1e-14)
    assert abs(2 * G - K_int.value) <= 1e-12


@pytest.mark.parametrize("method", ["apery_binomial", "direct_em"])
def test_zeta3_methods(method):
    c = zeta3(method)
    assert abs(c.value - MP_Z3) <= 1e-15 * MP_Z3
    assert c.est_error <= 1e-15 * c.value


def test_zeta3_examples():
    assert abs(zeta3("apery_binomial").value - zeta3("direct_em").value) <= 1e-15
    assert ZETA3 == pytest.approx(1.202056903159594, abs=1e-15)
    r = tanh_sinh(IntegrandSpec(lambda t, dl, dr: ellip_kc(t**0.5) ** 2, 0, 1, (True, False), True), 1e-13)
    assert abs(2 / 7 * r.value - ZETA3) <= 1e-9


def test_gamma_special():
    q = gamma_special("quarter")
    t = gamma_special("third")
    assert q.value == pytest.approx(3.625609908221908, abs=1e-14)
    assert t.value == pytest.approx(2.678938534707747, abs=1e-14)
    assert abs(q.value - float(mpmath.gamma(0.25))) <= 1e-15 * q.value
    assert abs(t.value - float(mpmath.gamma(mpmath.mpf(1) / 3))) <= 2e-15 * t.value
    gamma_3_4 = math.pi / math.sin(math.pi / 4) / q.value
    assert q.value * gamma_3_4 == pytest.approx(math.pi * math.sqrt(2), abs=1e-13)


def test_pi_methods():
    assert pi_value().value == math.pi
    assert abs(pi_value("gauss_legendre").value - math.pi) <= 2 * math.ulp(math.pi)


def test_unknown_methods():
    for fn, arg in ((catalan_g, "x"), (zeta3, "x"), (pi_value, "x")):
        with pytest.raises(DomainError):
            fn(arg)
    with pytest.raises(DomainError):
        gamma_special("half")
    with pytest.raises(DomainError):
        gamma_special("quarter", "x")


def test_all_methods_pairwise_agree():
    by_name = {}
    for c in all_constants():
        by_name.setdefault(c.name, []).append(c)
    assert set(by_name) == {"pi", "G", "zeta3", "gamma_quarter", "gamma_third"}
    for name, cs in by_name.items():
        assert len(cs) >= 2
        for a, b in itertools.combinations(cs, 2):
            assert abs(a.value - b.value) <= 1e-15 * abs(a.value) + math.ulp(a.value), (name, a.method, b.method)
            assert a.est_error <= 1e-15 * abs(a.value)


def test_catalan_via_inverse_tangent_integrals():
    rep = catalog.evaluate("eq_G_Ti_a")
    assert rep.passed and rep.abs_diff <= 1e-10
