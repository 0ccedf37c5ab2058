import math

import mpmath
import pytest

from elliptic_verify.errors import DomainError
from elliptic_verify.identities import PLANS, Eval, evaluate_expression, expression_ops, run_plan


def test_expression_arithmetic_and_params():
    assert evaluate_expression("pi**2/8") == pytest.approx(math.pi**2 / 8)
    assert evaluate_expression("2*x + 1", {"x": 3.0}) == 7.0
    assert evaluate_expression("-x if x < 0 else x", {"x": -2.0}) == 2.0
    assert evaluate_expression("sqrt(-4)") == pytest.approx(2j)
    assert evaluate_expression("log(-1)") == pytest.approx(math.pi * 1j)


def test_expression_constants_and_functions():
    assert evaluate_expression("G") == pytest.approx(float(mpmath.catalan), abs=1e-15)
    assert evaluate_expression("zeta3") == pytest.approx(float(mpmath.zeta(3)), abs=1e-15)
    assert evaluate_expression("K(0.5)") == pytest.approx(float(mpmath.ellipk(0.25)), abs=1e-15)
    assert evaluate_expression("E(0.5)") == pytest.approx(float(mpmath.ellipe(0.25)), abs=1e-15)
    assert evaluate_expression("Im(Li2(0.5j))") == pytest.approx(float(mpmath.polylog(2, 0.5j).imag), abs=1e-15)
    assert evaluate_expression("kk_c(2)") == pytest.approx(11 / 256)


@pytest.mark.parametrize("expr", [
    "__import__('os')",
    "(1).__class__",
    "open('x')",
    "x",
    "[1, 2]",
    "lambda: 1",
    "3 < 4 < 5",
    "pi.real",
])
def test_expression_rejects_unsafe_or_unknown(expr):
    with pytest.raises((DomainError, SyntaxError)):
        evaluate_expression(expr)


def test_expression_ignores_non_numeric_params():
    with pytest.raises(DomainError):
        evaluate_expression("expr", {"expr": "pi"})


def test_expression_ops():
    assert expression_ops("pi**2/8") == {"constants.pi"}
    assert expression_ops("G + K(k)*sqrt(2)") == {"constants.catalan_g:bradley", "specfun.ellip_k"}
    assert expression_ops("2*zeta3 - W(r)") == {"constants.zeta3:apery_binomial", "series.w_func"}


def test_run_plan_returns_eval():
    out = run_plan("int_K_over_1pk", {}, 1e-12)
    assert isinstance(out, Eval) and out.converged
    assert abs(out.value - math.pi**2 / 8) <= 1e-12
    assert run_plan("expr", {"expr": "pi/2"}, 0.0).value == pytest.approx(math.pi / 2)


def test_run_plan_unknown():
    with pytest.raises(DomainError):
        run_plan("no_such_plan", {}, 1e-10)


def test_every_plan_has_an_op():
    for name, p in PLANS.items():
        assert p.ops and all(isinstance(o, str) for o in p.ops), name
