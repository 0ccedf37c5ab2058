"""Evaluation plans for the identity catalog.

A plan is a named routine that evaluates one side of an identity from a
parameter dictionary.  Left-hand plans are mostly integrals of complete
elliptic integrals written in endpoint distances; right-hand sides are
usually closed forms, evaluated by the small expression language in
``evaluate_expression`` over reference constants and special functions.

Each plan lists the operations it relies on (``ops``).  The catalog's
independence audit uses them to check that the two sides of a record never
share a numerical route.
"""

from __future__ import annotations

import ast
import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import constants as _const
from . import series as _series
from .errors import DomainError
from .quadrature import IntegrandSpec, adaptive, cubature_nd, halfline, tanh_sinh
from .specfun import (
    HypergeometricParams,
    chi2,
    dilog,
    ellip_b,
    ellip_d,
    ellip_ec,
    ellip_k,
    ellip_kc,
    pfq,
)
from .transforms import abel_forward, abel_solve, beltrami_kernel, tricomi_pv

__all__ = ["Eval", "Plan", "PLANS", "run_plan", "evaluate_expression", "expression_ops"]

PI = math.pi


@dataclass
class Eval:
    """Value of one side of an identity with its error estimate."""

    value: complex
    err: float = 0.0
    converged: bool = True
    extra: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Plan:
    name: str
    func: object
    ops: tuple

    @property
    def top(self):
        return self.ops[0]


PLANS = {}


def plan(*ops):
    """Register a plan; the first op is its top-level operation."""

    def deco(fn):
        name = fn.__name__
        PLANS[name] = Plan(name, fn, ops or (f"plan:{name}",))
        return fn

    return deco


def run_plan(name, params, tol):
    try:
        p = PLANS[name]
    except KeyError:
        raise DomainError(f"unknown plan {name!r}") from None
    out = p.func(dict(params), tol)
    if not isinstance(out, Eval):
        out = Eval(out)
    scale = params.get("scale")
    if scale is not None:
        out = Eval(out.value * scale, out.err * abs(scale), out.converged, out.extra)
    return out


# ---------------------------------------------------------------------------
# helpers


def _qtol(tol):
    return min(1e-12, max(tol * 1e-3, 1e-14))


def _ts(f, tol, a=0.0, b=1.0, singular=(True, True)):
    """tanh-sinh with f(x, dl, dr)."""
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        r = tanh_sinh(IntegrandSpec(f, a, b, singular, True), tol=_qtol(tol))
    return Eval(r.value, r.err_est, r.converged)


def _half(f, tol):
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        r = halfline(f, _qtol(tol))
    return Eval(r.value, r.err_est, r.converged)


def _lin(*terms, const=0.0):
    """Linear combination of (coefficient, Eval) pairs plus a constant."""
    value = const
    err = 0.0
    ok = True
    for c, e in terms:
        value = value + c * e.value
        err += abs(c) * e.err
        ok = ok and e.converged
    return Eval(value, err, ok)


def _Kd(k, dr):
    """K(k) with 1 - k = dr supplied separately."""
    return ellip_kc(np.sqrt(dr * (1.0 + k)))


def _Kp(kappa):
    """K(sqrt(1 - kappa^2))."""
    return ellip_kc(kappa)


def _kc(k, dr):
    return np.sqrt(dr * (1.0 + k))


def _atanh_from(u, one_minus_u2):
    """atanh(u) for 0 <= u <= 1 given 1 - u^2 computed without cancellation."""
    return np.log((1.0 + u) / np.sqrt(one_minus_u2))


def _z(p):
    return complex(p.get("zr", p.get("z", 0.0)), p.get("zi", 0.0))


# ---------------------------------------------------------------------------
# expression language for closed forms


def _lfrak(beta):
    """sum (-1)^l cos((2l+1) beta/2)/(2l+1)^2 = Re Ti2(e^{i beta/2})."""
    return complex(-1j * chi2(1j * cmath.exp(0.5j * beta))).real


def _cplx(fr, fc):
    def f(x):
        if isinstance(x, complex):
            return fc(x)
        try:
            return fr(x)
        except ValueError:
            return fc(complex(x))

    return f


_FUNCS = {
    "sqrt": (_cplx(math.sqrt, cmath.sqrt), "math"),
    "log": (_cplx(math.log, cmath.log), "math"),
    "exp": (_cplx(math.exp, cmath.exp), "math"),
    "sin": (_cplx(math.sin, cmath.sin), "math"),
    "cos": (_cplx(math.cos, cmath.cos), "math"),
    "tan": (_cplx(math.tan, cmath.tan), "math"),
    "asin": (_cplx(math.asin, cmath.asin), "math"),
    "acos": (_cplx(math.acos, cmath.acos), "math"),
    "atan": (_cplx(math.atan, cmath.atan), "math"),
    "asinh": (_cplx(math.asinh, cmath.asinh), "math"),
    "atanh": (_cplx(math.atanh, cmath.atanh), "math"),
    "abs": (abs, "math"),
    "sign": (lambda x: math.copysign(1.0, x), "math"),
    "Re": (lambda x: complex(x).real, "math"),
    "Im": (lambda x: complex(x).imag, "math"),
    "K": (lambda k: float(ellip_k(float(k))), "specfun.ellip_k"),
    "E": (lambda k: float(ellip_ec(math.sqrt((1.0 - k) * (1.0 + k)))), "specfun.ellip_e"),
    "Li2": (lambda z: complex(dilog(complex(z))), "specfun.dilog"),
    "Lfrak": (_lfrak, "specfun.chi2"),
    "W": (_series.w_func, "series.w_func"),
    "M": (_series.m_func, "series.m_func"),
    "md_proj": (lambda n: _series.md_projection(int(n)), "series.md_projection"),
    "k_moment": (lambda n: _series.k_moment(int(n)), "series.k_moment"),
    "kk_c": (lambda n: float(_series.kk_moment_rational(max(int(n), 1))[int(n)]), "series.kk_moment_rational"),
}

_NAMES = {
    "pi": (math.pi, "constants.pi"),
    "G": (_const.catalan_g("bradley").value, "constants.catalan_g:bradley"),
    "G_euler": (_const.catalan_g("alternating").value, "constants.catalan_g:alternating"),
    "zeta3": (_const.zeta3("apery_binomial").value, "constants.zeta3:apery_binomial"),
    "gamma_quarter": (_const.gamma_special("quarter", "stdlib").value, "constants.gamma_special:stdlib"),
    "gamma_third": (_const.gamma_special("third", "stdlib").value, "constants.gamma_special:stdlib"),
}

_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
    ast.Pow: lambda a, b: a**b,
}
_CMP = {
    ast.Lt: lambda a, b: a < b,
    ast.LtE: lambda a, b: a <= b,
    ast.Gt: lambda a, b: a > b,
    ast.GtE: lambda a, b: a >= b,
}


def _eval_node(node, env):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body, env)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)):
        return node.value
    if isinstance(node, ast.Name):
        if node.id in env:
            return env[node.id]
        if node.id in _NAMES:
            return _NAMES[node.id][0]
        raise DomainError(f"unknown name {node.id!r} in expression")
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_node(node.left, env), _eval_node(node.right, env))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand, env)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
        args = [_eval_node(a, env) for a in node.args]
        return _FUNCS[node.func.id][0](*args)
    if isinstance(node, ast.IfExp):
        return _eval_node(node.body if _eval_node(node.test, env) else node.orelse, env)
    if isinstance(node, ast.Compare) and len(node.ops) == 1 and type(node.ops[0]) in _CMP:
        return _CMP[type(node.ops[0])](_eval_node(node.left, env), _eval_node(node.comparators[0], env))
    raise DomainError(f"unsupported expression element {ast.dump(node)[:60]}")


def evaluate_expression(expr, params=None):
    """Evaluate a closed-form expression over constants, special functions and params."""
    env = {k: v for k, v in (params or {}).items() if isinstance(v, (int, float))}
    return _eval_node(ast.parse(expr, mode="eval"), env)


def expression_ops(expr):
    """Operations referenced by an expression (for the independence audit)."""
    ops = set()
    for node in ast.walk(ast.parse(expr, mode="eval")):
        if isinstance(node, ast.Name):
            if node.id in _NAMES:
                ops.add(_NAMES[node.id][1])
            elif node.id in _FUNCS:
                ops.add(_FUNCS[node.id][1])
    ops.discard("math")
    return ops


@plan("expr")
def expr(p, tol):
    return Eval(evaluate_expression(p["expr"], p))


# ---------------------------------------------------------------------------
# S^2 x S^2: the a, b, beta and beta' integrals


@plan()
def int_K_over_1pk(p, tol):
    """int_0^1 K(k)/(1+k) dk."""
    return _ts(lambda k, dl, dr: _Kd(k, dr) / (1.0 + k), tol)


@plan()
def int_K_log_over_1mk(p, tol):
    """(1/pi) int_0^1 K(k) log(1/k)/(1-k) dk."""
    return _ts(lambda k, dl, dr: _Kd(k, dr) * (-np.log1p(-dr) / dr) / PI, tol)


@plan()
def int_Kp_log_ratio_over_xi(p, tol):
    """(1/2pi) int_0^1 K(sqrt(1-xi^2)) log((1+xi)/(1-xi)) dxi/xi."""
    return _ts(lambda x, dl, dr: _Kp(x) * (np.log1p(x) - np.log(dr)) / x / (2.0 * PI), tol)


@plan()
def int_b_dilog(p, tol):
    """int_0^1 K' [pi^2 - 3(1+k)Li2(k) - 3(1-k)Li2(-k)] / (3 pi^2 (1-k^2)) dk."""

    def f(x, dl, dr):
        br = PI**2 - 3.0 * (1.0 + x) * dilog(x).real - 3.0 * dr * dilog(-x).real
        return _Kp(x) * br / (3.0 * PI**2 * dr * (1.0 + x))

    return _ts(f, tol)


@plan()
def int_KK_over_sqrt(p, tol):
    """int_0^1 K(k)^2/sqrt(1-k^2) dk."""
    return _ts(lambda k, dl, dr: _Kd(k, dr) ** 2 / _kc(k, dr), tol)


@plan()
def int_K_Kp(p, tol):
    """int_0^1 K(k) K(sqrt(1-k^2)) dk."""
    return _ts(lambda k, dl, dr: _Kd(k, dr) * _Kp(k), tol)


@plan("plan:b_star_sum", "plan:int_KK_over_sqrt", "plan:int_K_Kp", "plan:int_Kp_log_ratio_over_xi")
def b_star_sum(p, tol):
    """(1/2pi){int K^2/k' - 2 int K K'} + (1/2pi) int K'/xi log((1+xi)/(1-xi))."""
    a = int_KK_over_sqrt(p, tol)
    b = int_K_Kp(p, tol)
    c = int_Kp_log_ratio_over_xi(p, tol)
    return _lin((0.5 / PI, a), (-1.0 / PI, b), (1.0, c))


@plan("specfun.pfq")
def pfq_sum(p, tol):
    """Partial sum of a pFq series, optionally with its modelled tail."""
    params = HypergeometricParams(tuple(p["upper"]), tuple(p["lower"]), complex(p.get("zr", 1.0), p.get("zi", 0.0)))
    res = pfq(params, max_terms=int(p.get("max_terms", 1_000_000)), tol=float(p.get("series_tol", 1e-16)))
    value = res.corrected if p.get("with_tail", True) else res.value
    value = value.real if value.imag == 0 else value
    return Eval(value, res.tail_bound, res.converged or p.get("with_tail", True),
                {"terms_used": res.terms_used})


@plan()
def int_beta_q(p, tol):
    """(pi/8) int_0^1 dq / (sqrt(1-q) sqrt(q + tan^2(beta/2)))."""
    t2 = math.tan(0.5 * p["beta"]) ** 2
    return _ts(lambda q, dl, dr: PI / 8.0 / (np.sqrt(dr) * np.sqrt(dl + t2)), tol)


@plan()
def int_L_beta_K(p, tol):
    """(cos(beta/2)/2) int_0^1 K(sqrt(k^2 cos^2(beta/2) + sin^2(beta/2))) dk."""
    c = math.cos(0.5 * p["beta"])
    return _ts(lambda k, dl, dr: 0.5 * c * ellip_kc(c * _kc(k, dr)), tol)


@plan("plan:L_beta_diff", "plan:int_L_beta_K")
def L_beta_diff(p, tol):
    """L(beta1) - L(beta2), each from the K integral."""
    a = int_L_beta_K({"beta": p["beta1"]}, tol)
    b = int_L_beta_K({"beta": p["beta2"]}, tol)
    return _lin((1.0, a), (-1.0, b))


@plan()
def int_L_beta_log(p, tol):
    """-cos(beta/2) int_0^1 (1+t^2) log t / (1 + 2 t^2 cos(beta) + t^4) dt."""
    cb = math.cos(p["beta"])
    c = math.cos(0.5 * p["beta"])
    return _ts(lambda t, dl, dr: -c * (1.0 + t * t) * np.log(t) / (1.0 + 2.0 * t * t * cb + t**4), tol)


@plan()
def int_L_beta_theta(p, tol):
    """(cos(beta/2)/2) int_0^{pi/2} theta / (sin(theta) sqrt(1 - cos^2(theta) sin^2(beta/2))) dtheta."""
    c = math.cos(0.5 * p["beta"])
    s2 = math.sin(0.5 * p["beta"]) ** 2

    def f(th, dl, dr):
        return 0.5 * c * th / (np.sin(th) * np.sqrt(1.0 - np.sin(dr) ** 2 * s2))

    return _ts(f, tol, 0.0, 0.5 * PI)


@plan("quadrature.adaptive:log_tan")
def log_tan_integral(p, tol):
    """(1/4) int_0^beta log tan((pi - a)/4) da."""
    beta = p["beta"]
    if beta == 0:
        return Eval(0.0)
    r = adaptive(lambda a: 0.25 * np.log(np.tan((PI - a) / 4.0)), _qtol(tol), 0.0, beta)
    return Eval(r.value, r.err_est, r.converged)


@plan("plan:G_elem", "plan:int_L_beta_theta", "quadrature.adaptive:log_tan")
def G_elem(p, tol):
    """L(beta) from the elementary theta integral minus (1/4) int_0^beta log tan."""
    return _lin((1.0, int_L_beta_theta(p, tol)), (-1.0, log_tan_integral(p, tol)))


def _x_atanh(kappa, dr, c, s):
    """x = kappa c / sqrt(1 - kappa^2 s^2) and atanh(x), without cancellation at kappa = 1."""
    root = np.sqrt(1.0 - kappa * kappa * s * s)
    x = kappa * c / root
    one_minus_x2 = dr * (1.0 + kappa) / (root * root)
    return x, root, _atanh_from(x, one_minus_x2)


@plan()
def int_beta_B(p, tol):
    """(1/pi) int_0^1 K' atanh(kappa c/sqrt(1-kappa^2 s^2)) / (kappa sqrt(1-kappa^2 s^2)) dkappa."""
    c, s = math.cos(0.5 * p["beta"]), math.sin(0.5 * p["beta"])

    def f(x, dl, dr):
        _, root, at = _x_atanh(x, dr, c, s)
        return _Kp(x) * at / (x * root) / PI

    return _ts(f, tol)


@plan()
def int_beta_diamond(p, tol):
    """(1/2) int_0^1 K'/(1-kappa^2) (1 - kappa/sqrt(cos^2 + kappa^2 sin^2)) dkappa."""
    c = math.cos(0.5 * p["beta"])

    def f(x, dl, dr):
        a = np.sqrt(x * x + c * c * dr * (1.0 + x))
        return 0.5 * _Kp(x) * c * c / (a * (a + x))

    return _ts(f, tol)


@plan("plan:beta_diamond_diff", "plan:int_beta_diamond")
def beta_diamond_diff(p, tol):
    a = int_beta_diamond({"beta": p["beta1"]}, tol)
    b = int_beta_diamond({"beta": p["beta2"]}, tol)
    return _lin((1.0, a), (-1.0, b))


@plan()
def int_beta_iB_deriv(p, tol):
    """-(sin(beta)/8) int_0^1 kappa K' / (cos^2 + kappa^2 sin^2)^{3/2} dkappa."""
    beta = p["beta"]
    c2, s2 = math.cos(0.5 * beta) ** 2, math.sin(0.5 * beta) ** 2
    return _ts(lambda x, dl, dr: -math.sin(beta) / 8.0 * x * _Kp(x) / (c2 + x * x * s2) ** 1.5, tol)


@plan()
def int_beta_prime_B(p, tol):
    """-(s/2pi) int_0^1 K'/(1-kappa^2 s^2) [1 - x atanh x] dkappa."""
    c, s = math.cos(0.5 * p["beta"]), math.sin(0.5 * p["beta"])

    def f(k, dl, dr):
        x, root, at = _x_atanh(k, dr, c, s)
        return -s / (2.0 * PI) * _Kp(k) / (root * root) * (1.0 - x * at)

    return _ts(f, tol)


@plan("plan:beta_prime_B_split", "specfun.ellip_k")
def beta_prime_B_split(p, tol):
    """-(s/4) K(s) + (s/2pi) int_0^1 kappa c K' atanh(x) / (1-kappa^2 s^2)^{3/2} dkappa."""
    c, s = math.cos(0.5 * p["beta"]), math.sin(0.5 * p["beta"])

    def f(k, dl, dr):
        x, root, at = _x_atanh(k, dr, c, s)
        return s / (2.0 * PI) * k * c * _Kp(k) * at / root**3

    return _lin((1.0, _ts(f, tol)), const=-0.25 * s * float(ellip_k(s)))


@plan("sphere_mc.box_integral")
def box(p, tol):
    from .sphere_mc import box_integral

    extra = {k: v for k, v in p.items() if k in ("beta",)}
    r = box_integral(p["form"], min(tol * 1e-2, 1e-6), **extra)
    return Eval(r.value, r.err_est, r.converged)


@plan("sphere_mc.box_integral:alt")
def box_alt(p, tol):
    """The same cubature on a second parameterization (used for box-to-box checks)."""
    return box(p, tol)


@plan("sphere_mc.mc_coupling")
def mc(p, tol):
    from .sphere_mc import kernel, mc_coupling

    params = {k: p[k] for k in ("beta", "k", "theta") if k in p}
    spec = kernel(p["kernel"], **params)
    est = mc_coupling(spec, int(p.get("samples", 1_000_000)), int(p.get("seed", 0)))
    return Eval(est.median_of_means, est.stderr, True, est.to_dict())


@plan()
def int_K_Pyth(p, tol):
    """int_0^{pi/2} dtheta / (sqrt(1 - k^2 cos^2) sqrt(1 - sin^2 theta sin^2 phi))."""
    k, phi = p["k"], p["phi"]
    s2 = math.sin(phi) ** 2

    def f(th, dl, dr):
        return 1.0 / (np.sqrt(1.0 - k * k * np.sin(dr) ** 2) * np.sqrt(1.0 - np.sin(th) ** 2 * s2))

    return _ts(f, tol, 0.0, 0.5 * PI)


@plan()
def int_K_times_k(p, tol):
    """int_0^1 K(k) k dk."""
    return _ts(lambda k, dl, dr: _Kd(k, dr) * k, tol)


@plan()
def int_unity_log(p, tol):
    """(1/pi) int_0^pi sin(a/2) log cot((pi - a)/4) da."""
    return _ts(lambda a, dl, dr: -np.sin(0.5 * a) * np.log(np.tan(0.25 * dr)) / PI, tol, 0.0, PI)


# ---------------------------------------------------------------------------
# integrated beta families and simplex forms


@plan()
def int_pipibeta(p, tol):
    """(pi/8) int_0^1 log((1+sqrt(1-q))/(1-sqrt(1-q))) dq/(1-q)."""

    def f(q, dl, dr):
        s = np.sqrt(dr)
        return PI / 8.0 * np.log((1.0 + s) ** 2 / dl) / dr

    return _ts(f, tol)


@plan()
def int_pipibeta_q(p, tol):
    """(1/4) int_0^1 log((1+sqrt q)/(1-sqrt q)) dq/q."""
    return _ts(lambda q, dl, dr: 0.25 * np.log((1.0 + np.sqrt(q)) ** 2 / dr) / q, tol)


@plan()
def int_pipibeta_half(p, tol):
    """(pi/4) int_0^1 [K - E](sqrt(1-q)) dq/(1-q)^{3/2}."""
    return _ts(lambda q, dl, dr: PI / 4.0 * ellip_d(np.sqrt(dr), np.sqrt(dl)) / np.sqrt(dr), tol)


@plan()
def int_L_half_theta(p, tol):
    """(pi/4) int_0^{pi/2} [E(cos)/sin - sin K(cos)] theta dtheta / cos^2."""

    def f(th, dl, dr):
        return PI / 4.0 * th * ellip_b(np.sin(dr), np.sin(th)) / np.sin(th)

    return _ts(f, tol, 0.0, 0.5 * PI)


@plan()
def int_L_beta_t(p, tol):
    """int_0^1 log((1-t)/(1+t)) log t dt/t."""
    return _ts(lambda t, dl, dr: (np.log(dr) - np.log1p(t)) * np.log(t) / t, tol)


@plan()
def int_L_beta_theta2(p, tol):
    """int_0^{pi/2} theta (pi/2 - theta) / (sin theta cos theta) dtheta."""
    return _ts(lambda th, dl, dr: th / np.sin(th) * dr / np.sin(dr), tol, 0.0, 0.5 * PI)


def _half_angle_K(theta, pi_minus_theta):
    """K(sin(theta/2)) with cos(theta/2) = sin((pi - theta)/2)."""
    return ellip_kc(np.sin(0.5 * pi_minus_theta))


def _quarter_K(theta, pi_minus_theta):
    """K(sqrt(2s/(1+s)))/sqrt(1+s) with s = sin(theta/2)."""
    s = np.sin(0.5 * theta)
    one_minus_s = 2.0 * np.sin(0.25 * pi_minus_theta) ** 2
    return ellip_kc(np.sqrt(one_minus_s / (1.0 + s))) / np.sqrt(1.0 + s)


def _simplex(weight, factor, tol):
    """int over theta1, theta2 >= 0, theta1 + theta2 <= pi of F(theta1) F(theta2) w."""

    def f(xs, dls, drs):
        x, y = xs
        X, Y = drs
        t1 = PI * x
        t2 = PI * X * y
        p1 = PI * X
        p2 = PI * (x + X * Y)
        return PI * PI * X * factor(t1, p1) * factor(t2, p2) * weight(t1, t2)

    with np.errstate(divide="ignore", invalid="ignore"):
        r = cubature_nd(f, 2, min(tol * 1e-2, 1e-8), with_distances=True)
    return Eval(r.value, r.err_est, r.converged)


@plan("quadrature.cubature_nd:simplex_sin")
def simplex_zeta3(p, tol):
    """(2/(7 pi)) iint K(sin(t1/2)) K(sin(t2/2)) sin((t1+t2)/2)."""
    r = _simplex(lambda a, b: np.sin(0.5 * (a + b)), _half_angle_K, tol)
    return _lin((2.0 / (7.0 * PI), r))


@plan("quadrature.cubature_nd:simplex_cos")
def simplex_pi2_8(p, tol):
    """(1/pi^2) iint K(sin(t1/2)) K(sin(t2/2)) cos((t1-t2)/2)."""
    r = _simplex(lambda a, b: np.cos(0.5 * (a - b)), _half_angle_K, tol)
    return _lin((1.0 / PI**2, r))


@plan("quadrature.cubature_nd:simplex_quarter_cos")
def simplex_quarter_cos(p, tol):
    r = _simplex(lambda a, b: np.cos(0.5 * (a - b)), _quarter_K, tol)
    return _lin((0.5 / PI, r))


@plan("quadrature.cubature_nd:simplex_quarter_sin")
def simplex_quarter_sin(p, tol):
    r = _simplex(lambda a, b: np.sin(0.5 * (a + b)), _quarter_K, tol)
    return _lin((0.5 / PI, r))


# ---------------------------------------------------------------------------
# more S^2 integrals


@plan()
def int_a_star_logcot(p, tol):
    """(1/4) int_0^{pi/2} log((1+cos)/(1-cos)) dtheta / cos."""

    def f(th, dl, dr):
        # log cot(theta/2) = 2 atanh(tan(phi/2)) with phi = pi/2 - theta
        near = 2.0 * np.arctanh(np.tan(0.5 * dr))
        far = -np.log(np.tan(0.5 * th))
        lc = np.where(th < 0.25 * PI, far, near)
        return 0.5 * lc / np.sin(dr)

    return _ts(f, tol, 0.0, 0.5 * PI)


@plan()
def int_a_star_logsin(p, tol):
    """-int_0^{pi/2} log(sin theta) dtheta / cos theta."""
    return _ts(lambda th, dl, dr: -np.log1p(-2.0 * np.sin(0.5 * dr) ** 2) / np.sin(dr), tol, 0.0, 0.5 * PI)


@plan()
def int_a_star_t(p, tol):
    """int_0^1 log t / (t^2 - 1) dt."""
    return _ts(lambda t, dl, dr: -np.log1p(-dr) / (dr * (1.0 + t)), tol)


@plan()
def int_K_sqr_minus(p, tol):
    """int_0^1 {K(k)^2 - pi^2/4} dk/k."""

    def f(k, dl, dr):
        K = _Kd(k, dr)
        return (K - 0.5 * PI) * (K + 0.5 * PI) / k

    return _ts(f, tol)


@plan()
def int_K_sq(p, tol):
    """int_0^1 K(k)^2 dk."""
    return _ts(lambda k, dl, dr: _Kd(k, dr) ** 2, tol)


@plan()
def int_Kp_sq(p, tol):
    """int_0^1 K(sqrt(1-kappa^2))^2 dkappa."""
    return _ts(lambda x, dl, dr: _Kp(x) ** 2, tol)


@plan()
def int_KK_k_over_kc(p, tol):
    """int_0^1 K(k)^2 k / sqrt(1-k^2) dk."""
    return _ts(lambda k, dl, dr: _Kd(k, dr) ** 2 * k / _kc(k, dr), tol)


@plan("plan:Kp_sq_minus_K_sq", "plan:int_Kp_sq", "plan:int_K_sq")
def Kp_sq_minus_K_sq(p, tol):
    return _lin((1.0, int_Kp_sq(p, tol)), (-1.0, int_K_sq(p, tol)))


@plan()
def int_KK_diff_log(p, tol):
    """(1/pi) int_0^1 [K(k)^2 - K'(k)^2] log(k) / sqrt(1-k^2) dk."""

    def f(k, dl, dr):
        kc = _kc(k, dr)
        K, Kp = ellip_kc(kc), _Kp(k)
        return (K - Kp) * (K + Kp) * np.log(k) / kc / PI

    return _ts(f, tol)


@plan()
def int_KK_log_ratio(p, tol):
    """(1/pi) int_0^1 K^2/sqrt(1-k^2) log(k/sqrt(1-k^2)) dk."""

    def f(k, dl, dr):
        kc = _kc(k, dr)
        return _Kd(k, dr) ** 2 / kc * np.log(k / kc) / PI

    return _ts(f, tol)


@plan()
def int_KKp_log_xi(p, tol):
    """(2/pi) int_0^1 K(xi) K'(xi) log((1+xi)/(1-xi)) dxi."""
    return _ts(lambda x, dl, dr: 2.0 / PI * _Kd(x, dr) * _Kp(x) * (np.log1p(x) - np.log(dr)), tol)


@plan()
def int_KKp_log_k(p, tol):
    """(2/pi) int_0^1 K K' log(1/k) dk."""
    return _ts(lambda k, dl, dr: -2.0 / PI * _Kd(k, dr) * _Kp(k) * np.log(k), tol)


@plan()
def int_KKp_arccos(p, tol):
    """(1/pi) int_0^1 K K' arccos(1 - 2k^2) / sqrt(1-k^2) dk."""
    return _ts(lambda k, dl, dr: _Kd(k, dr) * _Kp(k) * 2.0 * np.arcsin(k) / _kc(k, dr) / PI, tol)


@plan()
def int_K_minus_half_pi(p, tol):
    """int_0^1 [K(k) - pi/2] dk/k."""
    return _ts(lambda k, dl, dr: (_Kd(k, dr) - 0.5 * PI) / k, tol)


@plan()
def int_Kp_log_sqrt(p, tol):
    """(1/pi) int_0^1 K' log sqrt(1-kappa^2) dkappa."""
    return _ts(lambda x, dl, dr: _Kp(x) * 0.5 * (np.log(dr) + np.log1p(x)) / PI, tol)


@plan()
def int_KE_mix(p, tol):
    """int_0^1 (K(k)/k)(1 - (2/pi) E(k)) dk."""

    def f(k, dl, dr):
        kc = _kc(k, dr)
        E = ellip_ec(kc)
        return ellip_kc(kc) / k * (1.0 - 2.0 / PI * E)

    return _ts(f, tol)


@plan()
def int_KEK(p, tol):
    """int_0^1 (K/k)(K - E) dk, written as int K k D dk."""

    def f(k, dl, dr):
        kc = _kc(k, dr)
        return ellip_kc(kc) * k * ellip_d(k, kc)

    return _ts(f, tol)


# ---------------------------------------------------------------------------
# Tricomi transform


@plan("transforms.tricomi_pv")
def pv_BT(p, tol):
    """(1/pi) PV int_{-1}^1 K(sqrt(1-kappa^2)) / (k - kappa) dkappa."""
    with np.errstate(divide="ignore"):
        r = tricomi_pv(lambda x: ellip_kc(np.abs(x)), p["k"], _qtol(tol), breakpoints=(0.0,))
    return Eval(r.value, r.err_est, r.converged)


@plan()
def int_K_sqr_star(p, tol):
    """(2/pi) int_0^1 K(sqrt mu) K(sqrt(1-mu)) / (1 - mu t) dmu."""
    t = p["t"]
    return _ts(lambda m, dl, dr: 2.0 / PI * ellip_kc(np.sqrt(dr)) * ellip_kc(np.sqrt(dl)) / (1.0 - m * t), tol)


@plan("series.tricomi_fourier_k")
def tricomi_fourier(p, tol):
    return Eval(_series.tricomi_fourier_k(p["theta"]))


# ---------------------------------------------------------------------------
# S^3 x S^3 and dilogarithms


@plan()
def int_G_S3(p, tol):
    """(1/4) int_0^{pi/2} log((1 + sin psi)/(1 - sin psi)) dpsi."""
    return _ts(lambda s, dl, dr: -0.5 * np.log(np.tan(0.5 * dr)), tol, 0.0, 0.5 * PI)


@plan()
def int_G_S3_weighted(p, tol):
    """(1/4pi) int_0^pi (pi - psi) log((1 + sin psi)/(1 - sin psi)) dpsi."""
    left = _ts(lambda s, dl, dr: (PI - s) * -2.0 * np.log(np.tan(0.5 * dr)) / (4.0 * PI), tol, 0.0, 0.5 * PI)
    right = _ts(lambda s, dl, dr: (PI - s) * -2.0 * np.log(np.tan(0.5 * dl)) / (4.0 * PI), tol, 0.5 * PI, PI)
    return _lin((1.0, left), (1.0, right))


@plan()
def int_ImLi2(p, tol):
    """(1/(2 pi k sin T)) int_0^pi atan(k sin/(1 - k cos)) log((1 - cos(psi+T))/(1 - cos(psi-T))) dpsi."""
    k, T = p["k"], p["theta"]
    pre = 1.0 / (2.0 * PI * k * math.sin(T))

    def g(psi, dist):
        at = np.arctan2(k * np.sin(psi), 1.0 - k * np.cos(psi))
        lr = 2.0 * np.log(np.abs(np.sin(0.5 * (psi + T)))) - 2.0 * np.log(np.sin(0.5 * dist))
        return pre * at * lr

    left = _ts(lambda s, dl, dr: g(s, dr), tol, 0.0, T)
    right = _ts(lambda s, dl, dr: g(s, dl), tol, T, PI)
    return _lin((1.0, left), (1.0, right))


@plan()
def int_Li2int(p, tol):
    """int_0^1 z K(sqrt(1-t)) / sqrt((1-z^2)^2 + 4 z^2 t) dt."""
    z = _z(p)
    real = z.imag == 0

    def f(t, dl, dr):
        zz = z.real if real else z
        a = (1.0 - zz * zz) ** 2 + 4.0 * zz * zz * t
        return zz * ellip_kc(np.sqrt(dl)) / np.sqrt(a)

    return _ts(f, tol)


@plan()
def int_Li2int_star(p, tol):
    """int_0^1 xi k K'(xi) / sqrt((1+k^2)^2 - 4 k^2 xi^2) dxi."""
    k = p["k"]

    def f(x, dl, dr):
        # (1+k^2)^2 - 4 k^2 xi^2 = (1-k^2)^2 + 4 k^2 (1 - xi^2)
        q = (1.0 - k * k) ** 2 + 4.0 * k * k * dr * (1.0 + x)
        return x * k * _Kp(x) / np.sqrt(q)

    return _ts(f, tol)


@plan()
def int_Li2int_prime(p, tol):
    """int_0^1 (1 - z^4) K(sqrt(1-t)) / ((1-z^2)^2 + 4 z^2 t)^{3/2} dt."""
    z = p["z"]

    def f(t, dl, dr):
        a = (1.0 - z * z) ** 2 + 4.0 * z * z * t
        return (1.0 - z**4) * ellip_kc(np.sqrt(dl)) / a**1.5

    return _ts(f, tol)


@plan()
def int_Li2int_S(p, tol):
    """(1/2) int_0^1 K(sqrt(1-t)) log((sqrt(A) + 2t + z^2 - 1)/(2t)) dt."""
    z = p["z"]

    def f(t, dl, dr):
        root = np.sqrt((1.0 - z * z) ** 2 + 4.0 * z * z * t)
        small = 2.0 * dr / (root + 1.0 - z * z - 2.0 * t)
        large = (root + 2.0 * t + z * z - 1.0) / (2.0 * t)
        ratio = np.where(t < 0.5, small, large)
        return 0.5 * ellip_kc(np.sqrt(dl)) * np.log(ratio)

    return _ts(f, tol)


@plan()
def int_G_Klog_t(p, tol):
    """(1/4) int_0^1 K(sqrt(1-t)) log(sqrt(1-t)(1 - sqrt(1-t))/t) dt."""

    def f(t, dl, dr):
        s = np.sqrt(dr)
        return 0.25 * ellip_kc(np.sqrt(dl)) * np.log(s / (1.0 + s))

    return _ts(f, tol)


@plan()
def int_G_Klog_kappa(p, tol):
    """(1/2pi) int_0^1 K'/kappa^2 log(1-kappa) log(1+kappa) dkappa."""
    return _ts(lambda x, dl, dr: _Kp(x) / (x * x) * np.log(dr) * np.log1p(x) / (2.0 * PI), tol)


def _square(f, tol):
    """int over [0, pi/2]^2 of f(theta, phi, pi/2 - theta, pi/2 - phi)."""
    h = 0.5 * PI

    def g(xs, dls, drs):
        x, y = xs
        X, Y = drs
        return h * h * f(h * x, h * y, h * X, h * Y)

    with np.errstate(divide="ignore", invalid="ignore"):
        r = cubature_nd(g, 2, min(tol * 1e-2, 1e-8), with_distances=True)
    return Eval(r.value, r.err_est, r.converged)


def _gkk_den(th, ph, cth, cph):
    # sin^4(theta) + 4 cos^2(theta) cos^2(phi); cos written as sin of the distance to pi/2
    return (np.sin(th) ** 4 + 4.0 * np.sin(cth) ** 2 * np.sin(cph) ** 2) ** 1.5


@plan("quadrature.cubature_nd:G_KK")
def cub_G_KK(p, tol):
    def f(th, ph, cth, cph):
        num = np.sin(th) * (1.0 - np.sin(cth) ** 4) * np.sin(ph) * np.sin(cph)
        return num * ellip_kc(np.sin(cth)) * ellip_kc(np.sin(cph)) / _gkk_den(th, ph, cth, cph) / PI

    return _square(f, tol)


@plan("quadrature.cubature_nd:G_K")
def cub_G_K(p, tol):
    def f(th, ph, cth, cph):
        num = np.sin(cth) * (1.0 - np.sin(cth) ** 4) * np.sin(ph) * np.sin(cph)
        return 0.5 * num * ellip_kc(np.sin(cph)) / _gkk_den(th, ph, cth, cph)

    return _square(f, tol)


@plan()
def int_chi2_1(p, tol):
    """int (1-z^2) K/(2 sqrt(4z^2 + t(1-z^2)^2)) + int z K/sqrt((1-z^2)^2 + 4 z^2 t)."""
    z = p["z"]
    w = (1.0 - z * z) ** 2

    def f(t, dl, dr):
        K = ellip_kc(np.sqrt(dl))
        return K * ((1.0 - z * z) / (2.0 * np.sqrt(4.0 * z * z + t * w)) + z / np.sqrt(w + 4.0 * z * z * t))

    return _ts(f, tol)


@plan()
def chi2_2_integrals(p, tol):
    """int_0^1 K(sqrt(1-t))/sqrt(t - sin^2) dt + i int_0^1 K sin/sqrt(1 - t sin^2) dt (principal root)."""
    th = p["theta"]
    s = math.sin(th)
    s2 = s * s
    c2 = math.cos(th) ** 2
    full = _ts(lambda t, dl, dr: ellip_kc(np.sqrt(t)) / np.sqrt(dr + t * c2), tol)
    parts = [(1j * s, full)]
    if s2 < 1.0:
        parts.append((1.0, _ts(lambda t, dl, dr: ellip_kc(np.sqrt(t)) / np.sqrt(dl), tol, s2, 1.0)))
    if s2 > 0:
        lower = _ts(lambda t, dl, dr: ellip_kc(np.sqrt(t)) / np.sqrt(dr), tol, 0.0, s2)
        parts.append((-1j, lower))
    return _lin(*parts)


@plan()
def int_Im_ext(p, tol):
    """-int_0^{sin^2} K(sqrt(1-t))/sqrt(sin^2 - t) dt + int_0^1 K sin/sqrt(1 - t sin^2) dt."""
    s = math.sin(p["theta"])
    s2 = s * s
    c2 = math.cos(p["theta"]) ** 2
    lower = _ts(lambda t, dl, dr: ellip_kc(np.sqrt(t)) / np.sqrt(dr), tol, 0.0, s2)
    full = _ts(lambda t, dl, dr: ellip_kc(np.sqrt(t)) * s / np.sqrt(dr + t * c2), tol)
    return _lin((-1.0, lower), (1.0, full))


@plan()
def int_K_arcsin(p, tol):
    """int_0^{x^2} K(sqrt t)/sqrt(x^2 - t) dt."""
    x2 = p["x"] ** 2
    return _ts(lambda t, dl, dr: ellip_kc(np.sqrt((1.0 - x2) + dr)) / np.sqrt(dr), tol, 0.0, x2)


@plan()
def int_K_arcsin_B(p, tol):
    """(4/pi) int_0^1 K' arcsin(kappa x)/(kappa sqrt(1 - kappa^2 x^2)) dkappa."""
    x = p["x"]
    xc2 = (1.0 - x) * (1.0 + x)

    def f(k, dl, dr):
        # 1 - k^2 x^2 = (1 - x^2) + x^2 (1 - k^2)
        q = xc2 + x * x * dr * (1.0 + k)
        return 4.0 / PI * _Kp(k) * np.arcsin(k * x) / (k * np.sqrt(q))

    return _ts(f, tol)


@plan()
def int_K_arcsin_diamond(p, tol):
    """(4/pi) int K'/(1-k^2) [asinh(x/x') - k/sqrt(1 - (1-k^2)x^2) asinh(k x/x')]."""
    x = p["x"]
    xc = math.sqrt(1.0 - x * x)

    def f(k, dl, dr):
        one_k2 = dr * (1.0 + k)
        br = np.arcsinh(x / xc) - k / np.sqrt(1.0 - one_k2 * x * x) * np.arcsinh(k * x / xc)
        return 4.0 / PI * _Kp(k) * br / one_k2

    return _ts(f, tol)


def _y_atanh_arcsin(k, dr, x):
    one_k2 = dr * (1.0 + k)
    q = 1.0 - one_k2 * x * x
    y = k * x / np.sqrt(q)
    one_minus_y2 = (1.0 - x * x) / q
    return y, q, _atanh_from(y, one_minus_y2)


@plan()
def int_K_arcsin_iB(p, tol):
    """(4/pi) int [1 - y atanh y] K'/(1 - (1-k^2) x^2) dk."""
    x = p["x"]

    def f(k, dl, dr):
        y, q, at = _y_atanh_arcsin(k, dr, x)
        return 4.0 / PI * (1.0 - y * at) * _Kp(k) / q

    return _ts(f, tol)


@plan("plan:K_arcsin_iB_split", "specfun.ellip_k")
def K_arcsin_iB_split(p, tol):
    """2 K(x)/sqrt(1-x^2) - (4/pi) int k x K' atanh(y) / q^{3/2} dk."""
    x = p["x"]

    def f(k, dl, dr):
        y, q, at = _y_atanh_arcsin(k, dr, x)
        return -4.0 / PI * k * x * _Kp(k) * at / q**1.5

    return _lin((1.0, _ts(f, tol)), const=2.0 * float(ellip_k(x)) / math.sqrt(1.0 - x * x))


@plan()
def int_K_arsinh(p, tol):
    """int_0^{x^2} K(sqrt(t/(1+t))) / (sqrt(1+t) sqrt(x^2 - t)) dt."""
    x2 = p["x"] ** 2
    return _ts(lambda t, dl, dr: ellip_kc(1.0 / np.sqrt(1.0 + t)) / (np.sqrt(1.0 + t) * np.sqrt(dr)), tol, 0.0, x2)


@plan()
def int_K_arsinh_B(p, tol):
    """(4/pi) int K'/(1-k^2) [asin(x/sqrt(1+x^2)) - k/sqrt(1+(1-k^2)x^2) asin(k x/sqrt(1+x^2))]."""
    x = p["x"]
    xs = math.sqrt(1.0 + x * x)

    def f(k, dl, dr):
        one_k2 = dr * (1.0 + k)
        br = np.arcsin(x / xs) - k / np.sqrt(1.0 + one_k2 * x * x) * np.arcsin(k * x / xs)
        return 4.0 / PI * _Kp(k) * br / one_k2

    return _ts(f, tol)


@plan()
def int_K_arsinh_diamond(p, tol):
    """(4/pi) int K' log(k x + sqrt(1 + k^2 x^2)) / (k sqrt(1 + k^2 x^2)) dk."""
    x = p["x"]
    return _ts(lambda k, dl, dr: 4.0 / PI * _Kp(k) * np.arcsinh(k * x) / (k * np.sqrt(1.0 + k * k * x * x)), tol)


def _y_atanh_arsinh(k, x):
    q = 1.0 + k * k * x * x
    y = k * x / np.sqrt(q)
    return y, q, _atanh_from(y, 1.0 / q)


@plan()
def int_K_arsinh_iB(p, tol):
    """(4/pi) int (1 - y atanh y) K'/(1 + k^2 x^2) dk."""
    x = p["x"]

    def f(k, dl, dr):
        y, q, at = _y_atanh_arsinh(k, x)
        return 4.0 / PI * (1.0 - y * at) * _Kp(k) / q

    return _ts(f, tol)


@plan("plan:K_arsinh_iB_split", "specfun.ellip_k")
def K_arsinh_iB_split(p, tol):
    """2 K(x/sqrt(1+x^2))/sqrt(1+x^2) - (4/pi) int k x K' atanh(y)/q^{3/2} dk."""
    x = p["x"]
    xs = math.sqrt(1.0 + x * x)

    def f(k, dl, dr):
        y, q, at = _y_atanh_arsinh(k, x)
        return -4.0 / PI * k * x * _Kp(k) * at / q**1.5

    return _lin((1.0, _ts(f, tol)), const=2.0 * float(ellip_kc(1.0 / xs)) / xs)


@plan()
def int_K_rational_sqrt(p, tol):
    """int_0^1 K(sqrt(1-t)) sum_j c_j / sqrt(a_j + b_j t) dt."""
    terms = p["terms"]

    def f(t, dl, dr):
        w = sum(c / np.sqrt(a + b * t) for c, a, b in terms)
        return ellip_kc(np.sqrt(dl)) * w

    return _ts(f, tol)


@plan()
def int_Kp_sq_t(p, tol):
    """int_0^1 K(sqrt(1-t))^2 dt."""
    return _ts(lambda t, dl, dr: ellip_kc(np.sqrt(dl)) ** 2, tol)


@plan()
def int_KK_log_t(p, tol):
    """int_0^1 K(sqrt t) K(sqrt(1-t)) log t dt."""
    return _ts(lambda t, dl, dr: ellip_kc(np.sqrt(dr)) * ellip_kc(np.sqrt(dl)) * np.log(t), tol)


@plan()
def int_K_log_over_1p(p, tol):
    """int_0^1 K(eta)/(1+eta) log(1/eta) deta."""
    return _ts(lambda k, dl, dr: -_Kd(k, dr) * np.log(k) / (1.0 + k), tol)


@plan()
def int_Kp_log_ratio(p, tol):
    """(1/2) int_0^1 K' log((1+kappa)/(1-kappa)) dkappa."""
    return _ts(lambda x, dl, dr: 0.5 * _Kp(x) * (np.log1p(x) - np.log(dr)), tol)


@plan()
def int_theta_logtan(p, tol):
    """(1/pi) int_0^{pi/2} theta log tan(theta/2) dtheta."""
    return _ts(lambda th, dl, dr: th * np.log(np.tan(0.5 * th)) / PI, tol, 0.0, 0.5 * PI)


@plan("series.gosper_splits:G")
def gosper_G(p, tol):
    g = _series.gosper_splits(int(p.get("n_terms", 100_000)))
    return Eval(g.g_sum / (2.0 * PI), abs(g.g_tail) / (2.0 * PI), True, {"partial": g.g_partial / (2.0 * PI)})


@plan("series.gosper_splits:zeta3")
def gosper_zeta3(p, tol):
    g = _series.gosper_splits(int(p.get("n_terms", 100_000)))
    return Eval(g.zeta3_sum * 2.0 / 7.0, abs(g.zeta3_tail) * 2.0 / 7.0, True, {"partial": g.zeta3_partial * 2.0 / 7.0})


@plan("constants.catalan_g:ramanujan")
def series_catalan_ramanujan(p, tol):
    c = _const.catalan_g("ramanujan")
    return Eval(c.value, c.est_error)


@plan("constants.catalan_g:bradley")
def series_catalan_bradley(p, tol):
    c = _const.catalan_g("bradley")
    return Eval(c.value, c.est_error)


@plan()
def int_7Apery_Li2(p, tol):
    """(1/(2 pi^2)) int_0^{pi/2} K(sin) [Li2(e^{2i theta}) - Li2(e^{-2i theta})]/(i cos) dtheta."""

    def f(th, dl, dr):
        cl2 = dilog(np.exp(2j * th)).imag
        return ellip_kc(np.sin(dr)) * 2.0 * cl2 / np.sin(dr) / (2.0 * PI**2)

    return _ts(f, tol, 0.0, 0.5 * PI)


# ---------------------------------------------------------------------------
# Mehler-Dirichlet


@plan()
def int_MD_proj(p, tol):
    """int_0^pi K(sin(beta/2)) sin(beta) cos(n beta/2) dbeta."""
    n = p["n"]
    return _ts(lambda b, dl, dr: ellip_kc(np.sin(0.5 * dr)) * np.sin(b) * np.cos(0.5 * n * b), tol, 0.0, PI)


@plan()
def int_K_reprod(p, tol):
    """(1/(1+r)) int_0^1 K(k) r k sqrt(1-k^2) / (1 - 2r(1-2k^2) + r^2) dk."""
    r = p["r"]

    def f(k, dl, dr):
        return _Kd(k, dr) * r * k * _kc(k, dr) / ((1.0 - r) ** 2 + 4.0 * r * k * k) / (1.0 + r)

    return _ts(f, tol)


@plan()
def int_K_reprod_B(p, tol):
    """int 2K'[k(1+r) sqrt(r) atanh(sqrt r) - r sqrt(1-k^2) asin k] / (pi (1+r) k [4r + (1-r)^2 k^2]) dk."""
    r = p["r"]
    sr = math.sqrt(abs(r))
    # sqrt(r) atanh(sqrt(r)) continues to -sqrt|r| atan(sqrt|r|) for r < 0
    g = sr * math.atanh(sr) if r >= 0 else -sr * math.atan(sr)

    def f(k, dl, dr):
        num = k * (1.0 + r) * g - r * _kc(k, dr) * np.arcsin(k)
        return 2.0 * _Kp(k) * num / (PI * (1.0 + r) * k * (4.0 * r + (1.0 - r) ** 2 * k * k))

    return _ts(f, tol)


# ---------------------------------------------------------------------------
# Abel transforms


@plan()
def int_G_tanh(p, tol):
    """(1/pi) int_0^1 k atanh(sqrt(1-k^2)) K(k)/(1-k^2) dk."""

    def f(k, dl, dr):
        kc = _kc(k, dr)
        return k * np.log((1.0 + kc) / k) * _Kd(k, dr) / (kc * kc) / PI

    return _ts(f, tol)


@plan()
def int_pi8_arccos(p, tol):
    """(1/pi) int_0^1 arccos(k) K(k)/(1-k^2) dk."""
    return _ts(lambda k, dl, dr: 2.0 * np.arcsin(np.sqrt(0.5 * dr)) * _Kd(k, dr) / (dr * (1.0 + k)) / PI, tol)


@plan()
def half_y_cosh(p, tol):
    """(1/2) int_0^inf y / cosh y dy."""
    return _half(lambda y: 0.5 * y / np.cosh(y), tol)


@plan()
def half_asinh_over_1pr2(p, tol):
    """(1/2) int_0^inf asinh(r)/(1 + r^2) dr."""
    return _half(lambda r: 0.5 * np.arcsinh(r) / (1.0 + r * r), tol)


@plan()
def half_y_sinh(p, tol):
    """(1/2) int_0^inf y / sinh y dy."""
    return _half(lambda y: 0.5 * np.where(y < 1e-8, 1.0, y / np.sinh(y)), tol)


@plan()
def half_asinh_over_r_sqrt(p, tol):
    """(1/2) int_0^inf asinh(r)/(r sqrt(1 + r^2)) dr."""
    return _half(lambda r: 0.5 * np.arcsinh(r) / (r * np.sqrt(1.0 + r * r)), tol)


@plan()
def half_pi8_arctan(p, tol):
    """(1/pi) int_0^inf atan(1/x)/sqrt(1+x^2) K(x/sqrt(1+x^2)) dx."""

    def f(x):
        s = np.sqrt(1.0 + x * x)
        return np.arctan2(1.0, x) / s * ellip_kc(1.0 / s) / PI

    return _half(f, tol)


@plan()
def int_Abel1(p, tol):
    """int_0^1 K(k)/(1-k^2) [1 - k/sqrt(k^2 + a^2(1-k^2))] dk."""
    a = p["a"]

    def f(k, dl, dr):
        A = np.sqrt(k * k + a * a * dr * (1.0 + k))
        return _Kd(k, dr) * a * a / (A * (A + k))

    return _ts(f, tol)


def _abel_upper(a):
    return a / math.sqrt(1.0 + a * a)


@plan()
def int_Abel2(p, tol):
    """int_0^{a/sqrt(1+a^2)} k K(k) sqrt(a^2 - (1+a^2) k^2) / (1-k^2)^2 dk."""
    a = p["a"]
    ku = _abel_upper(a)

    def f(k, dl, dr):
        Q = (1.0 + a * a) * dr * (ku + k)
        return k * ellip_k(k) * np.sqrt(Q) / (1.0 - k * k) ** 2

    return _ts(f, tol, 0.0, ku)


@plan()
def int_Abel3(p, tol):
    """int_0^{a/sqrt(1+a^2)} k K(k) (a^2 - (1+a^2) k^2)^{3/2} / (1-k^2)^3 dk."""
    a = p["a"]
    ku = _abel_upper(a)

    def f(k, dl, dr):
        Q = (1.0 + a * a) * dr * (ku + k)
        return k * ellip_k(k) * Q**1.5 / (1.0 - k * k) ** 3

    return _ts(f, tol, 0.0, ku)


@plan()
def int_Abel4(p, tol):
    """int k K/(1-k^2)^2 [a sqrt(Q) - k^2/sqrt(1-k^2) log((sqrt(Q) + a sqrt(1-k^2))/k)] dk."""
    a = p["a"]
    ku = _abel_upper(a)

    def f(k, dl, dr):
        Q = (1.0 + a * a) * dr * (ku + k)
        kc = np.sqrt(1.0 - k * k)
        br = a * np.sqrt(Q) - k * k / kc * np.log((np.sqrt(Q) + a * kc) / k)
        return k * ellip_k(k) / (1.0 - k * k) ** 2 * br

    return _ts(f, tol, 0.0, ku)


@plan()
def int_Abel_Li2(p, tol):
    """(1/pi) int k atanh(sqrt((1-k^2)/(1-k^2 sin^2))) K / ((1-k^2) sqrt(k^2 + (1-k^2) sec^2)) dk."""
    th = p["theta"]
    s, c = math.sin(th), math.cos(th)

    def f(k, dl, dr):
        one_k2 = dr * (1.0 + k)
        q = 1.0 - k * k * s * s
        u = np.sqrt(one_k2 / q)
        at = _atanh_from(u, k * k * c * c / q)
        return k * at * _Kd(k, dr) / (one_k2 * np.sqrt(k * k + one_k2 / (c * c))) / PI

    return _ts(f, tol)


@plan()
def int_Abel_Li2_int(p, tol):
    """(1/pi) int [atanh(k')/k - log(cos)/(k k') - atanh(sqrt(k'^2/(1-k^2 s^2)))/(k sqrt(1-k^2 s^2))] K dk."""
    th = p["theta"]
    s, c = math.sin(th), math.cos(th)

    def f(k, dl, dr):
        one_k2 = dr * (1.0 + k)
        kc = np.sqrt(one_k2)
        q = 1.0 - k * k * s * s
        root = np.sqrt(q)
        # both atanh terms as log differences, so nothing underflows as k -> 0
        logk = np.log(k)
        a1 = np.log1p(kc) - logk
        a3 = np.log(root + kc) - logk - math.log(c)
        br = a1 / k - math.log(c) / (k * kc) - a3 / (k * root)
        return br * _Kd(k, dr) / PI

    return _ts(f, tol)


@plan("transforms.abel_solve:arcsin")
def abel_arcsin(p, tol):
    """int_0^u asin(sqrt t)/sqrt(u - t) dt."""
    r = abel_solve(lambda t: np.arcsin(np.sqrt(t)), p["u"], _qtol(tol))
    return Eval(PI * r.value, PI * r.err_est, r.converged)


@plan()
def int_K_sqrt_upto(p, tol):
    """int_0^u K(sqrt t) dt."""
    u = p["u"]
    return _ts(lambda t, dl, dr: ellip_kc(np.sqrt((1.0 - u) + dr)), tol, 0.0, u)


@plan("transforms.abel_solve:arsinh")
def abel_arsinh(p, tol):
    """int_0^xi log(sqrt t + sqrt(1+t))/sqrt(xi - t) dt."""
    r = abel_solve(lambda t: np.arcsinh(np.sqrt(t)), p["xi"], _qtol(tol))
    return Eval(PI * r.value, PI * r.err_est, r.converged)


@plan()
def int_K_arsinh_upto(p, tol):
    """int_0^xi K(sqrt(t/(1+t)))/sqrt(1+t) dt."""
    return _ts(lambda t, dl, dr: ellip_kc(1.0 / np.sqrt(1.0 + t)) / np.sqrt(1.0 + t), tol, 0.0, p["xi"])


@plan("transforms.abel_solve:E_arcsin")
def abel_E_arcsin(p, tol):
    """int_0^u [E(sqrt t) - (1-t) K(sqrt t)]/sqrt(u - t) dt."""
    r = abel_solve(lambda t: t * ellip_b(np.sqrt(t)), p["u"], _qtol(tol))
    return Eval(PI * r.value, PI * r.err_est, r.converged)


@plan("transforms.abel_solve:E_arsinh")
def abel_E_arsinh(p, tol):
    """int_0^xi sqrt(1+t) [K - E](sqrt(t/(1+t))) / sqrt(xi - t) dt."""

    def f(t):
        m = np.sqrt(t / (1.0 + t))
        return t * ellip_d(m, 1.0 / np.sqrt(1.0 + t)) / np.sqrt(1.0 + t)

    r = abel_solve(f, p["xi"], _qtol(tol))
    return Eval(PI * r.value, PI * r.err_est, r.converged)


def _abel_test_f(r):
    return 1.0 / (1.0 + r * r) ** 2


@plan("transforms.abel_forward")
def abel_tr_lhs(p, tol):
    """int_0^inf x (A f)(x) K(x/sqrt(1+x^2)) / sqrt(1+x^2) dx with f = (1+r^2)^-2."""

    def af(x):
        out = np.empty_like(x)
        for i, xi in enumerate(x.flat):
            out.flat[i] = abel_forward(_abel_test_f, float(xi), 1e-13).value if np.isfinite(xi) else 0.0
        return out

    def f(x):
        s = np.sqrt(1.0 + x * x)
        return x * af(x) * ellip_kc(1.0 / s) / s

    return _half(f, max(tol, 1e-9))


@plan()
def abel_tr_rhs(p, tol):
    """pi int_0^inf f(r) r asinh(r) dr with f = (1+r^2)^-2."""
    return _half(lambda r: PI * _abel_test_f(r) * r * np.arcsinh(r), tol)


# ---------------------------------------------------------------------------
# Beltrami transforms and descendants


@plan("transforms.beltrami_kernel")
def int_beltrami(p, tol):
    """int_0^1 kernel_v(k, kappa) K(sqrt(1-kappa^2)) dkappa."""
    v, k = p["variant"], p["k"]
    return _ts(lambda x, dl, dr: beltrami_kernel(v, k, x) * _Kp(x), tol)


@plan()
def int_a_B(p, tol):
    """int K'/(pi (kappa^2 - 1)) (log((1-kappa^2)/4) + kappa log((1+kappa)/(1-kappa))) dkappa."""

    def f(x, dl, dr):
        num = dr * np.log(0.5 * dr) + (2.0 - dr) * np.log1p(-0.5 * dr)
        return _Kp(x) * num / (-PI * dr * (1.0 + x))

    return _ts(f, tol)


@plan()
def int_a_iB(p, tol):
    """(1/pi) int_0^{pi/2} K(sin) (pi sin - 2 theta)/cos dtheta."""

    def f(th, dl, dr):
        num = 2.0 * dr - 2.0 * PI * np.sin(0.5 * dr) ** 2
        return ellip_kc(np.sin(dr)) * num / np.sin(dr) / PI

    return _ts(f, tol, 0.0, 0.5 * PI)


@plan()
def int_a_LB(p, tol):
    """int K' arcsin(kappa) / (pi kappa sqrt(1-kappa^2)) dkappa."""
    return _ts(lambda x, dl, dr: _Kp(x) * np.arcsin(x) / (PI * x * np.sqrt(dr * (1.0 + x))), tol)


@plan()
def int_a_diamond_L(p, tol):
    """-int K' log(kappa) / (pi (1-kappa^2)) dkappa."""

    def f(x, dl, dr):
        lg = np.where(x > 0.5, np.log1p(-dr), np.log(x))
        return -_Kp(x) * lg / (PI * dr * (1.0 + x))

    return _ts(f, tol)


@plan()
def int_Kp(p, tol):
    """int_0^1 K(sqrt(1-kappa^2)) dkappa."""
    return _ts(lambda x, dl, dr: _Kp(x), tol)


@plan()
def int_K(p, tol):
    """int_0^1 K(xi) dxi."""
    return _ts(lambda k, dl, dr: _Kd(k, dr), tol)


@plan()
def int_Kp_over_1p(p, tol):
    """int_0^1 K'/(1 + kappa) dkappa."""
    return _ts(lambda x, dl, dr: _Kp(x) / (1.0 + x), tol)


@plan()
def int_G_odd_b(p, tol):
    """(1/2) int K(xi) xi / ((1 + sqrt(1-xi^2)) sqrt(1-xi^2)) dxi."""

    def f(x, dl, dr):
        kc = _kc(x, dr)
        return 0.5 * _Kd(x, dr) * x / ((1.0 + kc) * kc)

    return _ts(f, tol)


@plan()
def int_G_odd_c(p, tol):
    """(1/pi) int K' [kappa arccos(kappa)/sqrt(1-kappa^2) - log(2 kappa)] dkappa."""

    def f(x, dl, dr):
        kc = np.sqrt(dr * (1.0 + x))
        ac = 2.0 * np.arcsin(np.sqrt(0.5 * dr))
        return _Kp(x) * (x * ac / kc - np.log(2.0 * x)) / PI

    return _ts(f, tol)


@plan()
def int_GB_G_a(p, tol):
    """(1/pi) int (kappa arcsin(kappa)/sqrt(1-kappa^2) + log sqrt(4 - 4 kappa^2)) K' dkappa."""

    def f(x, dl, dr):
        one = dr * (1.0 + x)
        return (x * np.arcsin(x) / np.sqrt(one) + 0.5 * np.log(4.0 * one)) * _Kp(x) / PI

    return _ts(f, tol)


@plan()
def int_GB_G_b(p, tol):
    """(1/pi) int log(sqrt(1-kappa^2)/kappa) K' dkappa."""
    return _ts(lambda x, dl, dr: (0.5 * np.log(dr * (1.0 + x)) - np.log(x)) * _Kp(x) / PI, tol)


@plan()
def int_zeta3_iB(p, tol):
    """(1/2) int K' [pi - 2 kappa K'] / (1-kappa^2) dkappa."""
    return _ts(lambda x, dl, dr: 0.5 * _Kp(x) * (PI - 2.0 * x * _Kp(x)) / (dr * (1.0 + x)), tol)


@plan()
def int_pi_iB(p, tol):
    """int K'/(1-kappa^2) (1 - kappa arccos(kappa)/sqrt(1-kappa^2)) dkappa."""

    def f(x, dl, dr):
        one = dr * (1.0 + x)
        ac = 2.0 * np.arcsin(np.sqrt(0.5 * dr))
        return _Kp(x) * (1.0 - x * ac / np.sqrt(one)) / one

    return _ts(f, tol)


@plan()
def int_Li2_limit(p, tol):
    """int_0^1 K' kappa^-2 log(1/(1-kappa^2)) dkappa."""
    def f(x, dl, dr):
        lg = np.where(x < 0.5, np.log1p(-x * x), np.log(dr) + np.log1p(x))
        return -_Kp(x) * lg / (x * x)

    return _ts(f, tol)


# ---------------------------------------------------------------------------
# duality, sum rule and the W/M functions


def _K1(r):
    """K(1/sqrt(1+r^2))."""
    return float(ellip_kc(r / math.sqrt(1.0 + r * r)))


@plan()
def int_W(p, tol):
    """int_0^1 r K(xi)/(r^2 + xi^2) dxi."""
    r = p["r"]
    return _ts(lambda x, dl, dr: r * _Kd(x, dr) / (r * r + x * x), tol)


@plan()
def int_W_kappa(p, tol):
    """int_0^1 K'/(sqrt(1+r^2) + kappa r) dkappa."""
    r = p["r"]
    R = math.sqrt(1.0 + r * r)
    return _ts(lambda x, dl, dr: _Kp(x) / (R + x * r), tol)


def _arccos_over(x, dr):
    return 2.0 * np.arcsin(np.sqrt(0.5 * dr)) / np.sqrt(dr * (1.0 + x))


@plan("plan:GB_2", "specfun.ellip_k")
def GB_2(p, tol):
    r = p["r"]
    R = math.sqrt(1.0 + r * r)

    def f(x, dl, dr):
        return 2.0 / PI * (x * r * _arccos_over(x, dr) - R * np.log(x)) * _Kp(x) / (R * R - x * x)

    return _lin((1.0, _ts(f, tol)), const=-math.log1p(r / R) / R * _K1(r))


@plan("plan:GB_3", "specfun.ellip_k")
def GB_3(p, tol):
    r = p["r"]
    R = math.sqrt(1.0 + r * r)

    def f(x, dl, dr):
        one = dr * (1.0 + x)
        return 2.0 / PI * (x * R * np.arcsin(x) / np.sqrt(one) + 0.5 * r * np.log(one)) * _Kp(x) / (r * r + x * x)

    return _lin((1.0, _ts(f, tol)), const=math.log1p(r / R) / R * _K1(r))


@plan("plan:GB_4", "specfun.ellip_k")
def GB_4(p, tol):
    r = p["r"]
    R = math.sqrt(1.0 + r * r)

    def f(x, dl, dr):
        return 2.0 / PI * r * (0.5 * np.log(dr * (1.0 + x)) - np.log(x)) * _Kp(x) / (r * r + x * x)

    return _lin((1.0, _ts(f, tol)), const=math.log(r / R) / R * _K1(r))


@plan()
def int_M(p, tol):
    """int_0^1 r xi K(xi)/(1 + r^2 xi^2) dxi."""
    r = p["r"]
    return _ts(lambda x, dl, dr: r * x * _Kd(x, dr) / (1.0 + r * r * x * x), tol)


@plan("plan:GB_5", "specfun.ellip_k")
def GB_5(p, tol):
    r = p["r"]
    R = math.sqrt(1.0 + r * r)

    def f(x, dl, dr):
        return -2.0 / PI * r * 0.5 * np.log(dr * (1.0 + x)) * _Kp(x) / (r * r + x * x)

    return _lin((1.0, _ts(f, tol)), const=math.log(R) / R * _K1(r))


@plan("plan:GB_6", "specfun.ellip_k")
def GB_6(p, tol):
    r = p["r"]
    R = math.sqrt(1.0 + r * r)

    def f(x, dl, dr):
        return -2.0 / PI * x * r * _arccos_over(x, dr) * _Kp(x) / (R * R - x * x)

    return _lin((1.0, _ts(f, tol)), const=math.asinh(r) / R * _K1(r))


@plan("plan:f_eq_W_lhs", "plan:int_W")
def f_eq_W_lhs(p, tol):
    """int r K/(r^2 + xi^2) + int sqrt(1+r^2) K/(1 + r^2 - xi^2)."""
    r = p["r"]
    R = math.sqrt(1.0 + r * r)
    b = _ts(lambda x, dl, dr: R * _Kd(x, dr) / (R * R - x * x), tol)
    return _lin((1.0, int_W(p, tol)), (1.0, b))


@plan()
def f_eq_W_rhs(p, tol):
    """int_0^1 4 R^3 K(eta)/(R^4 - eta^2) deta with R = r + sqrt(1+r^2)."""
    r = p["r"]
    R = r + math.sqrt(1.0 + r * r)
    return _ts(lambda x, dl, dr: 4.0 * R**3 * _Kd(x, dr) / (R**4 - x * x), tol)


@plan("plan:sum_rule_lhs", "plan:int_W", "plan:int_M")
def sum_rule_lhs(p, tol):
    return _lin((1.0, int_W(p, tol)), (1.0, int_M(p, tol)))


@plan()
def int_LM1(p, tol):
    """(2/pi) int r log(r/kappa) K'/(r^2 + kappa^2) dkappa."""
    r = p["r"]
    return _ts(lambda x, dl, dr: 2.0 / PI * r * np.log(r / x) * _Kp(x) / (r * r + x * x), tol)


@plan()
def int_LM2(p, tol):
    """(2/pi) int sqrt(1+r^2) log(sqrt(1+r^2)/kappa) K'/(1 + r^2 - kappa^2) dkappa."""
    R = math.sqrt(1.0 + p["r"] ** 2)
    return _ts(lambda x, dl, dr: 2.0 / PI * R * np.log(R / x) * _Kp(x) / (R * R - x * x), tol)


@plan()
def int_log_combo(p, tol):
    """int (r/(r^2+kappa^2) - R/(R^2-kappa^2)) K' log(kappa)/log(r/R) dkappa."""
    r = p["r"]
    R = math.sqrt(1.0 + r * r)
    lr = math.log(r / R)
    return _ts(lambda x, dl, dr: (r / (r * r + x * x) - R / (R * R - x * x)) * _Kp(x) * np.log(x) / lr, tol)


@plan()
def int_3artanh(p, tol):
    """Two atanh-weighted K' integrals on the left of the three-atanh identity."""
    x = p["x"]
    X = 1.0 + x * x

    def f(k, dl, dr):
        one = dr * (1.0 + k)
        q1 = 1.0 + x * x * k * k
        u1 = np.sqrt(q1 / X)
        t1 = _atanh_from(u1, x * x * one / X) / np.sqrt(q1)
        q2 = x * x + k * k
        u2 = np.sqrt(q2 / X)
        t2 = _atanh_from(u2, one / X) / np.sqrt(q2)
        return (t1 + t2) * _Kp(k)

    return _ts(f, tol)


@plan()
def int_2artanh(p, tol):
    """int atanh(1/sqrt(1 + x^2 kappa^2)) K'/sqrt(1 + x^2 kappa^2) dkappa."""
    x = p["x"]

    def f(k, dl, dr):
        q = 1.0 + x * x * k * k
        u = 1.0 / np.sqrt(q)
        return _atanh_from(u, x * x * k * k / q) / np.sqrt(q) * _Kp(k)

    return _ts(f, tol)


@plan()
def int_artanh_common(p, tol):
    """int atanh(x/sqrt(x^2 + kappa^2)) K'/sqrt(x^2 + kappa^2) dkappa."""
    x = p["x"]

    def f(k, dl, dr):
        q = x * x + k * k
        u = x / np.sqrt(q)
        return _atanh_from(u, k * k / q) / np.sqrt(q) * _Kp(k)

    return _ts(f, tol)


@plan()
def int_KKp_various_a(p, tol):
    """int K/sqrt(4 lam + (1-lam)^2 k^2) + int K/sqrt((1-lam)^2 + 4 lam k^2)."""
    lam = p["lam"]
    w = (1.0 - lam) ** 2
    return _ts(lambda k, dl, dr: _Kd(k, dr) * (1.0 / np.sqrt(4.0 * lam + w * k * k) + 1.0 / np.sqrt(w + 4.0 * lam * k * k)), tol)


@plan()
def int_KKp_various_b(p, tol):
    """(2/pi) int atanh(2 sqrt(lam)/sqrt(4 lam + (1-lam)^2 k^2)) K'/sqrt(4 lam + (1-lam)^2 k^2)."""
    lam = p["lam"]
    w = (1.0 - lam) ** 2

    def f(k, dl, dr):
        q = 4.0 * lam + w * k * k
        u = 2.0 * math.sqrt(lam) / np.sqrt(q)
        return 2.0 / PI * _atanh_from(u, w * k * k / q) * _Kp(k) / np.sqrt(q)

    return _ts(f, tol)


@plan()
def int_KKp_various_c(p, tol):
    """(2/pi) int atanh((1-lam)/sqrt((1-lam)^2 + 4 lam k^2)) K'/sqrt((1-lam)^2 + 4 lam k^2)."""
    lam = p["lam"]
    w = (1.0 - lam) ** 2

    def f(k, dl, dr):
        q = w + 4.0 * lam * k * k
        u = (1.0 - lam) / np.sqrt(q)
        return 2.0 / PI * _atanh_from(u, 4.0 * lam * k * k / q) * _Kp(k) / np.sqrt(q)

    return _ts(f, tol)


@plan()
def int_KKp_various_d(p, tol):
    """int_{(1-lam)/(1+lam)}^1 K(k) / (sqrt(1-k^2) sqrt((1+lam)^2 k^2 - (1-lam)^2)) dk."""
    lam = p["lam"]
    lo = (1.0 - lam) / (1.0 + lam)

    def f(k, dl, dr):
        return _Kd(k, dr) / (_kc(k, dr) * (1.0 + lam) * np.sqrt(dl * (k + lo)))

    return _ts(f, tol, lo, 1.0)


def _F(x, tol=1e-13):
    return _series.hyp3f2_111_integral(x, tol)


@plan("series.hyp3f2_111_integral:sum_rule")
def sum_rule_3F2(p, tol):
    """i s/c^2 F(-tan^2) + c/s^2 F(-cot^2) + (i/s + 1/c) F(1/(1 - e^{4i theta}))."""
    th = p["theta"]
    s, c = math.sin(th), math.cos(th)
    v = (1j * s / c**2 * _F(-math.tan(th) ** 2) + c / s**2 * _F(-1.0 / math.tan(th) ** 2)
         + (1j / s + 1.0 / c) * _F(1.0 / (1.0 - cmath.exp(4j * th))))
    return Eval(complex(v))


@plan("series.hyp3f2_111_integral:pi4", "series.hyp3f2_111")
def sum_rule_pi4(p, tol):
    """3F2(1,1,1;3/2,3/2;-1) (integral route) + 3F2(...;1/2) (series)."""
    return Eval(_F(-1.0) + _series.hyp3f2_111(0.5))


_S3 = math.sqrt(3.0)
_W12 = complex(0.5, 0.5 * _S3)


def _pi12_parts():
    a = _F(-((2.0 + _S3) ** 2))
    b = _F(-((2.0 - _S3) ** 2))
    return a, b


@plan("series.hyp3f2_111_integral:pi12")
def sum_rule_pi12(p, tol):
    a, b = _pi12_parts()
    e = cmath.exp(-1j * PI / 3.0)
    return Eval(e * (5 + 3 * _S3) * a - 1j * e * (5 - 3 * _S3) * b + (1 + 1j) * (_S3 - 1j) * _F(_W12))


@plan("series.hyp3f2_111_integral:5pi12")
def sum_rule_5pi12(p, tol):
    a, b = _pi12_parts()
    e = cmath.exp(-1j * PI / 6.0)
    return Eval(1j * e * (5 + 3 * _S3) * a - e * (5 - 3 * _S3) * b + (1 + 1j) * (1 - 1j * _S3) * _F(_W12.conjugate()))


@plan("series.hyp3f2_111_integral:average")
def sum_rule_pi12_avg(p, tol):
    a, b = _pi12_parts()
    v = (5 + 3 * _S3) / 2 * a - _S3 * (5 - 3 * _S3) / 2 * b + ((1 + 1j) * (_S3 - 1j) * _F(_W12)).real
    return Eval(v)


@plan("series.hyp3f2_111_integral:difference_real")
def sum_rule_pi12_diff_lhs(p, tol):
    a, b = _pi12_parts()
    return Eval(_S3 * (5 + 3 * _S3) / 2 * a + (5 - 3 * _S3) / 2 * b)


@plan("series.hyp3f2_111_integral:difference_complex")
def sum_rule_pi12_diff_rhs(p, tol):
    return Eval(((1 + 1j) * (_S3 - 1j) * _F(_W12)).imag)


@plan("series.hyperbolic_sum")
def hyperbolic(p, tol):
    y = p["y"]
    v, n = _series.hyperbolic_sum(y)
    if p.get("normalize"):
        v = v / (1.0 + 1j * y)
    return Eval(v, 0.0, True, {"terms_used": n})


@plan("series.hyperbolic_sum_cplx")
def hyperbolic_cplx(p, tol):
    v, n = _series.hyperbolic_sum_cplx(_z(p))
    return Eval(v, 0.0, True, {"terms_used": n})


@plan()
def int_k_moment(p, tol):
    """int_0^1 kappa^n K(sqrt(1-kappa^2)) dkappa."""
    n = p["n"]
    return _ts(lambda x, dl, dr: x**n * _Kp(x), tol)


@plan()
def int_kk_moment(p, tol):
    """pi^-3 int_0^1 K(sqrt t) K(sqrt(1-t)) t^n dt."""
    n = p["n"]
    return _ts(lambda t, dl, dr: ellip_kc(np.sqrt(dr)) * ellip_kc(np.sqrt(dl)) * t**n / PI**3, tol)


@plan("series.w_func")
def series_W(p, tol):
    return Eval(_series.w_func(p["r"]))


@plan("series.m_func")
def series_M(p, tol):
    return Eval(_series.m_func(p["r"]))


# ---------------------------------------------------------------------------
# further transformed forms and term-by-term series


def _atanh_excess(u):
    """(atanh(sqrt u)/sqrt u - 1)/u for real u < 1, with the atan form for u < 0."""
    u = np.asarray(u, dtype=float)
    small = np.abs(u) < 0.1
    us = np.where(small, u, 0.0)
    series = sum(us**j / (2 * j + 3) for j in range(17))
    pos = np.sqrt(np.where(u > 0, u, 1.0))
    neg = np.sqrt(np.where(u < 0, -u, 1.0))
    ratio = np.where(u > 0, np.arctanh(np.minimum(pos, 1.0)) / pos, np.arctan(neg) / neg)
    return np.where(small, series, (ratio - 1.0) / np.where(small, 1.0, u))


def _atan_excess(e):
    """(atan(e) - e)/e^2."""
    e = np.asarray(e, dtype=float)
    small = np.abs(e) < 0.1
    es = np.where(small, e, 0.0)
    series = sum((-1) ** j * es ** (2 * j - 1) / (2 * j + 1) for j in range(1, 10))
    safe = np.where(small, 1.0, e)
    return np.where(small, series, (np.arctan(safe) - safe) / safe**2)


def _signed_square(p):
    """z^2 for real z, or -t^2 when the parameter sits on the imaginary axis (z = i t)."""
    z = p["z"]
    return -z * z if p.get("imag") else z * z


@plan()
def int_Li2int_diamond(p, tol):
    """-(2/pi) int K'/(1-kappa^2) [L + 2 z g/(1+z^2)] dkappa (real coefficient of Li2(z) - Li2(-z))."""
    z = p["z"]
    z2 = _signed_square(p)
    a, b = 1.0 + z2, 1.0 - z2
    lead = -2.0 * math.atan(z) if p.get("imag") else math.log((1.0 - z) / (1.0 + z))

    def f(x, dl, dr):
        u = 1.0 - (b / (a * x)) ** 2
        g = 1.0 + u * _atanh_excess(u)
        return -2.0 / PI * _Kp(x) * (lead + 2.0 * z * g / a) / (dr * (1.0 + x))

    return _ts(f, tol)


@plan()
def int_Li2int_prime_iB(p, tol):
    """-int [1 - c g] K'/B dkappa with c = (1+z^2) kappa, B = c^2 - (1-z^2)^2."""
    z2 = _signed_square(p)
    a, b = 1.0 + z2, 1.0 - z2

    def f(x, dl, dr):
        c = a * x
        B = c * c - b * b
        u = 1.0 - (b / c) ** 2
        h = _atanh_excess(u)
        # (g - 1)/B = h/c^2; away from u = 0 the B form avoids overflow of u
        far = np.where(np.abs(u) < 0.1, 0.0, u * h / np.where(B == 0.0, 1.0, B))
        return _Kp(x) * np.where(np.abs(u) < 0.1, h / (c * c), far)

    return _ts(f, tol)


def _li2int_b_parts(t, x, dr):
    """A, log(1 - kappa^2) and the second log of the bracket for z = i t."""
    A = (1.0 - t * t) ** 2 * x * x + 4.0 * t * t
    sA = np.sqrt(A)
    l0 = np.log(dr) + np.log1p(x)
    lam = np.log1p(2.0 * t * t * x / (sA + (1.0 - t * t) * x))
    return A, sA, l0, lam


@plan()
def int_Li2int_B(p, tol):
    """int 4 K' beta/(pi kappa sqrt(A)) dkappa on z = i t, beta = -log(1-kappa^2)/2 + lambda."""
    t = p["t"]

    def f(x, dl, dr):
        A, sA, l0, lam = _li2int_b_parts(t, x, dr)
        return 4.0 * _Kp(x) * (lam - 0.5 * l0) / (PI * x * sA)

    return _ts(f, tol)


@plan()
def int_Li2int_prime_B(p, tol):
    """int [4 kappa (1-t^4) K' beta/(pi A^{3/2}) + 8 t^2 K'/(pi A)] dkappa on z = i t."""
    t = p["t"]

    def f(x, dl, dr):
        A, sA, l0, lam = _li2int_b_parts(t, x, dr)
        K = _Kp(x)
        return 4.0 * x * (1.0 - t**4) * K * (lam - 0.5 * l0) / (PI * A * sA) + 8.0 * t * t * K / (PI * A)

    return _ts(f, tol)


@plan()
def int_Li2int_S_B(p, tol):
    """int K'/(4 pi kappa^2) {log^2(1-kappa^2) - 4 beta^2} dkappa on z = i t."""
    t = p["t"]

    def f(x, dl, dr):
        A, sA, l0, lam = _li2int_b_parts(t, x, dr)
        # log^2(1-k^2) - 4 beta^2 = 4 lambda (log(1-k^2) - lambda)
        return _Kp(x) * lam * (l0 - lam) / (PI * x * x)

    return _ts(f, tol)


@plan()
def int_Abel1_B(p, tol):
    """(2/pi) int K'/(1-kappa^2) [log(1+a) - kappa atanh kappa - (kappa/S) log(k'(a kappa + S)/(kappa + S))]."""
    a = p["a"]

    def f(x, dl, dr):
        S = np.sqrt((1.0 - a) * (1.0 + a) + a * a * x * x)
        l0 = np.log(dr)
        l1 = np.log1p(x)
        d = dr * (1.0 + x)
        br = (
            math.log1p(a)
            - 0.5 * x * l1 * (1.0 + 1.0 / S)
            - x / S * np.log((a * x + S) / (x + S))
            - 0.5 * x * l0 * a * a * d / (S * (1.0 + S))
        )
        return 2.0 / PI * _Kp(x) * br / d

    return _ts(f, tol)


@plan()
def int_Abel2_B(p, tol):
    """(2/pi) int K'/(1-kappa^2) [(1+a^2+kappa^2-a^2 kappa^2) atan(a)/(2(1-kappa^2)) - a/2 - ...] dkappa.

    The bracket vanishes to second order at kappa = 1; it is rewritten so
    that every cancelling pair is formed analytically.
    """
    a = p["a"]
    at = math.atan(a)

    def f(x, dl, dr):
        d = dr * (1.0 + x)
        T = np.sqrt(1.0 + d * a * a)
        kT = x * T
        w = 1.0 - a * a + a * a * d  # (1 - kappa T)/d times (1 + kappa T)
        p_over_d = ((1.0 - a * a) * w / (1.0 + kT) + 2.0 * a * a) / (2.0 * (1.0 + kT))
        m = a / (1.0 + kT)
        eps = m * d
        tail = kT * (m * m * _atan_excess(eps) + a * w / (2.0 * (1.0 + kT) ** 2)) - 0.5 * a * w / (1.0 + kT)
        return 2.0 / PI * _Kp(x) * (at * p_over_d + tail)

    return _ts(f, tol)


@plan()
def int_beta_star_B(p, tol):
    """z(1+z^2)/pi int K'/D [-1 + x atanh x] dkappa, D = (1+z^2)^2 - 4 z^2 kappa^2, x = kappa(1-z^2)/sqrt D."""
    z = p["z"]
    z2 = _signed_square(p)
    a, b = 1.0 + z2, 1.0 - z2
    pref = z * a / PI

    def f(x, dl, dr):
        D = b * b + 4.0 * z2 * dr * (1.0 + x)
        u = x * b / np.sqrt(D)
        # 1 - u^2 = (1 - kappa^2)(1 + z^2)^2 / D
        at = np.log1p(u) - 0.5 * (np.log(dr) + np.log1p(x) + 2.0 * math.log(abs(a)) - np.log(D))
        return pref * _Kp(x) * (-1.0 + u * at) / D

    return _ts(f, tol)


@plan()
def int_K_sqr_minus_kappa(p, tol):
    """int_0^1 {K'^2 - pi^2/4} kappa dkappa/(1 - kappa^2)."""

    def f(x, dl, dr):
        K = _Kp(x)
        return (K - 0.5 * PI) * (K + 0.5 * PI) * x / (dr * (1.0 + x))

    return _ts(f, tol)


@plan()
def int_K_sqr_minus_moment(p, tol):
    """int_0^1 {K'^2 - pi^2/4} kappa^(2n+1) dkappa."""
    n = int(p["n"])

    def f(x, dl, dr):
        K = _Kp(x)
        return (K - 0.5 * PI) * (K + 0.5 * PI) * x ** (2 * n + 1)

    return _ts(f, tol)


def _odd_double_factorial(m):
    return math.prod(range(m, 0, -2))


@plan("specfun.pfq")
def series_K_sqr_minus_term(p, tol):
    """2^(4n+1) (n!)^4 (n+1)/[(2n+1)!!]^4 7F6(1/2 x4, n+1, n+1, (n+3)/2; 1, (n+1)/2, (n+3/2) x4; 1) - pi^2/(8(n+1))."""
    n = int(p["n"])
    coef = 2.0 ** (4 * n + 1) * math.factorial(n) ** 4 * (n + 1) / _odd_double_factorial(2 * n + 1) ** 4
    res = pfq(HypergeometricParams((0.5, 0.5, 0.5, 0.5, n + 1, n + 1, 0.5 * (n + 3)),
                                   (1.0, 0.5 * (n + 1), n + 1.5, n + 1.5, n + 1.5, n + 1.5), 1.0))
    value = coef * res.corrected.real - PI**2 / (8.0 * (n + 1))
    return Eval(value, coef * res.tail_bound, True, {"terms_used": res.terms_used})


@plan()
def int_KK_x_log(p, tol):
    """(2/pi) int_0^1 K(x) K'(x) x log(1/(1-x^2)) dx."""

    def f(x, dl, dr):
        return 2.0 / PI * _Kd(x, dr) * _Kp(x) * x * -(np.log(dr) + np.log1p(x))

    return _ts(f, tol)


@plan()
def int_KK_odd_moment(p, tol):
    """(1/pi) int_0^1 K(x) K'(x) x^(2n+1)/n dx."""
    n = int(p["n"])
    return _ts(lambda x, dl, dr: _Kd(x, dr) * _Kp(x) * x ** (2 * n + 1) / (n * PI), tol)


@plan("specfun.pfq")
def series_KKlogt_term(p, tol):
    """2^(2n-1) (n!)^2/([(2n+1)!!]^2 n) 4F3(1/2, 1/2, n+1, n+1; 1, n+3/2, n+3/2; 1)."""
    n = int(p["n"])
    coef = 2.0 ** (2 * n - 1) * math.factorial(n) ** 2 / (_odd_double_factorial(2 * n + 1) ** 2 * n)
    res = pfq(HypergeometricParams((0.5, 0.5, n + 1, n + 1), (1.0, n + 1.5, n + 1.5), 1.0))
    return Eval(coef * res.corrected.real, coef * res.tail_bound, True, {"terms_used": res.terms_used})


@plan()
def int_L_quarter_complex(p, tol):
    """e^{i pi/4} int_0^1 [(t+i) atan((1+i) sqrt t/(t-i)) - (t-i) atanh((1+i) sqrt t/(t+i))] log t dt/(2 t^{3/2})."""

    def f(t, dl, dr):
        s = np.sqrt(t)
        w = (t + 1j) * np.arctan((1 + 1j) * s / (t - 1j)) - (t - 1j) * np.arctanh((1 + 1j) * s / (t + 1j))
        return w * np.log(t) / (2.0 * t * s)

    r = _ts(f, tol)
    return Eval(cmath.exp(0.25j * PI) * r.value, r.err, r.converged)


# ---------------------------------------------------------------------------
# rotation and coupling formulas on S^2, and the arcsin/artanh identities in r


@plan()
def int_K_tanh_add_sum(p, tol):
    """(pi/2)[int_0^1 K(xi)/sqrt(x^2 + xi^2) dxi + int_0^1 K(xi)/sqrt(1 + x^2 xi^2) dxi]."""
    x = p["x"]
    a = _ts(lambda k, dl, dr: _Kd(k, dr) / np.sqrt(x * x + k * k), tol)
    b = _ts(lambda k, dl, dr: _Kd(k, dr) / np.sqrt(1.0 + x * x * k * k), tol)
    return _lin((0.5 * PI, a), (0.5 * PI, b))


@plan()
def int_K_tanh_add_artanh(p, tol):
    """int_0^1 artanh(x/sqrt(x^2 + kappa^2)) K'(kappa)/sqrt(x^2 + kappa^2) dkappa."""
    x = p["x"]

    def f(k, dl, dr):
        s = np.sqrt(x * x + k * k)
        return _atanh_from(x / s, (k / s) ** 2) * _Kp(k) / s

    return _ts(f, tol)


def _arcsin_kernel(k, dr):
    return k * np.arcsin(k) / _kc(k, dr) * _Kp(k)


@plan()
def int_arcsin_id(p, tol):
    """int_0^1 kappa r arcsin(kappa)/sqrt(1-kappa^2) K'/(1 + r^2 - kappa^2) dkappa."""
    r = p["r"]
    return _ts(lambda k, dl, dr: r * _arcsin_kernel(k, dr) / (r * r + dr * (1.0 + k)), tol)


@plan()
def int_arcsin_id_log(p, tol):
    """int_0^1 R log(1/kappa) K'/(R^2 - kappa^2) dkappa - (pi/2) log(1 + r/R) K(1/R)/R, R = sqrt(1+r^2)."""
    r = p["r"]
    R = math.sqrt(1.0 + r * r)
    q = _ts(lambda k, dl, dr: -R * np.log(k) * _Kp(k) / (r * r + dr * (1.0 + k)), tol)
    return _lin((1.0, q), const=-0.5 * PI * math.log1p(r / R) / R * float(ellip_kc(r / R)))


@plan()
def int_arcsin_id_prime(p, tol):
    """int_0^1 kappa R arcsin(kappa)/sqrt(1-kappa^2) K'/(r^2 + kappa^2) dkappa."""
    r = p["r"]
    R = math.sqrt(1.0 + r * r)
    return _ts(lambda k, dl, dr: R * _arcsin_kernel(k, dr) / (r * r + k * k), tol)


@plan()
def int_arcsin_id_prime_log(p, tol):
    """int_0^1 r log(1/kappa) K'/(r^2 + kappa^2) dkappa - (pi/2) log(1 + R/r) K(1/R)/R."""
    r = p["r"]
    R = math.sqrt(1.0 + r * r)
    q = _ts(lambda k, dl, dr: -r * np.log(k) * _Kp(k) / (r * r + k * k), tol)
    return _lin((1.0, q), const=-0.5 * PI * math.log1p(R / r) / R * float(ellip_kc(r / R)))


@plan()
def int_theta_over_sin(p, tol):
    """(1/2) int_0^(pi/2) theta/sin(theta) dtheta."""
    h = 0.5 * PI
    return _ts(lambda x, dl, dr: 0.5 * h * _theta_over_sin(h * x), tol, singular=(False, False))


def _theta_over_sin(t):
    t = np.asarray(t, dtype=float)
    return np.where(t > 1e-8, t / np.sin(np.where(t > 1e-8, t, 1.0)), 1.0 + t * t / 6.0)


def _octant(f, tol):
    """(2/pi) int_0^1 dZ int_0^(pi/2) dphi f(Z, 1 - Z, phi, pi/2 - phi): the mean over S^2 of an
    integrand even in each coordinate."""
    h = 0.5 * PI

    def g(xs, dls, drs):
        z, x = xs
        dz, dx = drs
        return h * f(z, dz, h * x, h * dx) * (2.0 / PI)

    with np.errstate(divide="ignore", invalid="ignore"):
        r = cubature_nd(g, 2, min(tol * 1e-2, 1e-8), with_distances=True)
    return Eval(r.value, r.err_est, r.converged)


@plan("quadrature.cubature_nd:K_sqr_sphere")
def cub_K_sqr_sphere(p, tol):
    """Mean over S^2 of 2(2-t) K(sqrt(X^2+Y^2))/((2-t)^2 - t^2 X^2)."""
    t = p["t"]

    def f(z, dz, phi, cphi):
        x2 = dz * (1.0 + z) * np.cos(phi) ** 2
        return 2.0 * (2.0 - t) * _Kp(z) / ((2.0 - t) ** 2 - t * t * x2)

    return _octant(f, tol)


@plan("quadrature.cubature_nd:K_power_sphere")
def cub_K_power_sphere(p, tol):
    """Mean over S^2 of K(sqrt(X^2+Y^2)) |X|^n."""
    n = p["n"]

    def f(z, dz, phi, cphi):
        return _Kp(z) * (np.sqrt(dz * (1.0 + z)) * np.cos(phi)) ** n

    return _octant(f, tol)


@plan()
def int_KK_half_moduli(p, tol):
    """(2/pi) int_0^1 k^n K(sqrt((1+k)/2)) K(sqrt((1-k)/2)) dk."""
    n = p["n"]
    return _ts(lambda k, dl, dr: 2.0 / PI * k**n * ellip_kc(np.sqrt(0.5 * dr)) * ellip_kc(np.sqrt(0.5 * (1.0 + k))), tol)


def _coupling_cos_half(th1, th2, x, dr):
    """cos(Theta/2) along the azimuth phi = pi x, cos Theta = c1 c2 + s1 s2 cos(phi)."""
    return np.sqrt(np.cos(0.5 * (th1 + th2)) ** 2 + math.sin(th1) * math.sin(th2) * np.sin(0.5 * PI * dr) ** 2)


@plan()
def int_hobson_half(p, tol):
    """(1/4) int_0^(2 pi) K(sin(Theta/2)) dphi."""
    th1, th2 = p["th1"], p["th2"]
    return _ts(lambda x, dl, dr: 0.5 * PI * ellip_kc(_coupling_cos_half(th1, th2, x, dr)), tol, singular=(False, False))


@plan()
def int_hobson_quarter(p, tol):
    """(1/4) int_0^(2 pi) K(sqrt(2s/(1+s)))/sqrt(1+s) dphi, s = sin(Theta/2)."""
    th1, th2 = p["th1"], p["th2"]

    def f(x, dl, dr):
        c = _coupling_cos_half(th1, th2, x, dr)
        s = np.sqrt(1.0 - c * c)
        return 0.5 * PI * ellip_kc(c / (1.0 + s)) / np.sqrt(1.0 + s)

    return _ts(f, tol, singular=(False, False))
