"""Regenerate src/elliptic_verify/data/identities.json.

Run from the repository root: python tools/build_manifest.py
"""

import json
import math
from pathlib import Path

PI = math.pi
S5 = math.sqrt(5.0)
OUT = Path(__file__).resolve().parents[1] / "src" / "elliptic_verify" / "data" / "identities.json"

records = []


def P(name, **params):
    return {"plan": name, "params": params}


def X(expr, **params):
    return {"plan": "expr", "params": {"expr": expr, **params}}


def rec(id, section, lhs, rhs, tol, tags=(), cost="fast", grid=None, compare="real", tol_mode="relative"):
    r = {"id": id, "section": section, "lhs": lhs, "rhs": rhs, "tol": tol, "tol_mode": tol_mode,
         "cost_class": cost, "compare": compare, "tags": sorted(set(tags))}
    if grid is not None:
        r["grid"] = grid
    records.append(r)


def mc_rec(id, section, kernel, rhs, tags, seed, **params):
    rec(id, section, P("mc", kernel=kernel, samples=1_000_000, seed=seed, **params), rhs, 4.0,
        tags=("monte_carlo", "4sigma", *tags), cost="mc", tol_mode="sigma")


def g(name, values):
    return [{name: v} for v in values]


BETAS = [0.0, PI / 5, PI / 3, 2 * PI / 3, 0.9 * PI]
BETAS_POS = [PI / 5, PI / 3, PI / 2, 2 * PI / 3, 0.9 * PI]
R_GRID = [0.25, 0.5, 1.0, 2.0, 4.0]
K_GRID = [0.1, 0.3, 0.5, 0.7, 0.9]

# --- lattice sums on S^2 x S^2 -------------------------------------------------
s = "sphere_s2"
rec("eq_a", s, P("int_K_over_1pk"), X("pi**2/8"), 1e-10, ("pi2_8", "sphere"))
rec("eq_a_box", s, P("box", form="eq_a_uvw"), X("pi**2/8"), 1e-5, ("pi2_8", "box"), cost="slow")
mc_rec("eq_a_mc", s, "eq_a", X("pi**2/8"), ("pi2_8",), 11)
rec("eq_b", s, P("int_K_log_over_1mk"), X("G"), 1e-9, ("G", "sphere"))
rec("eq_b_xi", s, P("int_Kp_log_ratio_over_xi"), X("G"), 1e-10, ("G",))
rec("eq_b_box", s, P("box", form="eq_b_uvw"), X("G"), 1e-5, ("G", "box"), cost="slow")
mc_rec("eq_b_mc", s, "eq_b", X("G"), ("G",), 12)
rec("eq_b_dilog", s, P("int_b_dilog"), X("G"), 1e-10, ("G", "dilog"))
rec("eq_b_star", s, P("b_star_sum"), X("G"), 1e-9, ("G",))
rec("eq_KKKK", s, P("int_KK_over_sqrt"), P("int_K_Kp", scale=2.0), 1e-8, ("quad_vs_quad",))
rec("eq_KKKK_4F3", s, P("int_KK_over_sqrt"),
    P("pfq_sum", upper=[0.5, 0.5, 0.5, 0.5], lower=[1.0, 1.0, 1.0], scale=PI**3 / 4), 1e-6, ("hypergeometric",))
rec("eq_b_series", s, P("pfq_sum", upper=[0.5, 0.5, 0.5], lower=[1.0, 1.5], with_tail=False, max_terms=100_000),
    X("4*G/pi"), 1e-5, ("G", "hypergeometric", "partial_sum"))
rec("eq_beta", s, P("int_beta_q"), X("pi*(pi - beta)/8"), 1e-9, ("function-valued", "beta"), grid=g("beta", BETAS))
rec("eq_beta_prime", s, P("int_L_beta_K"), X("Lfrak(beta)"), 1e-10, ("function-valued", "beta"), grid=g("beta", BETAS))
rec("eq_beta_prime_0", s, P("int_L_beta_K", beta=0.0), X("G"), 1e-10, ("G",))
rec("eq_beta_prime_2pi3", s, P("int_L_beta_K", beta=2 * PI / 3), X("2*G/3"), 1e-10, ("G",))
rec("eq_beta_prime_2pi5_4pi5", s, P("L_beta_diff", beta1=2 * PI / 5, beta2=4 * PI / 5), X("2*G/5"), 1e-10, ("G",))
rec("eq_beta_prime_log", s, P("int_L_beta_log"), X("Lfrak(beta)"), 1e-10, ("function-valued", "beta"),
    grid=g("beta", BETAS))
rec("eq_G_elem", s, P("G_elem"), X("G"), 1e-10, ("G", "function-valued"), grid=g("beta", BETAS_POS))
rec("eq_G_elem_theta", s, P("int_theta_over_sin"), X("G"), 1e-10, ("G",))
rec("eq_beta_B", s, P("int_beta_B"), X("Lfrak(beta)"), 1e-10, ("function-valued", "beta"), grid=g("beta", BETAS))
rec("eq_beta_box", s, P("box", form="eq_beta_qrs", beta=2 * PI / 3), X("pi**2/24"), 1e-5, ("box", "beta"), cost="slow")
rec("eq_beta_prime_box", s, P("box", form="eq_beta_prime_qrs", beta=0.0), X("G"), 1e-5, ("G", "box"), cost="slow")
mc_rec("eq_beta_mc", s, "eq_beta", X("pi*(pi - beta)/8", beta=2 * PI / 3), ("beta",), 13, beta=2 * PI / 3)
mc_rec("eq_beta_prime_mc", s, "eq_beta_prime", X("Lfrak(beta)", beta=PI / 3), ("beta",), 14, beta=PI / 3)
rec("eq_K_Pyth", s, P("int_K_Pyth"), X("K(sqrt(k**2*cos(phi)**2 + sin(phi)**2))"), 1e-10, ("function-valued",),
    grid=[{"k": k, "phi": f} for k, f in [(0.2, 0.3), (0.5, 1.0), (0.8, 0.2), (0.9, 1.2), (0.99, 0.7)]])
rec("eq_unity_int", s, P("int_K_times_k"), X("1"), 1e-10, ("unity",))
rec("eq_unity_log", s, P("int_unity_log"), X("1"), 1e-10, ("unity",))
rec("eq_qrs_uvw", s, P("box", form="eq_b_uvw"), P("box_alt", form="eq_beta_prime_qrs", beta=0.0), 1e-6,
    ("G", "box", "quad_vs_quad"), cost="slow")

# --- integrated beta families ----------------------------------------------------
s = "sphere_s2_integrated"
rec("eq_pipibeta_int", s, P("int_pipibeta"), X("pi**3/16"), 1e-10, ("pi3",))
rec("eq_pipibeta_int_q", s, P("int_pipibeta_q"), X("pi**2/8"), 1e-10, ("pi2_8",))
rec("eq_pipibeta_int_cos_half_beta", s, P("int_pipibeta_half"), X("pi/2"), 1e-10, ("pi",))
rec("eq_L_beta_int_cos_half_beta", s, P("int_L_half_theta"), X("pi**2/8"), 1e-10, ("pi2_8",))
rec("eq_L_beta_int_cos_half_beta_box", s, P("box", form="L_half_qrs"), X("pi**2/8"), 1e-5, ("pi2_8", "box"),
    cost="slow")
rec("eq_L_beta_int", s, P("int_L_beta_t"), X("7*zeta3/4"), 1e-10, ("zeta3",))
rec("eq_L_beta_int_theta", s, P("int_L_beta_theta2"), X("7*zeta3/4"), 1e-10, ("zeta3",))
rec("eq_L_beta_int_box", s, P("box", form="L_int_qrs"), X("7*zeta3/4"), 1e-5, ("zeta3", "box"), cost="slow")
rec("eq_L_beta_int_simplex", s, P("simplex_zeta3"), X("zeta3"), 1e-6, ("zeta3", "two_dim"), cost="slow")
rec("eq_pipibeta_int_simplex", s, P("simplex_pi2_8"), X("pi**2/8"), 1e-6, ("pi2_8", "two_dim"), cost="slow")
rec("eq_quarter_beta_cos", s, P("simplex_quarter_cos"), X("(2 - sqrt(2))*pi"), 1e-6, ("two_dim",), cost="slow")
rec("eq_quarter_beta_cos_3F2", s, P("pfq_sum", upper=[0.5, 0.5, 1.0], lower=[1.25, 1.75], scale=math.sqrt(2) * PI / 3),
    X("(2 - sqrt(2))*pi"), 1e-10, ("hypergeometric",))
rec("eq_quarter_beta_sin", s, P("simplex_quarter_sin"), X("2*sqrt(2)*log(2)"), 1e-6, ("two_dim",), cost="slow")

rec("eq_quarter_beta_sin_complex", s, P("int_L_quarter_complex"), X("2*sqrt(2)*log(2)"), 1e-8, ("log_endpoint",),
    compare="real_part")

# --- further S^2 integrals ---------------------------------------------------------
s = "more_s2"
rec("eq_a_star", s, P("int_a_star_logcot"), X("pi**2/8"), 1e-10, ("pi2_8",))
rec("eq_a_star_logsin", s, P("int_a_star_logsin"), X("pi**2/8"), 1e-10, ("pi2_8",))
rec("eq_a_star_t", s, P("int_a_star_t"), X("pi**2/8"), 1e-10, ("pi2_8",))
rec("eq_K_sqr_minus_pi4", s, P("int_K_sqr_minus"), X("pi**2/2*log(2) - 7*zeta3/4"), 1e-8, ("zeta3",))
rec("eq_K_sqr_log", s, P("int_KK_log_ratio", scale=PI), P("int_KK_k_over_kc", scale=PI / 2), 1e-10,
    ("quad_vs_quad",))
rec("eq_K_sqr_Kp_sqr", s, P("int_K_sq", scale=2.0), P("int_Kp_sq"), 1e-10, ("quad_vs_quad",))
rec("eq_K_sqr_log_7F6", s, P("int_K_sq"),
    P("pfq_sum", upper=[0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 1.25], lower=[0.25, 1.0, 1.0, 1.0, 1.0, 1.0],
      scale=PI**4 / 32), 1e-6, ("hypergeometric",))
rec("eq_K_sqr_log_chain_a", s, P("Kp_sq_minus_K_sq"), P("int_KKp_log_xi"), 1e-10, ("quad_vs_quad",))
rec("eq_K_sqr_log_chain_b", s, P("int_KKp_log_xi"), P("int_KKp_log_k"), 1e-10, ("quad_vs_quad",))
rec("eq_K_sqr_log_chain_c", s, P("int_KK_diff_log"), P("int_KKp_log_k"), 1e-10, ("quad_vs_quad",))
rec("eq_K_sqr_log_chain_d", s, P("int_KKp_arccos"), P("int_KKp_log_k"), 1e-10, ("quad_vs_quad",))
rec("eq_low_deg", s, P("int_K_minus_half_pi"), X("-2*G + pi*log(2)"), 1e-9, ("G",))
rec("eq_G_log2_log", s, P("int_Kp_log_sqrt"), X("G - pi/2*log(2)"), 1e-10, ("G",))
rec("eq_KE_pi_G_zeta3", s, P("int_KE_mix"), X("pi/4 - 2*G + 7*zeta3/(2*pi)"), 1e-8, ("G", "zeta3"))
rec("eq_KEK_pi8", s, P("int_KEK"), X("pi**2/8"), 1e-10, ("pi2_8",))

rec("eq_K_sqr_minus_pi4_kappa", s, P("int_K_sqr_minus_kappa"), X("pi**2/2*log(2) - 7*zeta3/4"), 1e-8, ("zeta3",))
rec("eq_K_sqr_minus_pi4_series", s, P("int_K_sqr_minus_moment"), P("series_K_sqr_minus_term"), 1e-10,
    ("function-valued", "hypergeometric"), grid=g("n", [0, 1, 2, 3, 4]))

rec("eq_K_sqr_sphere", s, P("cub_K_sqr_sphere"), X("K(sqrt(t))**2"), 1e-6, ("function-valued", "two_dim"),
    grid=g("t", [0.0, 0.2, 0.5, 0.8, 0.95]))
rec("eq_S2_int_KK", s, P("cub_K_power_sphere"), P("int_KK_half_moduli"), 1e-6,
    ("function-valued", "two_dim", "quad_vs_quad"), grid=g("n", [0, 1, 2, 3, 4]))
HOBSON = [{"th1": a, "th2": b} for a, b in [(0.3, 0.5), (0.4, 2.0), (1.0, 2.0), (1.5, 1.9), (2.0, 2.5)]]
rec("eq_hobson_half", s, P("int_hobson_half"),
    X("K(sin(th1/2))*K(sin(th2/2)) if th1 + th2 <= pi else K(cos(th1/2))*K(cos(th2/2))"), 1e-10,
    ("function-valued",), grid=HOBSON)
QK = "K(sqrt(2*{0}/(1 + {0})))/sqrt(1 + {0})"
rec("eq_hobson_quarter", s, P("int_hobson_quarter"),
    X(f"{QK.format('sin(th1/2)')}*{QK.format('sin(th2/2)')} if th1 + th2 <= pi else "
      f"{QK.format('cos(th1/2)')}*{QK.format('cos(th2/2)')}"), 1e-10, ("function-valued",), grid=HOBSON)

# --- Tricomi transforms --------------------------------------------------------------
s = "tricomi"
rec("eq_BT", s, P("pv_BT"), X("sign(k)*K(abs(k))"), 1e-8, ("function-valued", "principal_value"),
    grid=g("k", [0.2, 0.5, 0.8, -0.5, 0.95]))
rec("eq_K_sqr_star", s, P("int_K_sqr_star"), X("K(sqrt(t))**2"), 1e-10, ("function-valued",),
    grid=g("t", [0.05, 0.2, 0.5, 0.8, 0.95]))
rec("eq_Tricomi_Fourier", s, P("tricomi_fourier"), X("K(abs(sin(theta)))"), 1e-10, ("function-valued", "fourier"),
    grid=g("theta", [0.3, 0.8, 1.2, 2.0, 2.9]))

# --- lattice sums on S^3 x S^3 -------------------------------------------------------
s = "sphere_s3"
rec("eq_G_S3", s, P("int_G_S3"), X("G"), 1e-10, ("G", "sphere"))
rec("eq_G_S3_weighted", s, P("int_G_S3_weighted"), X("G"), 1e-10, ("G",))
mc_rec("eq_G_S3_mc", s, "eq_G_S3", X("G"), ("G",), 15)
rec("eq_ImLi2", s, P("int_ImLi2"), X("Im(Li2(k*exp(1j*theta)))/(k*sin(theta))"), 1e-8, ("function-valued", "dilog"),
    grid=[{"k": k, "theta": t} for k, t in [(0.3, 0.5), (0.5, 1.0), (0.7, 2.0), (0.9, 2.8), (1.0, 1.5)]])
mc_rec("eq_ImLi2_mc", s, "eq_ImLi2", X("2*Im(Li2(0.5j))"), ("dilog",), 16, k=0.5, theta=PI / 2)
rec("eq_Li2int", s, P("int_Li2int"), X("Li2(zr + 1j*zi) - Li2(-(zr + 1j*zi))"), 1e-10, ("function-valued", "dilog"),
    grid=[{"zr": 0.1, "zi": 0.0}, {"zr": 0.5, "zi": 0.0}, {"zr": 0.9, "zi": 0.0}, {"zr": 1.0, "zi": 0.0},
          {"zr": -0.6, "zi": 0.0}, {"zr": 0.3, "zi": 0.4}, {"zr": 0.5, "zi": -0.5}],
    compare="parts")
rec("eq_Li2int_star", s, P("int_Li2int_star"), X("Im(Li2(1j*k))"), 1e-10, ("function-valued", "dilog"),
    grid=g("k", [0.1, 0.4, 0.7, 0.9, 1.0]))
rec("eq_Li2int_prime", s, P("int_Li2int_prime"), X("log((1 + z)/(1 - z))/z"), 1e-10, ("function-valued",),
    grid=g("z", [0.1, 0.3, 0.5, 0.7, 0.9]))
rec("eq_Li2int_S", s, P("int_Li2int_S"),
    X("Re(z*Li2(z) - z*Li2(-z)) - (1 + z)*log(1 + z) - (1 - z)*log(1 - z)"), 1e-10, ("function-valued", "dilog"),
    grid=g("z", [0.1, 0.3, 0.5, 0.7, 0.9]))
rec("eq_G_Klog", s, P("int_G_Klog_t"), X("pi/4 - log(2)/2 - G"), 1e-10, ("G",))
rec("eq_G_Klog_kappa", s, P("int_G_Klog_kappa"), X("pi/4 - log(2)/2 - G"), 1e-10, ("G",))
rec("eq_G_KK", s, P("cub_G_KK"), X("G"), 1e-6, ("G", "two_dim"), cost="slow")
rec("eq_G_K", s, P("cub_G_K"), X("G"), 1e-6, ("G", "two_dim"), cost="slow")

Z_GRID = [0.1, 0.3, 0.5, 0.7, 0.9]
rec("eq_Li2int_diamond", s, P("int_Li2int_diamond"), X("Li2(z) - Li2(-z)"), 1e-10, ("function-valued", "dilog"),
    grid=g("z", Z_GRID))
rec("eq_Li2int_diamond_imag", s, P("int_Li2int_diamond", imag=1), X("Im(Li2(1j*z) - Li2(-1j*z))"), 1e-10,
    ("function-valued", "dilog"), grid=g("z", Z_GRID))
rec("eq_Li2int_prime_iB", s, P("int_Li2int_prime_iB"), X("pi/(4*z*(1 - z**2))*log((1 + z)/(1 - z))"), 1e-10,
    ("function-valued", "beltrami"), grid=g("z", Z_GRID))
rec("eq_Li2int_prime_iB_imag", s, P("int_Li2int_prime_iB", imag=1), X("pi*atan(z)/(2*z*(1 + z**2))"), 1e-10,
    ("function-valued", "beltrami"), grid=g("z", Z_GRID))
rec("eq_Li2int_B", s, P("int_Li2int_B"), X("Im(Li2(1j*t) - Li2(-1j*t))/t"), 1e-10,
    ("function-valued", "dilog", "beltrami"), grid=g("t", [0.1, 0.3, 0.6, 0.9, 1.0]))
rec("eq_Li2int_prime_B", s, P("int_Li2int_prime_B"), X("2*atan(t)/t"), 1e-10, ("function-valued", "beltrami"),
    grid=g("t", [0.1, 0.3, 0.6, 0.9, 1.0]))
rec("eq_Li2int_S_B", s, P("int_Li2int_S_B"),
    X("-t*Im(Li2(1j*t) - Li2(-1j*t)) - log(1 + t**2) + 2*t*atan(t)"), 1e-10,
    ("function-valued", "dilog", "beltrami"), grid=g("t", [0.1, 0.3, 0.6, 0.9, 1.0]))

# --- dilogarithm and Legendre chi ----------------------------------------------------
s = "dilog"
rec("eq_chi2_1", s, P("int_chi2_1"), X("pi**2/4 + log(z)*log((1 + z)/(1 - z))"), 1e-10, ("function-valued", "dilog"),
    grid=g("z", [0.1, 0.3, 0.5, 0.7, 0.9]))
rec("eq_chi2_2", s, P("chi2_2_integrals"), X("pi**2/2 + 2j*theta*log(1j*tan(theta/2))"), 1e-10,
    ("function-valued", "dilog"), grid=g("theta", [0.2, 0.5, 0.9, 1.2, PI / 2]), compare="parts")
rec("eq_Im_ext", s, P("int_Im_ext"), X("2*theta*log(tan(theta/2))"), 1e-10, ("function-valued",),
    grid=g("theta", [0.2, 0.5, 0.9, 1.2, PI / 2]))
X_GRID = [0.1, 0.3, 0.5, 0.7, 0.9]
rec("eq_K_arcsin", s, P("int_K_arcsin"), X("pi*asin(x)"), 1e-10, ("function-valued",), grid=g("x", X_GRID + [1.0]))
rec("eq_K_arcsin_B", s, P("int_K_arcsin_B"), X("pi*asin(x)"), 1e-10, ("function-valued", "beltrami"),
    grid=g("x", X_GRID + [1.0]))
rec("eq_K_arcsin_diamond", s, P("int_K_arcsin_diamond"), X("pi*asin(x)"), 1e-10, ("function-valued",),
    grid=g("x", X_GRID))
rec("eq_K_arcsin_iB", s, P("int_K_arcsin_iB"), X("pi/sqrt(1 - x**2)"), 1e-10, ("function-valued",),
    grid=g("x", X_GRID))
rec("eq_K_arcsin_iB_split", s, P("K_arcsin_iB_split"), X("pi/sqrt(1 - x**2)"), 1e-10, ("function-valued",),
    grid=g("x", X_GRID))
XS_GRID = [0.2, 0.5, 1.0, 2.0, 5.0]
rec("eq_K_arsinh", s, P("int_K_arsinh"), X("pi*asinh(x)"), 1e-10, ("function-valued",), grid=g("x", XS_GRID))
rec("eq_K_arsinh_B", s, P("int_K_arsinh_B"), X("pi*asinh(x)"), 1e-10, ("function-valued", "beltrami"),
    grid=g("x", XS_GRID))
rec("eq_K_arsinh_diamond", s, P("int_K_arsinh_diamond"), X("pi*asinh(x)"), 1e-10, ("function-valued",),
    grid=g("x", XS_GRID))
rec("eq_K_arsinh_iB", s, P("int_K_arsinh_iB"), X("pi/sqrt(1 + x**2)"), 1e-10, ("function-valued",),
    grid=g("x", XS_GRID))
rec("eq_K_arsinh_iB_split", s, P("K_arsinh_iB_split"), X("pi/sqrt(1 + x**2)"), 1e-10, ("function-valued",),
    grid=g("x", XS_GRID))
rec("eq_K_tan_pi8", s, P("int_K_rational_sqrt", terms=[[0.5, 1.0, 1.0]]),
    X("pi**2/8 - log(sqrt(2) - 1)**2/2"), 1e-10, ("pi2_8",))
rec("eq_K_tan_pi8_series", s, P("pfq_sum", upper=[0.5, 1.0, 1.0], lower=[1.5, 1.5], zr=-1.0, scale=1.0),
    X("pi**2/8 - log(sqrt(2) - 1)**2/2"), 1e-10, ("hypergeometric",))
rec("eq_K_gr", s, P("int_K_rational_sqrt", terms=[[0.75, 1.0, 4.0]]),
    X("pi**2/8 - 9/8*log((sqrt(5) - 1)/2)**2"), 1e-10, ("pi2_8",))
rec("eq_K_5_2", s, P("int_K_rational_sqrt", terms=[[0.75, 4.0, 1.0]]),
    X("pi**2/8 - log(sqrt(5) - 2)**2/4"), 1e-10, ("pi2_8",))
rec("eq_K_5_2_series", s, P("pfq_sum", upper=[0.5, 1.0, 1.0], lower=[1.5, 1.5], zr=-0.25, scale=0.75),
    X("pi**2/8 - log(sqrt(5) - 2)**2/4"), 1e-10, ("hypergeometric",))
rec("eq_Kt2_7Zeta3", s, P("int_Kp_sq_t"), X("7*zeta3/2"), 1e-9, ("zeta3",))
rec("eq_KKlogt_zeta3", s, P("int_KK_log_t"), X("(zeta3 - 2*pi**2/7*log(2))*7*pi/4"), 1e-7, ("zeta3",))
rec("eq_G_K_mix", s, P("int_K_log_over_1p"), X("7*zeta3/2 - pi*G"), 1e-10, ("G", "zeta3"))
rec("eq_G_K_mix_prime", s, P("int_Kp_log_ratio"), X("(7*zeta3 - 2*pi*G)/2"), 1e-10, ("G", "zeta3"))
rec("eq_G_K_mix_4F3", s, P("pfq_sum", upper=[0.5, 1.0, 1.0, 1.0], lower=[1.5, 1.5, 1.5]),
    X("(7*zeta3 - 2*pi*G)/2"), 1e-8, ("G", "zeta3", "hypergeometric"))
rec("eq_G_series", s, P("gosper_G"), X("G"), 1e-6, ("G", "series"))
rec("eq_zeta3_series", s, P("gosper_zeta3"), X("zeta3"), 1e-6, ("zeta3", "series"))
rec("eq_logtan_G_zeta3", s, P("int_theta_logtan"), X("7*zeta3/(4*pi) - G"), 1e-10, ("G", "zeta3"))
rec("eq_G_Ti_a", s, P("int_K_rational_sqrt", terms=[[2 / 3, 25.0, -16.0], [0.25, 25.0, -9.0], [1.0, 625.0, -576.0]]),
    X("G - pi/6*log(2)"), 1e-10, ("G",))
rec("eq_G_Ti_b", s, P("int_K_rational_sqrt", terms=[[0.375, 4.0, -1.0]]), X("G - pi/8*log(2 + sqrt(3))"), 1e-10,
    ("G",))
rec("eq_G_Ti_c", s, P("int_K_rational_sqrt", terms=[[0.625, 6 - 2 * S5, -1.0], [-0.625, 6 + 2 * S5, -1.0]]),
    X("G - pi/8*log((10 + sqrt(50 - 22*sqrt(5)))/(10 - sqrt(50 - 22*sqrt(5))))"), 1e-10, ("G",))
rec("eq_G_Ti_b_prime", s, P("series_catalan_ramanujan"), X("G"), 1e-14, ("G", "series"))
rec("eq_G_Ti_c_prime", s, P("series_catalan_bradley"), X("G_euler"), 1e-14, ("G", "series"))

rec("eq_KKlogt_zeta3_x", s, P("int_KK_x_log"), X("pi**2/2*log(2) - 7*zeta3/4"), 1e-8, ("zeta3",))
rec("eq_KKlogt_zeta3_series", s, P("int_KK_odd_moment"), P("series_KKlogt_term"), 1e-10,
    ("function-valued", "hypergeometric"), grid=g("n", [1, 2, 3, 4, 5]))

# --- Mehler-Dirichlet projections ------------------------------------------------------
s = "mehler_dirichlet"
rec("eq_MD_proj", s, P("int_MD_proj"), X("md_proj(n)"), 1e-8, ("function-valued", "legendre"),
    grid=g("n", [1, 3, 5, 7, 9]))
rec("eq_K_reprod", s, P("int_K_reprod"), X("pi*K(abs(r))/8 - pi**2/(16*(1 + r))"), 1e-10, ("function-valued",),
    grid=g("r", [-0.7, -0.3, 0.2, 0.5, 0.9]))
rec("eq_K_reprod_B", s, P("int_K_reprod_B"), X("pi*K(abs(r))/8 - pi**2/(16*(1 + r))"), 1e-10,
    ("function-valued", "beltrami"), grid=g("r", [-0.7, -0.3, 0.2, 0.5, 0.9]))
rec("eq_7Apery_Li2", s, P("int_7Apery_Li2"), X("7*zeta3/(2*pi) - G"), 1e-10, ("G", "zeta3", "dilog"))

# --- Abel transforms ---------------------------------------------------------------------
s = "abel"
rec("eq_G_tanh", s, P("int_G_tanh"), X("G"), 1e-10, ("G",))
rec("eq_pi8_arccos", s, P("int_pi8_arccos"), X("pi**2/8"), 1e-10, ("pi2_8",))
rec("eq_G_cosh", s, P("half_y_cosh"), X("G"), 1e-10, ("G", "half_line"))
rec("eq_G_arsinh", s, P("half_asinh_over_1pr2"), X("G"), 1e-10, ("G", "half_line"))
rec("eq_pi8_y_sinhy", s, P("half_y_sinh"), X("pi**2/8"), 1e-10, ("pi2_8", "half_line"))
rec("eq_pi8_arsinh", s, P("half_asinh_over_r_sqrt"), X("pi**2/8"), 1e-10, ("pi2_8", "half_line"))
rec("eq_pi8_arctan_inf_int", s, P("half_pi8_arctan"), X("pi**2/8"), 1e-10, ("pi2_8", "half_line"))
A_GRID = [0.3, 0.8, 1.0, 2.0, 5.0]
rec("eq_Abel1", s, P("int_Abel1"),
    X("asin(a)/2*(pi - asin(a)) if a <= 1 else pi**2/8 + log(a + sqrt(a**2 - 1))**2/2"), 1e-10,
    ("function-valued",), grid=g("a", A_GRID))
rec("eq_Abel2", s, P("int_Abel2"), X("pi/8*((1 + 2*a**2)*asinh(a) - a*sqrt(1 + a**2))"), 1e-10,
    ("function-valued",), grid=g("a", A_GRID))
rec("eq_Abel3", s, P("int_Abel3"),
    X("3*pi/128*((8*a**4 + 8*a**2 + 3)*asinh(a) - 3*a*(1 + 2*a**2)*sqrt(1 + a**2))"), 1e-10,
    ("function-valued",), grid=g("a", A_GRID))
rec("eq_Abel4", s, P("int_Abel4"),
    X("pi*(2/9 - sqrt(1 + a**2)*(8 + 5*a**2)/36 + a*(3 + 2*a**2)/12*asinh(a))"), 1e-10,
    ("function-valued",), grid=g("a", A_GRID))
TH_GRID = [0.0, 0.3, 0.7, 1.0, 1.4]
rec("eq_Abel_Li2", s, P("int_Abel_Li2"),
    X("theta/2*(1j*pi/2 - log(tan((pi - 2*theta)/4))) - 1j*(Li2(1j*exp(-1j*theta)) - Li2(-1j*exp(-1j*theta)))/2"),
    1e-10, ("function-valued", "dilog"), grid=g("theta", TH_GRID), compare="parts")
rec("eq_Abel_Li2_int", s, P("int_Abel_Li2_int"), X("theta**2/4"), 1e-10, ("function-valued",),
    grid=g("theta", [0.3, 0.7, 1.0, 1.4, 1.5]))
U_GRID = [0.05, 0.25, 0.5, 0.75, 0.95]
rec("eq_arcsin_Abel", s, P("abel_arcsin"), X("2*(E(sqrt(u)) - (1 - u)*K(sqrt(u)))"), 1e-9, ("function-valued",),
    grid=g("u", U_GRID))
rec("eq_arcsin_Abel_eq", s, P("abel_arcsin"), P("int_K_sqrt_upto"), 1e-9, ("function-valued", "quad_vs_quad"),
    grid=g("u", U_GRID))
XI_GRID = [0.1, 0.5, 1.0, 2.0, 5.0]
rec("eq_arsinh_Abel", s, P("abel_arsinh"),
    X("2*sqrt(1 + xi)*(K(sqrt(xi/(1 + xi))) - E(sqrt(xi/(1 + xi))))"), 1e-9, ("function-valued",),
    grid=g("xi", XI_GRID))
rec("eq_arsinh_Abel_eq", s, P("abel_arsinh"), P("int_K_arsinh_upto"), 1e-9, ("function-valued", "quad_vs_quad"),
    grid=g("xi", XI_GRID))
rec("eq_E_arcsin", s, P("abel_E_arcsin"), X("pi/4*(sqrt(u*(1 - u)) - (1 - 2*u)*asin(sqrt(u)))"), 1e-9,
    ("function-valued",), grid=g("u", U_GRID))
rec("eq_E_arsinh", s, P("abel_E_arsinh"), X("pi/4*((1 + 2*xi)*asinh(sqrt(xi)) - sqrt(xi*(1 + xi)))"), 1e-9,
    ("function-valued",), grid=g("xi", XI_GRID))
rec("eq_Abel_Tr", s, P("abel_tr_lhs"), P("abel_tr_rhs"), 1e-8, ("quad_vs_quad", "half_line"))

rec("eq_Abel1_B", s, P("int_Abel1_B"), X("asin(a)*(pi - asin(a))/2"), 1e-10, ("function-valued", "beltrami"),
    grid=g("a", [0.1, 0.3, 0.5, 0.8, 1.0]))
rec("eq_Abel2_B", s, P("int_Abel2_B"), X("pi/8*((1 + 2*a**2)*log(a + sqrt(1 + a**2)) - a*sqrt(1 + a**2))"), 1e-10,
    ("function-valued", "beltrami"), grid=g("a", [0.2, 0.5, 1.0, 2.0, 5.0]))

# --- Beltrami transforms -------------------------------------------------------------------
s = "beltrami"
for v in ("B", "iB", "LB", "iLB"):
    rec(f"eq_Beltrami_{v}", s, P("int_beltrami", variant=v), X("K(k)"), 1e-10, ("function-valued", "beltrami"),
        grid=g("k", K_GRID))
rec("eq_a_B", s, P("int_a_B"), X("pi**2/8"), 1e-10, ("pi2_8", "beltrami"))
rec("eq_a_iB", s, P("int_a_iB"), X("pi**2/8"), 1e-10, ("pi2_8", "beltrami"))
rec("eq_a_LB", s, P("int_a_LB"), X("pi**2/8"), 1e-10, ("pi2_8", "beltrami"))
rec("eq_a_diamond_L", s, P("int_a_diamond_L"), X("pi**2/8"), 1e-10, ("pi2_8", "beltrami"))
rec("eq_a_half_Kp", s, P("int_Kp", scale=0.5), X("pi**2/8"), 1e-10, ("pi2_8",))
rec("eq_G_odd_a", s, P("int_Kp_over_1p", scale=0.5), X("G"), 1e-10, ("G",))
rec("eq_G_odd_b", s, P("int_G_odd_b"), X("G"), 1e-10, ("G",))
rec("eq_G_odd_c", s, P("int_G_odd_c"), X("G"), 1e-10, ("G",))
rec("eq_G_odd_d", s, P("int_K", scale=0.5), X("G"), 1e-10, ("G",))
rec("eq_GB_G_a", s, P("int_GB_G_a"), X("G"), 1e-10, ("G", "beltrami"))
rec("eq_GB_G_b", s, P("int_GB_G_b"), X("G"), 1e-10, ("G", "beltrami"))
rec("eq_zeta3_iB_int", s, P("int_zeta3_iB"), X("7*zeta3/4"), 1e-10, ("zeta3", "beltrami"))
rec("eq_pi_iB_int", s, P("int_pi_iB"), X("pi/2"), 1e-10, ("pi", "beltrami"))
rec("eq_beta_iB_deriv", s, P("int_beta_iB_deriv"), X("log(tan((pi - beta)/4))/4"), 1e-10,
    ("function-valued", "beta"), grid=g("beta", BETAS))
rec("eq_beta_diamond", s, P("int_beta_diamond"), X("Lfrak(beta)"), 1e-10, ("function-valued", "beta"),
    grid=g("beta", BETAS))
rec("eq_beta_diamond_2pi5_4pi5", s, P("beta_diamond_diff", beta1=2 * PI / 5, beta2=4 * PI / 5), X("2*G/5"), 1e-10,
    ("G",))
rec("eq_beta_prime_B", s, P("int_beta_prime_B"), X("log(tan((pi - beta)/4))/4"), 1e-10,
    ("function-valued", "beta", "beltrami"), grid=g("beta", BETAS))
rec("eq_beta_prime_B_split", s, P("beta_prime_B_split"), X("log(tan((pi - beta)/4))/4"), 1e-10,
    ("function-valued", "beta", "beltrami"), grid=g("beta", BETAS))
rec("eq_Li2_limit_pi", s, P("int_Li2_limit"), X("pi"), 1e-8, ("pi",))
rec("eq_Li2_limit_pi_series", s, P("pfq_sum", upper=[0.5, 0.5], lower=[2.0], scale=PI**2 / 4), X("pi"),
    1e-8, ("pi", "hypergeometric"))

rec("eq_beta_star_B", s, P("int_beta_star_B"), X("log((1 - z)/(1 + z))/4"), 1e-10,
    ("function-valued", "beltrami"), grid=g("z", [-0.7, -0.2, 0.1, 0.5, 0.9]))
rec("eq_beta_star_B_imag", s, P("int_beta_star_B", imag=1), X("-atan(z)/2"), 1e-10,
    ("function-valued", "beltrami"), grid=g("z", [0.1, 0.3, 0.5, 0.7, 0.9]))

# --- duality and the sum rule --------------------------------------------------------------
rec("eq_W_3F2", s, P("int_W"), P("series_W"), 1e-10, ("function-valued", "sum_rule", "hypergeometric"),
    grid=g("r", R_GRID))
rec("eq_W_kappa", s, P("int_W_kappa"), X("W(r)"), 1e-10, ("function-valued", "sum_rule"), grid=g("r", R_GRID))
for name in ("GB_2", "GB_3", "GB_4"):
    rec(f"eq_{name}", s, P(name), X("W(r)"), 1e-10, ("function-valued", "sum_rule", "beltrami"), grid=g("r", R_GRID))
rec("eq_M_3F2", s, P("int_M"), P("series_M"), 1e-10, ("function-valued", "sum_rule", "hypergeometric"),
    grid=g("r", R_GRID))
for name in ("GB_5", "GB_6"):
    rec(f"eq_{name}", s, P(name), X("M(r)"), 1e-10, ("function-valued", "sum_rule", "beltrami"), grid=g("r", R_GRID))
rec("eq_f_eq_W", s, P("f_eq_W_lhs"), P("f_eq_W_rhs"), 1e-9, ("function-valued", "sum_rule", "quad_vs_quad"),
    grid=g("r", R_GRID))
SUM_RULE = "pi/2/sqrt(1 + r**2)*K(r/sqrt(1 + r**2))"
rec("eq_sum_rule", s, P("sum_rule_lhs"), X(SUM_RULE), 1e-10, ("function-valued", "sum_rule"), grid=g("r", R_GRID))
rec("eq_sum_rule_LM1", s, P("int_LM1"), X(SUM_RULE), 1e-10, ("function-valued", "sum_rule"), grid=g("r", R_GRID))
rec("eq_sum_rule_LM2", s, P("int_LM2"), X(SUM_RULE), 1e-10, ("function-valued", "sum_rule"), grid=g("r", R_GRID))
rec("eq_log_combo", s, P("int_log_combo"), X("pi/2/sqrt(1 + r**2)*K(1/sqrt(1 + r**2))"), 1e-10,
    ("function-valued", "sum_rule"), grid=g("r", R_GRID))
rec("eq_3artanh", s, P("int_3artanh"), P("int_artanh_common"), 1e-10, ("function-valued", "quad_vs_quad"),
    grid=g("x", R_GRID))
rec("eq_2artanh", s, P("int_2artanh"), P("int_artanh_common"), 1e-10, ("function-valued", "quad_vs_quad"),
    grid=g("x", R_GRID))
rec("eq_K_tanh_addition", s, P("int_K_tanh_add_sum"), P("int_K_tanh_add_artanh"), 1e-10,
    ("function-valued", "quad_vs_quad"), grid=g("x", XS_GRID))
rec("eq_arcsin_id", s, P("int_arcsin_id"), P("int_arcsin_id_log"), 1e-10, ("function-valued", "quad_vs_quad"),
    grid=g("r", R_GRID))
rec("eq_arcsin_id_prime", s, P("int_arcsin_id_prime"), P("int_arcsin_id_prime_log"), 1e-10,
    ("function-valued", "quad_vs_quad"), grid=g("r", R_GRID))
LAM = [0.1, 0.3, 0.5, 0.7, 0.9]
KKP = "K(sqrt(lam))*K(sqrt(1 - lam))"
for suffix in ("a", "b", "c", "d"):
    rec(f"eq_KKp_various_{suffix}", s, P(f"int_KKp_various_{suffix}"), X(KKP), 1e-10, ("function-valued",),
        grid=g("lam", LAM))

# --- 3F2 special values and hyperbolic sums -----------------------------------------------------
s = "series"
rec("eq_3F2_sum_rule", s, P("sum_rule_3F2"), X("pi*(K(sin(theta)) + 1j*K(cos(theta)))/2"), 1e-10,
    ("function-valued", "hypergeometric"), grid=g("theta", [0.2, 0.5, PI / 4, 1.0, 1.3]), compare="parts")
rec("eq_3F2_sum_rule_pi4", s, P("sum_rule_pi4"), X("sqrt(pi)*gamma_quarter**2/(8*sqrt(2))"), 1e-10,
    ("hypergeometric", "gamma"))
rec("eq_3F2_sum_rule_pi12", s, P("sum_rule_pi12"), X("3**0.25*gamma_third**3/2**(17/6)"), 1e-10,
    ("hypergeometric", "gamma"), compare="parts")
rec("eq_3F2_sum_rule_5pi12", s, P("sum_rule_5pi12"), X("3**0.25*gamma_third**3/2**(17/6)"), 1e-10,
    ("hypergeometric", "gamma"), compare="parts")
rec("eq_3F2_sum_rule_avg", s, P("sum_rule_pi12_avg"), X("3**0.25*gamma_third**3/2**(17/6)"), 1e-10,
    ("hypergeometric", "gamma"))
rec("eq_3F2_sum_rule_diff", s, P("sum_rule_pi12_diff_lhs"), P("sum_rule_pi12_diff_rhs"), 1e-10,
    ("hypergeometric", "quad_vs_quad"))
rec("eq_3F2_sum_rule_R_1", s, P("hyperbolic", y=1.0, normalize=True), X("pi**2/8"), 1e-12,
    ("pi2_8", "hyperbolic"))
rec("eq_3F2_sum_rule_R_2", s, P("hyperbolic", y=math.sqrt(3.0)), X("pi**2/8*(1 + 1j*sqrt(3))"), 1e-12,
    ("hyperbolic",), compare="parts")
rec("eq_3F2_sum_rule_R_3", s, P("hyperbolic", y=1 / math.sqrt(3.0)), X("pi**2/8*(1 + 1j/sqrt(3))"), 1e-12,
    ("hyperbolic",), compare="parts")
rec("eq_3F2_sum_rule_R", s, P("hyperbolic"), X("pi**2/8*(1 + 1j*y)"), 1e-12, ("hyperbolic", "function-valued"),
    grid=g("y", [0.25, 0.5, 2.0, 3.0, 4.0]), compare="parts")
rec("eq_3F2_sum_rule_cplx", s, P("hyperbolic_cplx"), X("pi**2/8"), 1e-12, ("hyperbolic", "function-valued"),
    grid=[{"zr": a, "zi": b} for a, b in [(1.0, 1.0), (0.5, 2.0), (2.0, 0.5), (0.0, 1.0), (-0.5, 1.5)]],
    compare="parts")
rec("eq_k_moment", s, P("int_k_moment"), X("k_moment(n)"), 1e-10, ("function-valued", "moments"),
    grid=g("n", [0, 1, 2, 3, 5, 8]))
rec("eq_kk_moment", s, P("int_kk_moment"), X("kk_c(n)"), 1e-7, ("function-valued", "moments"),
    grid=g("n", list(range(9))))

OUT.parent.mkdir(parents=True, exist_ok=True)
OUT.write_text(json.dumps(records, indent=1) + "\n")
print(f"{len(records)} records, {sum(r['cost_class'] == 'fast' for r in records)} fast -> {OUT}")
