import json
import math
import time
from types import MappingProxyType

import pytest

from elliptic_verify import catalog
from elliptic_verify.catalog import FilterError, IdentityRecord, PlanRef, UnknownIdentityError

# Every catalogued equation label; each must have a record of the same name
# (primes spelled "_prime"), an entry in COVERED_BY, or an entry in EXERCISED_ELSEWHERE.
LABELS = """
2artanh 3F2_sum_rule_5pi12 3F2_sum_rule_R_1 3F2_sum_rule_R_2 3F2_sum_rule_R_3 3F2_sum_rule_R
3F2_sum_rule_cplx 3F2_sum_rule_pi12 3F2_sum_rule_pi4 3F2_sum_rule 3artanh 7Apery_Li2 Abel1' Abel1 Abel2'
Abel2 Abel3 Abel4 Abel_Li2_int Abel_Li2 Abel_Tr Abel_int_eq' Abel_int_eq BT0 BT Beltrami E_arcsin E_arsinh
GB_1 GB_2 GB_3 GB_4 GB_5 GB_6 GB_G G_KK G_K_mix'' G_K_mix' G_K_mix G_Klog' G_Klog G_K G_S3 G_Ti_a G_Ti_b'
G_Ti_b G_Ti_c' G_Ti_c G_cosh G_elem' G_elem G_log2_log G_odd G_tanh ImLi2 Im_ext KEK_pi8 KE_pi_G_zeta3
KK'_various KKKK KKlogt_zeta3' KKlogt_zeta3 K_5_2' K_5_2 K_Pyth K_arcsin'' K_arcsin' K_arcsin_diamond
K_arcsin_iB_deriv K_arcsin K_arsinh'' K_arsinh' K_arsinh_diamond K_arsinh_iB_deriv K_arsinh K_gr K_reprod'
K_reprod K_sqr_log_chain K_sqr_log K_sqr_minus_pi4' K_sqr_minus_pi4 K_sqr_star K_sqr K_tan_pi8' K_tan_pi8
K_tanh_addition Kt2_7Zeta3 LB LM1 LM2 L_beta_int' L_beta_int_cos_half_beta L_beta_int_cos_quarter_beta'
L_beta_int_cos_quarter_beta L_beta_int LegendreDiffEq_half LegendreP_half LegendreP_quarter Li2_limit_pi'
Li2_limit_pi Li2int'_B Li2int'_iB Li2int' Li2int_B Li2int_S_B Li2int_S Li2int_diamond Li2int_star Li2int
MD_proj M_3F2 Mehler_Dirichlet S2_int_KK TP3 Tricomi_Fourier Tricomi_Parseval1 Tricomi_Parseval2 W_3F2
a'_L a_B a_diamond_L a_iB a_star arcsin_Abel_eq arcsin_id' arcsin_id arsinh_Abel_eq a b_B_R b_series_exp
b_star beta'_B beta'_diamond beta'_star_B beta' beta_B beta_iB_deriv beta b chi2_1 chi2_2
double_half_lambda f_PDE f_eq_W' f_eq_W iB iLB im_sphere lambda_transf log_combo logtan_G_zeta3 low_deg'
low_deg omega pi8_arccos pi8_arctan_inf_int pi8_y_sinhy pi_Li2_deriv_iB pi_iB_int pipibeta_int'
pipibeta_int_cos_half_beta pipibeta_int_cos_quarter_beta' pipibeta_int_cos_quarter_beta pipibeta_int
qrs_uvw sum_rule unity_int zeta3_iB_int
""".split()

COVERED_BY = {
    "Abel1'": ["eq_Abel1_B"],
    "Abel2'": ["eq_Abel2_B"],
    "BT0": ["eq_BT"],
    "Beltrami": ["eq_Beltrami_B"],
    "iB": ["eq_Beltrami_iB"],
    "LB": ["eq_Beltrami_LB"],
    "iLB": ["eq_Beltrami_iLB"],
    "im_sphere": ["eq_Beltrami_iB"],
    "GB_1": ["eq_W_kappa"],
    "GB_G": ["eq_GB_G_a", "eq_GB_G_b"],
    "G_K_mix''": ["eq_G_series", "eq_zeta3_series"],
    "G_Klog'": ["eq_G_Klog_kappa"],
    "G_elem'": ["eq_G_elem_theta"],
    "G_odd": ["eq_G_odd_a", "eq_G_odd_b", "eq_G_odd_c", "eq_G_odd_d"],
    "KK'_various": ["eq_KKp_various_a", "eq_KKp_various_b", "eq_KKp_various_c", "eq_KKp_various_d"],
    "KKlogt_zeta3'": ["eq_KKlogt_zeta3_series", "eq_KKlogt_zeta3_x"],
    "K_5_2'": ["eq_K_5_2_series"],
    "K_tan_pi8'": ["eq_K_tan_pi8_series"],
    "K_sqr_minus_pi4'": ["eq_K_sqr_minus_pi4_series", "eq_K_sqr_minus_pi4_kappa"],
    "Li2_limit_pi'": ["eq_Li2_limit_pi_series"],
    "K_arcsin'": ["eq_K_arcsin_B"],
    "K_arsinh'": ["eq_K_arsinh_B"],
    "K_arcsin''": ["eq_K_arsinh_diamond"],
    "K_arsinh''": ["eq_K_arcsin_diamond"],
    "K_arcsin_iB_deriv": ["eq_K_arcsin_iB", "eq_K_arcsin_iB_split"],
    "K_arsinh_iB_deriv": ["eq_K_arsinh_iB", "eq_K_arsinh_iB_split"],
    "K_reprod'": ["eq_K_reprod_B"],
    "K_sqr": ["eq_K_sqr_sphere", "eq_K_sqr_star"],
    "K_sqr_log_chain": ["eq_K_sqr_log_chain_a", "eq_K_sqr_log_chain_b", "eq_K_sqr_log_chain_c",
                        "eq_K_sqr_log_chain_d"],
    "LM1": ["eq_sum_rule_LM1"],
    "LM2": ["eq_sum_rule_LM2"],
    "L_beta_int'": ["eq_L_beta_int_simplex"],
    "pipibeta_int'": ["eq_pipibeta_int_simplex"],
    "L_beta_int_cos_quarter_beta": ["eq_quarter_beta_sin_complex"],
    "L_beta_int_cos_quarter_beta'": ["eq_quarter_beta_sin"],
    "pipibeta_int_cos_quarter_beta": ["eq_quarter_beta_cos_3F2"],
    "pipibeta_int_cos_quarter_beta'": ["eq_quarter_beta_cos"],
    "LegendreP_half": ["eq_hobson_half"],
    "LegendreP_quarter": ["eq_hobson_quarter"],
    "S2_int_KK": ["eq_S2_int_KK"],
    "Tricomi_Parseval2": ["eq_K_sqr_log_chain_a"],
    "a'_L": ["eq_a_LB"],
    "b_B_R": ["eq_b_dilog"],
    "b_series_exp": ["eq_b_series"],
    "beta'_diamond": ["eq_beta_diamond", "eq_beta_diamond_2pi5_4pi5"],
    "beta'_star_B": ["eq_beta_star_B", "eq_beta_star_B_imag"],
    "f_eq_W'": ["eq_f_eq_W"],
    "low_deg'": ["eq_low_deg", "eq_G_log2_log"],
    "pi_Li2_deriv_iB": ["eq_pi_iB_int"],
    "K_tanh_addition": ["eq_K_tanh_addition"],
    "arcsin_id": ["eq_arcsin_id"],
    "arcsin_id'": ["eq_arcsin_id_prime"],
}

# Tools used inside derivations, checked by module tests instead of catalog records.
EXERCISED_ELSEWHERE = {
    "Abel_int_eq": "test_transforms: abel_solve round trip",
    "Abel_int_eq'": "test_transforms: abel_solve round trip",
    "Tricomi_Parseval1": "test_quadrature: Parseval antisymmetry",
    "TP3": "test_transforms: Tricomi transform of log(dl/2)/sqrt(dl dr)",
    "Mehler_Dirichlet": "series.md_projection via eq_MD_proj",
    "LegendreDiffEq_half": "test_specfun: Legendre equation for K(sqrt t)",
    "lambda_transf": "modular lambda function relations; no elliptic integral to evaluate",
    "double_half_lambda": "modular lambda function relations; no elliptic integral to evaluate",
    "f_PDE": "differential equation used inside a derivation",
    "omega": "general azimuthal functional; only its K_sqr_minus_pi4 and K_sqr_log specializations are checked",
}


def _record_name(label):
    return "eq_" + label.replace("''", "_pprime").replace("'", "_prime")


def test_registry_size_and_order():
    records = catalog.list_records()
    assert len(records) >= 70
    ids = [r.id for r in records]
    assert ids == sorted(ids) and len(set(ids)) == len(ids)
    assert catalog.list is catalog.list_records


def test_filters():
    g_ids = {r.id for r in catalog.list_records("tag:G")}
    assert {"eq_b", "eq_G_S3", "eq_G_tanh"} <= g_ids
    assert "eq_sum_rule" in {r.id for r in catalog.list_records("section:beltrami")}
    assert {r.cost_class for r in catalog.list_records("cost:mc")} == {"mc"}
    both = catalog.list_records("tag:G, cost:fast")
    assert both and all("G" in r.tags and r.cost_class == "fast" for r in both)
    assert [r.id for r in catalog.list_records("id:eq_a")] == ["eq_a"]
    assert catalog.list_records("") == catalog.list_records(None)


@pytest.mark.parametrize("bad", ["tag", "colour:red", "tag:G,nonsense"])
def test_bad_filters(bad):
    with pytest.raises(FilterError):
        catalog.list_records(bad)


def test_empty_selection():
    res = catalog.run_suite("tag:no_such_tag")
    assert res.reports == () and (res.summary.total, res.summary.passed, res.summary.failed) == (0, 0, 0)
    assert res.all_passed


def test_unknown_id():
    with pytest.raises(UnknownIdentityError):
        catalog.evaluate("no_such_id")
    with pytest.raises(UnknownIdentityError):
        catalog.get_record("no_such_id")


@pytest.mark.parametrize("rid,tol", [("eq_a", 1e-10), ("eq_Kt2_7Zeta3", 1e-9), ("eq_low_deg", 1e-9)])
def test_named_examples(rid, tol):
    rep = catalog.evaluate(rid)
    assert rep.passed and rep.tol <= tol
    assert rep.abs_diff <= tol * max(1.0, abs(rep.rhs_value))


def test_eq_a_values():
    rep = catalog.evaluate("eq_a")
    assert rep.rhs_value == pytest.approx(math.pi**2 / 8, abs=1e-15)
    assert rep.diagnostics["converged"] and rep.diagnostics["grid_points"] == 1


def test_pass_rule_and_override():
    rep = catalog.evaluate("eq_a", tol_override=1e-300)
    assert rep.tol == 1e-300
    assert rep.passed == (rep.abs_diff <= 1e-300 * max(1.0, abs(rep.rhs_value)))
    loose = catalog.evaluate("eq_a", tol_override=0.5)
    assert loose.passed and loose.abs_diff == rep.abs_diff


def test_grid_record_reports_worst_point():
    rep = catalog.evaluate("eq_BT")
    rec = catalog.get_record("eq_BT")
    assert rep.diagnostics["grid_points"] == len(rec.grid) >= 5
    assert dict(rep.diagnostics["worst_point"]) in [dict(p) for p in rec.grid]


def test_real_part_records_carry_imaginary_residual():
    rep = catalog.evaluate("eq_quarter_beta_sin_complex")
    assert rep.passed and "imag_residual" in rep.diagnostics
    assert isinstance(rep.lhs_value, complex)


def test_function_valued_records_have_grids():
    for r in catalog.list_records("tag:function-valued"):
        assert len(r.grid) >= 5, r.id


def test_registry_is_not_mutated():
    before = [r.to_dict() for r in catalog.list_records()]
    catalog.evaluate("eq_beta")
    catalog.evaluate("eq_a", tol_override=1e-3)
    assert [r.to_dict() for r in catalog.list_records()] == before


def test_record_round_trip():
    for r in catalog.list_records():
        assert IdentityRecord.from_json(json.loads(json.dumps(r.to_dict()))) == r


def test_independence_audit_clean():
    assert catalog.independence_audit() == []


def test_independence_audit_catches_shared_routes():
    base = catalog.get_record("eq_a")
    same = IdentityRecord("x_same", "s", base.lhs, base.lhs, 1e-10, "fast", ())
    g = PlanRef("expr", MappingProxyType({"expr": "G"}))
    g2 = PlanRef("expr", MappingProxyType({"expr": "2*G/2"}))
    shared_const = IdentityRecord("x_const", "s", PlanRef("expr", MappingProxyType({"expr": "G + 0"})), g, 1e-10,
                                  "fast", ())
    problems = catalog.independence_audit([same, shared_const])
    assert any(p.startswith("x_same") for p in problems)
    assert any(p.startswith("x_const") for p in problems)
    assert catalog.independence_audit([IdentityRecord("x_ok", "s", base.lhs, g2, 1e-10, "fast", ())]) == []


def test_every_label_is_covered():
    ids = {r.id for r in catalog.list_records()}
    assert len(LABELS) == len(set(LABELS))
    missing = []
    for label in LABELS:
        if label in EXERCISED_ELSEWHERE:
            continue
        targets = COVERED_BY.get(label, [_record_name(label)])
        if not all(t in ids for t in targets):
            missing.append(label)
    assert missing == []
    assert set(COVERED_BY) <= set(LABELS) and set(EXERCISED_ELSEWHERE) <= set(LABELS)


def test_reports_are_byte_identical():
    first = [catalog.report_line(r) for r in catalog.run_suite("section:sphere_s2,cost:fast").reports]
    second = [catalog.report_line(r) for r in catalog.run_suite("section:sphere_s2,cost:fast").reports]
    assert first == second
    for line in first:
        assert json.loads(line)["runtime_ms"] is None


def test_mc_reports_are_byte_identical():
    a = catalog.report_line(catalog.evaluate("eq_b_mc", samples=20_000, seed=5))
    b = catalog.report_line(catalog.evaluate("eq_b_mc", samples=20_000, seed=5))
    assert a == b
    d = json.loads(a)["diagnostics"]
    assert d["seed"] == 5 and d["n_samples"] == 20_000 and d["stderr"] > 0


def test_timings_only_when_asked():
    rep = catalog.evaluate("eq_a")
    assert json.loads(catalog.report_line(rep, timings=True))["runtime_ms"] >= 0


def test_parallel_matches_serial():
    serial = catalog.run_suite("section:beltrami", 1)
    threaded = catalog.run_suite("section:beltrami", 4)
    assert [catalog.report_line(r) for r in serial.reports] == [catalog.report_line(r) for r in threaded.reports]
    with pytest.raises(ValueError):
        catalog.run_suite(None, 0)


def test_fast_tier_passes_quickly():
    start = time.perf_counter()
    res = catalog.run_suite("cost:fast", 1)
    elapsed = time.perf_counter() - start
    failed = [r.id for r in res.reports if not r.passed]
    assert failed == []
    assert res.summary.total >= 50 and elapsed < 60


def test_slow_tier_passes():
    res = catalog.run_suite("cost:slow", 1)
    assert [r.id for r in res.reports if not r.passed] == []
