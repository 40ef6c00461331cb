from besselgspin.conventions import (
    alternant_exponent,
    conventions_report,
    e_delta_reading,
    lemma_bh_index,
    report_json,
    simplification_domain,
    simplified_exponent,
)


def test_report_is_stable():
    assert report_json() == report_json()
    assert set(conventions_report()) == {
        "simplification_domain", "simplified_exponent", "e_delta_reading", "lemma_bh_index", "alternant_exponent",
    }


def test_simplification_domain_is_l_n_zero():
    res = simplification_domain()["resolution"]
    assert res == {"valid_l_n": [0], "printed_l_n_1_holds": False}


def test_simplified_exponent_rule():
    rep = simplified_exponent()
    assert rep["resolution"]["correct_rule"] == "rho"
    assert rep["resolution"]["printed_rule_holds"] is False
    by_rank = {(r["n"], r["rule"]): r["agrees"] for r in rep["comparisons"]}
    assert by_rank[(2, "printed")] and not by_rank[(3, "printed")]


def test_e_delta_reading():
    rep = e_delta_reading()
    assert rep["resolution"]["q_e_delta_is"] == "delta_B^(1/2)(varpi^delta)"
    assert rep["b0_equals_one_with_q_power_v_exponent"] and rep["a8_passes_with_X_power_sum_l"]
    other = [r for r in rep["zeta_exponents"] if r["reading"] == "delta_B = q^(e_delta)"]
    assert not any(r["all_minus_half"] for r in other)


def test_lemma_bh_variants():
    rep = lemma_bh_index()
    assert rep["l_n_zero_case_agrees"]
    assert rep["resolution"]["consistent_variants"] == ["l_n decrement weighted by z1"]


def test_alternant_exponent_relation():
    rep = alternant_exponent()
    assert rep["a8_passes"] == {"rho": True, "index": False}
    rows = {(r["n"], r["torus"]): r for r in rep["comparisons"]}
    assert rows[(1, "split")]["equal"] == rows[(1, "split")]["weights"]
    assert rows[(2, "split")]["b0_index"] == "-1"
    assert rows[(3, "nonsplit")]["index_form_vanishes"] > 0
