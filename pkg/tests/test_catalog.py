import cmath
import math

import pytest

from yangcheck.catalog import (
    CATALOG,
    EtaConstraintError,
    UnknownRelation,
    catalog_dump,
    catalog_get,
    catalog_ids,
    check_eta_constraint,
    etap_from,
    h_to_kappa,
    hh_rewrites_as_eq1,
    kappa_to_h,
    shifted_parameter_consistency,
    structure_constant,
    theta_matches_catalog,
    theta_step,
    trig_structure_function,
    twist_current,
    twist_mode,
)


def test_catalog_known_ids():
    must_exist = [
        "CC1", "CCeta", "ee", "ff", "hh-pm", "hp-e", "hm-f",
        "comm1-e", "comm2-e", "comm3-ef", "comm4-e", "commut-dis-e",
        "comm5", "comm6", "comm7", "h0hk",
        "commut1", "commut2", "commut3", "commut",
        "dis-conv-e", "dis-conv-f",
        "d-cont", "kk-he", "kk-hf", "he-he", "hf-hf", "kk-kk", "he-hf",
        "hh-he", "hh-hf", "diff1",
        "h+h-c", "hhc", "hec-p", "hfc-p", "eec", "ffc", "efc",
        "ef", "he", "hf", "ee-univ", "ff-univ", "hh", "eq1",
        "p1-ee-p", "p1-ef-mixed-p", "p1-hh-mixed",
    ]
    for rid in must_exist:
        spec = catalog_get(rid)
        assert spec.display


def test_catalog_get_examples():
    spec = catalog_get("comm3-ef")
    assert "h_(k+n)" in spec.display
    spec = catalog_get("dis-conv-e")
    assert "e_p e_(k+l-p-1)" in spec.display
    spec = catalog_get("he-he")
    assert "theta(tau-mu)-theta(tau-lam)" in spec.display


def test_catalog_unknown_id_suggests():
    with pytest.raises(UnknownRelation) as err:
        catalog_get("comm33")
    assert "nearest" in str(err.value)


def test_catalog_dump_blocks():
    text = catalog_dump()
    assert "[CCeta]" in text and "[he-he]" in text
    assert text.count("family:") == len(set(catalog_ids()))


def test_structure_constants_trivial():
    for n in range(5):
        for p in range(5):
            assert structure_constant("A", 0, n, p) == 1
            assert structure_constant("B", 0, n, p) == 1
            assert structure_constant("D", 0, n, p) == 1


def test_structure_constants_first_order():
    for n in range(6):
        for p in range(6):
            assert structure_constant("A", 1, n, p) == n + p + 1
            assert structure_constant("B", 1, n, p) == p - n
            assert structure_constant("D", 1, n, p) == p - n


def test_structure_constants_reject_negative():
    with pytest.raises(ValueError):
        structure_constant("A", -1, 0, 0)


def test_theta_step():
    assert theta_step(0.3) == 1.0
    assert theta_step(-0.3) == 0.0
    assert theta_step(0) == 0.5


def test_theta_involution_maps_catalog_to_catalog():
    expect = {
        "ee": "ff",
        "ff": "ee",
        "hh-pm": "hh-pm",
        "hp-e": "hm-f",
        "hm-e": "hp-f",
        "hp-f": "hm-e",
        "hm-f": "hp-e",
    }
    for rid, image in expect.items():
        assert theta_matches_catalog(rid) == image, rid


def test_trig_structure_function_degeneration():
    hbar, c = 1.0, 1.0
    x = 1.0 + 0.3j
    for rid in ("eec", "ffc", "hhc", "h+h-c", "hec-p", "hec-m", "hfc-p", "hfc-m"):
        errs = []
        for eta in (1e-2, 1e-3):
            etap = etap_from(eta, hbar, c)
            trig = trig_structure_function(rid, x, eta, etap, hbar, c)
            rat = trig_structure_function(rid, x, eta, etap, hbar, c, rational=True)
            errs.append(abs(trig - rat))
        assert errs[1] < 1e-5, rid
        # O(eta^2): a decade of eta gains about two decades of error
        assert errs[1] < errs[0] * 0.02 or errs[1] < 1e-12, rid


def test_eec_limit_is_rational_structure_function():
    hbar = 1.0
    x = 0.7 + 0.2j
    eta = 1e-4
    got = trig_structure_function("eec", x, eta, eta, hbar, 0.0)
    want = (x - 1j * hbar) / (x + 1j * hbar)
    assert abs(got - want) < 1e-7


def test_c_zero_periods_coincide():
    hbar, eta = 1.0, 0.3
    etap = etap_from(eta, hbar, 0.0)
    assert abs(etap - eta) < 1e-15
    # h+h-c at c=0 has numerator = denominator pattern swapped between
    # periods; with eta' = eta the hhc function is exactly 1
    val = trig_structure_function("hhc", 0.9 + 0.1j, eta, etap, hbar, 0.0)
    assert abs(val - 1.0) < 1e-12


def test_eta_constraint_enforced():
    with pytest.raises(EtaConstraintError):
        check_eta_constraint(0.1, 0.1, 1.0, 1.0)
    with pytest.raises(EtaConstraintError):
        trig_structure_function("eec", 1.0, 1e-3, 1e-3, 1.0, 2.0)


def test_twist_group_law():
    # omega_0 = identity; omega_a then omega_{-a} = identity on modes
    assert twist_mode("e", 0.7, 0.0) == (0.7, 1.0, 0.0)
    lam, a = 0.3, 1.1
    shifted, w, d = twist_mode("e", lam, a)
    back, w2, d2 = twist_mode("e", shifted, -a)
    assert back == lam and w * w2 == 1.0 and d == d2 == 0.0
    assert twist_mode("f", lam, a)[0] == lam - a
    kind, weight = twist_current("hp", a)
    assert kind == "central" and weight == a / 2


def test_twist_cartan_delta_term():
    # at c != 0 the Cartan mode picks up the sh(c hbar a/2) delta weight
    lam, a, c, hbar = 0.5, 0.9, 1.0, 1.0
    _, w, d = twist_mode("h", lam, a, c=c, hbar=hbar)
    assert abs(w - math.exp(c * hbar * a / 2)) < 1e-15
    assert abs(d - 4.0 / hbar * math.sinh(c * hbar * a / 2)) < 1e-15
    _, w0, d0 = twist_mode("h", lam, a, c=0.0, hbar=hbar)
    assert w0 == 1.0 and d0 == 0.0


def test_kappa_h_lambda_zero_identity():
    prof = lambda x: math.exp(-x * x)
    assert kappa_to_h(prof, 0.0, 3) == prof(0.0)
    assert h_to_kappa(prof, 0.0, 3) == prof(0.0)


def test_kappa_h_depth2_equals_spec_form():
    import numpy as np
    from yangcheck.quadrature import panel_nodes

    prof = lambda x: math.exp(-x * x)
    lam, hbar = 0.8, 1.0
    got = kappa_to_h(prof, lam, 2, hbar=hbar)
    t, w = panel_nodes(0.0, lam, 24)
    conv = sum(ww * prof(tt) * prof(lam - tt) for tt, ww in zip(t, w))
    want = prof(lam) + hbar / 2.0 * conv
    assert abs(got - want) < 1e-10


def test_kappa_h_round_trip():
    prof = lambda x: math.exp(-x * x)
    lam, hbar = 0.6, 0.5
    depth = 3
    h_of_k = lambda x: kappa_to_h(prof, x, depth, hbar=hbar, nodes=20)
    back = h_to_kappa(h_of_k, lam, depth, hbar=hbar, nodes=20)
    # round-trip error bounded by the first dropped nesting depth
    bound = abs(hbar ** depth / math.factorial(depth + 1)) * (lam ** depth)
    assert abs(back - prof(lam)) < 10 * bound + 1e-9


def test_kappa_h_rejects_bad_order():
    with pytest.raises(ValueError):
        kappa_to_h(lambda x: x, 1.0, 0)


def test_shifted_parameter_consistency():
    ok, trace = shifted_parameter_consistency()
    assert ok
    assert all(t[-1] for t in trace)


def test_hh_rewrites_as_eq1():
    assert hh_rewrites_as_eq1(0.8 + 0.2j, eta=0.07, hbar=1.0, c=1.0)
    assert hh_rewrites_as_eq1(1.4 - 0.1j, eta=0.11, hbar=0.7, c=2.0)
