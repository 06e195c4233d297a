from yangcheck.catalog import NU, catalog_get
from yangcheck.extraction import (
    extract_bicoef,
    extract_derivation_coef,
    run_mode_equivalence,
)
from yangcheck.freealg import NCPoly


def test_ee_extraction_is_commut_dis():
    got = extract_bicoef("ee", 2, 1, 0)
    want = catalog_get("commut-dis-e").payload["instantiate"](2, 1, 0) * (NU * NU)
    assert got == want


def test_cceta_extraction_matches_comm3_at_c0():
    for k, n in ((0, 0), (2, -1), (-3, 1), (-2, -2)):
        got = extract_bicoef("CCeta", k, n, 0)
        want = catalog_get("comm3-ef").payload["instantiate"](k, n, 0) * (NU * NU)
        assert got == want, (k, n)


def test_cceta_extraction_c2_structure():
    # second order in c against the closed binomial forms
    got = extract_bicoef("CCeta", 2, -2, 3)
    want = catalog_get("commut1").payload["instantiate"](2, 1, 3) * (NU * NU)
    assert got == want


def test_derivation_extraction():
    got = extract_derivation_coef("d-e", 3)
    want = catalog_get("comm1-e").payload["instantiate"](0, 3, 0) * NU
    assert got == want


def test_full_equivalence_window_4():
    fails = run_mode_equivalence(window=4, cmax=6)
    assert fails == []


def test_extraction_fails_loudly_on_wrong_catalog_form():
    # sanity: the equality test is not vacuous
    got = extract_bicoef("ee", 1, 0, 0)
    tampered = got + NCPoly.gen("e", 0)
    assert got != tampered
