import pytest

from yangcheck.ratfield import Rat, V
from yangcheck.series import (
    BiSeries,
    LaurentSeries,
    RegionError,
    TruncationError,
    delta_apply,
    delta_from_kernel_difference,
    formal_delta,
    kernel_expansion,
    ratfunc_expand,
    series_equal,
)

u, w, nu = V("u"), V("w"), V("nu")


def test_expand_kernel_at_infinity():
    s = ratfunc_expand(1 / (u - w), "u", "inf", 3)
    # sum_{k=0..2} w^k u^{-k-1}
    assert s.coef(-1) == Rat.one()
    assert s.coef(-2) == w
    assert s.coef(-3) == w * w
    assert s.floor == -3
    with pytest.raises(TruncationError):
        s.coef(-4)


def test_expand_kernel_at_zero():
    s = ratfunc_expand(1 / (u - w), "u", "zero", 3)
    # -sum_{k=0..2} u^k w^{-k-1}
    assert s.coef(0) == -1 / w
    assert s.coef(1) == -1 / (w * w)
    assert s.coef(2) == -1 / (w * w * w)


def test_expand_ratio_long_division():
    s = ratfunc_expand((u - nu) / (u + nu), "u", "inf", 2)
    assert s.coef(0) == Rat.one()
    assert s.coef(-1) == -2 * nu
    assert s.coef(-2) == 2 * nu * nu


def test_expand_resums_to_input():
    f = (u - nu) / ((u + nu) * u)
    s = ratfunc_expand(f, "u", "inf", 8)
    # numeric resummation check on a large |u|
    env = {"u": 40.0 + 3.0j, "nu": 0.7 + 0j}
    val = sum(complex(c.eval_complex(env)) * env["u"] ** e for e, c in s.coeffs.items())
    assert abs(val - f.eval_complex(env)) < 1e-10


def test_expand_pole_at_zero_gives_laurent():
    s = ratfunc_expand(1 / u, "u", "zero", 2)
    assert s.coef(-1) == Rat.one()
    assert s.coef(0).is_zero()


def test_laurent_mul_truncation_bookkeeping():
    a = ratfunc_expand(1 / (u - w), "u", "inf", 5)
    b = ratfunc_expand(1 / (u - 2 * w), "u", "inf", 5)
    p = a * b
    exact = ratfunc_expand(1 / ((u - w) * (u - 2 * w)), "u", "inf", 4)
    ok, rep = series_equal(p.truncate(floor=-4), exact, 4)
    assert ok, rep
    # conservative floor: floor_a + top_b = -5 + (-1) = -6... tightest valid
    assert p.floor <= -4


def test_region_mismatch_is_an_error():
    a = kernel_expansion("u", "v", "u>v", 4)
    b = kernel_expansion("u", "v", "u<v", 4)
    with pytest.raises(RegionError):
        series_equal(a, b, 3)


def test_delta_from_kernel_difference_matches_formal_delta():
    d1 = delta_from_kernel_difference("u", "v", 6)
    d2 = formal_delta("u", "v", 6)
    ok, rep = series_equal(d1, d2, 6)
    assert ok, rep


def test_delta_apply_identity_and_defining_property():
    d = delta_apply(Rat.one(), "u", "v", 5)
    ok, rep = series_equal(d, formal_delta("u", "v", 5), 5)
    assert ok, rep
    # g(u) delta = g(v) delta for g = u resp. g = v
    gu = delta_apply(V("u"), "u", "v", 5)
    gv = delta_apply(V("v"), "u", "v", 5)
    ok, rep = series_equal(gu, gv, 5)
    assert ok, rep


def test_delta_apply_shifted_polynomial():
    g = V("u") + nu
    left = formal_delta("u", "v", 8).mul_poly({(1, 0): Rat.one(), (0, 0): nu})
    right = delta_apply(g, "u", "v", 8)
    ok, rep = series_equal(left, right, 6)
    assert ok, rep


def test_delta_singular_on_diagonal_rejected():
    with pytest.raises(ValueError):
        delta_apply(1 / (V("u") - V("v")), "u", "v", 4)


def test_u_minus_v_annihilates_delta():
    d = formal_delta("u", "v", 8)
    z = d.mul_poly({(1, 0): Rat.one(), (0, 1): -Rat.one()})
    zero = BiSeries("u", "v", {}, "formal", 7, 7)
    ok, rep = series_equal(z, zero, 7)
    assert ok, rep


def test_shifted_delta_diagonals():
    s = V("s")
    d = formal_delta("u", "v", 6, shift=s, shift_order=3)
    # coefficient of u^{-k-1} v^{k-j} is binom(k,j) s^j
    assert d.coef(-3, 1) == 2 * s  # k=2, j=1
    assert d.coef(-3, 0) == s * s  # k=2, j=2
    # negative k: generalized binomial C(-1, 1) = -1
    assert d.coef(0, -2) == -s


def test_series_equal_reports_mismatch():
    a = ratfunc_expand(1 / (u - w), "u", "inf", 4)
    b = ratfunc_expand(1 / (u - 2 * w), "u", "inf", 4)
    ok, rep = series_equal(a, b, 3)
    assert not ok
    assert "mismatch" in rep


def test_truncation_error_when_window_insufficient():
    a = ratfunc_expand(1 / (u - w), "u", "inf", 2)
    b = ratfunc_expand(1 / (u - w), "u", "inf", 8)
    with pytest.raises(TruncationError):
        series_equal(a, b, 5)
