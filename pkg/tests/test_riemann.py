import cmath
import math

import numpy as np
import pytest

from yangcheck.quadrature import QuadratureSpec
from yangcheck.ratfield import Rat, V
from yangcheck.riemann import (
    MeroFn,
    NonDecaying,
    PoleOnContour,
    SplitError,
    circle_split,
    circle_split_quadrature,
    laplace_synthesis,
    line_split,
    line_split_quadrature,
    mode_invert_circle,
    mode_invert_line,
    mode_invert_line_quadrature,
    strip_split,
    strip_split_quadrature,
)

nu = V("nu")


def test_circle_split_pole_at_origin():
    f = MeroFn.from_poles((0j, [1.0]))
    res = circle_split(f)
    assert res.plus_part.poles == ((0j, (1.0,)),)
    assert res.minus_part.is_zero()
    assert res.reconstruction(f)


def test_circle_split_constant():
    f = MeroFn(poly=(1.0,))
    res = circle_split(f)
    assert res.plus_part.is_zero()
    assert res.minus_part.poly == (-1.0,)
    assert res.reconstruction(f)


def test_circle_split_monomial():
    f = MeroFn(poly=(0.0, 0.0, 1.0))  # v^2
    res = circle_split(f)
    assert res.plus_part.is_zero()
    assert res.minus_part.poly == (0, 0, -1.0)
    assert res.reconstruction(f)


def test_circle_split_quadrature_matches_residues():
    f = MeroFn.from_poles((0.2 + 0.1j, [1.5]), (3.0 + 0j, [-0.5]))
    res = circle_split(f)  # radius 1: first pole inside, second outside
    u = 1.0 * cmath.exp(0.7j)
    plus_q, minus_q = circle_split_quadrature(f, u, 0.6, 1.8)
    assert abs(plus_q - res.plus_part(u)) < 1e-10
    assert abs(minus_q - res.minus_part(u)) < 1e-10


def test_line_split_pole_above():
    f = MeroFn.from_poles((0.3 + 1.0j, [2.0]))
    res = line_split(f, im_ref=0.0)
    assert res.plus_part.poles == f.poles
    assert res.minus_part.is_zero()


def test_line_split_pole_below():
    f = MeroFn.from_poles((0.3 - 1.0j, [2.0]))
    res = line_split(f, im_ref=0.0)
    assert res.plus_part.is_zero()
    assert res.minus_part.poles == ((0.3 - 1.0j, (-2.0,)),)


def test_line_split_linearity_and_reconstruction():
    f1 = MeroFn.from_poles((1j, [1.0]))
    f2 = MeroFn.from_poles((-2j, [0.7]))
    both = f1 + f2
    r1, r2, rb = line_split(f1), line_split(f2), line_split(both)
    assert (r1.plus_part + r2.plus_part).equals(rb.plus_part)
    assert rb.reconstruction(both)


def test_line_split_rejects_nondecaying_and_contour_pole():
    with pytest.raises(NonDecaying):
        line_split(MeroFn(poly=(1.0,)))
    with pytest.raises(PoleOnContour):
        line_split(MeroFn.from_poles((1.0 + 0j, [1.0])), im_ref=0.0)


def test_line_quadrature_matches_residue_split():
    f = MeroFn.from_poles((0.5 + 1.3j, [1.0 + 0.2j]), (-1.0 - 0.8j, [0.4]))
    sym = line_split(f, im_ref=0.1)
    u = 0.3 + 0.1j
    num = line_split_quadrature(f, u, QuadratureSpec(nodes=48, decay_rate=1.0, tol=1e-12))
    assert abs(num.plus_part(u) - sym.plus_part(u)) < 1e-10
    assert abs(num.minus_part(u) - sym.minus_part(u)) < 1e-10
    # numeric reconstruction
    assert abs((num.plus_part(u) - num.minus_part(u)) - f(u)) < 1e-10


def test_continuous_delta_poisson_limit():
    # delta(u-v) = lim 1/(u-v-i eps) - 1/(u-v+i eps): smeared against a
    # rational test function it reproduces the value at u
    f = MeroFn.from_poles((2.0j, [1.0]), (-1.5j, [0.5]))
    u = 0.4
    errs = []
    for eps in (0.2, 0.1, 0.05):
        xs = np.linspace(-60, 60, 8001)
        ker = (1.0 / (u - xs - 1j * eps) - 1.0 / (u - xs + 1j * eps)) / (2j * math.pi)
        fv = np.array([f(float(x)) for x in xs])
        val = np.trapezoid(ker * fv, xs)
        errs.append(abs(val - f(u)))
    assert errs[-1] < 0.1 * abs(f(u))
    assert errs[2] < errs[0]


def test_strip_residue_matches_quadrature():
    eta = 0.3
    f = MeroFn.from_poles((0.4 + 1.1j, [1.0]), (-0.2 - 0.9j, [0.6]))
    u = 0.1 + 0.05j
    gp, gm = strip_split(f, u, eta, images=600)
    gp_q = strip_split_quadrature(f, u, eta, "+")
    gm_q = strip_split_quadrature(f, u, eta, "-")
    assert abs(gp - gp_q) < 1e-7
    assert abs(gm - gm_q) < 1e-7


def test_strip_reconstruction_and_quasi_periodicity():
    eta = 0.5
    f = MeroFn.from_poles((0.3 + 1.2j, [0.8]), (0.1 - 2.5j, [-0.3]))
    u = 0.2 + 0.1j
    gp, gm = strip_split(f, u, eta, images=800)
    assert abs((gp - gm) - f(u)) < 1e-9
    # g-(u) = -g+(u - i/eta): continuation crosses no pole if the strip
    # below u of height 1/eta is pole free; here poles sit outside it
    gp_shift, _ = strip_split(f, u - 1j / eta, eta, images=800)
    assert abs(gm + gp_shift) < 1e-8


def test_strip_pole_term_assignment():
    # single pole above u: the pole term lives in g+; g- is the small
    # alternating image tail, vanishing O(eta) as eta -> 0
    u = 0.0 + 0.0j
    f = MeroFn.from_poles((2.0j, [1.0]))
    for eta in (0.15, 0.1, 0.05):
        gp, gm = strip_split(f, u, eta, images=800)
        pole_term = math.pi * eta / cmath.sinh(math.pi * eta * (u - 2.0j))
        assert abs(gp - pole_term) < 1.5 * eta
        assert abs(gm) < 1.5 * eta  # no pole term on the minus side
    _, gm1 = strip_split(f, u, 0.15, images=800)
    _, gm2 = strip_split(f, u, 0.05, images=800)
    assert abs(gm2) < abs(gm1)


def test_strip_to_line_degeneration_quadratic_for_fast_decay():
    # zero total residue (1/v^2 decay): strip -> line at O(eta^2)
    f = MeroFn.from_poles((1.5j, [1.0]), (2.5j, [-1.0]))
    u = 0.0j
    line = line_split(f, im_ref=0.0)
    target = line.plus_part(u)
    etas = [0.02, 0.01, 0.005, 0.0025]
    errs = []
    for eta in etas:
        gp, _ = strip_split(f, u, eta, images=1500)
        errs.append(abs(gp - target))
    slope = np.polyfit(np.log(etas), np.log(errs), 1)[0]
    assert abs(slope - 2.0) < 0.1


def test_strip_to_line_degeneration_linear_for_slow_decay():
    # nonzero total residue (1/v decay): the image tail enters at O(eta)
    f = MeroFn.from_poles((1.5j, [1.0]))
    u = 0.0j
    target = line_split(f, im_ref=0.0).plus_part(u)
    etas = [0.1, 0.05, 0.025]
    errs = [abs(strip_split(f, u, eta, images=1500)[0] - target) for eta in etas]
    slope = np.polyfit(np.log(etas), np.log(errs), 1)[0]
    assert abs(slope - 1.0) < 0.15


def test_mode_invert_circle_single_mode():
    u = V("u")
    modes = mode_invert_circle(nu / u, None, "e", 4, nu=nu)
    assert modes == {0: Rat.one()}


def test_mode_invert_circle_cartan_unit():
    u = V("u")
    modes = mode_invert_circle(Rat.one() + nu / u, None, "h", 4, nu=nu)
    assert modes == {0: Rat.one()}


def test_mode_invert_circle_support_violation():
    u = V("u")
    with pytest.raises(SplitError):
        mode_invert_circle(nu * u, None, "e", 4, nu=nu)  # positive power in plus part


def test_mode_invert_circle_central_shift():
    # e+(u) = nu/(u + c nu/4) expands purely once the shift is undone
    u, c = V("u"), V("c")
    fplus = nu / (u + c * nu / 4)
    modes = mode_invert_circle(fplus, None, "e", 3, nu=nu, c=c)
    assert modes[0] == Rat.one()
    assert all(modes.get(k, Rat.zero()).is_zero() for k in (1, 2, 3))


def test_mode_invert_line_closed_form():
    hbar = 1.0
    w = 0.3 + 1.0j
    poles = ((w, (hbar / 1j,)),)  # e+(u) = hbar/(i(u-w))
    for lam in (0.5, 1.0, 2.0):
        val = mode_invert_line(poles, lam, hbar=hbar)
        assert abs(val - cmath.exp(1j * lam * w)) < 1e-12
    assert mode_invert_line(poles, -1.0, hbar=hbar) == 0j
    # lambda = 0: symmetric principal value gives half the limit
    assert abs(mode_invert_line(poles, 0.0, hbar=hbar) - 0.5) < 1e-12


def test_mode_invert_line_quadrature_matches():
    hbar = 1.0
    w = 0.2 + 1.5j
    poles = ((w, (hbar / 1j,)),)
    f = MeroFn.from_poles(*poles)
    for lam in (0.7, 1.8):
        q = mode_invert_line_quadrature(f, lam, height=-0.5, hbar=hbar)
        assert abs(q - cmath.exp(1j * lam * w)) < 1e-8


def test_laplace_round_trip():
    # rational plus-current -> quadrature modes -> quadrature resynthesis:
    # the exponentially damped mode profile makes both directions benign
    hbar = 1.0
    height = -0.7
    f = MeroFn.from_poles((0.4 + 1.2j, [0.8 - 0.3j]), (-0.6 + 2.0j, [0.5j]))

    def mode_fn(lam):
        return mode_invert_line_quadrature(
            f, lam, height, halfwidth=50.0,
            spec=QuadratureSpec(nodes=48, decay_rate=1.0, tol=1e-12), hbar=hbar,
        )

    closed = lambda lam: mode_invert_line(f.poles, lam, hbar=hbar)
    for lam in (0.5, 1.3):
        assert abs(mode_fn(lam) - closed(lam)) < 1e-9

    for u in (0.3 + height * 1j, -0.8 + height * 1j):
        back = laplace_synthesis(
            closed, u, "+", hbar=hbar,
            spec=QuadratureSpec(nodes=64, decay_rate=1.2 - abs(height), tol=1e-12),
        )
        rel = abs(back - f(u)) / abs(f(u))
        assert rel < 1e-8
