"""Riemann factorization problems for a circle, a line, and a strip.

A meromorphic input is an explicit polynomial part plus pole/residue data
(``MeroFn``); the split into plus/minus pieces analytic in complementary
regions is then residue calculus and is exact.  Each problem also has a
quadrature path along the defining Cauchy contour for cross-checking.

Circle problem: plus part regular at infinity (only negative powers), minus
part regular at zero.  Line problem: plus part analytic below all poles,
minus part analytic above.  Strip problem: kernel pi*eta/sh(pi*eta(u-v)),
piecewise analytic in horizontal strips of height 1/eta with the
quasi-periodicity g_minus(u) = -g_plus(u - i/eta).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .quadrature import QuadratureSpec, integrate_halfline, panel_nodes
from .ratfield import Poly, Rat
from .series import ratfunc_expand


class SplitError(ValueError):
    pass


class PoleOnContour(SplitError):
    pass


class NonDecaying(SplitError):
    pass


def _cx(x):
    if isinstance(x, Rat):
        return complex(x.eval_complex({}))
    return complex(x)


@dataclass(frozen=True)
class MeroFn:
    """poly[k] * u^k  +  sum over poles p of residues[j] / (u - p)^(j+1)."""

    poly: tuple = ()
    poles: tuple = ()  # ((location, (r1, r2, ...)), ...)

    @staticmethod
    def from_poles(*poles, poly=()):
        return MeroFn(tuple(poly), tuple((p, tuple(rs)) for p, rs in poles))

    def is_zero(self):
        return not self.poly and all(
            all(_is_zero_val(r) for r in rs) for _, rs in self.poles
        )

    def decays(self):
        return not any(not _is_zero_val(c) for c in self.poly)

    def decay_power(self):
        """Leading power of 1/u as u -> infinity (0, 1, or 2)."""
        if not self.decays():
            return 0
        first = sum(_cx(rs[0]) for _, rs in self.poles if rs)
        return 1 if abs(first) > 1e-13 else 2

    def __call__(self, u):
        val = 0j
        for k, c in enumerate(self.poly):
            val += _cx(c) * u ** k
        for p, rs in self.poles:
            d = u - _cx(p)
            for j, r in enumerate(rs, start=1):
                val += _cx(r) / d ** j
        return val

    def __neg__(self):
        return MeroFn(
            tuple(-_as_val(c) for c in self.poly),
            tuple((p, tuple(-_as_val(r) for r in rs)) for p, rs in self.poles),
        )

    def __sub__(self, other):
        return self + (-other)

    def __add__(self, other):
        np_ = list(self.poly) + [0] * max(0, len(other.poly) - len(self.poly))
        for k, c in enumerate(other.poly):
            np_[k] = _val_add(np_[k], c)
        merged = {}
        for p, rs in self.poles + other.poles:
            key = _pole_key(p)
            if key in merged:
                loc, old = merged[key]
                n = max(len(old), len(rs))
                new = [
                    _val_add(
                        old[j] if j < len(old) else 0,
                        rs[j] if j < len(rs) else 0,
                    )
                    for j in range(n)
                ]
                merged[key] = (loc, tuple(new))
            else:
                merged[key] = (p, tuple(rs))
        poles = tuple(
            (p, rs)
            for p, rs in merged.values()
            if any(not _is_zero_val(r) for r in rs)
        )
        poly = tuple(np_)
        while poly and _is_zero_val(poly[-1]):
            poly = poly[:-1]
        return MeroFn(poly, poles)

    def equals(self, other, tol=0.0):
        diff = self - other
        if tol == 0.0:
            return diff.is_zero()
        return all(
            abs(_cx(r)) <= tol for _, rs in diff.poles for r in rs
        ) and all(abs(_cx(c)) <= tol for c in diff.poly)

    def as_rat(self, var="u"):
        u = Rat.var(var)
        out = Rat.zero()
        for k, c in enumerate(self.poly):
            out = out + _as_rat_val(c) * u ** k
        for p, rs in self.poles:
            base = u - _as_rat_val(p)
            for j, r in enumerate(rs, start=1):
                out = out + _as_rat_val(r) / base ** j
        return out


def _as_val(x):
    return x if isinstance(x, Rat) else x


def _val_add(a, b):
    if isinstance(a, Rat) or isinstance(b, Rat):
        ra = a if isinstance(a, Rat) else Rat.const(a) if isinstance(a, int) else None
        rb = b if isinstance(b, Rat) else Rat.const(b) if isinstance(b, int) else None
        if ra is not None and rb is not None:
            return ra + rb
    if isinstance(a, Rat):
        a = _cx(a)
    if isinstance(b, Rat):
        b = _cx(b)
    return a + b


def _is_zero_val(x):
    if isinstance(x, Rat):
        return x.is_zero()
    return x == 0


def _as_rat_val(x):
    if isinstance(x, Rat):
        return x
    if isinstance(x, int):
        return Rat.const(x)
    raise TypeError("symbolic path needs Rat or int values")


def _pole_key(p):
    return p if isinstance(p, Rat) else complex(p)


@dataclass(frozen=True)
class SplitResult:
    plus_part: object
    minus_part: object
    problem: str  # circle | line | strip
    contour: dict = field(default_factory=dict)

    def reconstruction(self, f, u=None, tol=0.0):
        """plus - minus == f; exact for MeroFn parts, pointwise otherwise."""
        if isinstance(self.plus_part, MeroFn) and isinstance(f, MeroFn):
            return (self.plus_part - self.minus_part).equals(f, tol=tol)
        val = self.plus_part(u) - self.minus_part(u)
        return abs(val - f(u)) <= tol


# -- circle ------------------------------------------------------------


def circle_split(f, radius=1.0, inside=None):
    """Split along a circle: poles inside -> plus part, the rest -> minus.

    `inside` optionally fixes the classification per pole key (required for
    symbolic pole locations, which have no numeric radius).
    """
    plus_poles, minus_poles = [], []
    for p, rs in f.poles:
        key = _pole_key(p)
        if inside is not None and key in inside:
            is_in = inside[key]
        elif isinstance(p, Rat) and not p.num.variables() and not p.den.variables():
            is_in = abs(_cx(p)) < radius
        elif isinstance(p, Rat):
            raise SplitError(
                f"symbolic pole {p!r} needs an explicit inside/outside tag"
            )
        else:
            if abs(abs(complex(p)) - radius) < 1e-12:
                raise PoleOnContour(f"pole {p} sits on the circle |u| = {radius}")
            is_in = abs(complex(p)) < radius
        (plus_poles if is_in else minus_poles).append((p, rs))
    plus = MeroFn((), tuple(plus_poles))
    minus = -MeroFn(tuple(f.poly), tuple(minus_poles))
    return SplitResult(plus, minus, "circle", {"radius": radius})


def circle_split_quadrature(f, u, radius_in, radius_out, nodes=64, segments=64):
    """Cauchy integrals over circles |v| = radius_in (plus) and radius_out."""

    def ring(r):
        total = 0j
        thetas = np.linspace(0.0, 2 * math.pi, segments + 1)
        for a, b in zip(thetas[:-1], thetas[1:]):
            t, w = panel_nodes(a, b, nodes)
            v = r * np.exp(1j * t)
            dv = 1j * v
            vals = np.array([f(vv) for vv in v]) / (u - v) * dv
            total += np.dot(w, vals)
        return total / (2j * math.pi)

    return ring(radius_in), ring(radius_out)


# -- line ---------------------------------------------------------------


def line_split(f, im_ref=0.0, tol=1e-9):
    """Split by the horizontal line Im v = im_ref: poles above -> plus."""
    if not f.decays():
        raise NonDecaying("line problem needs input decaying at Re u -> +-inf")
    plus_poles, minus_poles = [], []
    for p, rs in f.poles:
        h = _cx(p).imag
        if abs(h - im_ref) < tol:
            raise PoleOnContour(f"pole {p} within {tol} of the contour line")
        (plus_poles if h > im_ref else minus_poles).append((p, rs))
    plus = MeroFn((), tuple(plus_poles))
    minus = -MeroFn((), tuple(minus_poles))
    return SplitResult(plus, minus, "line", {"im_ref": im_ref})


def _line_quad(f, u, height, spec):
    """(1/2pi i) * integral of f(v)/(u - v) along Im v = height.

    Head panels around Re u plus 1/t-substituted tails, so slowly decaying
    rational inputs still integrate to tolerance.
    """
    x0 = u.real
    w_head = max(
        10.0,
        4.0 * max((abs(_cx(p)) for p, _ in f.poles), default=1.0),
        4.0 * abs(u),
    )

    def integrand(x):
        v = x + 1j * height
        return f(v) / (u - v)

    total = 0j
    xs = np.linspace(-w_head, w_head, 48 + 1) + x0
    for a, b in zip(xs[:-1], xs[1:]):
        t, w = panel_nodes(a, b, spec.nodes)
        vals = np.array([integrand(x) for x in t])
        total += np.dot(w, vals)
    # tails: x = x0 +- 1/t maps t in (0, 1/w_head] onto |x - x0| >= w_head,
    # and both substitutions carry measure +dt/t^2 once orientation is fixed
    for sign in (+1.0, -1.0):
        t, w = panel_nodes(0.0, 1.0 / w_head, spec.nodes)
        vals = []
        for tt in t:
            if tt == 0.0:
                vals.append(0j)
                continue
            x = x0 + sign / tt
            v = x + 1j * height
            vals.append(f(v) / (u - v) / tt ** 2)
        total += np.dot(w, np.array(vals))
    return total / (2j * math.pi)


def line_split_quadrature(f, u, spec=None, eps_contour=None, hbar=1.0):
    """Numeric Cauchy integrals above/below u.

    The contours sit at max(eps_contour, half the gap to the nearest pole)
    from u; eps_contour defaults to 1e-3 in units of hbar.
    """
    spec = spec or QuadratureSpec(nodes=32, decay_rate=1.0, tol=1e-12)
    eps = eps_contour if eps_contour is not None else 1e-3 * hbar
    gaps = [abs(_cx(p).imag - u.imag) for p, _ in f.poles]
    gap = min(gaps) if gaps else 1.0
    if gap < 1e-12:
        raise PoleOnContour("pole at the evaluation height")
    off = max(eps, gap / 2.0)
    plus = _line_quad(f, u, u.imag + off, spec)
    minus = _line_quad(f, u, u.imag - off, spec)
    return SplitResult(
        (lambda uu, val=plus: val),
        (lambda uu, val=minus: val),
        "line",
        {"offset": off},
    )


# -- strip --------------------------------------------------------------


def _strip_kernel(eta, x):
    return math.pi * eta / cmath.sinh(math.pi * eta * x)


def _euler_sum(terms):
    """Accelerated sum of a (near-)alternating series via repeated averaging."""
    sums = []
    acc = 0j
    for t in terms:
        acc += t
        sums.append(acc)
    tailwin = min(len(sums), 24)
    window = sums[-tailwin:]
    while len(window) > 1:
        window = [(a + b) / 2.0 for a, b in zip(window[:-1], window[1:])]
    return window[0]


def strip_split(f, u, eta, images=400, tol=1e-9):
    """Residue evaluation of the strip problem at the point u.

    g_plus collects pi*eta*r/sh(pi*eta(u-p)) over poles above u plus the
    alternating kernel-image tail -sum_k (-1)^k f(u + i k/eta); g_minus the
    mirror.  The alternating tails are Euler-accelerated.  Only simple poles
    are supported on this path; use strip_split_quadrature for anything else.
    """
    if eta <= 0:
        raise SplitError("eta must be positive")
    if not f.decays():
        raise NonDecaying("strip problem needs decaying input")
    for p, rs in f.poles:
        if len(rs) > 1:
            raise SplitError("residue strip path handles simple poles only")
        if abs(_cx(p).imag - u.imag) < tol:
            raise PoleOnContour(f"pole {p} at the contour height")

    def pole_sum(side):
        tot = 0j
        for p, (r,) in f.poles:
            above = _cx(p).imag > u.imag
            if (side == "+") == above:
                tot += _cx(r) * _strip_kernel(eta, u - _cx(p))
        return tot

    def image_tail(side):
        sgn = 1j if side == "+" else -1j
        terms = [(-1) ** k * f(u + sgn * k / eta) for k in range(1, images + 1)]
        tot = _euler_sum(terms)
        return tot if side == "-" else -tot

    gp = pole_sum("+") + image_tail("+")
    gm = -pole_sum("-") + image_tail("-")
    return gp, gm


def strip_split_quadrature(f, u, eta, side, nodes=32, offset=None):
    """pi*eta/(2pi i) * integral of f(v)/sh(pi*eta(u-v)) above/below u."""
    if eta <= 0:
        raise SplitError("eta must be positive")
    gaps = [abs(_cx(p).imag - u.imag) for p, _ in f.poles]
    gap = min(gaps) if gaps else 1.0
    off = offset if offset is not None else min(gap / 2.0, 0.45 / eta)
    height = u.imag + off if side == "+" else u.imag - off
    reach = max(40.0 / (math.pi * eta), 10.0)
    x0 = u.real
    edges = [0.0]
    step = min(1.0, reach / 64)
    while edges[-1] < reach:
        edges.append(min(edges[-1] + step, reach))
        step *= 1.3
    total = 0j
    for sgn in (+1.0, -1.0):
        for a, b in zip(edges[:-1], edges[1:]):
            t, w = panel_nodes(a, b, nodes)
            vals = []
            for tt in t:
                v = x0 + sgn * tt + 1j * height
                vals.append(f(v) * _strip_kernel(eta, u - v))
            total += np.dot(w, np.array(vals))
    return total / (2j * math.pi)


# -- mode inversion -----------------------------------------------------


def mode_invert_circle(fplus, fminus, kind, nmax, nu=None, c=None, var="u"):
    """Extract integer modes from a +/- pair of rational generating functions.

    Implements the contour-extraction definitions: the central shifts
    u -> u -+ c*nu/4 (kind-dependent direction) are applied exactly before
    coefficient extraction, the Cartan series drops its unit first, and the
    result is normalized by 1/nu per the (1/2 pi hbar) contour prefactor.
    Plus series must be supported on modes k >= 0, minus on k < 0.

    Inputs are Rat generating functions or RMatrix of them (entrywise).
    """
    from .linalg import RMatrix

    nu = nu if nu is not None else Rat.var("nu")
    c = c if c is not None else Rat.zero()
    if isinstance(fplus, RMatrix) or isinstance(fminus, RMatrix):
        shape = (fplus or fminus).shape
        per_entry = {}
        for i in range(shape[0]):
            for j in range(shape[1]):
                ep = fplus[i, j] if fplus is not None else None
                em = fminus[i, j] if fminus is not None else None
                if kind == "h" and i != j:
                    # off-diagonal entries carry no unit to subtract
                    per_entry[i, j] = mode_invert_circle(
                        ep + Rat.one() if ep is not None else None,
                        em + Rat.one() if em is not None else None,
                        "h", nmax, nu, c, var,
                    )
                else:
                    per_entry[i, j] = mode_invert_circle(ep, em, kind, nmax, nu, c, var)
        out = {}
        for (i, j), modes_ij in per_entry.items():
            for n, val in modes_ij.items():
                m = out.setdefault(n, [[Rat.zero()] * shape[1] for _ in range(shape[0])])
                m[i][j] = val
        return {n: RMatrix(rows) for n, rows in out.items()}

    u = Rat.var(var)
    shift = (c * nu) * Rat.const(1) / 4
    out = {}
    if kind == "e":
        sp, sm = -shift, +shift
    elif kind == "f":
        sp, sm = +shift, -shift
    elif kind == "h":
        sp = sm = Rat.zero()
    else:
        raise ValueError(f"unknown current kind {kind!r}")

    def modes(fn, sign, region, want):
        if fn is None:
            return
        g = fn.subs({var: u + (sp if sign == "+" else sm)})
        if kind == "h":
            g = g - Rat.one()
        depth = nmax + 2
        ser = ratfunc_expand(g, var, region, depth)
        for e, coef in ser.coeffs.items():
            n = -e - 1
            if not want(n):
                raise SplitError(
                    f"{kind}{sign} series has mode {n} outside its declared support"
                )
            val = coef / nu if sign == "+" else -(coef / nu)
            if abs(n) <= nmax:
                out[n] = val

    modes(fplus, "+", "inf", lambda n: n >= 0)
    modes(fminus, "-", "zero", lambda n: n < 0)
    return out


def mode_invert_line(fn_plus_poles, lam, c_weight=0.0, hbar=1.0):
    """Laplace mode of a plus half-current given as simple pole/residue data.

    hat(e)_lambda = (e^{c hbar |lambda|/4} / 2 pi hbar) * closed contour sum:
    for lambda > 0 the contour closes upward onto the listed poles (all in
    the upper half-plane); lambda < 0 closes downward and yields 0.
    The lambda = 0 value is the symmetric principal-value limit.
    """
    if lam < 0:
        return 0j
    weight = math.exp(c_weight * hbar * abs(lam) / 4.0)
    if lam == 0:
        acc = 0j
        for p, (r,) in fn_plus_poles:
            acc += _cx(r) * 1j * math.pi
        return weight * acc / (2 * math.pi * hbar)
    acc = 0j
    for p, (r,) in fn_plus_poles:
        pc = _cx(p)
        if pc.imag <= 0:
            raise SplitError("plus-branch pole data must lie in the upper half-plane")
        acc += _cx(r) * cmath.exp(1j * lam * pc)
    return weight * acc * (2j * math.pi) / (2 * math.pi * hbar)


def mode_invert_line_quadrature(fn, lam, height, halfwidth=40.0, spec=None, hbar=1.0):
    """Laplace inversion along Im u = height by quadrature.

    e^{i lam u} only oscillates along the real direction, so the tails are
    rotated vertically (upward for lam > 0, downward for lam < 0), where the
    exponential supplies the decay.  `halfwidth` must clear the real parts
    of all poles of fn on the rotated side.
    """
    spec = spec or QuadratureSpec(nodes=48, decay_rate=1.0, tol=1e-10)
    if lam == 0:
        raise SplitError("use the symmetric closed form for lambda = 0")

    def g(u):
        return cmath.exp(1j * lam * u) * fn(u)

    total = 0j
    xs = np.linspace(-halfwidth, halfwidth, 33)
    pts = [x + 1j * height for x in xs]
    for a, b in zip(pts[:-1], pts[1:]):
        t, w = panel_nodes(0.0, 1.0, spec.nodes)
        z = a + (b - a) * t
        total += (b - a) * np.dot(w, np.array([g(zz) for zz in z]))
    vert = 1j if lam > 0 else -1j
    sub = QuadratureSpec(nodes=spec.nodes, decay_rate=abs(lam), tol=spec.tol)
    total += integrate_halfline(g, halfwidth + 1j * height, vert, sub)
    total -= integrate_halfline(g, -halfwidth + 1j * height, vert, sub)
    return total / (2 * math.pi * hbar)


def laplace_synthesis(mode_fn, u, support, c_weight=0.0, hbar=1.0, spec=None):
    """hbar * integral over the declared half-line of e^{-i lam u} modes."""
    spec = spec or QuadratureSpec(nodes=48, decay_rate=1.0, tol=1e-10)
    direction = 1.0 if support == "+" else -1.0
    decay = abs(u.imag) if u.imag * direction < 0 else spec.decay_rate

    def g(lam):
        w = math.exp(-c_weight * hbar * abs(lam) / 4.0)
        return cmath.exp(-1j * lam * u) * mode_fn(lam) * w

    return hbar * integrate_halfline(
        g, 0.0, direction, QuadratureSpec(nodes=spec.nodes, decay_rate=max(decay, 0.05), tol=spec.tol)
    )
