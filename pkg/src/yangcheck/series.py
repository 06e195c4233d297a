"""Truncated Laurent series and bivariate formal distributions.

Conventions
-----------
* Expansion at infinity (region ``"inf"``): finitely many nonnegative powers
  (all exponents above the stored maximum are exactly zero), truncated below.
  ``order`` keeps every exponent >= -order, i.e. ``order`` terms beyond the
  polynomial part.
* Expansion at zero (region ``"zero"``): finitely many negative powers,
  truncated above; ``order`` keeps every exponent <= order - 1.
* Two-sided objects (region ``"two"`` / bivariate ``"formal"``) are faithful
  only inside an explicit window.

The formal delta is the two-sided sum over u^n v^m with n + m = -1; its
region bookkeeping records which geometric expansion of 1/(u-v) produced
each half.  Region tags are never coerced silently: combining mismatched
regions raises ``RegionError``.

Coefficients can be any ring elements supporting +, -, * and zero testing
(Rat, free-algebra words, exact matrices); polynomial multipliers use Rat
scalars.
"""

from __future__ import annotations

from fractions import Fraction

from .ratfield import Poly, Rat


class RegionError(ValueError):
    """Incompatible expansion regions combined."""


class TruncationError(ValueError):
    """Requested coefficients outside the faithful window."""


def is_zero_coeff(x):
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


def _trim(coeffs):
    return {e: c for e, c in coeffs.items() if not is_zero_coeff(c)}


class LaurentSeries:
    """Truncated Laurent series in one variable.

    ``floor`` / ``ceil`` bound the faithful window; ``None`` means the series
    is exactly zero beyond its stored support on that side.
    """

    def __init__(self, var, coeffs, region, floor=None, ceil=None):
        if region not in ("inf", "zero", "two"):
            raise ValueError(f"unknown region {region!r}")
        self.var = var
        self.coeffs = _trim(coeffs)
        self.region = region
        self.floor = floor
        self.ceil = ceil
        if region == "inf" and floor is None:
            raise ValueError("region 'inf' requires a truncation floor")
        if region == "zero" and ceil is None:
            raise ValueError("region 'zero' requires a truncation ceiling")
        if region == "two" and (floor is None or ceil is None):
            raise ValueError("two-sided series require both bounds")

    def copy_with(self, coeffs=None, floor=..., ceil=...):
        return LaurentSeries(
            self.var,
            self.coeffs if coeffs is None else coeffs,
            self.region,
            self.floor if floor is ... else floor,
            self.ceil if ceil is ... else ceil,
        )

    def coef(self, e):
        if self.floor is not None and e < self.floor:
            raise TruncationError(f"exponent {e} below faithful floor {self.floor}")
        if self.ceil is not None and e > self.ceil:
            raise TruncationError(f"exponent {e} above faithful ceiling {self.ceil}")
        return self.coeffs.get(e, Rat.zero())

    def exponents(self):
        return sorted(self.coeffs)

    def _check_mate(self, other):
        if self.var != other.var:
            raise RegionError(f"variable mismatch {self.var!r} vs {other.var!r}")
        if self.region != other.region:
            raise RegionError(f"region mismatch {self.region!r} vs {other.region!r}")

    def __add__(self, other):
        self._check_mate(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        floor = _none_max(self.floor, other.floor)
        ceil = _none_min(self.ceil, other.ceil)
        return LaurentSeries(self.var, out, self.region, floor, ceil)

    def __neg__(self):
        return self.copy_with({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return self.copy_with({e: c * s for e, c in self.coeffs.items()})

    def shift_exponent(self, k):
        """Multiply by var**k."""
        return LaurentSeries(
            self.var,
            {e + k: c for e, c in self.coeffs.items()},
            self.region,
            None if self.floor is None else self.floor + k,
            None if self.ceil is None else self.ceil + k,
        )

    def __mul__(self, other):
        if isinstance(other, (Rat, Poly, int, Fraction)):
            return self.scale(other)
        self._check_mate(other)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                p = c1 * c2
                out[e] = out[e] + p if e in out else p
        floor = ceil = None
        if self.region == "inf":
            # unknown tail of one factor hits known top of the other
            floor = max(self.floor + _top(other), other.floor + _top(self))
        elif self.region == "zero":
            ceil = min(self.ceil + _bot(other), other.ceil + _bot(self))
        else:
            raise RegionError("two-sided series have no well-defined product")
        out = {
            e: c
            for e, c in out.items()
            if (floor is None or e >= floor) and (ceil is None or e <= ceil)
        }
        return LaurentSeries(self.var, out, self.region, floor, ceil)

    def truncate(self, floor=None, ceil=None):
        out = {
            e: c
            for e, c in self.coeffs.items()
            if (floor is None or e >= floor) and (ceil is None or e <= ceil)
        }
        return LaurentSeries(
            self.var,
            out,
            self.region,
            self.floor if floor is None else max(floor, self.floor or floor),
            self.ceil if ceil is None else min(ceil, self.ceil or ceil),
        )

    def __repr__(self):
        parts = [f"{c!r}*{self.var}^{e}" for e, c in sorted(self.coeffs.items())]
        win = f"[{self.floor},{self.ceil}]"
        return f"<LaurentSeries {self.region} {win} " + " + ".join(parts) + ">"


def _top(s):
    return max(s.coeffs, default=s.floor if s.floor is not None else 0)


def _bot(s):
    return min(s.coeffs, default=s.ceil if s.ceil is not None else 0)


def _none_max(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _none_min(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class PoleAtExpansionPoint(ValueError):
    pass


def _dense_rat_coeffs(poly, var):
    return [Rat(p) for p in poly.coeffs_in(var)]


def ratfunc_expand(f, var, region, order):
    """Expand a rational function of `var` as a truncated Laurent series.

    region "inf": valid for large |var|; keeps exponents >= -order.
    region "zero": valid for small |var|; keeps exponents <= order - 1.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    if not isinstance(f, Rat):
        f = Rat(f) if isinstance(f, Poly) else Rat.const(f)
    num = _dense_rat_coeffs(f.num, var)
    den = _dense_rat_coeffs(f.den, var)
    if all(c.is_zero() for c in num):
        if region == "inf":
            return LaurentSeries(var, {}, "inf", floor=-order)
        return LaurentSeries(var, {}, "zero", ceil=order - 1)

    if region == "inf":
        num, den = num[::-1], den[::-1]
    # strip leading zeros: these are poles/zeros at the expansion point
    shift_n = next(i for i, c in enumerate(num) if not c.is_zero())
    shift_d = next(i for i, c in enumerate(den) if not c.is_zero())
    if region == "inf":
        deg_n = len(num) - 1 - shift_n
        deg_d = len(den) - 1 - shift_d
        top = deg_n - deg_d  # highest exponent of var
        depth = top + order + 1  # local-coordinate terms down to var^{-order}
    else:
        top = shift_n - shift_d  # valuation of f at var = 0
        depth = (order - 1) - top + 1
    num, den = num[shift_n:], den[shift_d:]
    if depth <= 0:
        floor = -order if region == "inf" else None
        ceil = order - 1 if region == "zero" else None
        return LaurentSeries(var, {}, region, floor=floor, ceil=ceil)
    q = _series_div(num, den, depth)
    coeffs = {}
    for k, c in enumerate(q):
        e = (top - k) if region == "inf" else (top + k)
        if not c.is_zero():
            coeffs[e] = c
    if region == "inf":
        return LaurentSeries(var, coeffs, "inf", floor=-order)
    return LaurentSeries(var, coeffs, "zero", ceil=order - 1)


def _series_div(num, den, depth):
    """First `depth` coefficients of num/den as power series (den[0] != 0)."""
    d0 = den[0]
    out = []
    for k in range(depth):
        acc = num[k] if k < len(num) else Rat.zero()
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * out[k - j]
        out.append(acc / d0)
    return out


class BiSeries:
    """Bivariate formal distribution, faithful inside a finite window.

    Coefficient of ``u^a v^b`` is stored under key ``(a, b)``.  The faithful
    window is the rectangle |a| <= win_u, |b| <= win_v; constructors fill it
    exactly.  The region tag records the geometric expansion that produced
    rational kernels: "u>v", "u<v", or "formal" for genuine two-sided sums.
    """

    def __init__(self, var_u, var_v, coeffs, region, win_u, win_v):
        if region not in ("u>v", "u<v", "formal"):
            raise ValueError(f"unknown region {region!r}")
        self.vars = (var_u, var_v)
        self.coeffs = _trim(coeffs)
        self.region = region
        self.win_u = win_u
        self.win_v = win_v

    def coef(self, a, b):
        if abs(a) > self.win_u or abs(b) > self.win_v:
            raise TruncationError(f"({a},{b}) outside faithful window")
        return self.coeffs.get((a, b), Rat.zero())

    def _check_mate(self, other, allow_cross=False):
        if self.vars != other.vars:
            raise RegionError("variable mismatch")
        if not allow_cross and self.region != other.region:
            raise RegionError(
                f"region mismatch {self.region!r} vs {other.region!r}: "
                "expansions from different regions are never coerced"
            )

    def __add__(self, other):
        self._check_mate(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return BiSeries(
            *self.vars, out, self.region,
            min(self.win_u, other.win_u), min(self.win_v, other.win_v),
        )

    def __neg__(self):
        return BiSeries(
            *self.vars, {k: -c for k, c in self.coeffs.items()},
            self.region, self.win_u, self.win_v,
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return BiSeries(
            *self.vars, {k: c * s for k, c in self.coeffs.items()},
            self.region, self.win_u, self.win_v,
        )

    def mul_poly(self, poly_terms):
        """Multiply by a two-variable polynomial {(i, j): Rat scalar}.

        The faithful window shrinks by the largest exponent shifts.
        """
        out = {}
        du = max(abs(i) for i, _ in poly_terms)
        dv = max(abs(j) for _, j in poly_terms)
        for (a, b), c in self.coeffs.items():
            for (i, j), s in poly_terms.items():
                k = (a + i, b + j)
                p = c * s
                out[k] = out[k] + p if k in out else p
        return BiSeries(
            *self.vars, out, self.region, self.win_u - du, self.win_v - dv
        )

    def __repr__(self):
        n = len(self.coeffs)
        return (
            f"<BiSeries {self.region} win=({self.win_u},{self.win_v}) "
            f"{n} coeffs>"
        )


def kernel_expansion(var_u, var_v, region, window):
    """Expansion of 1/(u - v) in the given region, exact on the window."""
    coeffs = {}
    if region == "u>v":
        # sum_{k>=0} v^k u^{-k-1}
        for k in range(2 * window + 1):
            a, b = -k - 1, k
            if abs(a) <= window and abs(b) <= window:
                coeffs[(a, b)] = Rat.one()
    elif region == "u<v":
        for k in range(2 * window + 1):
            a, b = k, -k - 1
            if abs(a) <= window and abs(b) <= window:
                coeffs[(a, b)] = -Rat.one()
    else:
        raise ValueError("kernel_expansion needs 'u>v' or 'u<v'")
    return BiSeries(var_u, var_v, coeffs, region, window, window)


def formal_delta(var_u, var_v, window, shift=None, shift_order=None):
    """delta(u - v - s): two-sided sum of (v + s)^k u^{-k-1}.

    With s = 0 this is the difference of the two geometric expansions of
    1/(u - v).  A symbolic shift s spreads coefficients over the diagonals
    a + b = -1 - j with weight binom(k, j) s^j; `shift_order` caps j.
    """
    coeffs = {}
    if shift is None or (isinstance(shift, Rat) and shift.is_zero()):
        for k in range(-window - 1, window + 1):
            a, b = -k - 1, k
            if abs(a) <= window and abs(b) <= window:
                coeffs[(a, b)] = Rat.one()
        return BiSeries(var_u, var_v, coeffs, "formal", window, window)
    if shift_order is None:
        raise ValueError("symbolic shift requires shift_order")
    for a in range(-window, window + 1):
        k = -a - 1
        for j in range(shift_order + 1):
            b = k - j
            if abs(b) > window:
                continue
            w = _gen_binom(k, j)
            if w == 0:
                continue
            c = shift ** j * w
            key = (a, b)
            coeffs[key] = coeffs[key] + c if key in coeffs else c
    return BiSeries(var_u, var_v, coeffs, "formal", window, window)


def _gen_binom(k, j):
    """Generalized binomial C(k, j) for integer k (possibly negative), j >= 0."""
    num = Fraction(1)
    for i in range(j):
        num *= Fraction(k - i, i + 1)
    return num


def delta_apply(g, var_u, var_v, order):
    """g(.) * delta(u - v) as a two-sided bivariate object.

    `g` is a rational function of a single spectral variable; by the delta
    calculus the result equals g(v) delta(u - v) = g(u) delta(u - v).
    Coefficient of u^a v^b is the at-infinity expansion coefficient of g at
    exponent a + b + 1.
    """
    if isinstance(g, (int, Fraction, Poly)):
        g = Rat(g) if isinstance(g, Poly) else Rat.const(g)
    gv = [v for v in set(g.num.variables()) | set(g.den.variables())
          if v in (var_u, var_v)]
    if len(gv) > 1:
        raise ValueError("g must depend on a single spectral variable")
    var = gv[0] if gv else var_u
    if var == var_v and var_u in g.den.variables():
        raise ValueError("g singular on the formal diagonal")
    # expansion depth: diagonals a+b+1 range over [-2*order, 2*order+1]
    exp = ratfunc_expand(g, var, "inf", 2 * order + 2)
    coeffs = {}
    for a in range(-order, order + 1):
        for b in range(-order, order + 1):
            e = a + b + 1
            if exp.floor is not None and e < exp.floor:
                continue
            c = exp.coeffs.get(e)
            if c is not None and not is_zero_coeff(c):
                coeffs[(a, b)] = c
    return BiSeries(var_u, var_v, coeffs, "formal", order, order)


def series_equal(a, b, order):
    """Exact coefficient comparison up to `order`.

    Returns (equal, report); report names the first mismatching exponent
    with both values.  Region mismatches raise RegionError.
    """
    if isinstance(a, LaurentSeries) and isinstance(b, LaurentSeries):
        a._check_mate(b)
        if a.region == "inf":
            lo = -order
            hi = max(_top(a), _top(b))
            if (a.floor is not None and a.floor > lo) or (
                b.floor is not None and b.floor > lo
            ):
                raise TruncationError("series not faithful down to requested order")
        elif a.region == "zero":
            lo = min(_bot(a), _bot(b))
            hi = order - 1
            if (a.ceil is not None and a.ceil < hi) or (
                b.ceil is not None and b.ceil < hi
            ):
                raise TruncationError("series not faithful up to requested order")
        else:
            lo, hi = -order, order
        for e in range(lo, hi + 1):
            ca, cb = a.coeffs.get(e, Rat.zero()), b.coeffs.get(e, Rat.zero())
            if not is_zero_coeff(ca - cb):
                return False, f"first mismatch at {a.var}^{e}: {ca!r} vs {cb!r}"
        return True, "equal"
    if isinstance(a, BiSeries) and isinstance(b, BiSeries):
        a._check_mate(b)
        w = min(order, a.win_u, b.win_u, a.win_v, b.win_v)
        if w < order:
            raise TruncationError("bivariate windows smaller than requested order")
        for i in range(-order, order + 1):
            for j in range(-order, order + 1):
                ca = a.coeffs.get((i, j), Rat.zero())
                cb = b.coeffs.get((i, j), Rat.zero())
                if not is_zero_coeff(ca - cb):
                    return False, (
                        f"first mismatch at ({a.vars[0]}^{i}, {a.vars[1]}^{j}): "
                        f"{ca!r} vs {cb!r}"
                    )
        return True, "equal"
    raise TypeError("series_equal compares two like series")


def delta_from_kernel_difference(var_u, var_v, window):
    """Reproduce the formal delta as expansion(u>v) - expansion(u<v).

    This is the one place where the two regions of 1/(u-v) are deliberately
    combined; the result is tagged 'formal'.
    """
    plus = kernel_expansion(var_u, var_v, "u>v", window)
    minus = kernel_expansion(var_u, var_v, "u<v", window)
    out = dict(plus.coeffs)
    for k, c in minus.coeffs.items():
        out[k] = out[k] - c if k in out else -c
    return BiSeries(var_u, var_v, out, "formal", window, window)
