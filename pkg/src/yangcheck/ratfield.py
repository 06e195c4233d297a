"""Exact scalar arithmetic: multivariate polynomials and rational functions over Q.

Every symbolic identity in this package reduces to arithmetic in the field
Q(nu, c, z, ...) of rational functions with exact rational coefficients.
``Poly`` is a sparse multivariate polynomial keyed by monomials; ``Rat`` is a
reduced fraction of two ``Poly`` with a monic (lex-leading) denominator, so
equality is plain structural comparison.

No floating point enters here.  Numeric evaluation is available through
``eval_complex`` for the quadrature paths.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

# A monomial is a tuple of (variable, exponent) pairs, sorted by variable
# name, with all exponents > 0.  The empty tuple is the constant monomial.
_ONE_MONO = ()


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    out = dict(m1)
    for v, e in m2:
        out[v] = out.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in out.items() if e))


def _mono_lex_key(mono, varlist):
    return tuple(dict(mono).get(v, 0) for v in varlist)


class Poly:
    """Sparse multivariate polynomial with Fraction coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        self.terms = {m: c for m, c in terms.items() if c != 0}
        self._hash = None

    # -- constructors -------------------------------------------------
    @staticmethod
    def const(c):
        c = Fraction(c)
        return Poly({_ONE_MONO: c}) if c else Poly()

    @staticmethod
    def var(name, exp=1):
        if exp < 0:
            raise ValueError("Poly.var needs exp >= 0")
        if exp == 0:
            return Poly.const(1)
        return Poly({((name, exp),): Fraction(1)})

    # -- structure ----------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and _ONE_MONO in self.terms)

    def const_value(self):
        if not self.is_const():
            raise ValueError("not a constant polynomial")
        return self.terms.get(_ONE_MONO, Fraction(0))

    def variables(self):
        vs = set()
        for m in self.terms:
            for v, _ in m:
                vs.add(v)
        return sorted(vs)

    def degree(self, var):
        return max((dict(m).get(var, 0) for m in self.terms), default=0)

    def total_degree(self):
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly) else Poly.const(-Fraction(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Poly()
            return Poly({m: cc * c for m, cc in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of Poly; use Rat")
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- lex order helpers ---------------------------------------------
    def leading(self):
        """(monomial, coefficient) maximal in lex order over sorted vars."""
        if self.is_zero():
            raise ValueError("leading term of zero polynomial")
        vs = self.variables()
        mono = max(self.terms, key=lambda m: _mono_lex_key(m, vs))
        return mono, self.terms[mono]

    def monic_scale(self):
        """Scalar s with s*self having lex-leading coefficient 1."""
        _, c = self.leading()
        return 1 / c

    # -- univariate views (for gcd / division) --------------------------
    def coeffs_in(self, var):
        """Dense list of Poly coefficients of self as polynomial in `var`."""
        d = self.degree(var)
        buckets = [dict() for _ in range(d + 1)]
        for m, c in self.terms.items():
            md = dict(m)
            e = md.pop(var, 0)
            rest = tuple(sorted(md.items()))
            buckets[e][rest] = buckets[e].get(rest, 0) + c
        return [Poly(b) for b in buckets]

    @staticmethod
    def from_coeffs(var, coeffs):
        out = {}
        for e, p in enumerate(coeffs):
            for m, c in p.terms.items():
                mm = _mono_mul(m, ((var, e),) if e else ())
                out[mm] = out.get(mm, 0) + c
        return Poly({m: c for m, c in out.items() if c})

    # -- substitution / numerics ----------------------------------------
    def subs(self, mapping):
        """Substitute variables; values may be Poly, Rat, int or Fraction."""
        out = None
        for m, c in self.terms.items():
            term = Rat.const(c)
            for v, e in m:
                val = mapping.get(v)
                if val is None:
                    term = term * Rat(Poly.var(v, e))
                else:
                    term = term * (_as_rat(val) ** e)
            out = term if out is None else out + term
        return out if out is not None else Rat.zero()

    def eval_complex(self, env):
        tot = 0j
        for m, c in self.terms.items():
            t = complex(c)
            for v, e in m:
                t *= env[v] ** e
            tot += t
        return tot

    def derivative(self, var):
        out = {}
        for m, c in self.terms.items():
            md = dict(m)
            e = md.get(var, 0)
            if not e:
                continue
            if e == 1:
                md.pop(var)
            else:
                md[var] = e - 1
            mm = tuple(sorted(md.items()))
            out[mm] = out.get(mm, 0) + c * e
        return Poly(out)

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        vs = self.variables()
        for m in sorted(self.terms, key=lambda m: _mono_lex_key(m, vs), reverse=True):
            c = self.terms[m]
            mono = "*".join(f"{v}^{e}" if e > 1 else v for v, e in m)
            if mono:
                parts.append(f"{c}*{mono}" if c != 1 else mono)
            else:
                parts.append(str(c))
        return " + ".join(parts).replace("+ -", "- ")


def _poly_divmod(num, den, var):
    """Exact-field division of num by den as polynomials in `var`.

    Coefficients are Rat; returns (quotient, remainder) with
    deg(remainder) < deg(den).
    """
    nc = [Rat(p) for p in num.coeffs_in(var)]
    dc = [Rat(p) for p in den.coeffs_in(var)]
    dd = len(dc) - 1
    lead = dc[-1]
    q = [Rat.zero()] * max(len(nc) - dd, 0)
    r = list(nc)
    while len(r) - 1 >= dd and any(not c.is_zero() for c in r):
        while len(r) > 1 and r[-1].is_zero():
            r.pop()
        nd = len(r) - 1
        if nd < dd:
            break
        f = r[-1] / lead
        q[nd - dd] = f
        for i in range(dd + 1):
            r[nd - dd + i] = r[nd - dd + i] - f * dc[i]
        r.pop()
    return q, r


def _content(coeffs):
    g = Poly()
    for p in coeffs:
        g = poly_gcd(g, p)
        if g.is_const() and not g.is_zero():
            return Poly.const(1)
    return g if not g.is_zero() else Poly.const(1)


def _primitive(p, var):
    cs = p.coeffs_in(var)
    cont = _content(cs)
    if cont.is_const():
        return p, Poly.const(1)
    q, r = poly_divexact(p, cont)
    return q, cont


def poly_divexact(num, den):
    """Divide num by den assuming exact divisibility; (quotient, remainder)."""
    if den.is_const():
        inv = 1 / den.const_value()
        return num * inv, Poly()
    var = den.variables()[-1]
    q, r = _poly_divmod(num, den, var)
    if not all(c.is_zero() for c in r):
        return None, den  # not exactly divisible
    out = Poly()
    xe = Poly.var(var)
    for e, c in enumerate(q):
        if c.is_zero():
            continue
        if not c.den.is_const():
            return None, den
        piece = c.num * (1 / c.den.const_value())
        out = out + xe ** e * piece
    return out, Poly()


_GCD_CACHE = {}


def poly_gcd(a, b):
    """GCD of multivariate polynomials over Q, monic-normalized.

    Euclid in (Q(rest))[main_var]; recursion over variable count through the
    content computation is well founded.  Memoized: relation suites hit the
    same small factors constantly.
    """
    if a.is_zero():
        return _monic(b)
    if b.is_zero():
        return _monic(a)
    if a.is_const() or b.is_const():
        return Poly.const(1)
    key = (a, b) if hash(a) <= hash(b) else (b, a)
    hit = _GCD_CACHE.get(key)
    if hit is not None:
        return hit
    if a == b:
        g = _monic(a)
        _GCD_CACHE[key] = g
        return g
    vs = sorted(set(a.variables()) | set(b.variables()))
    var = vs[-1]
    if a.degree(var) == 0 or b.degree(var) == 0:
        ca = _content(a.coeffs_in(var))
        cb = _content(b.coeffs_in(var))
        g = poly_gcd(ca, cb)
        _GCD_CACHE[key] = g
        return g
    if len(vs) == 1:
        g = _gcd_univariate(a, b, var)
        _GCD_CACHE[key] = g
        return g
    pa, ca = _primitive(a, var)
    pb, cb = _primitive(b, var)
    cont = poly_gcd(ca, cb)
    f, g = (pa, pb) if pa.degree(var) >= pb.degree(var) else (pb, pa)
    while True:
        r = _pseudo_rem(f, g, var)
        if r.is_zero():
            break
        r, _ = _primitive(r, var)
        f, g = g, r
        if g.degree(var) == 0:
            g = Poly.const(1)
            break
    g, _ = _primitive(g, var)
    g = _monic(g * cont)
    _GCD_CACHE[key] = g
    return g


def _gcd_univariate(a, b, var):
    """Monic Euclid over Q for single-variable polynomials."""

    def dense(p):
        d = p.degree(var)
        out = [Fraction(0)] * (d + 1)
        for m, c in p.terms.items():
            out[dict(m).get(var, 0)] += c
        return out

    def trim(cs):
        while cs and not cs[-1]:
            cs.pop()
        return cs

    r0, r1 = trim(dense(a)), trim(dense(b))
    if len(r0) < len(r1):
        r0, r1 = r1, r0
    while r1:
        lead = r1[-1]
        if lead != 1:
            r1 = [c / lead for c in r1]
        dd = len(r1) - 1
        r = list(r0)
        while len(r) - 1 >= dd:
            f = r[-1]
            if f:
                shift = len(r) - 1 - dd
                for i in range(dd + 1):
                    r[shift + i] -= f * r1[i]
            r.pop()
        r0, r1 = r1, trim(r)
    lead = r0[-1]
    x = Poly.var(var)
    out = Poly()
    for e, c in enumerate(r0):
        if c:
            out = out + x ** e * (c / lead)
    return out


def _pseudo_rem(f, g, var):
    """Pseudo-remainder of f by g in `var` (coefficients stay polynomial)."""
    fc = f.coeffs_in(var)
    gc = g.coeffs_in(var)
    n = len(gc) - 1
    lead = gc[-1]
    r = list(fc)
    while True:
        while r and r[-1].is_zero():
            r.pop()
        if len(r) - 1 < n:
            break
        top = r[-1]
        shift = len(r) - 1 - n
        r = [c * lead for c in r]
        for i in range(n + 1):
            r[shift + i] = r[shift + i] - top * gc[i]
        r.pop()
    return Poly.from_coeffs(var, r)


def _monic(p):
    if p.is_zero():
        return p
    return p * p.monic_scale()


def _as_rat(x):
    if isinstance(x, Rat):
        return x
    if isinstance(x, Poly):
        return Rat(x)
    return Rat.const(x)


class Rat:
    """Reduced rational function num/den over Q, den lex-monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, reduce=True):
        if den is None:
            den = Poly.const(1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in Rat")
        if num.is_zero():
            den = Poly.const(1)
        elif reduce:
            g = poly_gcd(num, den)
            if not (g.is_const() and g.const_value() == 1):
                num, _ = poly_divexact(num, g)
                den, _ = poly_divexact(den, g)
            s = den.monic_scale()
            if s != 1:
                num, den = num * s, den * s
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def const(c):
        return Rat(Poly.const(c))

    @staticmethod
    def zero():
        return Rat(Poly())

    @staticmethod
    def one():
        return Rat(Poly.const(1))

    @staticmethod
    def var(name):
        return Rat(Poly.var(name))

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num == Poly.const(1) and self.den == Poly.const(1)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = _as_rat(other)
        if not isinstance(other, Rat):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __add__(self, other):
        if not isinstance(other, (Rat, Poly, int, Fraction)):
            return NotImplemented
        other = _as_rat(other)
        if self.den == other.den:
            return Rat(self.num + other.num, self.den)
        return Rat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Rat(-self.num, self.den, reduce=False)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, (Rat, Poly, int, Fraction)):
            return NotImplemented
        return self + (-_as_rat(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (Rat, Poly, int, Fraction)):
            return NotImplemented
        other = _as_rat(other)
        if self.is_zero() or other.is_zero():
            return Rat.zero()
        # cross-reduce first to keep intermediates small
        a = Rat(self.num, other.den)
        b = Rat(other.num, self.den)
        return Rat(a.num * b.num, a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rat(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero Rat")
        return self * Rat(other.den, other.num)

    def __rtruediv__(self, other):
        return _as_rat(other) / self

    def __pow__(self, n):
        if n == 0:
            return Rat.one()
        if n < 0:
            return (Rat.one() / self) ** (-n)
        return Rat(self.num ** n, self.den ** n)

    def subs(self, mapping):
        n = self.num.subs(mapping)
        d = self.den.subs(mapping)
        return n / d

    def eval_complex(self, env):
        d = self.den.eval_complex(env)
        if d == 0:
            raise ZeroDivisionError("pole hit in numeric evaluation")
        return self.num.eval_complex(env) / d

    def derivative(self, var):
        n = self.num.derivative(var) * self.den - self.num * self.den.derivative(var)
        return Rat(n, self.den * self.den)

    def as_fraction(self):
        if not (self.num.is_const() and self.den.is_const()):
            raise ValueError("not a constant Rat")
        return self.num.const_value() / self.den.const_value()

    def to_json(self):
        """Canonical JSON form: monomial -> [num, den] integer pairs."""

        def side(p):
            return {
                " ".join(f"{v}^{e}" for v, e in m) or "1": [c.numerator, c.denominator]
                for m, c in sorted(p.terms.items())
            }

        return {"num": side(self.num), "den": side(self.den)}

    def __repr__(self):
        if self.den == Poly.const(1):
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


@lru_cache(maxsize=None)
def _cached_var(name):
    return Rat.var(name)


def V(name):
    """Shared Rat variable (cached)."""
    return _cached_var(name)


NU = V("nu")
C = V("c")
