"""Free associative algebra on mode symbols, with Rat coefficients.

Words are tuples of generator symbols like ``("e", 3)`` or ``("hp", -1)``;
multiplication concatenates.  No relations are imposed: two expressions are
equal exactly when they agree word-by-word, which is the right notion for
checking that coefficient extraction from current relations reproduces the
mode relations verbatim.
"""

from __future__ import annotations

from fractions import Fraction

from .ratfield import Poly, Rat


def _as_scalar(x):
    if isinstance(x, Rat):
        return x
    if isinstance(x, Poly):
        return Rat(x)
    return Rat.const(x)


class NCPoly:
    """Noncommutative polynomial: {word tuple: Rat coefficient}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if not c.is_zero():
                    self.terms[w] = c

    @staticmethod
    def zero():
        return NCPoly()

    @staticmethod
    def unit(coef=1):
        return NCPoly({(): _as_scalar(coef)})

    @staticmethod
    def gen(symbol, index=None, coef=1):
        word = ((symbol, index),) if index is not None else ((symbol,),)
        return NCPoly({word: _as_scalar(coef)})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Rat)):
            other = NCPoly.unit(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return NCPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Rat)):
            other = NCPoly.unit(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Rat, Poly)):
            s = _as_scalar(other)
            return NCPoly({w: c * s for w, c in self.terms.items()})
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                p = c1 * c2
                if w in out:
                    out[w] = out[w] + p
                else:
                    out[w] = p
        return NCPoly(out)

    def __rmul__(self, other):
        # scalars commute with everything
        return self.__mul__(other)

    def map_coeffs(self, fn):
        return NCPoly({w: fn(c) for w, c in self.terms.items()})

    def map_words(self, fn):
        """Apply fn: word -> NCPoly and resum (substitution homomorphism)."""
        out = NCPoly.zero()
        for w, c in self.terms.items():
            out = out + fn(w) * c
        return out

    def truncate_c_degree(self, cmax, cvar="c"):
        """Drop every term whose coefficient has c-degree above cmax."""
        out = {}
        for w, coef in self.terms.items():
            kept = _poly_c_truncate(coef, cmax, cvar)
            if not kept.is_zero():
                out[w] = kept
        return NCPoly(out)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
            word = ".".join(
                f"{s}[{i}]" if i is not None else s
                for s, *rest in [t for t in w]
                for i in [rest[0] if rest else None]
            ) or "1"
            bits.append(f"({c!r})*{word}")
        return " + ".join(bits)


def _poly_c_truncate(r, cmax, cvar):
    """Truncate a Rat (polynomial in cvar over the rest) at degree cmax."""
    if r.den.degree(cvar) != 0:
        raise ValueError("c-truncation expects polynomial dependence on c")
    kept = {m: c for m, c in r.num.terms.items() if dict(m).get(cvar, 0) <= cmax}
    return Rat(Poly(kept), r.den)


def commutator(a, b):
    return a * b - b * a


def anticommutator(a, b):
    return a * b + b * a
