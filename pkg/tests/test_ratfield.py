import random
from fractions import Fraction

import pytest

from yangcheck.ratfield import Poly, Rat, V, poly_gcd


u, v, nu = V("u"), V("v"), V("nu")


def test_poly_basic():
    x = Poly.var("x")
    y = Poly.var("y")
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert p.degree("x") == 2
    assert (x + 1) ** 3 == x ** 3 + 3 * x ** 2 + 3 * x + 1


def test_gcd_univariate():
    x = Poly.var("x")
    a = (x + 1) ** 2 * (x - 2)
    b = (x + 1) * (x + 3)
    g = poly_gcd(a, b)
    assert g == x + 1


def test_gcd_multivariate():
    x, z = Poly.var("x"), Poly.var("z")
    a = (x - z) * (x + z) ** 2
    b = (x + z) * (x - 3 * z)
    g = poly_gcd(a, b)
    # monic in lex order: leading coefficient 1
    assert g == x + z


def test_rat_reduction_and_equality():
    x = V("x")
    r = (x * x - 1) / (x - 1)
    assert r == x + 1
    assert ((x + 1) / (x + 1)).is_one()
    assert (x - x).is_zero()


def test_rat_monic_denominator_canonical():
    x = V("x")
    a = Rat.const(1) / (2 * x + 2)
    b = Rat.const(Fraction(1, 2)) / (x + 1)
    assert a == b


def _random_rat(rng, vars=("x", "nu")):
    def rand_poly():
        p = Poly()
        for _ in range(rng.randint(1, 3)):
            mono = Poly.const(Fraction(rng.randint(-4, 4)))
            if mono.is_zero():
                mono = Poly.const(1)
            for vn in vars:
                mono = mono * Poly.var(vn) ** rng.randint(0, 2)
            p = p + mono
        return p

    den = Poly()
    while den.is_zero():
        den = rand_poly()
    return Rat(rand_poly(), den)


def test_field_axioms_random():
    rng = random.Random(20240817)
    for _ in range(40):
        a, b, c = (_random_rat(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a
        if not a.is_zero():
            assert (a * (Rat.one() / a)).is_one()
        assert a - a == Rat.zero()


def test_substitute_and_eval():
    r = (u - v + nu) / (u - v - nu)
    s = r.subs({"v": Rat.zero()})
    assert s == (u + nu) / (u - nu)
    val = r.eval_complex({"u": 2.0 + 0j, "v": 1.0 + 0j, "nu": 0.5 + 0j})
    assert abs(val - 3.0) < 1e-14


def test_derivative():
    x = V("x")
    r = Rat.one() / (x - 1)
    assert r.derivative("x") == Rat.const(-1) / ((x - 1) * (x - 1))


def test_pow_negative():
    x = V("x")
    assert x ** -2 == Rat.one() / (x * x)


def test_json_roundtrippable_shape():
    r = (u + nu) / (u - nu)
    j = r.to_json()
    assert set(j) == {"num", "den"}
    for side in j.values():
        for pair in side.values():
            assert len(pair) == 2 and all(isinstance(k, int) for k in pair)


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        Rat(Poly.const(1), Poly())
