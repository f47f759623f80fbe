import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from polarcyl.fields import GF, QQ, ExtensionField, QuadraticExtension, parse_field
from polarcyl.poly import SparsePoly, smallest_root

P = 2**31 - 1
VARS = ("x", "y", "z")


def random_poly(F, rng, terms=5, deg=3):
    return SparsePoly(F, VARS, {tuple(rng.randrange(deg + 1) for _ in VARS): F.random(rng) for _ in range(terms)})


@pytest.mark.parametrize("F", [QQ, GF(P), GF(7)])
def test_ring_axioms_100_triples(F):
    rng = random.Random(2024)
    for _ in range(100):
        f, g, h = (random_poly(F, rng) for _ in range(3))
        assert (f + g) * h == f * h + g * h
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert f + (-f) == 0
        s = {"x": SparsePoly.variable(F, VARS, "y") + 2 * SparsePoly.variable(F, VARS, "z")}
        assert (f * h).subs(s) == f.subs(s) * h.subs(s)


def test_poly_matches_sympy_expansion():
    rng = random.Random(5)
    X = sympy.symbols(VARS)
    for _ in range(20):
        f, g = random_poly(QQ, rng), random_poly(QQ, rng)
        prod = f * g
        expect = sympy.Poly(sympy.expand(_to_sympy(f, X) * _to_sympy(g, X)), *X)
        assert {m: Fraction(int(c.p), int(c.q)) for m, c in expect.terms()} == {e: c.v for e, c in prod.terms.items()}


def _to_sympy(f, X):
    return sum(sympy.Rational(c.v.numerator, c.v.denominator) * sympy.prod([x**k for x, k in zip(X, e)]) for e, c in f.terms.items())


def test_poly_basics():
    x = SparsePoly.variable(QQ, VARS, "x")
    y = SparsePoly.variable(QQ, VARS, "y")
    f = x**2 * y + 3 * y - 3 * y
    assert f.terms == {(2, 1, 0): QQ(1)}
    assert f.degree() == 3 and f.degree("x") == 2
    assert f.weighted_degree((1, 2, 5)) == 4
    assert (x * x + y).is_homogeneous((1, 2, 0))
    assert not (x + y * y).is_homogeneous()
    assert f.evaluate({"x": 2, "y": 3, "z": 0}) == 12
    assert SparsePoly(QQ, VARS).degree() == -1
    with pytest.raises(ValueError):
        x + SparsePoly.variable(GF(5), VARS, "x")
    with pytest.raises(ValueError):
        x ** -1


def test_term_lines():
    a = SparsePoly.variable(GF(7), ("a",), "a")
    assert (3 * a**2 + 1).term_lines() == ["3 2", "1 0"]


@pytest.mark.parametrize("p", [7, 13, 10007, P])
def test_prime_field_sqrt(p):
    F = GF(p)
    rng = random.Random(p)
    for _ in range(30):
        a = F.random(rng)
        s = F.sqrt(a * a)
        assert s is not None and s * s == a * a
    nonres = next(F(k) for k in range(2, p) if pow(k, (p - 1) // 2, p) == p - 1)
    assert F.sqrt(nonres) is None


def test_rational_sqrt():
    assert QQ.sqrt(Fraction(9, 4)) == QQ(Fraction(3, 2))
    assert QQ.sqrt(2) is None
    assert QQ.sqrt(-1) is None


def test_quadratic_extension():
    L = QuadraticExtension(QQ, 2)
    r = L.root
    assert r * r == 2
    assert (1 + r) * (1 + r).inverse() == 1
    assert L.sqrt(3 + 2 * r) * L.sqrt(3 + 2 * r) == 3 + 2 * r  # (1 + sqrt2)^2
    with pytest.raises(ValueError):
        QuadraticExtension(QQ, 4)


def test_extension_field_sqrt_and_inverse():
    F = GF(11)
    K = ExtensionField(F, [1, 0, 1])  # x^2 + 1 is irreducible mod 11
    g = K.generator
    assert g * g == -1
    rng = random.Random(3)
    for _ in range(20):
        a = K.random(rng)
        if a:
            assert a * a.inverse() == 1
            s = K.sqrt(a * a)
            assert s * s == a * a


def test_smallest_root_prime_field():
    F = GF(101)
    a = SparsePoly.variable(F, ("a",), "a")
    r = smallest_root((a - 5) * (a**2 + 2))
    assert r.degree == 1 and r.value == 5
    r = smallest_root(a**2 + 2)
    assert r.degree == 2
    f = a**2 + 2
    assert f.evaluate({"a": r.value}, r.field) == 0


def test_smallest_root_rationals():
    a = SparsePoly.variable(QQ, ("a",), "a")
    assert smallest_root(2 * a - 1).value == QQ(Fraction(1, 2))
    r = smallest_root(a**2 - 2)
    assert r.degree == 2 and (a**2 - 2).evaluate({"a": r.value}, r.field) == 0
    assert smallest_root(a**3 - 2) is None
    assert smallest_root(SparsePoly.constant(QQ, ("a",), 3)) is None


def test_parse_field():
    assert parse_field("q") == QQ
    assert parse_field("p:101") == GF(101)
    with pytest.raises(ValueError):
        parse_field("r")
    with pytest.raises(ValueError):
        parse_field("p:100")


@settings(max_examples=100, deadline=None)
@given(st.integers(0, P - 1), st.integers(0, P - 1), st.integers(1, P - 1))
def test_prime_field_arithmetic(a, b, c):
    F = GF(P)
    assert F(a) + F(b) == F((a + b) % P)
    assert F(a) * F(b) == F(a * b % P)
    assert F(a) / F(c) * F(c) == F(a)
