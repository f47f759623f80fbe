"""Sparse multivariate polynomials over an exact field, plus univariate root finding."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

import sympy

from .fields import QQ, Elt, ExtensionField, Field, PrimeField, QuadraticExtension

Exponent = tuple[int, ...]


class SparsePoly:
    """Map from exponent vectors to nonzero field elements."""

    __slots__ = ("field", "vars", "terms")

    def __init__(self, field: Field, vars: Sequence[str], terms: Optional[Mapping[Exponent, object]] = None):
        self.field = field
        self.vars = tuple(vars)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != len(self.vars) or min(e, default=0) < 0:
                raise ValueError(f"bad exponent {e} for variables {self.vars}")
            c = field(c)
            if c:
                clean[e] = clean[e] + c if e in clean else c
                if not clean[e]:
                    del clean[e]
        self.terms = clean

    # construction
    @classmethod
    def constant(cls, field, vars, c) -> "SparsePoly":
        return cls(field, vars, {(0,) * len(vars): c})

    @classmethod
    def variable(cls, field, vars, name) -> "SparsePoly":
        e = tuple(int(v == name) for v in vars)
        if not any(e):
            raise KeyError(name)
        return cls(field, vars, {e: 1})

    def _like(self, terms) -> "SparsePoly":
        return SparsePoly(self.field, self.vars, terms)

    def _co(self, o) -> "SparsePoly":
        if isinstance(o, SparsePoly):
            if o.vars != self.vars or o.field != self.field:
                raise ValueError("polynomials live in different rings")
            return o
        return SparsePoly.constant(self.field, self.vars, o)

    # arithmetic
    def __add__(self, o):
        o = self._co(o)
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t[e] + c if e in t else c
        return self._like(t)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-self._co(o))

    def __rsub__(self, o):
        return self._co(o) - self

    def __mul__(self, o):
        o = self._co(o)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t[e] + c1 * c2 if e in t else c1 * c2
        return self._like(t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = SparsePoly.constant(self.field, self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, o):
        try:
            o = self._co(o)
        except (ValueError, TypeError):
            return False
        return (self - o).is_zero()

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # inspection
    def degree(self, var: Optional[str] = None) -> int:
        """Total degree (or degree in ``var``); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def weighted_degree(self, weights: Sequence[int]) -> int:
        if not self.terms:
            return -1
        return max(sum(a * w for a, w in zip(e, weights)) for e in self.terms)

    def is_homogeneous(self, weights: Optional[Sequence[int]] = None) -> bool:
        w = weights or (1,) * len(self.vars)
        return len({sum(a * b for a, b in zip(e, w)) for e in self.terms}) <= 1

    def coefficient(self, e: Exponent) -> Elt:
        return self.terms.get(tuple(e), self.field.zero)

    def map_coefficients(self, field: Field) -> "SparsePoly":
        return SparsePoly(field, self.vars, {e: field(c) for e, c in self.terms.items()})

    # substitution
    def evaluate(self, point: Mapping[str, object], field: Optional[Field] = None) -> Elt:
        F = field or self.field
        vals = [F(point[v]) for v in self.vars]
        out = F.zero
        for e, c in self.terms.items():
            m = F(c)
            for v, k in zip(vals, e):
                if k:
                    m = m * v ** k
            out = out + m
        return out

    def subs(self, mapping: Mapping[str, object]) -> "SparsePoly":
        """Substitute polynomials (in the same ring) or constants for variables."""
        out = SparsePoly(self.field, self.vars)
        for e, c in self.terms.items():
            m = SparsePoly.constant(self.field, self.vars, c)
            for v, k in zip(self.vars, e):
                if k:
                    m = m * (mapping[v] if v in mapping else SparsePoly.variable(self.field, self.vars, v)) ** k
            out = out + m
        return out

    def to_ring(self, vars: Sequence[str]) -> "SparsePoly":
        """Re-express over another variable list; dropped variables must not occur."""
        idx = []
        for v in vars:
            idx.append(self.vars.index(v) if v in self.vars else None)
        for e in self.terms:
            for i, k in enumerate(e):
                if k and self.vars[i] not in vars:
                    raise ValueError(f"variable {self.vars[i]} still occurs")
        return SparsePoly(self.field, vars, {tuple(e[i] if i is not None else 0 for i in idx): c for e, c in self.terms.items()})

    def univariate_coefficients(self) -> list[Elt]:
        """Low-to-high coefficients of a polynomial in one variable."""
        if len(self.vars) != 1:
            raise ValueError("not univariate")
        d = self.degree()
        return [self.coefficient((k,)) for k in range(d + 1)]

    def term_lines(self) -> list[str]:
        """'coef exp' per term, descending exponents; for a single variable."""
        return [f"{c} {' '.join(map(str, e))}" for e, c in sorted(self.terms.items(), reverse=True)]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(self.vars, e) if k)
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)


# -- univariate roots -------------------------------------------------------------


@dataclass(frozen=True)
class Root:
    """A root of a univariate polynomial in a (possibly extended) field."""

    value: Elt
    field: Field
    degree: int  # degree of the root's field over the base field


def _sympy_poly(f: SparsePoly, x):
    coeffs = f.univariate_coefficients()
    F = f.field
    if isinstance(F, PrimeField):
        return sympy.Poly([int(c.v) for c in reversed(coeffs)], x, modulus=F.p)
    if F == QQ:
        return sympy.Poly([sympy.Rational(c.v.numerator, c.v.denominator) for c in reversed(coeffs)], x, domain="QQ")
    raise TypeError(f"root finding is implemented over QQ and prime fields, not {F}")


def smallest_root(f: SparsePoly, max_degree: Optional[int] = None) -> Optional[Root]:
    """A root of f in the smallest extension available.

    Over F_p this is F_p[x]/(h) for an irreducible factor h of least degree.
    Over Q only linear and quadratic factors are used; None if neither exists.
    """
    if f.degree() < 1:
        return None
    x = sympy.Symbol("_x")
    P = _sympy_poly(f, x)
    factors = sorted((g for g, _ in P.factor_list()[1]), key=lambda g: (g.degree(), str(g)))
    F = f.field
    for g in factors:
        k = g.degree()
        if max_degree is not None and k > max_degree:
            return None
        if isinstance(F, PrimeField):
            c = [int(a) % F.p for a in reversed(g.all_coeffs())]
            lead = pow(c[-1], -1, F.p)
            c = [a * lead % F.p for a in c]
            if k == 1:
                return Root(F(-c[0]), F, 1)
            K = ExtensionField(F, c)
            return Root(K.generator, K, k)
        if k == 1:
            b, a = g.all_coeffs()[::-1][:2]
            return Root(QQ(-_frac(b) / _frac(a)), QQ, 1)
        if k == 2:
            a, b, c = (_frac(t) for t in g.all_coeffs())
            disc = b * b - 4 * a * c
            s = QQ.sqrt(QQ(disc))
            if s is not None:
                return Root(QQ((-b + s.v) / (2 * a)), QQ, 1)
            L = QuadraticExtension(QQ, disc)
            return Root((L.root - b) / (2 * a), L, 2)
        return None
    return None


def _frac(t):
    t = sympy.Rational(t)
    return Fraction(int(t.p), int(t.q))
