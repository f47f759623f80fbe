"""Divisor ledgers and the arithmetic thresholds used to rule out non-log-canonical pairs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .intersect import SingularPoint

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class DivisorLedger:
    """Sum of named curves with non-negative rational coefficients."""

    components: tuple[str, ...]
    coefficients: tuple[Fraction, ...]
    intersections: Optional[tuple[tuple[Fraction, ...], ...]] = None
    degrees: Optional[tuple[Fraction, ...]] = None

    def __post_init__(self):
        k = len(self.components)
        if len(set(self.components)) != k:
            raise ValueError("component names must be distinct")
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        if len(coeffs) != k:
            raise ValueError("one coefficient per component")
        if any(c < 0 for c in coeffs):
            raise ValueError("coefficients must be non-negative")
        object.__setattr__(self, "coefficients", coeffs)
        if self.intersections is not None:
            m = tuple(tuple(Fraction(x) for x in row) for row in self.intersections)
            if len(m) != k or any(len(row) != k for row in m):
                raise ValueError("intersection matrix has wrong shape")
            if any(m[i][j] != m[j][i] for i in range(k) for j in range(i)):
                raise ValueError("intersection matrix must be symmetric")
            object.__setattr__(self, "intersections", m)
        if self.degrees is not None:
            degs = tuple(Fraction(x) for x in self.degrees)
            if len(degs) != k:
                raise ValueError("one degree per component")
            object.__setattr__(self, "degrees", degs)

    def with_coefficients(self, coeffs: Sequence[Rational]) -> "DivisorLedger":
        return DivisorLedger(self.components, tuple(coeffs), self.intersections, self.degrees)

    @property
    def total_degree(self) -> Fraction:
        if self.degrees is None:
            raise ValueError("ledger carries no degrees")
        return sum((a * d for a, d in zip(self.coefficients, self.degrees)), Fraction(0))

    def support(self) -> tuple[str, ...]:
        return tuple(n for n, c in zip(self.components, self.coefficients) if c)

    def dot_component(self, j: int) -> Fraction:
        """D_j . D"""
        if self.intersections is None:
            raise ValueError("ledger carries no intersection numbers")
        row = self.intersections[j]
        return sum((row[i] * c for i, c in enumerate(self.coefficients)), Fraction(0))

    def to_dict(self) -> dict:
        d = {
            "components": list(self.components),
            "coefficients": [str(c) for c in self.coefficients],
        }
        if self.intersections is not None:
            d["intersections"] = [[str(x) for x in row] for row in self.intersections]
        if self.degrees is not None:
            d["degrees"] = [str(x) for x in self.degrees]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "DivisorLedger":
        m = d.get("intersections")
        degs = d.get("degrees")
        return cls(
            tuple(d["components"]),
            tuple(Fraction(c) for c in d["coefficients"]),
            None if m is None else tuple(tuple(Fraction(x) for x in row) for row in m),
            None if degs is None else tuple(Fraction(x) for x in degs),
        )


def convexity_mu(D: DivisorLedger, T: DivisorLedger) -> tuple[Fraction, DivisorLedger]:
    """Largest mu with (1+mu)D - mu T effective, and that divisor.

    The result misses at least one component of Supp(T).
    """
    if D.components != T.components:
        raise ValueError("ledgers must share the component list")
    a, b = D.coefficients, T.coefficients
    if a == b:
        raise ValueError("divisors equal")
    if D.degrees is not None and T.degrees is not None and D.total_degree != T.total_degree:
        raise ValueError("total degrees differ")
    ratios = [ai / (bi - ai) for ai, bi in zip(a, b) if bi > ai]
    if not ratios:
        raise ValueError("mu unbounded")
    mu = min(ratios)
    return mu, D.with_coefficients([(1 + mu) * ai - mu * bi for ai, bi in zip(a, b)])


def lc_multiplicity_threshold(point: Optional[SingularPoint] = None) -> Fraction:
    """Multiplicity a non-lc boundary must exceed at the point: 1 if smooth, else 1/r."""
    if point is None:
        return Fraction(1)
    return Fraction(1, point.r)


def adjunction_bound(D: DivisorLedger, j: int, a_j: Rational, r: int = 1) -> tuple[Fraction, bool]:
    """lhs = D_j . (D - a_j D_j) and whether it exceeds 1/r."""
    a_j = Fraction(a_j)
    if a_j > 1:
        raise ValueError("a_j must be at most 1")
    if r < 1:
        raise ValueError("r must be positive")
    if D.intersections is None:
        raise ValueError("ledger carries no intersection numbers")
    lhs = D.dot_component(j) - a_j * D.intersections[j][j]
    return lhs, lhs > Fraction(1, r)


@dataclass(frozen=True)
class Interval:
    """Interval of rationals; None means unbounded on that side."""

    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    lo_open: bool = True
    hi_open: bool = True

    def intersect(self, other: "Interval") -> "Interval":
        lo, lo_open = _tighter(self.lo, self.lo_open, other.lo, other.lo_open, max)
        hi, hi_open = _tighter(self.hi, self.hi_open, other.hi, other.hi_open, min)
        return Interval(lo, hi, lo_open, hi_open)

    @property
    def empty(self) -> bool:
        if self.lo is None or self.hi is None:
            return False
        if self.lo != self.hi:
            return self.lo > self.hi
        return self.lo_open or self.hi_open

    def disjoint(self, other: "Interval") -> bool:
        return self.intersect(other).empty


def _tighter(x, x_open, y, y_open, pick):
    if x is None:
        return y, y_open
    if y is None:
        return x, x_open
    if x == y:
        return x, x_open or y_open
    return (x, x_open) if pick(x, y) == x else (y, y_open)


def at_most(v: Rational) -> Interval:
    return Interval(hi=Fraction(v), hi_open=False)


def greater_than(v: Rational) -> Interval:
    return Interval(lo=Fraction(v), lo_open=True)


def _affine_threshold(const: Fraction, slope: Fraction, r: int) -> Interval:
    # const + slope * a > 1/r, slope > 0
    return greater_than((Fraction(1, r) - const) / slope)


def pencil_contradiction(n: int) -> tuple[Interval, Interval]:
    """The two constraints on the coefficient a of L1 in D on S_{2n,2n}.

    From the L1' pairing a <= L1'.D / L1'.L1 = 1/n; from adjunction on L1 with
    L1.(D - a L1) = (2 + a(2n-2))/(2n-1) > 1 one gets a > (2n-3)/(2n-2).
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    r = 2 * n - 1
    pairing = at_most(Fraction(2, r) / Fraction(2 * n, r))
    adj = _affine_threshold(Fraction(2, r), Fraction(2 * n - 2, r), 1)
    return pairing, adj


def s2n_ledger(n: int, a: Rational, delta_dot_L: Optional[Rational] = None) -> DivisorLedger:
    """D = a L1 + Delta on S_{2n,2n}, with L1 not in Supp(Delta).

    By default L1.Delta is fixed so that L1.D = -K.L1 = 2/(2n-1).
    """
    r = 2 * n - 1
    a = Fraction(a)
    L2 = Fraction(2 - 2 * n, r)
    if delta_dot_L is None:
        delta_dot_L = Fraction(2, r) - a * L2
    # Delta^2 is not needed by any check on L1; it is stored as 0
    d = Fraction(delta_dot_L)
    return DivisorLedger(("L1", "Delta"), (a, Fraction(1)), ((L2, d), (d, Fraction(0))))
