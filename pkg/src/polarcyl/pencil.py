"""The pencil cut by x, y on S_{2n,2n}: fiber conics, their reducible members and the two lines.

Equations of the general member:

    E_A = w x + Q_A(z, t) + f_n z + fh_n t + f_2n
    E_B = w y + Q_B(z, t) + g_n z + gh_n t + g_2n

with binary forms f, g in (x, y). In the default mode Q_A = z(a1 z + b1 t),
Q_B = t(a2 z + b2 t) and fibers are x = alpha y; the normalized mode uses
Q_A = zt, Q_B = z^2 + t^2, f = 0 and fibers y = alpha x. On a fiber the w
terms cancel from E_A - alpha E_B (resp. E_B - alpha E_A), leaving a conic in
(z, t, u) with u standing for y^n (resp. x^n).
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .fields import QQ, Elt, Field, GF, PrimeField, QuadraticExtension
from .intersect import Check
from .poly import Root, SparsePoly, smallest_root

DEFAULT_PRIME = 2**31 - 1
PRIME_ENV = "POLARCYL_PRIME"

XY = ("x", "y")
COORDS = ("x", "y", "z", "t", "w")
CONIC_KEYS = ("zz", "zt", "tt", "zu", "tu", "uu")
ALPHA = ("alpha",)


class PencilError(ValueError):
    pass


def default_field() -> PrimeField:
    return GF(int(os.environ.get(PRIME_ENV, DEFAULT_PRIME)))


@dataclass(frozen=True)
class CiCoefficients:
    n: int
    field: Field
    qa: tuple  # (zz, zt, tt) of Q_A
    qb: tuple
    f_n: SparsePoly
    f_hat: SparsePoly
    f_2n: SparsePoly
    g_n: SparsePoly
    g_hat: SparsePoly
    g_2n: SparsePoly
    normalized: bool = False

    @property
    def a1(self):
        return self.qa[0]

    @property
    def b1(self):
        return self.qa[1]

    @property
    def a2(self):
        return self.qb[1]

    @property
    def b2(self):
        return self.qb[2]

    def invariants_ok(self) -> bool:
        if self.normalized:
            return True
        return bool(self.a1) and bool(self.b2) and bool(self.a1 * self.b2 - self.b1 * self.a2) and not self.qa[2] and not self.qb[0]

    def equations(self) -> tuple[SparsePoly, SparsePoly]:
        F = self.field
        v = {c: SparsePoly.variable(F, COORDS, c) for c in COORDS}
        x, y, z, t, w = (v[c] for c in COORDS)

        def lift(p):
            return p.to_ring(COORDS)

        def quad(q):
            return q[0] * z * z + q[1] * z * t + q[2] * t * t

        EA = w * x + quad(self.qa) + lift(self.f_n) * z + lift(self.f_hat) * t + lift(self.f_2n)
        EB = w * y + quad(self.qb) + lift(self.g_n) * z + lift(self.g_hat) * t + lift(self.g_2n)
        return EA, EB

    @property
    def weights(self) -> tuple[int, ...]:
        return (1, 1, self.n, self.n, 2 * self.n - 1)


def _form(F, d, rng) -> SparsePoly:
    return SparsePoly(F, XY, {(i, d - i): F.random(rng) for i in range(d + 1)})


def sample_surface(n: int, seed: int, field: Optional[Field] = None, normalized: bool = False) -> CiCoefficients:
    """Seeded general member; re-samples until the coefficient invariants hold."""
    if n < 1:
        raise ValueError("n must be positive")
    F = field if field is not None else default_field()
    if F.characteristic and F.characteristic < 5:
        raise PencilError("field too small: need characteristic >= 5")
    rng = random.Random(seed)
    zero = SparsePoly(F, XY)
    for _ in range(100):
        if normalized:
            S = CiCoefficients(n, F, (F(0), F(1), F(0)), (F(1), F(0), F(1)), zero, zero, zero,
                               _form(F, n, rng), _form(F, n, rng), _form(F, 2 * n, rng), True)
        else:
            a1, b1, a2, b2 = (F.random(rng) for _ in range(4))
            S = CiCoefficients(n, F, (a1, b1, F(0)), (F(0), a2, b2),
                               _form(F, n, rng), _form(F, n, rng), _form(F, 2 * n, rng),
                               _form(F, n, rng), _form(F, n, rng), _form(F, 2 * n, rng))
        if S.invariants_ok():
            return S
    raise PencilError("could not sample coefficients satisfying the invariants")


@dataclass(frozen=True)
class ConicForm:
    """zz z^2 + zt zt + tt t^2 + zu zu + tu tu + uu u^2."""

    zz: object
    zt: object
    tt: object
    zu: object
    tu: object
    uu: object

    def coefficients(self) -> tuple:
        return tuple(getattr(self, k) for k in CONIC_KEYS)

    @property
    def symbolic(self) -> bool:
        return isinstance(self.zz, SparsePoly)

    def at(self, alpha: Elt, field: Optional[Field] = None) -> "ConicForm":
        F = field or alpha.F
        if not self.symbolic:
            raise ValueError("conic is already numeric")
        return ConicForm(*(c.evaluate({"alpha": alpha}, F) for c in self.coefficients()))

    def over(self, F: Field) -> "ConicForm":
        return ConicForm(*(F(c) for c in self.coefficients()))

    def as_poly(self, F: Optional[Field] = None) -> SparsePoly:
        F = F or self.zz.F
        e = {"zz": (2, 0, 0), "zt": (1, 1, 0), "tt": (0, 2, 0), "zu": (1, 0, 1), "tu": (0, 1, 1), "uu": (0, 0, 2)}
        return SparsePoly(F, ("z", "t", "u"), {e[k]: F(getattr(self, k)) for k in CONIC_KEYS})


def _eval_form(p: SparsePoly, X, Y):
    out = None
    for (i, j), c in p.terms.items():
        m = X**i * Y**j * c if (i or j) else c
        out = m if out is None else out + m
    return 0 if out is None else out


def restrict_to_fiber(S: CiCoefficients, alpha: Union[Elt, None] = None) -> ConicForm:
    """Conic of the fiber at alpha; ``alpha=None`` keeps alpha symbolic."""
    if alpha is None:
        a = SparsePoly.variable(S.field, ALPHA, "alpha")
        one = SparsePoly.constant(S.field, ALPHA, 1)
    else:
        a, one = alpha, alpha.F.one
    if S.normalized:
        # y = alpha x, x = 1: E_B - alpha E_A
        X, Y = one, a
        first, second = (S.qb, S.g_n, S.g_hat, S.g_2n), (S.qa, S.f_n, S.f_hat, S.f_2n)
    else:
        # x = alpha y, y = 1: E_A - alpha E_B
        X, Y = a, one
        first, second = (S.qa, S.f_n, S.f_hat, S.f_2n), (S.qb, S.g_n, S.g_hat, S.g_2n)
    (q1, p1, h1, c1), (q2, p2, h2, c2) = first, second

    def lin(u, v):
        return one * u - a * v

    return ConicForm(
        lin(q1[0], q2[0]),
        lin(q1[1], q2[1]),
        lin(q1[2], q2[2]),
        one * _eval_form(p1, X, Y) - a * _eval_form(p2, X, Y),
        one * _eval_form(h1, X, Y) - a * _eval_form(h2, X, Y),
        one * _eval_form(c1, X, Y) - a * _eval_form(c2, X, Y),
    )


def gram_matrix(c: ConicForm) -> tuple[tuple, tuple, tuple]:
    """Symmetric matrix of the quadratic form (off-diagonal entries halved)."""
    h = Fraction(1, 2)
    return (
        (c.zz, c.zt * h, c.zu * h),
        (c.zt * h, c.tt, c.tu * h),
        (c.zu * h, c.tu * h, c.uu),
    )


def unhalved_matrix(c: ConicForm) -> tuple[tuple, tuple, tuple]:
    """The same matrix without halving the mixed terms; kept for comparison only."""
    return ((c.zz, c.zt, c.zu), (c.zt, c.tt, c.tu), (c.zu, c.tu, c.uu))


def det3(m) -> object:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def reducibility_discriminant(S: Union[CiCoefficients, ConicForm]) -> SparsePoly:
    """det of the symbolic Gram matrix, a polynomial in alpha."""
    c = S if isinstance(S, ConicForm) else restrict_to_fiber(S)
    if not c.symbolic:
        raise ValueError("need a conic with symbolic alpha")
    d = det3(gram_matrix(c))
    if d.is_zero():
        raise PencilError("degenerate pencil: discriminant vanishes identically")
    return d


def _rank3(m) -> int:
    if det3(m):
        return 3
    minors = [
        m[i][k] * m[j][l] - m[i][l] * m[j][k]
        for i in range(3) for j in range(i + 1, 3)
        for k in range(3) for l in range(k + 1, 3)
    ]
    if any(minors):
        return 2
    return 1 if any(x for row in m for x in row) else 0


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


Line = tuple  # coefficients of z, t, u


def factor_reducible(c: ConicForm) -> tuple[Line, Line]:
    """Two non-proportional linear forms in (z, t, u) whose product is c.

    The factors live in the conic's field or a quadratic extension of it.
    """
    if c.symbolic:
        raise ValueError("evaluate the conic at a value of alpha first")
    F = c.zz.F
    c = c.over(F)
    G = gram_matrix(c)
    rk = _rank3(G)
    if rk == 3:
        raise PencilError("irreducible conic")
    if rk == 1:
        raise PencilError("proportional factors: input not quasi-smooth")
    if rk == 0:
        raise PencilError("zero conic")
    rows = [r for r in G if any(r)]
    ker = next(k for i in range(len(rows)) for j in range(i + 1, len(rows)) if any(k := _cross(rows[i], rows[j])))
    j = next(i for i in range(3) if ker[i])
    i1, i2 = (i for i in range(3) if i != j)
    A, B, C = G[i1][i1], 2 * G[i1][i2], G[i2][i2]
    # q(w1, w2) = A w1^2 + B w1 w2 + C w2^2, w_i = v_i - (ker_i / ker_j) v_j
    if not A and not C:
        f1, f2 = (B, F(0)), (F(0), F(1))
    else:
        swap = not A
        if swap:
            A, C = C, A
        disc = B * B - 4 * A * C
        s = F.sqrt(disc)
        if s is None:
            F = QuadraticExtension(F, disc)
            s = F.root
            A, B, C = F(A), F(B), F(C)
        r1, r2 = (-B + s) / (2 * A), (-B - s) / (2 * A)
        f1, f2 = (A, -A * r1), (F(1), -r2)
        if swap:
            f1, f2 = (f1[1], f1[0]), (f2[1], f2[0])

    def to_v(f):
        out = [F(0)] * 3
        out[i1], out[i2] = F(f[0]), F(f[1])
        out[j] = -(F(f[0]) * ker[i1] + F(f[1]) * ker[i2]) / ker[j]
        return tuple(out)

    return to_v(f1), to_v(f2)


def line_product(l1: Line, l2: Line) -> ConicForm:
    (a, b, c), (d, e, f) = l1, l2
    return ConicForm(a * d, a * e + b * d, b * e, a * f + c * d, b * f + c * e, c * f)


def proportional(l1: Line, l2: Line) -> bool:
    return not any(_cross(l1, l2))


# -- end to end -------------------------------------------------------------------


@dataclass
class PencilReport:
    n: int
    seed: int
    field: str
    normalized: bool
    discriminant: Optional[SparsePoly] = None
    root: Optional[Root] = None
    lines: Optional[tuple[Line, Line]] = None
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    unhalved_vanishes: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        d = {
            "n": self.n,
            "seed": self.seed,
            "field": self.field,
            "mode": "normalized" if self.normalized else "general",
            "discriminant_degree": None if self.discriminant is None else self.discriminant.degree(),
            "root_field": None if self.root is None else str(self.root.field),
            "root_degree": None if self.root is None else self.root.degree,
            "alpha": None if self.root is None else str(self.root.value),
            "lines": None if self.lines is None else [[str(c) for c in l] for l in self.lines],
            "unhalved_det_vanishes": self.unhalved_vanishes,
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
            "pass": self.passed,
        }
        return d


def discriminant_degree_bound(n: int, normalized: bool) -> int:
    # 2n+3 reducible fibers in all; the normalized chart puts one at infinity
    return 2 * n + 2 if normalized else 2 * n + 3


def _fiber_point(S: CiCoefficients, alpha: Elt, l1: Line, l2: Line):
    """The unique common point of both lines in the chart u = 1, or None."""
    F = l1[0].F
    det = l1[0] * l2[1] - l1[1] * l2[0]
    if not det:
        return None
    z = (-l1[2] * l2[1] + l2[2] * l1[1]) / det
    t = (-l1[0] * l2[2] + l2[0] * l1[2]) / det
    x, y = (F(1), F(alpha)) if S.normalized else (F(alpha), F(1))
    EA, EB = S.equations()
    solve = EA if S.normalized else EB
    # the solved equation is linear in w with coefficient x (resp. y) = 1
    rest = solve.evaluate({"x": x, "y": y, "z": z, "t": t, "w": 0}, F)
    w = -rest
    return {"x": x, "y": y, "z": z, "t": t, "w": w}


def count_line_intersections(S: CiCoefficients, alpha: Elt, l1: Line, l2: Line) -> tuple[int, bool]:
    """Points of L1 and L1' in common on the surface, and whether p_w is one of them."""
    F = l1[0].F
    EA, EB = S.equations()
    pw = {"x": 0, "y": 0, "z": 0, "t": 0, "w": 1}
    pw_on = EA.evaluate(pw, F) == 0 and EB.evaluate(pw, F) == 0
    count = int(pw_on)
    pt = _fiber_point(S, alpha, l1, l2)
    if pt is not None:
        if EA.evaluate(pt, F) == 0 and EB.evaluate(pt, F) == 0:
            count += 1
        return count, pw_on
    # lines meet on u = 0: points with x = y = 0 and (z, t) along the common direction
    d = (l1[1], -l1[0]) if any(l1[:2]) else (l2[1], -l2[0])
    pt = {"x": 0, "y": 0, "z": d[0], "t": d[1], "w": 0}
    if EA.evaluate(pt, F) == 0 and EB.evaluate(pt, F) == 0:
        return -1, pw_on  # a whole curve
    return count, pw_on


def verify_LR(n: int, seed: int, field: Optional[Field] = None, normalized: bool = False) -> PencilReport:
    F = field if field is not None else default_field()
    rep = PencilReport(n, seed, str(F), normalized)
    chk = rep.checks.append
    S = sample_surface(n, seed, F, normalized)
    EA, EB = S.equations()
    chk(Check("equations weighted homogeneous of degree 2n", "lem:LR", (True, True),
              (EA.is_homogeneous((1, 1, n, n, 2 * n - 1)), EB.is_homogeneous((1, 1, n, n, 2 * n - 1)))))
    chk(Check("coefficient invariants", "lem:LR", True, S.invariants_ok()))

    disc = reducibility_discriminant(S)
    rep.discriminant = disc
    bound = discriminant_degree_bound(n, normalized)
    chk(Check("discriminant nonzero", "lem:LR", True, not disc.is_zero()))
    chk(Check(f"discriminant degree <= {bound}", "lem:LR", True, 0 <= disc.degree() <= bound))

    root = smallest_root(disc)
    if root is None and F == QQ:
        p = DEFAULT_PRIME
        rep.notes.append(f"no root over Q or a quadratic extension; switched to GF({p})")
        F = GF(p)
        S = _reduce(S, F)
        disc = reducibility_discriminant(S)
        rep.discriminant = disc
        root = smallest_root(disc)
    chk(Check("root of the discriminant found", "lem:LR", True, root is not None))
    if root is None:
        return rep
    rep.root = root
    alpha = root.value
    chk(Check("discriminant vanishes at alpha", "lem:LR", True, disc.evaluate({"alpha": alpha}, root.field) == 0))

    conic = restrict_to_fiber(S, alpha)
    chk(Check("Gram rank of the fiber conic", "lem:LR", 2, _rank3(gram_matrix(conic))))
    rep.unhalved_vanishes = det3(unhalved_matrix(conic)) == 0
    try:
        l1, l2 = factor_reducible(conic)
    except PencilError as e:
        rep.notes.append(str(e))
        chk(Check("conic factors", "lem:LR", True, False))
        return rep
    rep.lines = (l1, l2)
    L = l1[0].F
    prod = line_product(l1, l2).coefficients()
    chk(Check("product of the lines equals the conic", "lem:LR", True,
              all(L(a) == L(b) for a, b in zip(prod, conic.coefficients()))))
    chk(Check("lines not proportional", "lem:LR", False, proportional(l1, l2)))
    count, pw_on = count_line_intersections(S, alpha, l1, l2)
    chk(Check("L1 and L1' meet in exactly 2 points", "lem:LR", 2, count))
    chk(Check("p_w is a common point", "lem:LR", True, pw_on))
    return rep


def _reduce(S: CiCoefficients, F: PrimeField) -> CiCoefficients:
    def m(p):
        return SparsePoly(F, p.vars, {e: F(c.v) for e, c in p.terms.items()})

    return CiCoefficients(S.n, F, tuple(F(c.v) for c in S.qa), tuple(F(c.v) for c in S.qb),
                          m(S.f_n), m(S.f_hat), m(S.f_2n), m(S.g_n), m(S.g_hat), m(S.g_2n), S.normalized)
