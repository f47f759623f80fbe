"""Picard lattices of surfaces under weighted blow-ups and contractions.

Classes are rational coordinate vectors in the model's basis. Contracting a
class c projects onto its orthogonal complement, v -> v + (v.c)/(-c^2) c, and
drops one basis vector; blowing up appends an exceptional class orthogonal
to everything pulled back.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence, Union

Vec = tuple[Fraction, ...]
ClassRef = Union[str, Sequence]


class ChainError(RuntimeError):
    pass


def _vec(v) -> Vec:
    return tuple(Fraction(x) for x in v)


@dataclass(frozen=True)
class SurfaceModel:
    basis: tuple[str, ...]
    gram: tuple[Vec, ...]
    canonical: Vec
    singular_points: tuple[tuple[int, tuple[int, int]], ...] = ()
    label: str = ""
    classes: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        k = len(self.basis)
        g = tuple(_vec(row) for row in self.gram)
        if len(g) != k or any(len(row) != k for row in g):
            raise ValueError("gram matrix has wrong shape")
        if any(g[i][j] != g[j][i] for i in range(k) for j in range(i)):
            raise ValueError("gram matrix must be symmetric")
        object.__setattr__(self, "gram", g)
        object.__setattr__(self, "canonical", _vec(self.canonical))
        if len(self.canonical) != k:
            raise ValueError("canonical vector has wrong length")
        object.__setattr__(self, "classes", {n: _vec(v) for n, v in self.classes.items()})

    @property
    def rank(self) -> int:
        return len(self.basis)

    def vector(self, c: ClassRef) -> Vec:
        if isinstance(c, str):
            if c in self.classes:
                return self.classes[c]
            if c in self.basis:
                return tuple(Fraction(int(b == c)) for b in self.basis)
            raise KeyError(f"unknown class {c}")
        v = _vec(c)
        if len(v) != self.rank:
            raise ValueError("class vector has wrong length")
        return v

    def dot(self, u: ClassRef, v: ClassRef) -> Fraction:
        u, v = self.vector(u), self.vector(v)
        return sum((u[i] * self.gram[i][j] * v[j] for i in range(self.rank) for j in range(self.rank) if u[i] and v[j]), Fraction(0))

    def square(self, c: ClassRef) -> Fraction:
        return self.dot(c, c)

    @property
    def K2(self) -> Fraction:
        return self.dot(self.canonical, self.canonical)

    def K_dot(self, c: ClassRef) -> Fraction:
        return self.dot(self.canonical, c)

    def with_classes(self, **named) -> "SurfaceModel":
        new = dict(self.classes)
        new.update({k: self.vector(v) for k, v in named.items()})
        return replace(self, classes=new)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "basis": list(self.basis),
            "gram": [[str(x) for x in row] for row in self.gram],
            "canonical": [str(x) for x in self.canonical],
            "K2": str(self.K2),
            "singular_points": [{"r": r, "type": list(t)} for r, t in self.singular_points],
        }


def _contract(model: SurfaceModel, c: Vec, r: int, label: str) -> SurfaceModel:
    # pivot: last basis vector with nonzero coefficient in c
    i0 = max(i for i, x in enumerate(c) if x)
    keep = [k for k in range(model.rank) if k != i0]
    G = model.gram
    gc = [sum((G[k][j] * c[j] for j in range(model.rank)), Fraction(0)) for k in range(model.rank)]
    gram = tuple(tuple(G[k][l] + gc[k] * gc[l] / r for l in keep) for k in keep)

    def push(v: Vec) -> Vec:
        t = v[i0] / c[i0]
        return tuple(v[k] - t * c[k] for k in keep)

    classes = {}
    for n, v in model.classes.items():
        if v != c:
            classes[n] = push(v)
    return SurfaceModel(
        tuple(model.basis[k] for k in keep),
        gram,
        push(model.canonical),
        model.singular_points,
        label,
        classes,
    )


def contract_minus_one(model: SurfaceModel, c: ClassRef, label: str = "") -> SurfaceModel:
    v = model.vector(c)
    if model.square(v) != -1 or model.K_dot(v) != -1:
        raise ValueError("not a contractible (-1)-class")
    return _contract(model, v, 1, label or model.label)


def contract_negative_section(model: SurfaceModel, c: ClassRef, r: int, label: str = "") -> SurfaceModel:
    """Contract a smooth rational curve of self-intersection -r to a 1/r(1,1) point."""
    v = model.vector(c)
    if r < 1 or model.square(v) != -r:
        raise ValueError(f"class square is {model.square(v)}, not -{r}")
    if model.K_dot(v) != r - 2:
        raise ValueError(f"K.class = {model.K_dot(v)}, not {r - 2}: not a smooth rational curve")
    out = _contract(model, v, r, label or model.label)
    if r >= 2:
        out = replace(out, singular_points=out.singular_points + ((r, (1, 1)),))
    return out


def weighted_blowup_11(model: SurfaceModel, r: int, name: str = "E", label: str = "") -> SurfaceModel:
    """Blow up a 1/r(1,1) point (a smooth point when r = 1).

    K_new = pi*K - (r-2)/r E with E^2 = -r. Tracked classes become pullbacks;
    see ``strict_transform`` for curves through the point.
    """
    if r < 1:
        raise ValueError("r must be positive")
    sps = list(model.singular_points)
    if r >= 2:
        try:
            sps.remove((r, (1, 1)))
        except ValueError:
            raise ValueError(f"no 1/{r}(1,1) point on the model") from None
    if name in model.basis:
        raise ValueError(f"basis already has a class named {name}")
    k = model.rank
    gram = tuple(row + (Fraction(0),) for row in model.gram) + (tuple([Fraction(0)] * k) + (Fraction(-r),),)
    canonical = model.canonical + (Fraction(-(r - 2), r),)
    classes = {n: v + (Fraction(0),) for n, v in model.classes.items()}
    classes[name] = tuple([Fraction(0)] * k) + (Fraction(1),)
    return SurfaceModel(model.basis + (name,), gram, canonical, tuple(sps), label or model.label, classes)


def strict_transform(model: SurfaceModel, c: ClassRef, exceptional: str, r: int) -> Vec:
    v = model.vector(c)
    e = model.vector(exceptional)
    return tuple(a - Fraction(1, r) * b for a, b in zip(v, e))


# -- the S_{2n,2n} chain -------------------------------------------------------


def blowup_of_plane(k: int, label: str = "") -> SurfaceModel:
    """P^2 blown up at k general points, basis H, e_1..e_k."""
    basis = ("H",) + tuple(f"e{i}" for i in range(1, k + 1))
    gram = [[Fraction(0)] * (k + 1) for _ in range(k + 1)]
    gram[0][0] = Fraction(1)
    for i in range(1, k + 1):
        gram[i][i] = Fraction(-1)
    canonical = (Fraction(-3),) + (Fraction(1),) * k
    return SurfaceModel(basis, tuple(map(tuple, gram)), canonical, (), label)


@dataclass(frozen=True)
class Incidence:
    """Y_0 with the curves the chain contracts, as classes on the model."""

    n: int
    model: SurfaceModel
    tau1: tuple[str, ...]  # meet E once each
    tau2: tuple[str, ...]
    alternate: tuple[str, ...]  # disjoint from E


def s2n_incidence(n: int) -> Incidence:
    """Y_0 as P^2 blown up at 2n+4 points, E the conic through the first 2n+3.

    L_i = e_i; M~_i = H - e_i - e_{2n+3} for i <= 2n+2; the second component
    of the reducible pencil member through p_w is H - e_1 - e_{2n+4}.
    """
    if n < 1:
        raise ValueError("n must be positive")
    k = 2 * n + 4
    Y = blowup_of_plane(k, "Y_0")
    E = [Fraction(2)] + [Fraction(-1)] * (k - 1) + [Fraction(0)]
    named = {"E": E}
    for i in range(1, k + 1):
        named[f"L{i}"] = f"e{i}"
    for i in range(1, 2 * n + 3):
        v = [Fraction(0)] * (k + 1)
        v[0], v[i], v[2 * n + 3] = Fraction(1), Fraction(-1), Fraction(-1)
        named[f"M{i}"] = v
    v = [Fraction(0)] * (k + 1)
    v[0], v[1], v[k] = Fraction(1), Fraction(-1), Fraction(-1)
    named["L1'"] = v
    Y = Y.with_classes(**named)
    return Incidence(
        n,
        Y,
        tuple(f"L{i}" for i in range(1, 2 * n - 1)),
        tuple(f"L{i}" for i in range(2 * n - 1, 2 * n + 5)),
        tuple(f"M{i}" for i in range(1, 2 * n + 3)) + (f"L{2 * n + 4}",),
    )


@dataclass
class ChainStep:
    label: str
    K2: Fraction
    rank: int
    tracked: dict

    def to_dict(self) -> dict:
        return {"label": self.label, "K2": str(self.K2), "rank": self.rank, "tracked": {k: str(v) for k, v in self.tracked.items()}}


@dataclass
class ChainReport:
    n: int
    steps: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "steps": [s.to_dict() for s in self.steps],
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
            "pass": self.passed,
        }


def _step(report, model, tracked=("E",)):
    report.steps.append(ChainStep(model.label, model.K2, model.rank, {f"{t}^2": model.square(t) for t in tracked if t in model.classes}))


def _contract_all(model, names, step, label):
    for name in names:
        try:
            model = contract_minus_one(model, name, label)
        except (ValueError, KeyError) as e:
            raise ChainError(f"step {step}: cannot contract {name}: {e}") from None
    return model


def run_chain_S2n(n: int, incidence: Optional[Incidence] = None) -> ChainReport:
    """Replay both routes from Y_0 with exact checks at every stage."""
    from .intersect import Check, anticanonical_square, s2n

    inc = incidence or s2n_incidence(n)
    if inc.n != n:
        raise ChainError(f"incidence data is for n={inc.n}, not n={n}")
    r = 2 * n - 1
    rep = ChainReport(n)
    Y0 = inc.model
    chk = rep.checks.append

    # S itself: contract E on Y_0
    try:
        S = contract_negative_section(Y0, "E", r, f"S_{{{2*n},{2*n}}}")
    except ValueError as e:
        raise ChainError(f"step S: cannot contract E: {e}") from None
    _step(rep, S, ("L1", "L1'"))
    chk(Check("K^2(S) = O(1)^2", "lem:tau", anticanonical_square(s2n(n)), S.K2))
    chk(Check("L1.(-K) on S", "lem:tau", Fraction(2, r), -S.K_dot("L1")))
    chk(Check("L1^2 on S", "lem:tau", Fraction(2 - 2 * n, r), S.square("L1")))
    chk(Check("L1.L1' on S", "lem:tau", Fraction(2 * n, r), S.dot("L1", "L1'")))

    # weighted blow-up back to Y_0
    try:
        Yb = weighted_blowup_11(S, r, "Ew", "Y_0 (blow-up of S)")
    except ValueError as e:
        raise ChainError(f"step pi_0: {e}") from None
    _step(rep, Yb)
    chk(Check("K^2(Y_0) = -(2n-5)", "lem:tau", Fraction(-(2 * n - 5)), Yb.K2))
    chk(Check("strict transform of L1 is a (-1)-curve", "lem:tau", Fraction(-1), Yb.square(strict_transform(Yb, "L1", "Ew", r))))
    chk(Check("blow-up of S agrees with Y_0 model", "lem:tau", Y0.K2, Yb.K2))
    chk(Check("rank(Y_0) = 2n+5", "eq:total", 2 * n + 5, Y0.rank))

    _step(rep, Y0)
    E2 = Y0.square("E")
    predicted = E2 + sum(Y0.dot("E", L) ** 2 for L in inc.tau1)
    chk(Check("E^2 on Y_0", "lem:tau", Fraction(-r), E2))

    # route 1
    Y = _contract_all(Y0, inc.tau1, "tau_1", f"Y_{{{2*n-2}}}")
    _step(rep, Y)
    chk(Check("K^2 after tau_1", "lem:tau", Fraction(3), Y.K2))
    chk(Check("tau_1(E)^2", "lem:tau", Fraction(-1), Y.square("E")))
    chk(Check("tau_1(E)^2 = E^2 + sum (E.L_i)^2", "lem:tau", predicted, Y.square("E")))
    chk(Check("all E.L_i = 1 for contracted L_i", "lem:tau", True, all(Y0.dot("E", L) == 1 for L in inc.tau1)))
    rank_cubic = Y.rank
    P2 = _contract_all(Y, inc.tau2, "tau_2", "P^2")
    _step(rep, P2)
    chk(Check("K^2 after tau_2 (P^2)", "eq:total", Fraction(9), P2.K2))
    chk(Check("rank after tau_2", "eq:total", 1, P2.rank))

    # route 2
    F = _contract_all(Y0, inc.alternate, "eta_1", f"F_{{{r}}}")
    _step(rep, F)
    chk(Check("K^2 of Hirzebruch surface", "lem:pi", Fraction(8), F.K2))
    chk(Check("E-image unchanged", "lem:pi", Fraction(-r), F.square("E")))
    try:
        P = contract_negative_section(F, "E", r, f"P(1,1,{r})")
    except ValueError as e:
        raise ChainError(f"step eta_2: {e}") from None
    _step(rep, P)
    chk(Check("K^2 of P(1,1,2n-1)", "lem:pi", Fraction((2 * n + 1) ** 2, r), P.K2))
    chk(Check("rank bookkeeping 7+(2n-2) = 2+(2n+3) = rank(Y_0)", "eq:total",
              (Y0.rank, Y0.rank), (rank_cubic + len(inc.tau1), F.rank + len(inc.alternate))))
    rep.notes.append(f"intermediate surface is F_{r} (section self-intersection -{r}), not F_{2*n-2}")
    return rep
