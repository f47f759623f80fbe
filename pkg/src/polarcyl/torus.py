"""Generic solvability of sparse Laurent systems on an algebraic torus.

A system with generic coefficients and supports A_1, ..., A_m has a common
zero in (C*)^n iff for every nonempty subfamily J the Minkowski sum of the
convex hulls of A_j (j in J) has dimension at least |J|.  Only the linear
spans of the difference vectors matter, so each support is carried around
as a ``Support``: a base point plus a basis of its difference lattice span.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence


class _Echelon:
    """Integer row echelon form that grows one vector at a time."""

    def __init__(self) -> None:
        self.rows: list[tuple[int, list[int]]] = []

    def add(self, v: Sequence[int]) -> bool:
        v = list(v)
        for col, row in self.rows:
            c = v[col]
            if c:
                p = row[col]
                v = [p * x - c * y for x, y in zip(v, row)]
        col = next((i for i, x in enumerate(v) if x), None)
        if col is None:
            return False
        g = 0
        for x in v:
            g = gcd(g, x)
        self.rows.append((col, [x // g for x in v]))
        return True


def rank(vectors: Iterable[Sequence[int]]) -> int:
    ech = _Echelon()
    return sum(ech.add(v) for v in vectors)


@dataclass(frozen=True)
class Support:
    """Affine span of a finite exponent set: ``point`` + span(``directions``)."""

    point: tuple[int, ...]
    directions: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.directions)

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]], max_dim: int | None = None) -> "Support | None":
        it = iter(points)
        try:
            base = tuple(next(it))
        except StopIteration:
            return None
        dirs: list[tuple[int, ...]] = []
        ech = _Echelon()
        for p in it:
            if max_dim is not None and len(dirs) >= max_dim:
                break
            v = tuple(a - b for a, b in zip(p, base))
            if ech.add(v):
                dirs.append(v)
        return cls(base, tuple(dirs))

    def lift(self, extra: int) -> "Support":
        """Embed into one more coordinate, placing the set at height ``extra``."""
        return Support(self.point + (extra,), tuple(d + (0,) for d in self.directions))


def join(lower: Support | None, upper: Support | None) -> Support | None:
    """Support of ``g + lam * h`` in the variables (x, lam)."""
    if lower is None and upper is None:
        return None
    if lower is None:
        return upper.lift(1)
    if upper is None:
        return lower.lift(0)
    lo, up = lower.lift(0), upper.lift(1)
    cross = tuple(b - a for a, b in zip(lo.point, up.point))
    dirs = list(lo.directions)
    ech = _Echelon()
    for v in dirs:
        ech.add(v)
    for v in up.directions + (cross,):
        if ech.add(v):
            dirs.append(v)
    return Support(lo.point, tuple(dirs))


def generically_solvable(supports: Sequence[Support]) -> bool:
    """True iff a generic system with these supports vanishes somewhere on the torus.

    An empty system is solvable (the torus itself is nonempty).
    """
    m = len(supports)
    for size in range(1, m + 1):
        for fam in combinations(supports, size):
            if rank([d for s in fam for d in s.directions]) < size:
                return False
    return True
