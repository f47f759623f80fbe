"""Weighted gradings: monomials, index, well-formedness and quasi-smoothness.

Weights are plain tuples of positive integers and degree specs are tuples of
one (hypersurface) or two (codimension-two complete intersection) degrees.
All predicates describe the *general* member of the given degrees.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Iterator, Sequence

from .torus import Support, generically_solvable, join

Monomial = tuple[int, ...]


def _check_weights(w: Sequence[int]) -> tuple[int, ...]:
    w = tuple(int(a) for a in w)
    if len(w) not in (4, 5) or min(w) < 1:
        raise ValueError(f"weights must be 4 or 5 positive integers, got {w}")
    return w


def _check_degrees(w: tuple[int, ...], degs: Sequence[int]) -> tuple[int, ...]:
    degs = tuple(sorted(int(d) for d in degs))
    if len(degs) != len(w) - 3 or min(degs) < 1:
        raise ValueError(f"{len(w)} weights need {len(w) - 3} positive degree(s), got {degs}")
    return degs


def weighted_degree(w: Sequence[int], m: Sequence[int]) -> int:
    return sum(a * e for a, e in zip(w, m))


def _iter_monomials(w: tuple[int, ...], d: int) -> Iterator[Monomial]:
    # descending lex: largest exponent of the first variable first
    if d < 0:
        return
    n = len(w)
    if n == 0:
        if d == 0:
            yield ()
        return
    limit = max(64, 1 << d.bit_length())
    tails = [_reachable(tuple(sorted(set(w[k:]))), limit) for k in range(1, n)]

    def rec(k: int, rem: int) -> Iterator[Monomial]:
        a = w[k]
        if k == n - 1:
            if rem % a == 0:
                yield (rem // a,)
            return
        tail = tails[k]
        for e in range(rem // a, -1, -1):
            r = rem - e * a
            if tail[r]:
                for t in rec(k + 1, r):
                    yield (e,) + t

    yield from rec(0, d)


def enumerate_monomials(w: Sequence[int], d: int) -> list[Monomial]:
    """All exponent vectors of weighted degree ``d``, in descending lex order."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    return list(_iter_monomials(tuple(w), d))


@lru_cache(maxsize=None)
def _reachable(w: tuple[int, ...], limit: int) -> bytes:
    table = bytearray(limit + 1)
    table[0] = 1
    for a in set(w):
        for v in range(a, limit + 1):
            if table[v - a]:
                table[v] = 1
    return bytes(table)


def representable(d: int, w: Sequence[int]) -> bool:
    """Is ``d`` a non-negative integer combination of ``w``?"""
    if d < 0:
        return False
    if d == 0:
        return True
    w = tuple(sorted(set(w)))
    if not w:
        return False
    limit = max(64, 1 << (d.bit_length()))
    return bool(_reachable(w, limit)[d])


def index(w: Sequence[int], degs: Sequence[int]) -> int:
    return sum(w) - sum(degs)


def is_linear_cone(w: Sequence[int], degs: Sequence[int]) -> bool:
    return any(d in w for d in degs)


def ambient_well_formed(w: Sequence[int]) -> bool:
    w = tuple(w)
    return all(gcd(*sub) == 1 for sub in combinations(w, len(w) - 1))


def support(w: Sequence[int], d: int) -> Support | None:
    """Affine span of the degree-``d`` monomials in variables of weights ``w``."""
    w = tuple(w)
    if d < 0 or not representable(d, w):
        return None
    appearing = sum(1 for a in w if representable(d - a, w))
    return Support.from_points(_iter_monomials(w, d), max_dim=max(appearing - 1, 0))


def _pure_supports(w, degs, I):
    wI = [w[i] for i in I]
    return [support(wI, d) for d in degs]


def surface_well_formed(w: Sequence[int], degs: Sequence[int]) -> bool:
    """No singular stratum of the ambient space meets the surface in a curve."""
    w = _check_weights(w)
    degs = _check_degrees(w, degs)
    if not ambient_well_formed(w):
        return False
    n = len(w)
    for size in range(2, n - 1):
        for J in combinations(range(n), size):
            if gcd(*(w[j] for j in J)) == 1:
                continue
            eqs = [s for s in _pure_supports(w, degs, J) if s is not None]
            if generically_solvable(eqs) and size - 1 - len(eqs) > 0:
                return False
    return True


def _hypersurface_stratum_ok(w, d, I) -> bool:
    wI = [w[i] for i in I]
    if representable(d, wI):
        return True
    outside = [e for e in range(len(w)) if e not in I and representable(d - w[e], wI)]
    return len(outside) >= len(I)


def _torus_stratum_ok(w, degs, I) -> bool:
    """Jacobian rank condition on the torus of the stratum spanned by ``I``."""
    wI = [w[i] for i in I]
    others = [e for e in range(len(w)) if e not in I]
    pure = [support(wI, d) for d in degs]
    if all(p is not None for p in pure):
        return True
    lin = [[support(wI, d - w[e]) for e in others] for d in degs]
    if len(degs) == 1:
        return not generically_solvable([s for s in lin[0] if s is not None])
    if pure[0] is not None or pure[1] is not None:
        k = 0 if pure[0] is not None else 1
        eqs = [pure[k]] + [s for s in lin[1 - k] if s is not None]
        return not generically_solvable(eqs)
    rows = [[s for s in lin[k] if s is not None] for k in (0, 1)]
    if generically_solvable(rows[0]) or generically_solvable(rows[1]):
        return False
    pencil = [join(g, h) for g, h in zip(*lin)]
    return not generically_solvable([s for s in pencil if s is not None])


def quasi_smooth_torus(w: Sequence[int], degs: Sequence[int]) -> bool:
    """Quasi-smoothness of the general member, decided stratum by stratum on tori.

    Works for hypersurfaces and codimension-two complete intersections alike.
    """
    w = _check_weights(w)
    degs = _check_degrees(w, degs)
    n = len(w)
    return all(
        _torus_stratum_ok(w, degs, I)
        for size in range(1, n + 1)
        for I in combinations(range(n), size)
    )


def quasi_smooth_general(w: Sequence[int], degs: Sequence[int]) -> bool:
    """Is the general member with these weights and degrees quasi-smooth?

    Hypersurfaces use the subset-of-variables monomial criterion; complete
    intersections use the torus-stratum criterion of ``quasi_smooth_torus``.
    """
    w = _check_weights(w)
    degs = _check_degrees(w, degs)
    n = len(w)
    if len(degs) == 1:
        return all(
            _hypersurface_stratum_ok(w, degs[0], I)
            for size in range(1, n + 1)
            for I in combinations(range(n), size)
        )
    return quasi_smooth_torus(w, degs)
