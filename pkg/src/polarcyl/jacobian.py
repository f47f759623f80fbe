"""Randomized Jacobian check of quasi-smoothness via Groebner bases over F_p.

For random coefficients, the affine cone is smooth away from the origin iff
the ideal of the equations and the maximal minors of their Jacobian has the
origin as its only zero, i.e. every variable has a pure power among the
leading terms of a Groebner basis. A random member over F_p can only fail
where the general member does or by bad luck, so a single pass certifies
the general member; several seeds guard against false negatives.
Cost grows quickly with the weights: meant for small cases and tests.
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import Sequence

import sympy

from .graded import _check_degrees, _check_weights, enumerate_monomials

DEFAULT_PRIME = 32003


def random_member(w: Sequence[int], degs: Sequence[int], seed: int, p: int = DEFAULT_PRIME):
    X = sympy.symbols(f"x0:{len(w)}")
    rng = random.Random(seed)
    eqs = []
    for d in degs:
        eqs.append(sum(
            (rng.randrange(1, p) * sympy.prod([X[i] ** m[i] for i in range(len(w))]) for m in enumerate_monomials(w, d)),
            sympy.Integer(0),
        ))
    return X, eqs


def singular_locus_is_origin(w: Sequence[int], degs: Sequence[int], seed: int, p: int = DEFAULT_PRIME) -> bool:
    w = _check_weights(w)
    degs = _check_degrees(w, degs)
    X, eqs = random_member(w, degs, seed, p)
    if any(e == 0 for e in eqs):
        return False
    J = [[sympy.diff(f, x) for x in X] for f in eqs]
    gens = list(eqs)
    k = len(eqs)
    for cols in combinations(range(len(w)), k):
        M = sympy.Matrix([[J[r][c] for c in cols] for r in range(k)])
        gens.append(sympy.expand(M.det()))
    G = sympy.groebner([g for g in gens if g != 0], *X, modulus=p, order="grevlex")
    lead = [sympy.Poly(g, *X).monoms(order="grevlex")[0] for g in G.exprs]
    return all(
        any(m[i] > 0 and all(m[j] == 0 for j in range(len(w)) if j != i) for m in lead)
        for i in range(len(w))
    )


def quasi_smooth_randomized(w: Sequence[int], degs: Sequence[int], seeds: int = 8, p: int = DEFAULT_PRIME) -> bool:
    """True as soon as one random member is quasi-smooth."""
    return any(singular_locus_is_origin(w, degs, s, p) for s in range(seeds))
