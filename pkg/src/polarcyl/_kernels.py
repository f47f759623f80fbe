"""Compiled enumeration kernels.

The kernels only prune: every tuple they emit is re-checked by the exact
predicates in ``graded``.  Each prefilter is exact on the strata it looks at
(coordinate points and coordinate lines), so nothing valid is lost.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def count2(d, p, q):
    """Number of monomials of degree d in two variables of weights p, q (capped at 2)."""
    if d < 0:
        return 0
    c = 0
    for a in range(d // p + 1):
        if (d - a * p) % q == 0:
            c += 1
            if c == 2:
                break
    return c


@njit(cache=True)
def first2(d, p, q):
    """Exponents (a, b) of the first monomial p*a + q*b = d, in descending a."""
    for a in range(d // p, -1, -1):
        if (d - a * p) % q == 0:
            return a, (d - a * p) // q
    return -1, -1


@njit(cache=True)
def count3(d, p, q, r):
    if d < 0:
        return 0
    c = 0
    for a in range(d // p + 1):
        c += count2(d - a * p, q, r)
        if c >= 2:
            return 2
    return c


@njit(cache=True)
def _rank3(vecs, m):
    # exact rank of the first m integer 3-vectors
    nz = False
    for i in range(m):
        if vecs[i, 0] != 0 or vecs[i, 1] != 0 or vecs[i, 2] != 0:
            nz = True
            break
    if not nz:
        return 0
    two = False
    for i in range(m):
        for j in range(i + 1, m):
            c0 = vecs[i, 1] * vecs[j, 2] - vecs[i, 2] * vecs[j, 1]
            c1 = vecs[i, 2] * vecs[j, 0] - vecs[i, 0] * vecs[j, 2]
            c2 = vecs[i, 0] * vecs[j, 1] - vecs[i, 1] * vecs[j, 0]
            if c0 != 0 or c1 != 0 or c2 != 0:
                two = True
                for k in range(m):
                    if c0 * vecs[k, 0] + c1 * vecs[k, 1] + c2 * vecs[k, 2] != 0:
                        return 3
        if two:
            break
    return 2 if two else 1


@njit(cache=True)
def ambient_wf(a):
    n = a.shape[0]
    for skip in range(n):
        g = 0
        for i in range(n):
            if i != skip:
                g = _gcd(g, a[i])
        if g != 1:
            return False
    return True


@njit(cache=True)
def points_ok(a, d1, d2):
    """Coordinate-point condition for the general complete intersection."""
    n = a.shape[0]
    for i in range(n):
        ai = a[i]
        if d1 % ai == 0 or d2 % ai == 0:
            continue
        ok = False
        for e1 in range(n):
            if e1 == i or a[e1] > d1 or (d1 - a[e1]) % ai != 0:
                continue
            for e2 in range(n):
                if e2 == i or e2 == e1 or a[e2] > d2 or (d2 - a[e2]) % ai != 0:
                    continue
                ok = True
                break
            if ok:
                break
        if not ok:
            return False
    return True


@njit(cache=True)
def ci_surface_wf(a, d1, d2):
    for i in range(5):
        for j in range(i + 1, 5):
            g = _gcd(a[i], a[j])
            if g == 1:
                continue
            if count2(d1, a[i], a[j]) == 0 and count2(d2, a[i], a[j]) == 0:
                return False
            for k in range(j + 1, 5):
                if _gcd(g, a[k]) == 1:
                    continue
                c1 = count3(d1, a[i], a[j], a[k])
                c2 = count3(d2, a[i], a[j], a[k])
                if c1 == 0 and c2 == 0:
                    return False
                if (c1 == 0 and c2 == 2) or (c2 == 0 and c1 == 2):
                    return False
    return True


@njit(cache=True)
def _ci_line_ok(a, d1, d2, i, j):
    p = a[i]
    q = a[j]
    P0 = count2(d1, p, q)
    P1 = count2(d2, p, q)
    if P0 > 0 and P1 > 0:
        return True
    if P0 > 0 or P1 > 0:
        pk = P0 if P0 > 0 else P1
        dm = d2 if P0 > 0 else d1
        if pk == 1:
            return True
        for e in range(5):
            if e != i and e != j and count2(dm - a[e], p, q) > 0:
                return True
        return False
    # neither pure equation survives: both Jacobian rows and the pencil
    for dk in (d1, d2):
        n = 0
        big = 0
        for e in range(5):
            if e != i and e != j:
                c = count2(dk - a[e], p, q)
                if c > 0:
                    n += 1
                    big = c
        if n == 0 or (n == 1 and big == 2):
            return False
    g = _gcd(p, q)
    vx = q // g
    vy = -(p // g)
    # supports of G_{1,e} + lam * G_{2,e} as (has_v, has_cross, cross vector)
    dirs = np.zeros((3, 2, 3), dtype=np.int64)
    ndir = np.zeros(3, dtype=np.int64)
    m = 0
    for e in range(5):
        if e == i or e == j:
            continue
        c0 = count2(d1 - a[e], p, q)
        c1 = count2(d2 - a[e], p, q)
        if c0 == 0 and c1 == 0:
            continue
        k = 0
        if c0 == 2 or c1 == 2:
            dirs[m, k, 0] = vx
            dirs[m, k, 1] = vy
            k += 1
        if c0 > 0 and c1 > 0:
            x0, y0 = first2(d1 - a[e], p, q)
            x1, y1 = first2(d2 - a[e], p, q)
            dirs[m, k, 0] = x1 - x0
            dirs[m, k, 1] = y1 - y0
            dirs[m, k, 2] = 1
            k += 1
        ndir[m] = k
        m += 1
    buf = np.zeros((6, 3), dtype=np.int64)
    for mask in range(1, 1 << m):
        size = 0
        nv = 0
        for s in range(m):
            if mask >> s & 1:
                size += 1
                for k in range(ndir[s]):
                    buf[nv, 0] = dirs[s, k, 0]
                    buf[nv, 1] = dirs[s, k, 1]
                    buf[nv, 2] = dirs[s, k, 2]
                    nv += 1
        if _rank3(buf, nv) < size:
            return True
    return False


@njit(cache=True)
def ci_prefilter(a, d1, d2):
    if not ambient_wf(a):
        return False
    if not ci_surface_wf(a, d1, d2):
        return False
    for i in range(5):
        for j in range(i + 1, 5):
            if not _ci_line_ok(a, d1, d2, i, j):
                return False
    return True


@njit(cache=True)
def _ci_emit(a, d1, d2, out, cnt):
    if d1 > d2:
        d1, d2 = d2, d1
    if d1 < 1:
        return cnt
    for i in range(5):
        if a[i] == d1 or a[i] == d2:
            return cnt
    if points_ok(a, d1, d2) and ci_prefilter(a, d1, d2):
        if cnt < out.shape[0]:
            for i in range(5):
                out[cnt, i] = a[i]
            out[cnt, 5] = d1
            out[cnt, 6] = d2
        cnt += 1
    return cnt


@njit(cache=True)
def _a0_candidates(a, i, c1, k1, c2, k2, cand):
    # Degrees are c + k*a0.  List the a0 <= a1 for which coordinate point i can
    # pass, or return -1 when the constraint does not pin a0 down.
    ai = a[i]
    nc = 0
    for disj in range(18):
        if disj < 2:
            C0 = c1 if disj == 0 else c2
            K0 = k1 if disj == 0 else k2
            natoms = 1
            C1 = 0
            K1 = 0
        else:
            e1 = (disj - 2) // 4
            e2 = (disj - 2) % 4
            if e1 == e2 or e1 == i or e2 == i:
                continue
            ce1 = 0 if e1 == 0 else a[e1]
            ke1 = 1 if e1 == 0 else 0
            ce2 = 0 if e2 == 0 else a[e2]
            ke2 = 1 if e2 == 0 else 0
            C0 = c1 - ce1
            K0 = k1 - ke1
            C1 = c2 - ce2
            K1 = k2 - ke2
            natoms = 2
        feasible = True
        has_var = False
        r = 0
        if K0 == 0:
            if C0 % ai != 0:
                feasible = False
        else:
            has_var = True
            r = (-C0 * K0) % ai
        if natoms == 2 and feasible:
            if K1 == 0:
                if C1 % ai != 0:
                    feasible = False
            elif not has_var:
                has_var = True
                r = (-C1 * K1) % ai
        if not feasible:
            continue
        if not has_var:
            return -1
        v = r if r != 0 else ai
        if v <= a[1]:
            cand[nc] = v
            nc += 1
    return nc


@njit(cache=True)
def enumerate_ci(B, out):
    """Index-one codimension-two candidates with weights a0<=...<=a4<=B.

    The top weight a4 must be accounted for at its coordinate point: either a
    degree is m*a4 (m = 2, 3, 4; m = 1 is a linear cone) or both degrees are
    a4 plus another weight, which forces the remaining pair to sum to a4 + 1.
    """
    a = np.zeros(5, dtype=np.int64)
    cand = np.zeros(32, dtype=np.int64)
    cnt = 0
    for a4 in range(1, B + 1):
        for a3 in range(1, a4 + 1):
            for a2 in range(1, a3 + 1):
                for a1 in range(1, a2 + 1):
                    a[1] = a1
                    a[2] = a2
                    a[3] = a3
                    a[4] = a4
                    S4 = a1 + a2 + a3 + a4
                    for opt in range(6):
                        if opt < 3:
                            m = opt + 2
                            c1 = m * a4
                            k1 = 0
                            c2 = S4 - 1 - m * a4
                            k2 = 1
                        else:
                            p = opt - 3
                            if p == 0:
                                u = a2
                                v = a3
                                w = a1
                            elif p == 1:
                                u = a1
                                v = a3
                                w = a2
                            else:
                                u = a1
                                v = a2
                                w = a3
                            if u + v != a4 + 1:
                                continue
                            c1 = a4
                            k1 = 1
                            c2 = a4 + w
                            k2 = 0
                        best = -1
                        for i in range(3, 0, -1):
                            nc = _a0_candidates(a, i, c1, k1, c2, k2, cand)
                            if nc >= 0:
                                best = nc
                                break
                        if best < 0:
                            for a0 in range(1, a1 + 1):
                                a[0] = a0
                                cnt = _ci_emit(a, c1 + k1 * a0, c2 + k2 * a0, out, cnt)
                        else:
                            for j in range(best):
                                a[0] = cand[j]
                                cnt = _ci_emit(a, c1 + k1 * a[0], c2 + k2 * a[0], out, cnt)
                    for v in range(1, 4):
                        a0 = a4 + 1 - a[v]
                        if a0 < 1 or a0 > a1:
                            continue
                        a[0] = a0
                        j = 1 if v != 1 else 2
                        l = 3 if v != 3 else 2
                        cnt = _ci_emit(a, a4 + a[j], a4 + a[l], out, cnt)
    return cnt


@njit(cache=True)
def brute_ci(B, out):
    """Reference loop over every weight tuple and degree split."""
    a = np.zeros(5, dtype=np.int64)
    cnt = 0
    for a4 in range(1, B + 1):
        for a3 in range(1, a4 + 1):
            for a2 in range(1, a3 + 1):
                for a1 in range(1, a2 + 1):
                    for a0 in range(1, a1 + 1):
                        a[0] = a0
                        a[1] = a1
                        a[2] = a2
                        a[3] = a3
                        a[4] = a4
                        t = a0 + a1 + a2 + a3 + a4 - 1
                        for d1 in range(1, t // 2 + 1):
                            cnt = _ci_emit(a, d1, t - d1, out, cnt)
    return cnt


@njit(cache=True)
def hyp_prefilter(a, d):
    if not ambient_wf(a):
        return False
    for i in range(4):
        if d % a[i] == 0:
            continue
        ok = False
        for e in range(4):
            if e != i and a[e] <= d and (d - a[e]) % a[i] == 0:
                ok = True
                break
        if not ok:
            return False
    for i in range(4):
        for j in range(i + 1, 4):
            if count2(d, a[i], a[j]) > 0:
                continue
            if _gcd(a[i], a[j]) > 1:
                return False
            n = 0
            for e in range(4):
                if e != i and e != j and count2(d - a[e], a[i], a[j]) > 0:
                    n += 1
            if n < 2:
                return False
    return True


@njit(cache=True)
def enumerate_hyp(B, out):
    """Index-one hypersurface candidates with weights a0<=...<=a3<=B."""
    a = np.zeros(4, dtype=np.int64)
    cnt = 0
    for a3 in range(1, B + 1):
        for a2 in range(1, a3 + 1):
            for a1 in range(1, a2 + 1):
                for a0 in range(1, a1 + 1):
                    d = a0 + a1 + a2 + a3 - 1
                    a[0] = a0
                    a[1] = a1
                    a[2] = a2
                    a[3] = a3
                    if d == a0 or d == a1 or d == a2 or d == a3:
                        continue
                    if hyp_prefilter(a, d):
                        if cnt < out.shape[0]:
                            for i in range(4):
                                out[cnt, i] = a[i]
                            out[cnt, 4] = d
                        cnt += 1
    return cnt
