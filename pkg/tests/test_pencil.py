import time
from fractions import Fraction

import pytest

from polarcyl.fields import GF, QQ, QuadraticExtension
from polarcyl.pencil import (
    CiCoefficients,
    ConicForm,
    PencilError,
    XY,
    det3,
    discriminant_degree_bound,
    factor_reducible,
    gram_matrix,
    line_product,
    unhalved_matrix,
    proportional,
    reducibility_discriminant,
    restrict_to_fiber,
    sample_surface,
    verify_LR,
)
from polarcyl.poly import SparsePoly, smallest_root

P = 2**31 - 1
F = GF(P)


def normalized_surface(n, c, field=QQ):
    zero = SparsePoly(field, XY)
    g2n = SparsePoly(field, XY, {(2 * n, 0): c})
    return CiCoefficients(n, field, (field(0), field(1), field(0)), (field(1), field(0), field(1)),
                          zero, zero, zero, zero, zero, g2n, True)


def q(*cs):
    return ConicForm(*(QQ(c) for c in cs))


def same_up_to_scalar(c1, c2):
    a, b = c1.coefficients(), c2.coefficients()
    i = next(k for k in range(6) if b[k])
    lam = a[i] / b[i]
    return all(x == lam * y for x, y in zip(a, b))


def test_sample_invariants():
    S = sample_surface(2, 0, QQ)
    assert S.a1 and S.b2 and S.invariants_ok()
    S = sample_surface(3, 7, F)
    assert S.a1 and S.b2 and (S.a1 * S.b2 - S.b1 * S.a2)
    assert sample_surface(3, 7, F) == sample_surface(3, 7, F)


def test_sample_normalized_equations():
    S = sample_surface(2, 1, F, normalized=True)
    EA, EB = S.equations()
    x, z, t, w = (SparsePoly.variable(F, ("x", "y", "z", "t", "w"), v) for v in "xztw")
    assert EA == w * x + z * t
    w8 = (1, 1, 2, 2, 3)
    assert EA.is_homogeneous(w8) and EB.is_homogeneous(w8)


def test_sample_field_too_small():
    with pytest.raises(PencilError, match="field too small"):
        sample_surface(2, 0, GF(3))


def test_restrict_normalized_fiber():
    S = sample_surface(2, 3, QQ, normalized=True)
    a = QQ(Fraction(3, 7))
    c = restrict_to_fiber(S, a)
    assert (c.zz, c.zt, c.tt) == (1, -a, 1)
    pt = {"x": 1, "y": a}
    assert c.zu == S.g_n.evaluate(pt) and c.tu == S.g_hat.evaluate(pt) and c.uu == S.g_2n.evaluate(pt)


def test_restrict_all_aux_zero_alpha_zero():
    S = sample_surface(2, 0, QQ)
    zero = SparsePoly(QQ, XY)
    S0 = CiCoefficients(2, QQ, S.qa, S.qb, zero, zero, zero, zero, zero, zero)
    c = restrict_to_fiber(S0, QQ(0))
    assert c.coefficients() == (S.a1, S.b1, 0, 0, 0, 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_symbolic_coefficient_degrees(n):
    c = restrict_to_fiber(sample_surface(n, 11, F))
    assert max(p.degree() for p in c.coefficients()) <= 2 * n + 1


def test_gram_examples():
    a = QQ(5)
    assert gram_matrix(q(1, -5, 1, 0, 0, 0)) == ((1, -a / 2, 0), (-a / 2, 1, 0), (0, 0, 0))
    h = QQ(Fraction(1, 2))
    assert gram_matrix(q(0, 1, 0, 0, 0, 0)) == ((0, h, 0), (h, 0, 0), (0, 0, 0))
    g = gram_matrix(q(1, -5, 1, 4, 6, 9))
    assert g == ((1, -a / 2, 2), (-a / 2, 1, 3), (2, 3, 9))
    assert unhalved_matrix(q(1, -5, 1, 4, 6, 9)) == ((1, -5, 4), (-5, 1, 6), (4, 6, 9))


def test_gram_reproduces_form():
    c = q(2, 3, -1, 5, 7, 11)
    G = gram_matrix(c)
    v = (QQ(2), QQ(-3), QQ(5))
    val = sum(v[i] * G[i][j] * v[j] for i in range(3) for j in range(3))
    assert val == c.as_poly().evaluate({"z": 2, "t": -3, "u": 5})


@pytest.mark.parametrize("n", [1, 2, 5])
def test_normalized_constant_aux_roots_are_pm2(n):
    c = Fraction(3)
    d = reducibility_discriminant(normalized_surface(n, c))
    alpha = SparsePoly.variable(QQ, ("alpha",), "alpha")
    assert d == c * (1 - alpha * alpha * Fraction(1, 4))
    assert all(d.evaluate({"alpha": r}) == 0 for r in (QQ(2), QQ(-2)))
    conic = restrict_to_fiber(normalized_surface(n, c), QQ(2))
    l1, l2 = factor_reducible(conic)
    assert same_up_to_scalar(line_product(l1, l2), conic.over(l1[0].F))


def test_degenerate_pencil():
    A = SparsePoly.constant(QQ, ("alpha",), 1)
    Z = SparsePoly(QQ, ("alpha",))
    with pytest.raises(PencilError, match="degenerate pencil"):
        reducibility_discriminant(ConicForm(Z, A, Z, Z, Z, Z))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_discriminant_degree_bounds(n):
    for seed in range(3):
        assert reducibility_discriminant(sample_surface(n, seed, F, normalized=True)).degree() <= 2 * n + 2
        assert reducibility_discriminant(sample_surface(n, seed, F)).degree() <= 2 * n + 3
    assert discriminant_degree_bound(n, True) == 2 * n + 2


def test_general_mode_has_2n_plus_3_reducible_fibers():
    for n in (1, 2, 3):
        assert reducibility_discriminant(sample_surface(n, 0, F)).degree() == 2 * n + 3


def test_factor_zt():
    l1, l2 = factor_reducible(q(0, 1, 0, 0, 0, 0))
    assert same_up_to_scalar(line_product(l1, l2), q(0, 1, 0, 0, 0, 0))
    z_line = [l for l in (l1, l2) if l[1] == 0 and l[2] == 0]
    t_line = [l for l in (l1, l2) if l[0] == 0 and l[2] == 0]
    assert len(z_line) == len(t_line) == 1


def test_factor_difference_of_squares():
    # (z - t)^2 - u^2
    conic = q(1, -2, 1, 0, 0, -1)
    l1, l2 = factor_reducible(conic)
    assert same_up_to_scalar(line_product(l1, l2), conic)
    norm = {tuple(c / l[0] for c in l) for l in (l1, l2)}
    assert norm == {(QQ(1), QQ(-1), QQ(-1)), (QQ(1), QQ(-1), QQ(1))}


def test_factor_needs_quadratic_extension():
    conic = q(1, 0, -2, 0, 0, 0)  # z^2 - 2 t^2
    l1, l2 = factor_reducible(conic)
    assert isinstance(l1[0].F, QuadraticExtension)
    assert same_up_to_scalar(line_product(l1, l2), conic.over(l1[0].F))
    assert not proportional(l1, l2)


def test_factor_errors():
    with pytest.raises(PencilError, match="irreducible"):
        factor_reducible(q(1, 0, 1, 0, 0, 1))
    with pytest.raises(PencilError, match="proportional factors"):
        factor_reducible(q(1, -2, 1, 0, 0, 0))
    with pytest.raises(PencilError, match="zero conic"):
        factor_reducible(q(0, 0, 0, 0, 0, 0))


def test_seeded_root_factors_exactly():
    S = sample_surface(2, 0, F)
    d = reducibility_discriminant(S)
    r = smallest_root(d)
    conic = restrict_to_fiber(S, r.value)
    assert det3(gram_matrix(conic)) == 0
    l1, l2 = factor_reducible(conic)
    L = l1[0].F
    assert all(L(a) == L(b) for a, b in zip(line_product(l1, l2).coefficients(), conic.coefficients()))
    assert not proportional(l1, l2)


@pytest.mark.parametrize("n,seeds", [(1, range(3)), (2, [0]), (3, range(5))])
def test_verify_LR_general(n, seeds):
    for s in seeds:
        rep = verify_LR(n, s, F)
        assert rep.passed, [c.to_dict() for c in rep.checks if not c.passed]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_verify_LR_normalized(n):
    for s in range(3):
        assert verify_LR(n, s, F, normalized=True).passed


def test_verify_LR_over_rationals_falls_back_or_passes():
    rep = verify_LR(2, 0, QQ)
    assert rep.passed
    if rep.notes:
        assert "switched to GF" in rep.notes[0]


def test_verify_LR_deterministic():
    a = verify_LR(2, 4, F).to_dict()
    b = verify_LR(2, 4, F).to_dict()
    assert a == b


def test_pencil_runtime_small():
    t0 = time.perf_counter()
    verify_LR(4, 0, F, normalized=True)
    assert time.perf_counter() - t0 < 10
