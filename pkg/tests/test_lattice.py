from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polarcyl.lattice import (
    ChainError,
    SurfaceModel,
    blowup_of_plane,
    contract_minus_one,
    contract_negative_section,
    run_chain_S2n,
    s2n_incidence,
    weighted_blowup_11,
)


def hirzebruch(m):
    # basis fiber f, negative section s
    return SurfaceModel(("f", "s"), ((0, 1), (1, -m)), (-(m + 2), -2), label=f"F_{m}")


def s2n_model(n):
    r = 2 * n - 1
    return contract_negative_section(s2n_incidence(n).model, "E", r)


@pytest.mark.parametrize("n,K2", [(2, 1), (3, -1)])
def test_blowup_of_s2n(n, K2):
    S = s2n_model(n)
    r = 2 * n - 1
    assert S.K2 == Fraction(4, r)
    Y = weighted_blowup_11(S, r)
    assert Y.K2 == K2
    assert Y.rank == S.rank + 1
    assert Y.square("E") == -r
    assert all(Y.dot("E", b) == 0 for b in S.basis)
    assert (r, (1, 1)) not in Y.singular_points


def test_smooth_blowup_drops_K2_by_one():
    P = blowup_of_plane(3)
    assert weighted_blowup_11(P, 1).K2 == P.K2 - 1


def test_blowup_needs_singular_point():
    with pytest.raises(ValueError, match="no 1/5"):
        weighted_blowup_11(blowup_of_plane(2), 5)


def test_contract_line_on_cubic():
    X = blowup_of_plane(6)
    assert X.K2 == 3
    assert contract_minus_one(X, "e6").K2 == 4


def test_contract_pushforward_raises_self_intersection():
    inc = s2n_incidence(2)
    Y = inc.model
    assert Y.dot("E", "L1") == 1
    Y1 = contract_minus_one(Y, "L1")
    assert Y1.square("E") == Y.square("E") + 1


def test_contract_rejects_minus_two():
    X = blowup_of_plane(3)
    with pytest.raises(ValueError, match="not a contractible"):
        contract_minus_one(X, ("0", "1", "-1", "0"))


@pytest.mark.parametrize("m", [1, 3, 5])
def test_contract_negative_section_hirzebruch(m):
    F = hirzebruch(m)
    assert F.K2 == 8
    P = contract_negative_section(F, "s", m)
    assert P.K2 == Fraction((m + 2) ** 2, m)
    assert P.rank == 1
    if m >= 2:
        assert P.singular_points == ((m, (1, 1)),)


def test_contract_negative_section_wrong_square():
    with pytest.raises(ValueError):
        contract_negative_section(hirzebruch(3), "s", 2)


def test_chain_n1_degenerates():
    rep = run_chain_S2n(1)
    assert rep.passed
    labels = [s.label for s in rep.steps]
    assert labels[0].startswith("S_{2,2}")


def test_chain_n2_k2_sequence():
    rep = run_chain_S2n(2)
    assert rep.passed
    K2 = [s.K2 for s in rep.steps]
    assert K2 == [Fraction(4, 3), 1, 1, 3, 9, 8, Fraction(25, 3)]


def test_chain_n5():
    rep = run_chain_S2n(5)
    assert rep.passed
    assert [s.K2 for s in rep.steps][:5] == [Fraction(4, 9), -5, -5, 3, 9]


@pytest.mark.parametrize("n", range(1, 13))
def test_chain_all_checks(n):
    rep = run_chain_S2n(n)
    failed = [c.id for c in rep.checks if not c.passed]
    assert not failed
    inc = s2n_incidence(n)
    assert 7 + len(inc.tau1) == 2 + len(inc.alternate) == inc.model.rank == 2 * n + 5


@pytest.mark.parametrize("n", range(1, 13))
def test_tau1_square_iff_all_incidences_one(n):
    # tau_1(E)^2 = E^2 + sum (E.L_i)^2 = -1 over 2n-2 disjoint curves forces E.L_i = 1
    r = 2 * n - 1
    k = 2 * n - 2
    for ones in range(k + 1):
        vals = [1] * ones + [0] * (k - ones)
        assert (-r + sum(v * v for v in vals) == -1) == (ones == k)
    if k:
        assert -r + 4 + (k - 1) != -1


def test_chain_rejects_bad_incidence():
    inc = s2n_incidence(3)
    broken = type(inc)(inc.n, inc.model, ("L1", "E"), inc.tau2, inc.alternate)
    with pytest.raises(ChainError, match="tau_1"):
        run_chain_S2n(3, broken)
    with pytest.raises(ChainError):
        run_chain_S2n(4, inc)


def test_chain_notes_flag_hirzebruch_index():
    (note,) = run_chain_S2n(3).notes
    assert "F_5" in note and "F_4" in note


@st.composite
def random_model(draw):
    k = draw(st.integers(1, 5))
    vals = st.fractions(min_value=-6, max_value=6, max_denominator=5)
    G = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            G[i][j] = G[j][i] = draw(vals)
    K = tuple(draw(vals) for _ in range(k))
    r = draw(st.integers(1, 11))
    sps = ((r, (1, 1)),) if r >= 2 else ()
    model = SurfaceModel(tuple(f"b{i}" for i in range(k)), tuple(map(tuple, G)), K, sps)
    return model, r


@settings(max_examples=100, deadline=None)
@given(random_model())
def test_blowup_contract_round_trip(mr):
    model, r = mr
    Y = weighted_blowup_11(model, r)
    assert Y.K2 == model.K2 - Fraction((r - 2) ** 2, r)
    back = contract_negative_section(Y, "E", r)
    assert back.gram == model.gram
    assert back.canonical == model.canonical
    assert back.K2 - Y.K2 == Fraction((r - 2) ** 2, r)
    assert back.singular_points == model.singular_points
