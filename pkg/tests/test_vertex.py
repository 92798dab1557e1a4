from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ucphase.partitions import EMPTY, Partition
from ucphase.polyring import CutoffError, Poly
from ucphase.symfunc import complete_h, uc_pairs_up_to, universal_character_jt
from ucphase.vertex import (GammaSpec, ModeSpec, apply_word, cross_commutation_check,
                            exp_series_apply, fermion_relation_check, gamma_apply,
                            gamma_pieri_check, mode_apply, raise_uc, uc_bilinear_residual,
                            uc_bilinear_sum)

P = lambda *a: Partition(a)
C3 = (3, 3)
one = Poly.one(C3)
x1, y1 = Poly.var("x", 1, C3), Poly.var("y", 1, C3)


def test_spec_validation():
    with pytest.raises(ValueError):
        GammaSpec(3, "+", 1)
    with pytest.raises(ValueError):
        GammaSpec(1, "*", 1)
    with pytest.raises(ValueError):
        ModeSpec("Z", "+", 0)


def test_gamma_examples():
    assert gamma_apply(GammaSpec(1, "-", 2), one) == [one, x1, complete_h(2, "x", C3)]
    assert gamma_apply(GammaSpec(1, "+", 1), x1) == [x1, one]
    assert gamma_apply(GammaSpec(2, "+", 3), one) == [one] + [Poly.zero(C3)] * 3


def test_gamma_cutoff_guard():
    with pytest.raises(CutoffError):
        gamma_apply(GammaSpec(1, "-", 5), one)


def test_exponential_matches_newton_route():
    from ucphase.symfunc import h_series_apply
    p = universal_character_jt(P(2), P(1), (5, 5))
    for kind in ("x-dy", "y-dx", "dx", "dy"):
        assert exp_series_apply(kind, p, 3) == h_series_apply(kind, p, 3)


def test_pieri_examples():
    r = gamma_pieri_check(GammaSpec(1, "-", 2), EMPTY, EMPTY)
    assert r.passed
    assert gamma_apply(GammaSpec(1, "-", 2), one)[2] == universal_character_jt(P(2), EMPTY, C3)
    assert gamma_pieri_check(GammaSpec(2, "-", 1), EMPTY, EMPTY).passed
    assert gamma_apply(GammaSpec(2, "-", 1), one)[1] == y1
    assert gamma_pieri_check(GammaSpec(1, "+", 1), P(1), EMPTY).passed


@pytest.mark.parametrize("family", [1, 2])
@pytest.mark.parametrize("sign", ["-", "+"])
def test_pieri_small_sweep(family, sign):
    for lam, mu in uc_pairs_up_to(2, 2):
        assert gamma_pieri_check(GammaSpec(family, sign, 2), lam, mu).passed


def test_pieri_opposite_reading_is_recorded():
    r = gamma_pieri_check(GammaSpec(2, "-", 2), P(1), P(1))
    assert r.passed and r.notes["opposite_label_reading_holds"] is False


def test_mode_examples():
    assert mode_apply(ModeSpec("X", "+", 1), one) == x1
    assert mode_apply(ModeSpec("X", "+", -1), one) == Poly.zero(C3)
    assert mode_apply(ModeSpec("Y", "+", 1), one) == y1
    assert mode_apply(ModeSpec("X", "+", 0), one) == one


def test_raise_examples():
    assert raise_uc(P(2, 1), EMPTY, C3) == x1 ** 3 * F(1, 3) - Poly.var("x", 3, C3)
    assert raise_uc(P(1), P(1)).to_text() == "x1*y1 - 1"
    assert raise_uc(EMPTY, EMPTY) == Poly.one((0, 0))
    w = [ModeSpec("X", "+", 1), ModeSpec("Y", "+", 1)]
    assert apply_word(w, one) == x1 * y1 - 1


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(uc_pairs_up_to(3, 3)))
def test_raise_equals_determinant(pair):
    lam, mu = pair
    assert raise_uc(lam, mu) == universal_character_jt(lam, mu)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(uc_pairs_up_to(2, 2)), st.sampled_from(uc_pairs_up_to(2, 2)),
       st.integers(-2, 2), st.sampled_from("XY"), st.sampled_from("+-"))
def test_modes_linear(a, b, n, letter, sign):
    cut = (6, 6)
    p, q = universal_character_jt(*a, cut), universal_character_jt(*b, cut)
    m = ModeSpec(letter, sign, n)
    assert mode_apply(m, p + q * 3) == mode_apply(m, p) + mode_apply(m, q) * 3


def test_fermion_examples():
    assert fermion_relation_check("X", 1, 1, 3).passed
    assert fermion_relation_check("X", 0, 0, 3).passed
    assert cross_commutation_check(1, 2, 3).passed


@pytest.mark.parametrize("letter", ["X", "Y"])
def test_fermion_small_indices(letter):
    for i in range(-1, 2):
        for j in range(-1, 2):
            assert fermion_relation_check(letter, i, j, 2).passed


def test_anticommutator_is_not_trivially_zero():
    # X_0^+ X_0^- alone is not zero, only the combined relation is
    p = Poly.one((6, 6))
    assert mode_apply(ModeSpec("X", "+", 0), mode_apply(ModeSpec("X", "-", 0), p))


def test_bilinear_examples():
    for lam, mu, W in [(EMPTY, EMPTY, 3), (P(1), EMPTY, 4), (P(1), P(1), 5)]:
        sums, rep = uc_bilinear_residual(lam, mu, W)
        assert rep.passed and not sums["X"] and not sums["Y"]


def test_bilinear_detects_non_solutions():
    c = (8, 8)
    tau = Poly.var("x", 1, c) ** 2  # h_2 + e_2: fails a Plucker relation
    assert uc_bilinear_sum("X", tau, 2)
    tau = Poly.var("x", 1, c) * Poly.var("y", 1, c)  # S_[1,1] without its constant
    assert uc_bilinear_sum("X", tau, 3)
