import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ucphase.partitions import EMPTY, Partition, partitions_of, partitions_up_to
from ucphase.polyring import Poly, hall_pairing
from ucphase.symfunc import (character, complete_h, h_series_apply, h_shifted, schur,
                             schur_by_characters, schur_eval, skew_H_apply, truncated_H_apply,
                             uc_combination, uc_expand, uc_pairs_up_to, universal_character_jt,
                             universal_character_op)

P = lambda *a: Partition(a)
C3 = (3, 3)


def x(n, c=C3):
    return Poly.var("x", n, c)


def y(n, c=C3):
    return Poly.var("y", n, c)


def at_power_sums(p, points):
    # x_n -> (1/n) sum u^n, y ignored (must be absent)
    total = F(0)
    for (xe, ye), c in p:
        assert not ye
        term = F(c)
        for i, e in enumerate(xe):
            n = i + 1
            term *= (F(sum(F(u) ** n for u in points), n)) ** e
        total += term
    return total


def ssyt_count_eval(lam, points):
    # brute-force sum over fillings with rows weakly increasing, columns strictly
    cells = [(r, c) for r, row in enumerate(lam) for c in range(row)]
    total = F(0)
    for fill in itertools.product(range(len(points)), repeat=len(cells)):
        T = dict(zip(cells, fill))
        if all(T[(r, c)] <= T[(r, c + 1)] for r, c in cells if (r, c + 1) in T) and \
                all(T[(r, c)] < T[(r + 1, c)] for r, c in cells if (r + 1, c) in T):
            v = F(1)
            for i in fill:
                v *= points[i]
            total += v
    return total


def test_complete_h_examples():
    assert complete_h(2, "x", C3) == x(1) ** 2 * F(1, 2) + x(2)
    assert complete_h(3, "x", C3) == x(1) ** 3 * F(1, 6) + x(1) * x(2) + x(3)
    assert complete_h(-1, "x", C3) == 0
    assert complete_h(0, "y", C3) == Poly.one(C3)
    assert complete_h(2, [1, 2]) == 7  # 1 + 2 + 4


def test_h_shifted_examples():
    assert h_shifted(1, "x-dy", y(1)) == x(1) * y(1) - 1
    assert h_shifted(2, "x-dy", Poly.one(C3)) == complete_h(2, "x", C3)
    p = x(1) * y(2) - 4
    assert h_shifted(0, "y-dx", p) == p


def test_schur_examples():
    assert schur(P(1, 1), "x", C3) == x(1) ** 2 * F(1, 2) - x(2)
    assert schur(P(2, 1), "x", C3) == x(1) ** 3 * F(1, 3) - x(3)
    assert schur(EMPTY, "x", C3) == Poly.one(C3)


def test_schur_against_characters():
    for n in range(6):
        for lam in partitions_of(n):
            assert schur(lam, "x", (n, n)) == schur_by_characters(lam, "x", (n, n))


def test_character_table_orthogonality():
    # column orthogonality for S_4 through the class sizes
    from math import factorial
    n = 4
    lams = partitions_of(n)

    def z(rho):
        out = 1
        for k in set(rho):
            m = rho.count(k)
            out *= k ** m * factorial(m)
        return out

    for a in lams:
        for b in lams:
            s = sum(F(character(a, r) * character(b, r), z(r)) for r in lams)
            assert s == (1 if a == b else 0)


def test_schur_orthonormal_under_hall_pairing():
    lams = [l for n in range(5) for l in partitions_of(n)]
    for a in lams:
        for b in lams:
            v = hall_pairing(schur(a, "x", (4, 4)), schur(b, "x", (4, 4)))
            assert v == (1 if a == b else 0)


def test_uc_examples():
    assert universal_character_jt(P(1), P(1)) == x(1, (1, 1)) * y(1, (1, 1)) - 1
    lam = P(2, 1)
    assert universal_character_jt(lam, EMPTY, C3) == schur(lam, "x", C3)
    assert universal_character_jt(EMPTY, EMPTY).to_text() == "1"
    assert universal_character_op(P(1), P(1)).to_text() == "x1*y1 - 1"
    assert universal_character_op(P(2), EMPTY, C3) == complete_h(2, "x", C3)
    assert universal_character_op(EMPTY, P(1), C3) == y(1)


def test_uc_routes_agree_small():
    for lam, mu in uc_pairs_up_to(3, 3):
        assert universal_character_jt(lam, mu) == universal_character_op(lam, mu)


def test_uc_with_empty_lambda_is_schur_in_y():
    for mu in partitions_up_to(3):
        cut = (3, 3)
        assert universal_character_jt(EMPTY, mu, cut) == schur(mu, "y", cut)


def test_schur_eval_examples():
    assert schur_eval(P(1), [F(5, 3)]) == F(5, 3)
    assert schur_eval(P(1, 1), [1, 4]) == 4
    assert schur_eval(P(2, 1), [1, 1, 1]) == 8
    assert schur_eval(P(1, 1, 1), [1, 2]) == 0
    assert schur_eval(EMPTY, []) == 1


pts = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=1,
               max_size=3)


@settings(max_examples=40)
@given(st.sampled_from([l for n in range(1, 5) for l in partitions_of(n)]), pts)
def test_schur_eval_matches_polynomial(lam, points):
    n = lam.weight
    assert schur_eval(lam, points) == at_power_sums(schur(lam, "x", (n, n)), points)


def test_schur_eval_matches_tableaux():
    for lam in [P(2), P(1, 1), P(2, 1), P(3, 1), P(2, 2)]:
        points = [F(1, 2), F(3), F(-2)]
        assert schur_eval(lam, points) == ssyt_count_eval(lam, points)


def test_truncated_H_examples():
    assert truncated_H_apply(1, "x-dy", Poly.one(C3)) == [Poly.one(C3), x(1)]
    p = x(1) + y(2)
    assert truncated_H_apply(0, "y-dx", p) == [p]
    out = truncated_H_apply(2, "x-dy", y(1))
    assert out == [y(1), x(1) * y(1) - 1, complete_h(2, "x", C3) * y(1) - x(1)]


def test_truncated_H_stable():
    p = universal_character_jt(P(1), P(1), (4, 4))
    for M in range(3):
        for which in ("x-dy", "y-dx"):
            a, b = truncated_H_apply(M, which, p), truncated_H_apply(M + 1, which, p)
            assert a == b[: M + 1]


def test_skew_H_examples():
    assert skew_H_apply(1, "first", P(1), EMPTY) == [(0, [(P(1), EMPTY)]), (1, [(EMPTY, EMPTY)])]
    assert skew_H_apply(2, "first", EMPTY, P(1)) == [(0, [(EMPTY, P(1))]), (1, []), (2, [])]
    assert skew_H_apply(1, "second", P(1), P(1)) == [(0, [(P(1), P(1))]), (1, [(P(1), EMPTY)])]


def test_h_series_newton_against_direct():
    # the Newton recursion route against the closed-form h_k applied as operators
    p = universal_character_jt(P(1), P(1), (4, 4))
    got = h_series_apply("x-dy", p, 3)
    for k in range(4):
        assert got[k] == h_shifted(k, "x-dy", p)


def test_uc_expand_roundtrip():
    coeffs = {(P(2), P(1)): F(3, 2), (EMPTY, EMPTY): F(-1), (P(1, 1), EMPTY): F(4)}
    p = uc_combination(coeffs, (4, 4))
    assert uc_expand(p) == coeffs
    assert uc_expand(universal_character_jt(P(2, 1), P(1), (4, 4))) == {(P(2, 1), P(1)): 1}


@settings(max_examples=30)
@given(st.dictionaries(st.sampled_from(uc_pairs_up_to(2, 2)),
                       st.fractions(max_denominator=4).filter(bool), max_size=4))
def test_uc_expand_property(coeffs):
    assert uc_expand(uc_combination(coeffs, (4, 4))) == coeffs
