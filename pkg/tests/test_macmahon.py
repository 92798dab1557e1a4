from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from ucphase.macmahon import (ENUMERATION_BOUND, PlanePartition, QSeries, correlator_full,
                              correlator_minus, exchange_scalar, gamma_exchange_check,
                              inverse_macmahon_product, macmahon_compare, macmahon_series,
                              normal_order_check, plane_partition_count, plane_partitions,
                              vertex_rep_limit_check)
from ucphase.polyring import Poly
from ucphase.scalars import TruncSeries, series_mul
from ucphase.symfunc import complete_h, truncated_H_apply

C = (3, 3)
one = Poly.one(C)
x1, y1 = Poly.var("x", 1, C), Poly.var("y", 1, C)


def box_count(n):
    # independent count: heights on a 3x3 grid (enough for n <= 6 only when
    # every plane partition fits, which holds since a side > n is impossible)
    side = n
    cells = [(i, j) for i in range(side) for j in range(side) if (i + 1) * (j + 1) <= n]
    total = 0
    for hs in product(range(n + 1), repeat=len(cells)):
        if sum(hs) != n:
            continue
        h = dict(zip(cells, hs))
        ok = all(h[(i, j)] >= h.get((i + 1, j), 0) and h[(i, j)] >= h.get((i, j + 1), 0)
                 for i, j in cells)
        total += ok
    return total


def test_product_examples():
    assert macmahon_series(0) == [1]
    assert macmahon_series(3) == [1, 1, 3, 6]
    assert macmahon_series(6) == [1, 1, 3, 6, 13, 24, 48]


def test_plane_partition_counts():
    assert plane_partition_count(0) == 1
    assert plane_partition_count(2) == 3
    assert plane_partition_count(6) == 48
    assert [box_count(n) for n in range(1, 6)] == [plane_partition_count(n) for n in range(1, 6)]
    with pytest.raises(ValueError):
        plane_partition_count(ENUMERATION_BOUND + 1)


def test_plane_partition_type():
    pp = PlanePartition([[2, 1], [1]])
    assert pp.total == 4
    with pytest.raises(ValueError):
        PlanePartition([[1, 2]])
    with pytest.raises(ValueError):
        PlanePartition([[1], [2]])
    assert all(pp.total == 4 for pp in plane_partitions(4))


def test_correlator_minus_examples():
    assert correlator_minus(0) == [1]
    assert correlator_minus(1) == [1, -1]
    assert correlator_minus(3) == [1, -1, -2, -1]
    assert correlator_minus(4) == [1, -1, -2, -1, 0]
    assert correlator_minus(4) == inverse_macmahon_product(4)


def test_correlator_full_examples():
    assert correlator_full(0) == [1]
    assert correlator_full(2) == [1, 1, 3]
    assert correlator_full(4) == [1, 1, 3, 6, 13]


def test_correlator_times_inverse_is_one():
    K = 5
    a = correlator_minus(K).series
    b = macmahon_series(K).series
    assert series_mul(a, b) == 1


def test_truncation_stability():
    for K in range(4):
        assert correlator_full(K).coefficients() == correlator_full(K + 2).coefficients()[: K + 1]


def test_even_exponents_only():
    for K in range(5):
        assert correlator_full(K).odd_part_zero() and correlator_minus(K).odd_part_zero()
    odd = QSeries(TruncSeries({1: 1}, 4), 2)
    with pytest.raises(ValueError):
        odd.coefficients()


def test_exchange_scalar_route():
    K = 4
    via = series_mul(exchange_scalar(K).series, correlator_minus(K).series)
    assert QSeries(via, K) == macmahon_series(K)


def test_compare_report():
    rep = macmahon_compare(6)
    assert rep.passed
    assert rep.notes["series"]["enumerate"] == ["1", "1", "3", "6", "13", "24", "48"]


def test_normal_order_examples():
    assert normal_order_check(F(2), F(1, 3), one).passed
    assert normal_order_check(F(2), F(1, 3), x1).passed
    assert normal_order_check(F(0), F(1, 3), x1 * y1).passed
    assert normal_order_check(F(-1, 2), F(0), y1).passed


@settings(max_examples=15, deadline=None)
@given(st.fractions(min_value=-3, max_value=3, max_denominator=3),
       st.fractions(min_value=-3, max_value=3, max_denominator=3),
       st.sampled_from([one, x1, y1, x1 * y1 - 1]))
def test_normal_order_property(z, w, p):
    assert normal_order_check(z, w, p).passed


def test_gamma_exchange_examples():
    assert gamma_exchange_check(1, F(3), F(1), one).passed
    assert gamma_exchange_check(1, F(3), F(0), x1 + y1).passed
    assert gamma_exchange_check(2, F(3), F(1, 2), x1 + y1).passed
    with pytest.raises(ZeroDivisionError):
        gamma_exchange_check(1, F(0), F(1), one)


def test_vertex_limit_examples():
    assert vertex_rep_limit_check(1, 2, one).passed
    assert truncated_H_apply(2, "x-dy", one) == [one, x1, complete_h(2, "x", C)]
    assert vertex_rep_limit_check(2, 1, x1).passed
    assert truncated_H_apply(1, "y-dx", x1) == [x1, x1 * y1 - 1]
    rep = vertex_rep_limit_check(1, 0, x1 * y1)
    assert rep.passed and rep.notes["stable_M"] == 0 and rep.notes["chain_stable_M"] == 1
