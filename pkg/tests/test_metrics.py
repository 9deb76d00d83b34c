from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from planar_bases import Rect
from planar_bases.constructions import dense_sparse, stacked_mrose
from planar_bases.metrics import (
    PRINTED_CONSTANTS, counting_lower_bound, efficiency, empirical_bound_check,
    l_shaped_limit, upper_bound_constant,
)


@pytest.mark.parametrize("key,printed", sorted(PRINTED_CONSTANTS.items()))
def test_bound_constants_round_to_printed(key, printed):
    value = upper_bound_constant(*key)
    assert isinstance(value, Fraction)
    assert f"{float(value):.4f}" == printed


def test_unknown_height_rejected():
    with pytest.raises(ValueError):
        upper_bound_constant(3, False)


def test_efficiency_fields():
    r = efficiency(10, Rect(7, 3))
    assert r.N == 32 and r.c == Fraction(32, 100) and r.rho == Fraction(1, 2)
    assert r.delta_k == -1
    assert efficiency(4, Rect(8, 0)).delta_k == -1
    assert efficiency(12, Rect(14, 2)).delta_k == -4


@given(st.integers(0, 40), st.integers(0, 40))
def test_counting_bound_is_least(sx, sy):
    rect = Rect(sx, sy)
    k = counting_lower_bound(rect)
    assert k * (k + 1) // 2 >= rect.area
    assert (k - 1) * k // 2 < rect.area


def test_l_shaped_limit_for_squares():
    assert l_shaped_limit(Rect(9, 9)) == Fraction(1, 4)


def test_dense_sparse_efficiency_tends_to_quarter():
    effs = [efficiency(len(A), R).c for A, R in (dense_sparse(t, t) for t in range(2, 12))]
    assert all(a > b for a, b in zip(effs, effs[1:]))
    assert all(c > Fraction(1, 4) for c in effs)
    assert effs[-1] - Fraction(1, 4) < Fraction(1, 200)


def test_stacked_mrose_efficiency_trend():
    """Efficiency rises with t and exceeds 1/4 for constant height."""
    for sy in (1, 2):
        effs = [efficiency(len(A), R).c for A, R in (stacked_mrose(sy, t) for t in range(1, 31))]
        assert all(a < b for a, b in zip(effs, effs[1:]))
        assert effs[-1] > Fraction(1, 4)
        assert effs[-1] < Fraction(2 * (sy + 1), 8 * sy + 7)


def test_empirical_bound_check_rows():
    rows = empirical_bound_check(1, False, 8)
    assert [r["s_x"] for r in rows] == list(range(9))
    assert all(r["counting_ok"] for r in rows)
    assert rows[8]["k"] == 7
    rows = empirical_bound_check(2, True, 14, s_x_min=10)
    assert [(r["s_x"], r["k"]) for r in rows] == [(10, 10), (12, 10), (14, 12)]
