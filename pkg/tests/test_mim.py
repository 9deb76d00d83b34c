import pytest

from expected import RESTRICTED_SQUARES
from planar_bases import Basis, Rect, SearchConfig, find_bases_restricted_direct
from planar_bases.mim import (
    allocations, make_plan, mim_find, min_k_restricted, pair_glue_check,
)
from planar_bases.search import min_k

EVEN = [(sx, sy) for sx in range(2, 11, 2) for sy in range(2, sx + 1, 2)]


@pytest.mark.parametrize("sx,sy", EVEN)
def test_mim_equals_direct(sx, sy):
    rect = Rect(sx, sy)
    k_star, _ = min_k(rect, restricted=True)
    for k in (k_star - 1, k_star, k_star + 1):
        direct = find_bases_restricted_direct(SearchConfig(k=k, rect=rect))
        glued = mim_find(k, rect)
        assert glued.solutions == direct.solutions, (rect, k)
        assert glued.m_u == direct.m_u


@pytest.mark.parametrize("rect,k", [(Rect(8, 8), 16), (Rect(10, 6), 16), (Rect(6, 6), 13)])
def test_pair_pruning_is_sound(rect, k):
    on = mim_find(k, rect, pair_pruning=True)
    off = mim_find(k, rect, pair_pruning=False)
    assert on.solutions == off.solutions


def test_threads_do_not_change_result():
    a = mim_find(24, Rect(12, 12), threads=1)
    b = mim_find(24, Rect(12, 12), threads=3)
    assert a.solutions == b.solutions and (a.m, a.m_u) == (58, 16)


def test_plan_split():
    plan = make_plan(Rect(10, 6))
    assert (plan.a_x, plan.b_x, plan.a_y, plan.b_y) == (2, 2, 1, 1)
    with pytest.raises(ValueError):
        make_plan(Rect(9, 6))


def test_allocations_at_reference_size():
    plan = make_plan(Rect(10, 10))
    tuples = [a.as_tuple() for a in allocations(plan, 20)]
    assert tuples == sorted(tuples)
    assert all(sum(t) == 20 for t in tuples)
    assert (5, 5, 5, 5) in tuples
    assert [a.as_tuple() for a in allocations(plan, 16)] == [(4, 4, 4, 4)]


def test_k20_solutions_come_from_balanced_allocation():
    rep = mim_find(20, Rect(10, 10))
    by_alloc = {s["allocation"]: s["solutions"] for s in rep.stats["allocations"]}
    assert by_alloc[(5, 5, 5, 5)] == 17
    assert sum(by_alloc.values()) == 17


def test_pair_glue_check():
    left = Basis.of([(0, 0), (1, 0)])
    right = Basis.of([(4, 0)])
    assert pair_glue_check(left, right, Rect(4, 0)) is False
    assert pair_glue_check(left, Basis.of([(3, 0)]), Rect(4, 0)) is True
    assert pair_glue_check(left, right, (4, 5, 0, 0)) is True
    assert pair_glue_check(left, right, (6, 7, 0, 0)) is False


@pytest.mark.parametrize("s", [10, 12, 14])
def test_restricted_squares(s):
    k, rep = min_k_restricted(Rect(s, s))
    assert (k, rep.m, rep.m_u) == RESTRICTED_SQUARES[s]


@pytest.mark.parametrize("sx", range(0, 25, 2))
def test_height_two_doubles_flat(sx):
    flat, _ = min_k(Rect(sx, 0), restricted=True)
    two_direct, _ = min_k(Rect(sx, 2), restricted=True)
    two_mim, _ = min_k_restricted(Rect(sx, 2))
    assert two_direct == two_mim == 2 * flat
