import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracle import brute_covers
from planar_bases import Basis, CoverageGrid, Rect, classify, covers, gap_count, sumset
from planar_bases.grid import COORD_MAX

coords = st.tuples(st.integers(0, 6), st.integers(0, 6))
point_sets = st.lists(coords, min_size=1, max_size=8)
rects = st.builds(Rect, st.integers(0, 6), st.integers(0, 6))


def test_rect_parse_and_str():
    r = Rect.parse("7x3")
    assert (r.s_x, r.s_y) == (7, 3)
    assert str(r) == "7x3"
    assert Rect.parse("4,2") == Rect(4, 2)
    assert r.area == 32 and r.transposed() == Rect(3, 7)


@pytest.mark.parametrize("bad", ["", "7", "7x", "-1x3", "ax3", "7x3x1"])
def test_rect_parse_rejects(bad):
    with pytest.raises(ValueError):
        Rect.parse(bad)


def test_rect_rejects_negative_and_huge():
    with pytest.raises(ValueError):
        Rect(-1, 0)
    with pytest.raises(ValueError):
        Rect(COORD_MAX + 1, 0)


def test_half_needs_even():
    assert Rect(10, 4).half == Rect(5, 2)
    with pytest.raises(ValueError):
        Rect(3, 2).half


def test_basis_is_sorted_and_deduplicated():
    A = Basis.of([(2, 1), (0, 0), (1, 0), (0, 0)])
    assert list(A) == [(0, 0), (1, 0), (2, 1)]
    assert len(A) == 3
    assert (1, 0) in A


def test_three_point_basis_of_unit_square():
    assert covers([(0, 0), (1, 0), (0, 1)], Rect(1, 1))
    assert not covers([(0, 0), (1, 1)], Rect(1, 1))


def test_sumset_counts_unordered_pairs():
    G = sumset([(0, 0), (1, 0)], Rect(2, 0))
    assert G.counts.tolist() == [[1, 1, 1]]
    assert gap_count(G) == 0


def test_sums_outside_are_counted_not_stored():
    G = sumset([(0, 0), (3, 3)], Rect(1, 1))
    assert G.outside == 2
    assert G.total() == 3


def test_classify_flags():
    c = classify([(0, 0), (1, 0), (0, 1)], Rect(1, 1))
    assert c.is_basis and c.admissible and not c.restricted
    c = classify([(0, 0), (1, 0), (0, 1), (1, 1)], Rect(2, 2))
    assert c.is_basis and c.restricted and c.exact
    assert not classify([(0, 0), (5, 0)], Rect(1, 0)).admissible


@given(point_sets, rects)
def test_covers_matches_brute_force(pts, rect):
    assert covers(pts, rect) == brute_covers(pts, rect.s_x, rect.s_y)


@given(point_sets, rects)
def test_pair_count_is_conserved(pts, rect):
    k = len(set(pts))
    assert sumset(pts, rect).total() == k * (k + 1) // 2


@given(point_sets, rects)
def test_transpose_symmetry(pts, rect):
    A = Basis.of(pts)
    assert covers(A, rect) == covers(A.transposed(), rect.transposed())


@given(point_sets, coords, rects)
def test_monotone_under_insertion(pts, extra, rect):
    if covers(pts, rect):
        assert covers(pts + [extra], rect)


@settings(max_examples=50)
@given(point_sets, rects, st.data())
def test_incremental_add_remove_matches_rebuild(pts, rect, data):
    G = CoverageGrid(rect)
    for p in dict.fromkeys(pts):
        G.add(p)
    ref = sumset(pts, rect)
    assert np.array_equal(G.counts, ref.counts) and G.outside == ref.outside
    victim = data.draw(st.sampled_from(sorted(set(pts))))
    G.remove(victim)
    rest = [p for p in set(pts) if p != victim]
    if rest:
        ref = sumset(rest, rect)
        assert np.array_equal(G.counts, ref.counts) and G.outside == ref.outside
    else:
        assert G.total() == 0
