"""Meet-in-the-middle search for restricted bases.

A restricted basis A of [0, s_x] x [0, s_y] lies in [0, h_x] x [0, h_y].
Cutting that box at (a_x, a_y) splits A into four corner components, and
each component, mirrored towards the origin, must be an admissible basis of
its own small rectangle.  The search therefore enumerates component bases
with the exhaustive search, glues them back, and keeps the unions that
cover the whole target.

Gluing is filtered pairwise first.  The bottom rows [0, a_y] of the target
only receive sums from components I and II, so their union alone must
cover those rows; likewise II + III on the right columns, III + IV on the
top rows and IV + I on the left columns.  Surviving pairs are joined into
I-II-III-IV cycles and only the middle cross of the target is left to
check.
"""
from __future__ import annotations

import itertools
import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import _kernels
from .grid import Basis, Point, Rect, sumset
from .metrics import counting_lower_bound
from .search import SearchConfig, SearchReport, find_bases, find_bases_restricted_direct, k_value

log = logging.getLogger(__name__)

QUADRANTS = ("I", "II", "III", "IV")
# strip name -> (first, second) quadrant; pair arrays are indexed in this order
STRIPS = {"bottom": ("I", "II"), "right": ("II", "III"), "top": ("IV", "III"), "left": ("I", "IV")}


@dataclass(frozen=True)
class QuadrantPlan:
    rect: Rect
    a_x: int
    a_y: int
    b_x: int
    b_y: int
    k_min: tuple[int, int, int, int]

    @property
    def h_x(self) -> int:
        return self.rect.s_x // 2

    @property
    def h_y(self) -> int:
        return self.rect.s_y // 2

    def dims(self, quadrant: str) -> Rect:
        return {
            "I": Rect(self.a_x, self.a_y),
            "II": Rect(self.b_x, self.a_y),
            "III": Rect(self.b_x, self.b_y),
            "IV": Rect(self.a_x, self.b_y),
        }[quadrant]

    def cells(self) -> tuple[int, int, int, int]:
        return tuple(self.dims(q).area for q in QUADRANTS)

    def to_absolute(self, quadrant: str, local: np.ndarray) -> np.ndarray:
        """Mirror component-local points back into the quarter box."""
        out = np.array(local, dtype=np.int64, copy=True)
        if quadrant in ("II", "III"):
            out[..., 0] = self.h_x - out[..., 0]
        if quadrant in ("III", "IV"):
            out[..., 1] = self.h_y - out[..., 1]
        return out

    def strip_frame(self, strip: str, absolute: np.ndarray) -> np.ndarray:
        """Coordinates in which ``strip`` becomes the bottom rows of the frame."""
        x, y = absolute[..., 0], absolute[..., 1]
        if strip == "bottom":
            fx, fy = x, y
        elif strip == "top":
            fx, fy = x, self.h_y - y
        elif strip == "left":
            fx, fy = y, x
        else:
            fx, fy = y, self.h_x - x
        return np.stack([fx, fy], axis=-1)

    def strip_shape(self, strip: str) -> tuple[int, int]:
        """(frame width, strip rows)."""
        return {
            "bottom": (self.rect.s_x + 1, self.a_y + 1),
            "top": (self.rect.s_x + 1, self.b_y + 1),
            "left": (self.rect.s_y + 1, self.a_x + 1),
            "right": (self.rect.s_y + 1, self.b_x + 1),
        }[strip]

    def strip_box(self, strip: str) -> tuple[int, int, int, int]:
        """(x_lo, x_hi, y_lo, y_hi) of the strip in target coordinates."""
        sx, sy = self.rect.s_x, self.rect.s_y
        return {
            "bottom": (0, sx, 0, self.a_y),
            "top": (0, sx, self.h_y + self.a_y + 1, sy),
            "left": (0, self.a_x, 0, sy),
            "right": (self.h_x + self.a_x + 1, sx, 0, sy),
        }[strip]


def make_plan(rect: Rect, cache=None) -> QuadrantPlan:
    if not rect.even:
        raise ValueError(f"MIM needs even dimensions, got {rect}")
    h_x, h_y = rect.s_x // 2, rect.s_y // 2
    if h_x == 0 or h_y == 0:
        raise ValueError(f"MIM needs h_x, h_y >= 1 (got {rect}); use the direct restricted search")
    a_x, a_y = h_x // 2, h_y // 2
    b_x, b_y = h_x - a_x - 1, h_y - a_y - 1
    dims = [Rect(a_x, a_y), Rect(b_x, a_y), Rect(b_x, b_y), Rect(a_x, b_y)]
    k_min = tuple(k_value(d, cache=cache) for d in dims)
    return QuadrantPlan(rect, a_x, a_y, b_x, b_y, k_min)


@dataclass(frozen=True, order=True)
class Allocation:
    k_I: int
    k_II: int
    k_III: int
    k_IV: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.k_I, self.k_II, self.k_III, self.k_IV)

    def of(self, quadrant: str) -> int:
        return self.as_tuple()[QUADRANTS.index(quadrant)]


def allocations(plan: QuadrantPlan, k: int) -> list[Allocation]:
    """Feasible splits of k in lexicographic order (component minima and cell caps)."""
    lo = plan.k_min
    hi = plan.cells()
    out = []
    for k1 in range(lo[0], hi[0] + 1):
        for k2 in range(lo[1], hi[1] + 1):
            for k3 in range(lo[2], hi[2] + 1):
                k4 = k - k1 - k2 - k3
                if lo[3] <= k4 <= hi[3]:
                    out.append(Allocation(k1, k2, k3, k4))
    return out


_component_lock = threading.Lock()
_component_memo: dict[tuple[int, int, int], np.ndarray] = {}


def component_bases(dims: Rect, k: int) -> np.ndarray:
    """All admissible k-bases of ``dims`` as an (n, k, 2) array of local points."""
    key = (dims.s_x, dims.s_y, k)
    with _component_lock:
        hit = _component_memo.get(key)
    if hit is not None:
        return hit
    report = find_bases(SearchConfig(k=k, rect=dims))
    arr = np.array([[tuple(p) for p in A] for A in report.solutions], dtype=np.int64).reshape(-1, k, 2)
    with _component_lock:
        _component_memo[key] = arr
    return arr


def pair_glue_check(A_left: Basis, A_right: Basis,
                    strip: Union[Rect, tuple[int, int, int, int]]) -> bool:
    """Does the sumset of A_left u A_right cover the strip?

    ``strip`` is either an origin-anchored Rect or an (x_lo, x_hi, y_lo, y_hi)
    box; both point sets are in absolute target coordinates.
    """
    if isinstance(strip, Rect):
        x_lo, x_hi, y_lo, y_hi = 0, strip.s_x, 0, strip.s_y
    else:
        x_lo, x_hi, y_lo, y_hi = strip
    union = Basis.of(list(A_left) + list(A_right))
    G = sumset(union, Rect(x_hi, y_hi))
    return bool(G.covered()[y_lo:y_hi + 1, x_lo:x_hi + 1].all())


@dataclass
class _Frames:
    absolute: np.ndarray          # (n, k, 2) quarter-box coordinates
    rows_abs: np.ndarray          # (n, h_y + 1, nw) row masks
    strips: dict = field(default_factory=dict)  # strip -> (pts, masks, self sums)


class _Glue:
    """Per-target state: component frames and memoised strip pair lists."""

    def __init__(self, plan: QuadrantPlan, pair_pruning: bool = True):
        self.plan = plan
        self.pair_pruning = pair_pruning
        self.nw = (max(plan.rect.s_x, plan.rect.s_y) + 64) // 64
        self.frames: dict[tuple[str, int], _Frames] = {}
        self.pairs: dict[tuple[str, int, int], np.ndarray] = {}
        self.strip_checks = 0

    def frame(self, quadrant: str, k: int) -> _Frames:
        key = (quadrant, k)
        if key not in self.frames:
            local = component_bases(self.plan.dims(quadrant), k)
            absolute = self.plan.to_absolute(quadrant, local)
            rows = _kernels.row_masks(absolute, self.plan.h_y + 1, self.nw)
            self.frames[key] = _Frames(absolute, rows)
        return self.frames[key]

    def strip_data(self, strip: str, quadrant: str, k: int):
        fr = self.frame(quadrant, k)
        if strip not in fr.strips:
            width, rows = self.plan.strip_shape(strip)
            pts = np.ascontiguousarray(self.plan.strip_frame(strip, fr.absolute))
            masks = _kernels.row_masks(pts, rows, self.nw)
            fr.strips[strip] = (pts, masks, _kernels.self_sums(pts, masks, rows, self.nw))
        return fr.strips[strip]

    def pair_list(self, strip: str, alloc: Allocation) -> np.ndarray:
        qa, qb = STRIPS[strip]
        ka, kb = alloc.of(qa), alloc.of(qb)
        key = (strip, ka, kb)
        if key in self.pairs:
            return self.pairs[key]
        if not self.pair_pruning:
            na = len(self.frame(qa, ka).absolute)
            nb = len(self.frame(qb, kb).absolute)
            grid = np.array(list(itertools.product(range(na), range(nb))), dtype=np.int64).reshape(-1, 2)
            self.pairs[key] = grid
            return grid
        width, rows = self.plan.strip_shape(strip)
        P, mP, sP = self.strip_data(strip, qa, ka)
        Q, mQ, sQ = self.strip_data(strip, qb, kb)
        full = np.zeros((rows, self.nw), dtype=np.uint64)
        for u in range(width):
            full[:, u // 64] |= np.uint64(1) << np.uint64(u % 64)
        self.strip_checks += len(P) * len(Q)
        pairs = _kernels.strip_pairs(P, mP, sP, Q, mQ, sQ, full, rows, self.nw)
        self.pairs[key] = pairs
        return pairs


def _adjacency(pairs: np.ndarray, n_from: int, col_from: int, col_to: int):
    order = np.lexsort((pairs[:, col_to], pairs[:, col_from])) if len(pairs) else np.zeros(0, np.int64)
    sorted_pairs = pairs[order]
    counts = np.bincount(sorted_pairs[:, col_from], minlength=n_from) if len(pairs) else np.zeros(n_from, np.int64)
    ptr = np.zeros(n_from + 1, dtype=np.int64)
    ptr[1:] = np.cumsum(counts)
    return ptr, np.ascontiguousarray(sorted_pairs[:, col_to])


def _glue_allocation(glue: _Glue, alloc: Allocation, threads: int) -> tuple[list[np.ndarray], dict]:
    plan = glue.plan
    stat = {"allocation": alloc.as_tuple(), "combinations": None, "pairs": {}, "cycles": 0, "solutions": 0}
    # Cheapest pairs first; an empty pair list ends the allocation before the
    # remaining (larger) component lists are ever generated.
    strips = sorted(STRIPS, key=lambda s: (sum(alloc.of(q) for q in STRIPS[s]), list(STRIPS).index(s)))
    lists = {}
    for strip in strips:
        lists[strip] = glue.pair_list(strip, alloc)
        stat["pairs"][strip] = len(lists[strip])
        if len(lists[strip]) == 0:
            return [], stat
    fr = {q: glue.frame(q, alloc.of(q)) for q in QUADRANTS}
    sizes = [len(fr[q].absolute) for q in QUADRANTS]
    stat["combinations"] = int(np.prod(sizes, dtype=object))
    n1, n2, n3, n4 = sizes
    e12 = np.ascontiguousarray(lists["bottom"])
    ptr23, adj23 = _adjacency(lists["right"], n2, 0, 1)
    ptr34, adj34 = _adjacency(lists["top"], n3, 1, 0)
    left = lists["left"]
    keys41 = np.unique(left[:, 1] * n1 + left[:, 0])
    if glue.pair_pruning:
        x_lo, x_hi = plan.a_x + 1, plan.h_x + plan.a_x
        y_lo, y_hi = plan.a_y + 1, plan.h_y + plan.a_y
    else:
        x_lo, x_hi, y_lo, y_hi = 0, plan.rect.s_x, 0, plan.rect.s_y

    def run(lo: int, hi: int):
        return _kernels.glue_cycles(
            e12, ptr23, adj23, ptr34, adj34, keys41, n1,
            fr["I"].absolute, fr["II"].absolute, fr["III"].absolute, fr["IV"].absolute,
            fr["I"].rows_abs, fr["II"].rows_abs, fr["III"].rows_abs, fr["IV"].rows_abs,
            x_lo, x_hi, y_lo, y_hi, plan.h_y, glue.nw, lo, hi,
        )

    n = len(e12)
    if threads == 1 or n < 2 * threads:
        results = [run(0, n)]
    else:
        bounds = np.linspace(0, n, threads + 1).astype(int)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda b: run(*b), zip(bounds[:-1], bounds[1:])))
    found = []
    for hits, cycles in results:
        stat["cycles"] += int(cycles)
        for i1, i2, i3, i4 in hits:
            found.append(np.concatenate([fr["I"].absolute[i1], fr["II"].absolute[i2],
                                         fr["III"].absolute[i3], fr["IV"].absolute[i4]]))
    stat["solutions"] = len(found)
    return found, stat


_glue_memo: dict[tuple[int, int, bool], _Glue] = {}


def _glue_for(rect: Rect, cache, pair_pruning: bool) -> _Glue:
    key = (rect.s_x, rect.s_y, pair_pruning)
    if key not in _glue_memo:
        _glue_memo[key] = _Glue(make_plan(rect, cache), pair_pruning)
    return _glue_memo[key]


def mim_find(k: int, rect: Rect, cache=None, threads: int = 1, pair_pruning: bool = True) -> SearchReport:
    """All restricted k-bases of ``rect`` assembled from corner components."""
    from .symmetry import count_unique

    t0 = time.perf_counter()
    glue = _glue_for(rect, cache, pair_pruning)
    report = SearchReport(k=k, rect=rect, restricted=True)
    report.stats = {"plan": glue.plan, "allocations": []}
    bases: list[Basis] = []
    if k >= counting_lower_bound(rect):
        for alloc in allocations(glue.plan, k):
            found, stat = _glue_allocation(glue, alloc, threads)
            report.stats["allocations"].append(stat)
            bases.extend(Basis(tuple(Point(int(x), int(y)) for x, y in pts)) for pts in found)
    bases.sort(key=Basis.sort_key)
    report.solutions = bases
    report.m = len(bases)
    report.m_u = count_unique(bases, rect, "half-rect")
    report.nodes_visited = sum(s["cycles"] for s in report.stats["allocations"])
    report.wall_time = time.perf_counter() - t0
    log.debug("mim %s in %.3fs", report.summary(), report.wall_time)
    return report


def min_k_restricted(rect: Rect, cache=None, threads: int = 1) -> tuple[int, SearchReport]:
    """Smallest restricted basis size, via MIM (direct search for flat targets)."""
    from .cache import default_cache

    cache = default_cache() if cache is None else cache
    if not rect.even:
        raise ValueError(f"restricted bases need even dimensions, got {rect}")
    if rect.s_x == 0 or rect.s_y == 0:
        from .search import min_k

        return min_k(rect, restricted=True, cache=cache, threads=threads)
    known = cache.get_k(rect, True)
    if known is not None:
        return known, mim_find(known, rect, cache=cache, threads=threads)
    plan = _glue_for(rect, cache, True).plan
    k = max(sum(plan.k_min), counting_lower_bound(rect))
    while True:
        report = mim_find(k, rect, cache=cache, threads=threads)
        if report.m:
            break
        k += 1
    cache.put_k(rect, True, k, nodes=report.nodes_visited, method="mim")
    return k, report


def restricted_report(k: int, rect: Rect, cache=None, threads: int = 1) -> SearchReport:
    """Restricted k-bases by whichever route applies to the target's shape."""
    if rect.s_x == 0 or rect.s_y == 0:
        return find_bases_restricted_direct(SearchConfig(k=k, rect=rect, restricted=True, threads=threads))
    return mim_find(k, rect, cache=cache, threads=threads)
