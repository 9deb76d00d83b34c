"""Exhaustive enumeration of admissible and restricted k-bases.

``find_bases`` lists every admissible k-basis of a rectangle by branch and
bound over the cells, with the hole test and the gap-counting test.
``find_bases_restricted_direct`` runs the same kernel over the lower-left
quarter only and is used for flat targets and as an independent check on
the meet-in-the-middle search.  ``min_k`` walks k upward from the counting
bound until solutions appear.
"""
from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Optional

import numpy as np

from . import _kernels
from .grid import Basis, Point, Rect
from .metrics import counting_lower_bound

log = logging.getLogger(__name__)

ORDERS = ("edge-first", "rowwise")


@dataclass(frozen=True)
class SearchConfig:
    k: int
    rect: Rect
    order: str = "edge-first"
    restricted: bool = False
    parallel_depth: int = 10
    threads: int = 1
    count_only: bool = False
    hole_pruning: bool = True
    count_pruning: bool = True

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.order not in ORDERS:
            raise ValueError(f"unknown order {self.order!r}; choose from {ORDERS}")
        if self.restricted and not self.rect.even:
            raise ValueError(f"restricted search needs even dimensions, got {self.rect}")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


@dataclass
class SearchReport:
    k: int
    rect: Rect
    restricted: bool = False
    solutions: Optional[list[Basis]] = field(default_factory=list)
    m: int = 0
    m_u: Optional[int] = None
    nodes_visited: int = 0
    wall_time: float = 0.0
    stats: dict = field(default_factory=dict)

    def summary(self) -> str:
        mu = "-" if self.m_u is None else str(self.m_u)
        kind = "restricted " if self.restricted else ""
        return f"{kind}rect={self.rect} k={self.k} m={self.m} m_u={mu} nodes={self.nodes_visited}"


def default_threads() -> int:
    return os.cpu_count() or 1


@lru_cache(maxsize=None)
def traversal(W: int, H: int, order: str) -> tuple[np.ndarray, np.ndarray]:
    """Cell visiting sequence over a W x H box as (xs, ys).

    ``edge-first`` alternates row r (from x = r) and column r (from y = r + 1).
    Every prefix of either sequence is a down-closed set of cells.
    """
    cells: list[tuple[int, int]] = []
    if order == "rowwise":
        cells = [(x, y) for y in range(H) for x in range(W)]
    else:
        for r in range(max(W, H)):
            if r < H:
                cells += [(x, r) for x in range(r, W)]
            if r < W:
                cells += [(r, y) for y in range(r + 1, H)]
    xs = np.array([c[0] for c in cells], dtype=np.int64)
    ys = np.array([c[1] for c in cells], dtype=np.int64)
    return xs, ys


@lru_cache(maxsize=None)
def _closures(target: Rect, box: Rect, order: str):
    """Per-position lists of target cells that can no longer gain sums."""
    xs, ys = traversal(box.width, box.height, order)
    pos = {(int(x), int(y)): i for i, (x, y) in enumerate(zip(xs, ys))}
    buckets: list[list[int]] = [[] for _ in range(len(xs))]
    W = target.width
    for v in range(target.height):
        for u in range(target.width):
            b = (min(u, box.s_x), min(v, box.s_y))
            buckets[pos[b]].append(v * W + u)
    ptr = np.zeros(len(xs) + 1, dtype=np.int64)
    ptr[1:] = np.cumsum([len(b) for b in buckets])
    flat = np.array([c for b in buckets for c in b], dtype=np.int64)
    return xs, ys, ptr, flat


def _run_kernel(target: Rect, box: Rect, cfg: SearchConfig) -> tuple[list[np.ndarray], int]:
    """Drive the kernel on a normalised problem; returns (solution cell arrays, nodes)."""
    xs, ys, ptr, flat = _closures(target, box, cfg.order)
    if box.s_x >= 1:
        seed = [(0, 0), (1, 0)]
    else:
        seed = [(0, 0)]
    seed = seed[: cfg.k]
    seed_set = set(seed)
    start = max(i for i, c in enumerate(zip(xs.tolist(), ys.tolist())) if c in seed_set) + 1
    sx = np.array([p[0] for p in seed], dtype=np.int64)
    sy = np.array([p[1] for p in seed], dtype=np.int64)

    def job(n_workers: int, worker: int):
        return _kernels.enumerate_bases(
            target.width, target.height, cfg.k, xs, ys, ptr, flat, sx, sy, start,
            cfg.count_only, cfg.hole_pruning, cfg.count_pruning,
            start + cfg.parallel_depth, n_workers, worker,
        )

    if cfg.threads == 1:
        results = [job(1, 0)]
    else:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            futures = [pool.submit(job, cfg.threads, w) for w in range(cfg.threads)]
            results = [f.result() for f in futures]
    nodes = sum(r[2] for r in results)
    count = sum(r[0] for r in results)
    if cfg.count_only:
        return count, nodes
    arrays = [r[1].reshape(-1, cfg.k) for r in results if r[0]]
    return arrays, nodes


def _decode(arrays, W: int, transpose: bool) -> list[Basis]:
    out = []
    for arr in arrays:
        for row in arr:
            pts = [(int(c) % W, int(c) // W) for c in row]
            if transpose:
                pts = [(y, x) for x, y in pts]
            out.append(Basis(tuple(Point(*p) for p in pts)))
    out.sort(key=Basis.sort_key)
    return out


def _search(cfg: SearchConfig, restricted: bool) -> SearchReport:
    from .symmetry import count_unique  # local: symmetry imports search types

    t0 = time.perf_counter()
    rect = cfg.rect
    report = SearchReport(k=cfg.k, rect=rect, restricted=restricted,
                          solutions=None if cfg.count_only else [])
    box_full = rect.half if restricted else rect
    if cfg.k < counting_lower_bound(rect) or cfg.k > box_full.area:
        report.m_u = None if cfg.count_only else 0
        report.wall_time = time.perf_counter() - t0
        return report

    transpose = rect.s_y > rect.s_x
    target = rect.transposed() if transpose else rect
    box = box_full.transposed() if transpose else box_full
    if box.area == 1:
        # Single candidate cell: the only set is {(0, 0)}.
        found = cfg.k == 1 and target.area == 1
        sols = [Basis.of([(0, 0)])] if found else []
        nodes = 1
        if cfg.count_only:
            report.m = len(sols)
        else:
            report.solutions = sols
            report.m = len(sols)
    else:
        run = replace(cfg, rect=target)
        result, nodes = _run_kernel(target, box, run)
        if cfg.count_only:
            report.m = result
        else:
            report.solutions = _decode(result, target.width, transpose)
            report.m = len(report.solutions)
    report.nodes_visited = nodes
    if report.solutions is not None:
        mode = "half-rect" if restricted else "full-rect"
        report.m_u = count_unique(report.solutions, rect, mode)
    report.wall_time = time.perf_counter() - t0
    log.debug("%s in %.3fs", report.summary(), report.wall_time)
    return report


def find_bases(cfg: SearchConfig) -> SearchReport:
    """All admissible k-bases of ``cfg.rect``."""
    if cfg.restricted:
        raise ValueError("find_bases is for admissible bases; use find_bases_restricted_direct")
    return _search(cfg, restricted=False)


def find_bases_restricted_direct(cfg: SearchConfig) -> SearchReport:
    """All k-bases of ``cfg.rect`` lying in the lower-left quarter box."""
    if not cfg.rect.even:
        raise ValueError(f"restricted search needs even dimensions, got {cfg.rect}")
    return _search(replace(cfg, restricted=True), restricted=True)


def min_k(rect: Rect, restricted: bool = False, cache=None, **options) -> tuple[int, SearchReport]:
    """Smallest k admitting a (restricted) basis, with the report for that k.

    ``options`` are forwarded to SearchConfig (order, threads, count_only, ...).
    For restricted targets this runs the direct quarter-box search; use
    ``mim.min_k_restricted`` for the meet-in-the-middle route.
    """
    from .cache import default_cache

    cache = default_cache() if cache is None else cache
    search = find_bases_restricted_direct if restricted else find_bases
    known = cache.get_k(rect, restricted)
    k = known if known is not None else counting_lower_bound(rect)
    nodes = 0
    while True:
        report = search(SearchConfig(k=k, rect=rect, restricted=restricted, **options))
        nodes += report.nodes_visited
        if report.m > 0:
            break
        if known is not None:
            raise RuntimeError(f"cached k={known} for {rect} has no solutions; cache is stale")
        k += 1
    if known is None:
        cache.put_k(rect, restricted, k, nodes=nodes, method="direct")
    return k, report


def k_value(rect: Rect, restricted: bool = False, cache=None, **options) -> int:
    """Minimal size only, answered from the cache whenever possible."""
    from .cache import default_cache

    cache = default_cache() if cache is None else cache
    known = cache.get_k(rect, restricted)
    if known is not None:
        return known
    k, _ = min_k(rect, restricted, cache=cache, count_only=True, **options)
    return k
