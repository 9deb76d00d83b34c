"""Canonical forms under the rectangle's mirror/rotation group.

Two bases count as the same "unique" basis when one is the image of the
other under a symmetry of the domain box.  Full-rect mode uses the target
box [0, s_x] x [0, s_y]; half-rect mode, meant for restricted bases, uses
[0, h_x] x [0, h_y].  Square boxes get the 8-element dihedral group,
other boxes the 4-element group {id, mirror-x, mirror-y, rotate-180}.
"""
from __future__ import annotations

from typing import Callable, Iterable

import numpy as np

from .grid import Basis, Point, Rect

MODES = ("full-rect", "half-rect")

Transform = Callable[[int, int], tuple[int, int]]


def domain(rect: Rect, mode: str) -> Rect:
    if mode == "full-rect":
        return rect
    if mode == "half-rect":
        if not rect.even:
            raise ValueError(f"half-rect mode needs even dimensions, got {rect}")
        return rect.half
    raise ValueError(f"unknown symmetry mode {mode!r}")


def group(box: Rect) -> list[Transform]:
    """Symmetries of ``box``; the identity comes first."""
    X, Y = box.s_x, box.s_y
    g: list[Transform] = [
        lambda x, y: (x, y),
        lambda x, y: (X - x, y),
        lambda x, y: (x, Y - y),
        lambda x, y: (X - x, Y - y),
    ]
    if X == Y:
        g += [
            lambda x, y: (y, x),
            lambda x, y: (Y - y, x),
            lambda x, y: (y, X - x),
            lambda x, y: (Y - y, X - x),
        ]
    return g


def _key(points: Iterable[tuple[int, int]]) -> tuple:
    return tuple(sorted((y, x) for x, y in points))


def canonical(A: Basis, rect: Rect, mode: str = "full-rect") -> Basis:
    """Lexicographically least image of A over the group of the mode's box."""
    box = domain(rect, mode)
    best = min(_key(g(x, y) for x, y in A) for g in group(box))
    return Basis(tuple(Point(x, y) for y, x in best))


def _codes(arr: np.ndarray, box: Rect, g: Transform) -> np.ndarray:
    x, y = g(arr[..., 0], arr[..., 1])
    width = max(box.s_x, box.s_y) + 1
    return np.sort(y * width + x, axis=1)


def count_unique(solutions: list[Basis], rect: Rect, mode: str = "full-rect") -> int:
    """Number of distinct canonical forms among ``solutions``."""
    if not solutions:
        return 0
    box = domain(rect, mode)
    by_size: dict[int, list[Basis]] = {}
    for A in solutions:
        by_size.setdefault(len(A), []).append(A)
    total = 0
    for sols in by_size.values():
        arr = np.stack([A.as_array() for A in sols])
        if arr[..., 0].max() > box.s_x or arr[..., 1].max() > box.s_y:
            raise ValueError(f"solutions leave the {mode} box {box}")
        images = np.stack([_codes(arr, box, g) for g in group(box)])
        # lexicographic minimum over the group axis, row by row
        best = images[0]
        for img in images[1:]:
            diff = img != best
            first = diff.argmax(axis=1)
            rows = np.arange(len(best))
            smaller = diff.any(axis=1) & (img[rows, first] < best[rows, first])
            best = np.where(smaller[:, None], img, best)
        total += len({row.tobytes() for row in best})
    return total
