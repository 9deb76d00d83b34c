"""Sumset arithmetic on integer rectangles.

Everything else in the package is built on the types here: ``Point``,
``Rect``, ``Basis`` and the mutable ``CoverageGrid`` that tracks how many
unordered pairs of basis points land on each target cell.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

COORD_MAX = 2**16 - 1


class Point(NamedTuple):
    x: int
    y: int


def _check_coord(v: int, name: str) -> int:
    v = int(v)
    if not 0 <= v <= COORD_MAX:
        raise ValueError(f"{name}={v} outside [0, {COORD_MAX}]")
    return v


def make_point(x: int, y: int) -> Point:
    return Point(_check_coord(x, "x"), _check_coord(y, "y"))


@dataclass(frozen=True, order=True)
class Rect:
    """Target rectangle [0, s_x] x [0, s_y]."""

    s_x: int
    s_y: int

    def __post_init__(self):
        _check_coord(self.s_x, "s_x")
        _check_coord(self.s_y, "s_y")

    @classmethod
    def parse(cls, text: str) -> "Rect":
        """Parse ``"7x3"`` (or ``"7,3"``) into Rect(7, 3)."""
        parts = text.lower().replace(",", "x").split("x")
        if len(parts) != 2:
            raise ValueError(f"malformed rectangle {text!r}, expected SXxSY")
        try:
            sx, sy = (int(p) for p in parts)
        except ValueError:
            raise ValueError(f"malformed rectangle {text!r}, expected SXxSY") from None
        if sx < 0 or sy < 0:
            raise ValueError(f"negative dimension in {text!r}")
        return cls(sx, sy)

    @property
    def width(self) -> int:
        return self.s_x + 1

    @property
    def height(self) -> int:
        return self.s_y + 1

    @property
    def area(self) -> int:
        return self.width * self.height

    @property
    def even(self) -> bool:
        return self.s_x % 2 == 0 and self.s_y % 2 == 0

    @property
    def half(self) -> "Rect":
        """The box [0, h_x] x [0, h_y] that holds restricted bases."""
        if not self.even:
            raise ValueError(f"half-dimensions undefined for odd rectangle {self}")
        return Rect(self.s_x // 2, self.s_y // 2)

    def transposed(self) -> "Rect":
        return Rect(self.s_y, self.s_x)

    def contains(self, p: Point) -> bool:
        return 0 <= p[0] <= self.s_x and 0 <= p[1] <= self.s_y

    def cells(self) -> list[Point]:
        return [Point(x, y) for y in range(self.height) for x in range(self.width)]

    def __str__(self) -> str:
        return f"{self.s_x}x{self.s_y}"


@dataclass(frozen=True)
class Basis:
    """Duplicate-free point set kept sorted by (y, x) so equality is structural."""

    points: tuple[Point, ...] = field(default=())

    def __post_init__(self):
        pts = {make_point(*p) for p in self.points}
        object.__setattr__(self, "points", tuple(sorted(pts, key=lambda p: (p[1], p[0]))))

    @classmethod
    def of(cls, points: Iterable) -> "Basis":
        return cls(tuple(points))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return Point(*p) in set(self.points)

    def __lt__(self, other: "Basis") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> tuple:
        return tuple((p.y, p.x) for p in self.points)

    def transposed(self) -> "Basis":
        return Basis(tuple(Point(p.y, p.x) for p in self.points))

    def as_array(self) -> np.ndarray:
        """Points as an (k, 2) int64 array of (x, y) rows."""
        if not self.points:
            return np.zeros((0, 2), dtype=np.int64)
        return np.array(self.points, dtype=np.int64)


class CoverageGrid:
    """Representation counts of A + A over a rectangle.

    ``counts[y, x]`` is the number of unordered pairs {a, b} of basis points
    (a == b allowed) with a + b == (x, y).  Sums outside the rectangle are
    not stored; only their number is kept in ``outside``.  Points can be
    added and removed one at a time, which is what a backtracking search
    needs.
    """

    def __init__(self, rect: Rect):
        self.rect = rect
        self.counts = np.zeros((rect.height, rect.width), dtype=np.int64)
        self.outside = 0
        self.gaps = rect.area
        self._points: list[Point] = []

    @property
    def points(self) -> list[Point]:
        return list(self._points)

    def _bump(self, x: int, y: int, delta: int) -> None:
        if x <= self.rect.s_x and y <= self.rect.s_y:
            before = self.counts[y, x]
            self.counts[y, x] = before + delta
            if before == 0:
                self.gaps -= 1
            elif before + delta == 0:
                self.gaps += 1
        else:
            self.outside += delta

    def add(self, p) -> None:
        p = make_point(*p)
        if p in self._points:
            raise ValueError(f"{p} already present")
        self._points.append(p)
        for q in self._points:
            self._bump(p.x + q.x, p.y + q.y, 1)

    def remove(self, p) -> None:
        p = make_point(*p)
        self._points.remove(p)
        self._bump(2 * p.x, 2 * p.y, -1)
        for q in self._points:
            self._bump(p.x + q.x, p.y + q.y, -1)

    def covered(self) -> np.ndarray:
        return self.counts > 0

    def total(self) -> int:
        """Number of representations landing anywhere, in or out of the rectangle."""
        return int(self.counts.sum()) + self.outside

    def copy(self) -> "CoverageGrid":
        g = CoverageGrid(self.rect)
        g.counts = self.counts.copy()
        g.outside = self.outside
        g.gaps = self.gaps
        g._points = list(self._points)
        return g


def _as_points(A) -> np.ndarray:
    if isinstance(A, Basis):
        return A.as_array()
    arr = np.asarray(list(A), dtype=np.int64).reshape(-1, 2)
    if arr.size and arr.min() < 0:
        raise ValueError("points must have non-negative coordinates")
    return np.unique(arr, axis=0)


def sumset(A, rect: Rect) -> CoverageGrid:
    """Build the coverage grid of A + A clipped to ``rect``."""
    pts = _as_points(A)
    grid = CoverageGrid(rect)
    if len(pts) == 0:
        return grid
    i, j = np.triu_indices(len(pts))
    s = pts[i] + pts[j]
    inside = (s[:, 0] <= rect.s_x) & (s[:, 1] <= rect.s_y)
    np.add.at(grid.counts, (s[inside, 1], s[inside, 0]), 1)
    grid.outside = int((~inside).sum())
    grid.gaps = int((grid.counts == 0).sum())
    grid._points = [Point(int(x), int(y)) for x, y in pts]
    return grid


def covers(A, rect: Rect) -> bool:
    return gap_count(sumset(A, rect)) == 0


def gap_count(G: CoverageGrid) -> int:
    return int((G.counts == 0).sum())


@dataclass(frozen=True)
class Classification:
    admissible: bool
    restricted: bool
    is_basis: bool
    exact: bool

    def as_dict(self) -> dict:
        return {
            "admissible": self.admissible,
            "restricted": self.restricted,
            "is_basis": self.is_basis,
            "exact": self.exact,
        }


def classify(A, rect: Rect) -> Classification:
    pts = _as_points(A)
    G = sumset(pts, rect)
    admissible = bool(np.all((pts[:, 0] <= rect.s_x) & (pts[:, 1] <= rect.s_y))) if len(pts) else True
    restricted = False
    if rect.even:
        h = rect.half
        restricted = bool(np.all((pts[:, 0] <= h.s_x) & (pts[:, 1] <= h.s_y))) if len(pts) else True
    return Classification(
        admissible=admissible,
        restricted=restricted,
        is_basis=gap_count(G) == 0,
        exact=G.outside == 0,
    )
