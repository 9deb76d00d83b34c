"""Parametric basis constructions and the trivial-solution size.

Each generator returns the basis together with the rectangle it is built
for, and checks its own size formula before returning.
"""
from __future__ import annotations

from .grid import Basis, Rect


def _progression(a: int, step: int, b: int) -> range:
    """{a, a+step, ..., b}; b - a must be a multiple of step."""
    if (b - a) % step:
        raise ValueError(f"{b} - {a} not divisible by {step}")
    return range(a, b + 1, step)


def _expect(A: Basis, size: int, kind: str) -> Basis:
    if len(A) != size:
        raise AssertionError(f"{kind}: built {len(A)} points, formula says {size}")
    return A


def l_shaped(rect: Rect) -> Basis:
    pts = [(x, 0) for x in range(rect.s_x + 1)] + [(0, y) for y in range(rect.s_y + 1)]
    return _expect(Basis.of(pts), rect.s_x + rect.s_y + 1, "l_shaped")


def boundary(rect: Rect) -> Basis:
    if not rect.even or rect.s_x < 2 or rect.s_y < 2:
        raise ValueError(f"boundary basis needs even dimensions >= 2, got {rect}")
    hx, hy = rect.s_x // 2, rect.s_y // 2
    pts = [(x, y) for x in range(hx + 1) for y in (0, hy)]
    pts += [(x, y) for x in (0, hx) for y in range(hy + 1)]
    return _expect(Basis.of(pts), rect.s_x + rect.s_y, "boundary")


def _check_params(t_x: int, t_y: int) -> None:
    if t_x < 1 or t_y < 1:
        raise ValueError(f"parameters must be >= 1, got ({t_x}, {t_y})")


def dense_sparse(t_x: int, t_y: int) -> tuple[Basis, Rect]:
    """A dense t_x-by-t_y block plus a sparse grid with steps (t_x, t_y)."""
    _check_params(t_x, t_y)
    dense = [(x, y) for x in range(t_x) for y in range(t_y)]
    sparse = [
        (x, y)
        for x in _progression(0, t_x, t_x * t_x - t_x)
        for y in _progression(0, t_y, t_y * t_y - t_y)
    ]
    A = _expect(Basis.of(dense + sparse), 2 * t_x * t_y - 1, "dense_sparse")
    return A, Rect(t_x * t_x - 1, t_y * t_y - 1)


def short_bars(t_x: int, t_y: int) -> tuple[Basis, Rect]:
    """Horizontal bars of length t_x stacked t_y apart, plus their transpose pattern."""
    _check_params(t_x, t_y)
    bars_h = [(x, y) for x in range(t_x) for y in _progression(0, t_y, t_y * t_y - t_y)]
    bars_v = [(x, y) for x in _progression(0, t_x, t_x * t_x - t_x) for y in range(t_y)]
    A = _expect(Basis.of(bars_h + bars_v), 2 * t_x * t_y - 1, "short_bars")
    return A, Rect(t_x * t_x - 1, t_y * t_y - 1)


def stacked_mrose_parts(s_y: int, t: int) -> dict[str, list[tuple[int, int]]]:
    """The five named pieces I1, I2, I3, T, S of the stacked Mrose basis."""
    if s_y < 0 or t < 1:
        raise ValueError(f"need s_y >= 0 and t >= 1, got ({s_y}, {t})")
    a = 4 * s_y + 3
    tt = t * t
    ys = range(s_y + 1)
    return {
        "I1": [(x, y) for x in range(0, t + 1) for y in ys],
        "T": [(x, 0) for x in _progression(0, t, a * tt - t)],
        "S": [(x, y) for x in _progression(a * tt, t + 1, (a + 1) * tt - 1) for y in ys],
        "I2": [(x, y) for x in range(2 * a * tt, 2 * a * tt + t + 1) for y in ys],
        "I3": [(x, y) for x in range((3 * a + 1) * tt, (3 * a + 1) * tt + t + 1) for y in ys],
    }


def stacked_mrose(s_y: int, t: int) -> tuple[Basis, Rect]:
    parts = stacked_mrose_parts(s_y, t)
    pts = [p for piece in parts.values() for p in piece]
    A = _expect(Basis.of(pts), (8 * s_y + 7) * t + 3 * s_y + 1, "stacked_mrose")
    return A, Rect((16 * s_y + 14) * t * t - 1, s_y)


def stacked_mrose_strips(s_y: int, t: int) -> list[tuple[str, str, int, int]]:
    """The seven consecutive column ranges and the part pair covering each.

    Each entry is (part, part, x_lo, x_hi); every strip spans all rows 0..s_y.
    """
    a = 4 * s_y + 3
    tt = t * t
    bounds = [0, a, a + 1, 2 * a, 3 * a, 3 * a + 1, 4 * a + 1, 4 * a + 2]
    pairs = [("I1", "T"), ("I1", "S"), ("T", "S"), ("I2", "T"), ("I2", "S"), ("I3", "T"), ("I3", "S")]
    return [(p, q, bounds[i] * tt, bounds[i + 1] * tt - 1) for i, (p, q) in enumerate(pairs)]


def trivial_size(rect: Rect) -> int:
    """Size of the best applicable trivial basis (the reference for delta-k)."""
    sx, sy = rect.s_x, rect.s_y
    if sx > 0 and sy > 0 and rect.even:
        return sx + sy
    if sy == 0:
        return -(-sx // 2) + 1
    if sx == 0:
        return -(-sy // 2) + 1
    return sx + sy + 1
