"""Text renderings of bases: ASCII dot grid, JSON and CSV.

Formats (byte-exact):

* ``ascii-grid``: s_y + 1 lines, top line is y = s_y, bottom line y = 0;
  cells left to right separated by one space; ``●`` marks a basis point,
  ``·`` an empty cell.  Points outside the rectangle are not drawn.
* ``json``: ``{"rect": [s_x, s_y], "k": k, "points": [[x, y], ...],
  "flags": {...}}`` with points in (y, x) order and compact separators.
* ``csv``: one ``x,y`` line per point, same order, no header.

Solution files hold one JSON object per line (the json format without
``flags``).
"""
from __future__ import annotations

import json
from typing import IO, Iterable, Iterator

from .grid import Basis, Rect, classify

FORMATS = ("ascii-grid", "json", "csv")
DOT_ON = "●"
DOT_OFF = "·"


def _record(A: Basis, rect: Rect) -> dict:
    return {"rect": [rect.s_x, rect.s_y], "k": len(A), "points": [[p.x, p.y] for p in A]}


def render(A: Basis, rect: Rect, fmt: str = "ascii-grid") -> str:
    if fmt == "ascii-grid":
        pts = set(A.points)
        lines = []
        for y in range(rect.s_y, -1, -1):
            lines.append(" ".join(DOT_ON if (x, y) in pts else DOT_OFF for x in range(rect.width)))
        return "\n".join(lines)
    if fmt == "json":
        rec = _record(A, rect)
        rec["flags"] = classify(A, rect).as_dict()
        return json.dumps(rec, separators=(",", ":"))
    if fmt == "csv":
        return "\n".join(f"{p.x},{p.y}" for p in A)
    raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")


def parse_json(text: str) -> tuple[Basis, Rect]:
    rec = json.loads(text)
    rect = Rect(*rec["rect"])
    A = Basis.of(tuple(p) for p in rec["points"])
    if "k" in rec and rec["k"] != len(A):
        raise ValueError(f"record claims k={rec['k']} but lists {len(A)} distinct points")
    return A, rect


def parse_csv(text: str) -> Basis:
    pts = []
    for line in text.splitlines():
        line = line.strip()
        if line:
            x, y = line.split(",")
            pts.append((int(x), int(y)))
    return Basis.of(pts)


def write_solutions(fh: IO[str], bases: Iterable[Basis], rect: Rect) -> int:
    n = 0
    for A in bases:
        fh.write(json.dumps(_record(A, rect), separators=(",", ":")) + "\n")
        n += 1
    return n


def read_solutions(fh: IO[str]) -> Iterator[tuple[Basis, Rect]]:
    for line in fh:
        if line.strip():
            yield parse_json(line)
