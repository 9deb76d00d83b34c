"""Command-line front end: ``planar-bases <subcommand> ...``.

Exit status: 0 on success, 1 on invalid or infeasible input, 2 on an
internal error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path
from typing import Callable, Iterable, Optional

from . import constructions
from .cache import ENV_VAR, ResultCache, set_default_cache
from .grid import Basis, Rect, classify
from .metrics import (
    PRINTED_CONSTANTS,
    counting_lower_bound,
    efficiency,
    empirical_bound_check,
    upper_bound_constant,
)
from .mim import mim_find, min_k_restricted
from .render import FORMATS, parse_csv, read_solutions, render, write_solutions
from .search import ORDERS, SearchConfig, default_threads, find_bases, find_bases_restricted_direct, min_k
from .symmetry import MODES, count_unique

log = logging.getLogger("planar_bases")

TABLES = ("squares", "restricted-squares", "rects", "restricted-rects", "restricted-sy2")
KINDS = ("l-shaped", "boundary", "dense-sparse", "short-bars", "stacked-mrose")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _rect(text: str) -> Rect:
    try:
        return Rect.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text!r}")
    return v


def _out(text: str = "") -> None:
    sys.stdout.write(text + "\n")


def _save(path: Optional[str], bases: Iterable[Basis], rect: Rect) -> None:
    if path:
        with open(path, "w") as fh:
            write_solutions(fh, bases, rect)


def _print_bases(bases: list[Basis], rect: Rect, fmt: Optional[str]) -> None:
    if not fmt:
        return
    for i, A in enumerate(bases):
        if fmt == "ascii-grid" and i:
            _out()
        _out(render(A, rect, fmt))


# subcommands ---------------------------------------------------------------

def cmd_search(args, cache) -> int:
    rect = args.rect
    if args.restricted and not rect.even:
        raise UsageError(f"restricted search needs even dimensions, got {rect}")
    if args.k < counting_lower_bound(rect):
        _out(f"rect={rect} k={args.k} infeasible: counting bound is {counting_lower_bound(rect)}")
        return 1
    cfg = SearchConfig(k=args.k, rect=rect, order=args.order, restricted=args.restricted,
                       threads=args.threads, count_only=args.count_only,
                       hole_pruning=not args.no_hole_pruning, count_pruning=not args.no_count_pruning,
                       parallel_depth=args.parallel_depth)
    report = find_bases_restricted_direct(cfg) if args.restricted else find_bases(cfg)
    _out(report.summary())
    if report.solutions is not None:
        _save(args.save, report.solutions, rect)
        _print_bases(report.solutions, rect, args.show)
    return 0


def cmd_min(args, cache) -> int:
    rect = args.rect
    if args.restricted and not rect.even:
        raise UsageError(f"restricted search needs even dimensions, got {rect}")
    k, report = min_k(rect, restricted=args.restricted, cache=cache, threads=args.threads, order=args.order)
    _out(f"rect={rect} k={k} m={report.m} m_u={report.m_u}")
    _save(args.save, report.solutions, rect)
    _print_bases(report.solutions, rect, args.show)
    return 0


def cmd_mim(args, cache) -> int:
    rect = args.rect
    report = mim_find(args.k, rect, cache=cache, threads=args.threads)
    _out(f"restricted rect={rect} k={args.k} m={report.m} m_u={report.m_u}")
    if args.stats:
        for st in report.stats["allocations"]:
            pairs = " ".join(f"{s}={n}" for s, n in st["pairs"].items())
            _out(f"  allocation={st['allocation']} combinations={st['combinations']} "
                 f"pairs[{pairs}] cycles={st['cycles']} solutions={st['solutions']}")
    _save(args.save, report.solutions, rect)
    _print_bases(report.solutions, rect, args.show)
    return 0


def cmd_min_restricted(args, cache) -> int:
    rect = args.rect
    k, report = min_k_restricted(rect, cache=cache, threads=args.threads)
    _out(f"restricted rect={rect} k*={k} m={report.m} m_u={report.m_u}")
    _save(args.save, report.solutions, rect)
    _print_bases(report.solutions, rect, args.show)
    return 0


def _construct(args) -> tuple[Basis, Rect]:
    kind = args.kind
    if kind in ("l-shaped", "boundary"):
        if args.rect is None:
            raise UsageError(f"--rect is required for {kind}")
        A = constructions.l_shaped(args.rect) if kind == "l-shaped" else constructions.boundary(args.rect)
        return A, args.rect
    if kind in ("dense-sparse", "short-bars"):
        if args.tx is None or args.ty is None:
            raise UsageError(f"--tx and --ty are required for {kind}")
        build = constructions.dense_sparse if kind == "dense-sparse" else constructions.short_bars
        return build(args.tx, args.ty)
    if args.sy is None or args.t is None:
        raise UsageError("--sy and --t are required for stacked-mrose")
    return constructions.stacked_mrose(args.sy, args.t)


def cmd_construct(args, cache) -> int:
    A, rect = _construct(args)
    _out(f"kind={args.kind} k={len(A)} target={rect}")
    status = 0
    if args.verify:
        flags = classify(A, rect)
        ok = flags.is_basis and flags.admissible
        _out("VERIFIED" if ok else "FAILED")
        status = 0 if ok else 1
    _print_bases([A], rect, args.show)
    return status


def _load_bases(path: str, rect: Rect) -> list[Basis]:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return [A for A, _ in read_solutions(io.StringIO(text))]
    if stripped.startswith("["):
        return [Basis.of(tuple(p) for p in json.loads(text))]
    return [parse_csv(text)]


def cmd_verify(args, cache) -> int:
    bases = _load_bases(args.input, args.rect)
    bad = 0
    for A in bases:
        flags = classify(A, args.rect)
        ok = flags.is_basis and flags.admissible
        bad += not ok
        _out(f"k={len(A)} " + " ".join(f"{n}={str(v).lower()}" for n, v in flags.as_dict().items()))
    _out(f"checked={len(bases)} failed={bad}")
    return 1 if bad else 0


def cmd_canonical_count(args, cache) -> int:
    bases = _load_bases(args.input, args.rect)
    if len(set(bases)) != len(bases):
        raise UsageError("input contains duplicate bases")
    _out(f"m={len(bases)} m_u={count_unique(bases, args.rect, args.mode)}")
    return 0


# tables ----------------------------------------------------------------------

def _table_rows(name: str, lo: int, hi: int, cache, threads: int) -> tuple[list[str], list[list]]:
    rows: list[list] = []
    if name == "squares":
        header = ["s", "k", "m", "m_u"]
        for s in range(lo, hi + 1):
            k, rep = min_k(Rect(s, s), cache=cache, threads=threads)
            rows.append([s, k, rep.m, rep.m_u])
    elif name == "restricted-squares":
        header = ["s", "k*", "m", "m_u"]
        for s in range(lo + lo % 2, hi + 1, 2):
            k, rep = min_k_restricted(Rect(s, s), cache=cache, threads=threads)
            rows.append([s, k, rep.m, rep.m_u])
    elif name == "rects":
        header = ["s_x", "s_y", "k", "delta_k", "m_u"]
        for sx in range(lo, hi + 1):
            for sy in range(sx + 1):
                rect = Rect(sx, sy)
                k, rep = min_k(rect, cache=cache, threads=threads)
                rows.append([sx, sy, k, efficiency(k, rect).delta_k, rep.m_u])
    elif name == "restricted-rects":
        header = ["s_x", "s_y", "k*", "delta_k", "m_u"]
        for sx in range(lo + lo % 2, hi + 1, 2):
            for sy in range(0, sx + 1, 2):
                rect = Rect(sx, sy)
                k, rep = min_k_restricted(rect, cache=cache, threads=threads)
                rows.append([sx, sy, k, efficiency(k, rect).delta_k, rep.m_u])
    elif name == "restricted-sy2":
        header = ["s_x", "k*", "m_u"]
        for sx in range(max(2, lo + lo % 2), hi + 1, 2):
            k, rep = min_k_restricted(Rect(sx, 2), cache=cache, threads=threads)
            rows.append([sx, k, rep.m_u])
    else:
        raise UsageError(f"unknown table {name!r}")
    return header, rows


def format_table(header: list[str], rows: list[list], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue().rstrip("\n")
    cells = [header] + [[str(v) for v in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join(" ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells)


def cmd_table(args, cache) -> int:
    header, rows = _table_rows(args.name, args.min_s, args.max_s, cache, args.threads)
    text = format_table(header, rows, args.format)
    _out(text)
    if args.output:
        Path(args.output).write_text(text + "\n")
    return 0


def cmd_bounds(args, cache) -> int:
    did = False
    if args.efficiency:
        if args.rect is None or args.k is None:
            raise UsageError("--efficiency needs --rect and --k")
        r = efficiency(args.k, args.rect).row()
        _out(" ".join(f"{key}={val}" for key, val in r.items()))
        did = True
    if args.sweep:
        rows = empirical_bound_check(args.height, args.restricted, args.max_sx, args.min_sx,
                                     cache=cache, threads=args.threads)
        header = ["s_x", "s_y", "k", "c", "bound", "exceeds"]
        table = [[r["s_x"], r["s_y"], r["k"], f"{float(r['c']):.6f}", f"{float(r['bound']):.6f}",
                  "yes" if r["exceeds"] else "no"] for r in rows]
        _out(format_table(header, table, args.format))
        did = True
    if args.constants or not did:
        if args.rect is not None:
            _out(f"counting_lower_bound={counting_lower_bound(args.rect)}")
        for (sy, restricted), printed in PRINTED_CONSTANTS.items():
            value = upper_bound_constant(sy, restricted)
            _out(f"height={sy} restricted={str(restricted).lower()} c<{float(value):.6f} (rounds to {float(value):.4f})")
    return 0


# parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_positive, default=default_threads(),
                        help="worker threads (default: machine parallelism)")
    common.add_argument("--cache-dir", default=None,
                        help=f"result cache directory (default: ${ENV_VAR} or ~/.cache/planar-bases)")
    common.add_argument("--no-cache", action="store_true", help="keep results in memory only")
    common.add_argument("--log-level", default="WARNING")

    p = _Parser(prog="planar-bases", description="Exact search for planar additive bases.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, func: Callable, help_text: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    def show_opt(sp):
        sp.add_argument("--show", choices=FORMATS, default=None, help="print every basis in this format")
        sp.add_argument("--save", default=None, help="write solutions as line-JSON")

    sp = add("search", cmd_search, "enumerate all k-bases of a rectangle")
    sp.add_argument("--rect", type=_rect, required=True)
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--restricted", action="store_true")
    sp.add_argument("--order", choices=ORDERS, default="edge-first")
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--no-hole-pruning", action="store_true")
    sp.add_argument("--no-count-pruning", action="store_true")
    sp.add_argument("--parallel-depth", type=_nonneg, default=10)
    show_opt(sp)

    sp = add("min", cmd_min, "minimal basis size with m and m_u")
    sp.add_argument("--rect", type=_rect, required=True)
    sp.add_argument("--restricted", action="store_true", help="direct restricted search")
    sp.add_argument("--order", choices=ORDERS, default="edge-first")
    show_opt(sp)

    sp = add("mim", cmd_mim, "restricted k-bases by meet in the middle")
    sp.add_argument("--rect", type=_rect, required=True)
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--stats", action="store_true", help="per-allocation gluing statistics")
    show_opt(sp)

    sp = add("min-restricted", cmd_min_restricted, "minimal restricted basis size")
    sp.add_argument("--rect", type=_rect, required=True)
    show_opt(sp)

    sp = add("construct", cmd_construct, "build a parametric basis")
    sp.add_argument("--kind", choices=KINDS, required=True)
    sp.add_argument("--rect", type=_rect)
    sp.add_argument("--tx", type=_positive)
    sp.add_argument("--ty", type=_positive)
    sp.add_argument("--sy", type=_nonneg)
    sp.add_argument("--t", type=_positive)
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--show", choices=FORMATS, default=None)

    sp = add("verify", cmd_verify, "classify bases read from a file")
    sp.add_argument("--rect", type=_rect, required=True)
    sp.add_argument("--input", required=True, help="line-JSON, JSON point list or CSV; '-' for stdin")

    sp = add("canonical-count", cmd_canonical_count, "count bases up to symmetry")
    sp.add_argument("--rect", type=_rect, required=True)
    sp.add_argument("--input", required=True)
    sp.add_argument("--mode", choices=MODES, default="full-rect")

    sp = add("table", cmd_table, "reproduce a results table")
    sp.add_argument("--name", choices=TABLES, required=True)
    sp.add_argument("--max-s", type=_nonneg, required=True)
    sp.add_argument("--min-s", type=_nonneg, default=0)
    sp.add_argument("--format", choices=("text", "csv"), default="text")
    sp.add_argument("--output", default=None)

    sp = add("bounds", cmd_bounds, "efficiency and bound constants")
    sp.add_argument("--constants", action="store_true")
    sp.add_argument("--efficiency", action="store_true")
    sp.add_argument("--rect", type=_rect)
    sp.add_argument("--k", type=_positive)
    sp.add_argument("--sweep", action="store_true")
    sp.add_argument("--height", type=int, choices=(1, 2, 4), default=1)
    sp.add_argument("--restricted", action="store_true")
    sp.add_argument("--min-sx", type=_nonneg, default=0)
    sp.add_argument("--max-sx", type=_nonneg, default=10)
    sp.add_argument("--format", choices=("text", "csv"), default="text")
    return p


def _make_cache(args) -> ResultCache:
    if args.no_cache:
        return ResultCache(None)
    directory = args.cache_dir or os.environ.get(ENV_VAR) or "~/.cache/planar-bases"
    return ResultCache(directory)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=args.log_level.upper(), format="%(levelname)s %(name)s: %(message)s")
    try:
        cache = _make_cache(args)
        set_default_cache(cache)
        return args.func(args, cache)
    except (UsageError, ValueError) as exc:
        sys.stderr.write(f"planar-bases: error: {exc}\n")
        return 1
    except Exception:
        log.exception("internal error")
        return 2


if __name__ == "__main__":
    sys.exit(main())
