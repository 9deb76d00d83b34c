"""Exact search and constructions for planar additive bases."""
from .grid import Basis, CoverageGrid, Point, Rect, classify, covers, gap_count, sumset
from .search import SearchConfig, SearchReport, find_bases, find_bases_restricted_direct, min_k

__version__ = "0.1.0"

__all__ = [
    "Basis", "CoverageGrid", "Point", "Rect", "classify", "covers", "gap_count", "sumset",
    "SearchConfig", "SearchReport", "find_bases", "find_bases_restricted_direct", "min_k",
]
