"""Persistent cache of minimal basis sizes.

One JSON record per (s_x, s_y, restricted) key, each carrying a SHA-256
checksum of its payload.  A record that fails to parse or whose checksum
does not match is reported and treated as a miss.  If the directory cannot
be written the cache keeps working in memory only.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import threading
from pathlib import Path
from typing import Iterable, Optional

from .grid import Basis, Rect

log = logging.getLogger(__name__)

ENV_VAR = "PLANAR_BASES_CACHE"
VERSION = "0.1.0"


def _checksum(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _stem(rect: Rect, restricted: bool) -> str:
    return f"k_{rect.s_x}x{rect.s_y}_{'r' if restricted else 'a'}"


class ResultCache:
    def __init__(self, directory: Optional[os.PathLike] = None):
        self._mem: dict[tuple[int, int, bool], dict] = {}
        self._lock = threading.Lock()
        self.directory: Optional[Path] = None
        if directory is not None:
            path = Path(directory).expanduser()
            try:
                path.mkdir(parents=True, exist_ok=True)
                probe = path / ".write-probe"
                probe.write_text("ok")
                probe.unlink()
                self.directory = path
            except OSError as exc:
                log.warning("cache directory %s unusable (%s); caching in memory only", path, exc)

    @staticmethod
    def _key(rect: Rect, restricted: bool) -> tuple[int, int, bool]:
        return (rect.s_x, rect.s_y, bool(restricted))

    def _file(self, rect: Rect, restricted: bool) -> Optional[Path]:
        if self.directory is None:
            return None
        return self.directory / (_stem(rect, restricted) + ".json")

    def _load(self, rect: Rect, restricted: bool) -> Optional[dict]:
        path = self._file(rect, restricted)
        if path is None or not path.exists():
            return None
        try:
            data = json.loads(path.read_text())
            payload = data["record"]
            ok = data.get("checksum") == _checksum(payload)
            ok = ok and [payload["s_x"], payload["s_y"], payload["restricted"]] == [rect.s_x, rect.s_y, restricted]
        except (OSError, ValueError, KeyError, TypeError):
            ok = False
        if not ok:
            log.warning("cache record %s is corrupt; ignoring it", path)
            return None
        return payload

    def get(self, rect: Rect, restricted: bool = False) -> Optional[dict]:
        key = self._key(rect, restricted)
        with self._lock:
            rec = self._mem.get(key)
            if rec is None:
                rec = self._load(rect, restricted)
                if rec is not None:
                    self._mem[key] = rec
        return dict(rec) if rec is not None else None

    def get_k(self, rect: Rect, restricted: bool = False) -> Optional[int]:
        rec = self.get(rect, restricted)
        return None if rec is None else int(rec["k"])

    def put_k(self, rect: Rect, restricted: bool, k: int, *, nodes: int = 0,
              method: str = "", solutions_file: Optional[str] = None) -> dict:
        record = {
            "s_x": rect.s_x,
            "s_y": rect.s_y,
            "restricted": bool(restricted),
            "k": int(k),
            "nodes": int(nodes),
            "method": method,
            "version": VERSION,
        }
        if solutions_file is not None:
            record["solutions_file"] = solutions_file
        with self._lock:
            self._mem[self._key(rect, restricted)] = record
            path = self._file(rect, restricted)
            if path is not None:
                try:
                    tmp = path.with_suffix(".tmp")
                    tmp.write_text(json.dumps({"record": record, "checksum": _checksum(record)}, sort_keys=True))
                    tmp.replace(path)
                except OSError as exc:
                    log.warning("could not write cache record %s (%s)", path, exc)
        return record

    def put_solutions(self, rect: Rect, restricted: bool, k: int, bases: Iterable[Basis],
                      nodes: int = 0, method: str = "") -> Optional[Path]:
        """Store k together with a line-JSON solution file (disk caches only)."""
        from .render import write_solutions

        if self.directory is None:
            self.put_k(rect, restricted, k, nodes=nodes, method=method)
            return None
        path = self.directory / (_stem(rect, restricted) + ".jsonl")
        with path.open("w") as fh:
            write_solutions(fh, bases, rect)
        self.put_k(rect, restricted, k, nodes=nodes, method=method, solutions_file=path.name)
        return path

    def clear_memory(self) -> None:
        with self._lock:
            self._mem.clear()


_default: Optional[ResultCache] = None


def default_cache() -> ResultCache:
    """Process-wide cache; on disk only when the environment variable names a directory."""
    global _default
    if _default is None:
        _default = ResultCache(os.environ.get(ENV_VAR) or None)
    return _default


def set_default_cache(cache: ResultCache) -> None:
    global _default
    _default = cache
