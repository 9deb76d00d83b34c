import json
import logging
import os

import pytest

from planar_bases import Basis, Rect
from planar_bases.cache import ResultCache
from planar_bases.render import read_solutions
from planar_bases.search import k_value, min_k


def test_round_trip(tmp_path):
    c = ResultCache(tmp_path)
    c.put_k(Rect(5, 2), False, 7, nodes=12, method="direct")
    fresh = ResultCache(tmp_path)
    rec = fresh.get(Rect(5, 2))
    assert rec["k"] == 7 and rec["nodes"] == 12
    assert fresh.get_k(Rect(5, 2), True) is None


def test_tampered_record_is_a_miss(tmp_path, caplog):
    c = ResultCache(tmp_path)
    c.put_k(Rect(5, 2), False, 7)
    path = next(tmp_path.glob("*.json"))
    data = json.loads(path.read_text())
    data["record"]["k"] = 6
    path.write_text(json.dumps(data))
    with caplog.at_level(logging.WARNING):
        assert ResultCache(tmp_path).get_k(Rect(5, 2)) is None
    assert "corrupt" in caplog.text


def test_garbage_record_is_a_miss(tmp_path):
    ResultCache(tmp_path).put_k(Rect(1, 1), False, 3)
    next(tmp_path.glob("*.json")).write_text("{not json")
    assert ResultCache(tmp_path).get_k(Rect(1, 1)) is None


@pytest.mark.skipif(os.geteuid() == 0, reason="root ignores directory permissions")
def test_unwritable_directory_falls_back(tmp_path, caplog):
    d = tmp_path / "ro"
    d.mkdir()
    d.chmod(0o500)
    with caplog.at_level(logging.WARNING):
        c = ResultCache(d)
    assert c.directory is None
    c.put_k(Rect(1, 1), False, 3)
    assert c.get_k(Rect(1, 1)) == 3


def test_file_in_place_of_directory_falls_back(tmp_path, caplog):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with caplog.at_level(logging.WARNING):
        c = ResultCache(blocker / "sub")
    assert c.directory is None and "memory only" in caplog.text
    c.put_k(Rect(2, 2), False, 4)
    assert c.get_k(Rect(2, 2)) == 4


def test_cache_hit_skips_lower_sizes(tmp_path):
    c = ResultCache(tmp_path)
    k, first = min_k(Rect(5, 4), cache=c)
    assert k == 10
    c.clear_memory()
    k2, second = min_k(Rect(5, 4), cache=c)
    assert k2 == 10 and second.nodes_visited == first.nodes_visited
    assert k_value(Rect(5, 4), cache=c) == 10


def test_stale_cache_detected():
    c = ResultCache(None)
    c.put_k(Rect(3, 3), False, 5)
    with pytest.raises(RuntimeError):
        min_k(Rect(3, 3), cache=c)


def test_put_solutions(tmp_path):
    c = ResultCache(tmp_path)
    bases = [Basis.of([(0, 0), (1, 0), (0, 1)])]
    path = c.put_solutions(Rect(1, 1), False, 3, bases)
    with path.open() as fh:
        assert [A for A, _ in read_solutions(fh)] == bases
    assert ResultCache(tmp_path).get(Rect(1, 1))["solutions_file"] == path.name
