import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from planar_bases.cache import ResultCache, set_default_cache  # noqa: E402


@pytest.fixture(autouse=True)
def memory_cache():
    """Each test starts from an empty in-memory cache."""
    cache = ResultCache(None)
    set_default_cache(cache)
    yield cache


_verdicts: list[str] = []


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line for an acceptance criterion."""
    def record(name: str, ok: bool, detail: str = "") -> bool:
        line = f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else "")
        _verdicts.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _verdicts:
        terminalreporter.section("acceptance criteria")
        for line in _verdicts:
            terminalreporter.write_line(line)
