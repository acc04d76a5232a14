import time
from contextlib import contextmanager

import pytest

_RESULTS: dict[int, tuple[bool, float, float, str]] = {}


class Recorder:
    def __init__(self):
        self.notes = []

    def note(self, text: str) -> None:
        self.notes.append(text)

    @contextmanager
    def criterion(self, number: int, title: str, limit: float):
        start = time.perf_counter()
        try:
            yield self
        except BaseException:
            _RESULTS[number] = (False, time.perf_counter() - start, limit, title)
            raise
        elapsed = time.perf_counter() - start
        ok = elapsed < limit
        _RESULTS[number] = (ok, elapsed, limit, title + ("; " + "; ".join(self.notes) if self.notes else ""))
        assert ok, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"


@pytest.fixture
def acceptance():
    return Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        ok, elapsed, limit, title = _RESULTS[n]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{verdict} criterion {n:2d} ({elapsed:6.2f}s / {limit:g}s): {title}")
