import contextlib
import time

import pytest
from hypothesis import settings

# exact big-rational arithmetic has uneven runtimes; keep runs reproducible
settings.register_profile("theta", deadline=None, derandomize=True)
settings.load_profile("theta")

ACCEPTANCE_LINES: list[str] = []


@contextlib.contextmanager
def criterion(number: int, title: str):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        ACCEPTANCE_LINES.append(f"criterion {number}: FAIL  {title} ({elapsed:.2f}s) -- {exc}".splitlines()[0])
        raise
    elapsed = time.perf_counter() - start
    ACCEPTANCE_LINES.append(f"criterion {number}: PASS  {title} ({elapsed:.2f}s)")


@pytest.fixture
def acceptance():
    return criterion


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
