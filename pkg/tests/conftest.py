import time
from contextlib import contextmanager

import pytest


def pytest_configure(config):
    config.acceptance_lines = []


def pytest_terminal_summary(terminalreporter, config):
    lines = config.acceptance_lines
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def criterion(request):
    """Context manager timing one criterion and recording a PASS/FAIL line for it."""

    @contextmanager
    def run(number, title, limit=None):
        t0 = time.perf_counter()
        status, note = "FAIL", ""
        try:
            yield
            elapsed = time.perf_counter() - t0
            if limit is not None and elapsed >= limit:
                note = f" (too slow: limit {limit}s)"
                raise AssertionError(f"criterion {number} took {elapsed:.2f}s >= {limit}s")
            status = "PASS"
        finally:
            elapsed = time.perf_counter() - t0
            line = f"{status} criterion {number}: {title} [{elapsed:.2f}s]{note}"
            request.config.acceptance_lines.append(line)
            print(line)

    return run
