from __future__ import annotations

import pytest


def pytest_terminal_summary(terminalreporter, exitstatus, config):  # type: ignore[no-untyped-def]
    try:
        from acceptance_report import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, desc, ok in sorted(RESULTS):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{status} criterion {num:2d}: {desc}")


@pytest.fixture
def three_cycle():
    from kingkernel import build_digraph

    return build_digraph(3, [(0, 1), (1, 2), (2, 0)])
