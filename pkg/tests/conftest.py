from __future__ import annotations


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: runs the acceptance criteria again in subprocesses")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n].line())
