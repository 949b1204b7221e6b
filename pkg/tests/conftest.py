"""Shared test plumbing.

The acceptance tests append ``(number, label, ok, detail)`` tuples to
``ACCEPTANCE_RESULTS``; after the run a summary section prints one PASS/FAIL
line per criterion so the verdicts are visible even under output capture.
"""

ACCEPTANCE_RESULTS = []


def record_criterion(number, label, ok, detail):
    """Record an acceptance verdict and assert it."""
    ACCEPTANCE_RESULTS.append((number, label, bool(ok), detail))
    assert ok, f"acceptance criterion {number} ({label}) failed: {detail}"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, label, ok, detail in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[criterion {number:2d}] {status} {label}: {detail}")
