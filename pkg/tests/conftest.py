"""Shared helpers and the acceptance-summary hook."""

from __future__ import annotations

from fractions import Fraction

from thresholdwalk import enumerate_codes

_ACCEPTANCE_RESULTS: dict[str, str] = {}


def connected_codes(n):
    """All connected codes of order n."""
    return list(enumerate_codes(n))


def connected_codes_upto(n_max, n_min=2):
    """All connected codes with n_min <= n <= n_max, ascending order."""
    for n in range(n_min, n_max + 1):
        yield from enumerate_codes(n)


def frac(num, den=1) -> Fraction:
    return Fraction(num, den)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        _ACCEPTANCE_RESULTS[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(_ACCEPTANCE_RESULTS):
        outcome = _ACCEPTANCE_RESULTS[nodeid]
        name = nodeid.split("::")[-1]
        status = "PASS" if outcome == "passed" else outcome.upper()
        terminalreporter.write_line(f"{name}: {status}")
