"""Shared pytest plumbing.

Acceptance tests record one verdict line each; the hook below replays them
after the run so they stay visible in piped output.
"""

ACCEPTANCE_LINES: list[str] = []


def record_verdict(line: str) -> None:
    print(line)
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.line(line)
