"""Shared pytest wiring.

The acceptance tests append one verdict line per criterion here; the
terminal-summary hook prints them through the reporter so they survive
output capture and land in piped/teed logs.
"""

acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)
