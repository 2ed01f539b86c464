import _report


def pytest_terminal_summary(terminalreporter):
    if _report.lines:
        terminalreporter.section("acceptance report")
        for line in _report.lines:
            terminalreporter.write_line(line)
