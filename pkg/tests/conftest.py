import sys


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance verdicts after the run, outside captured output."""
    lines = []
    for name, mod in list(sys.modules.items()):
        if name.rpartition(".")[2] == "test_acceptance":
            lines = getattr(mod, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
