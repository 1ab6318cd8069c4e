import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# (number, label, passed, seconds) rows filled in by test_acceptance.py
ACCEPTANCE_REPORT = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for num, label, passed, secs in sorted(ACCEPTANCE_REPORT):
        tag = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{tag}  {num:>2}. {label}  ({secs:.2f} s)")
