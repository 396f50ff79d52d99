import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_acceptance: dict[str, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    criterion = getattr(item.function, "criterion", None)
    if criterion is None:
        return
    if report.failed or (report.when == "call" and criterion not in _acceptance):
        title = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _acceptance[criterion] = ("FAIL" if report.failed else "PASS", title)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(_acceptance, key=lambda c: int(c[2:])):
        status, title = _acceptance[criterion]
        terminalreporter.write_line(f"{criterion:<5} {status}  {title}")
