from __future__ import annotations

import pytest

from cddsched.core import Instance, Job

# Five-job worked instance (P, alpha, beta), due date 16.
TABLE1 = [(6, 7, 9), (5, 9, 5), (2, 6, 4), (4, 9, 3), (4, 3, 2)]
TABLE1_DUE = 16


def make_table1(machine_count: int = 1) -> Instance:
    jobs = tuple(Job(i, p, a, b) for i, (p, a, b) in enumerate(TABLE1, start=1))
    return Instance(jobs, TABLE1_DUE, machine_count)


@pytest.fixture
def table1() -> Instance:
    return make_table1()


@pytest.fixture
def table1_m2() -> Instance:
    return make_table1(2)


# Acceptance bookkeeping: one line per criterion at the end of the run.
_CRITERIA: dict[int, tuple[str, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if call.when == "setup" and call.excinfo is not None:
        _CRITERIA[number] = (title, "FAIL", "setup error")
    elif call.when == "call":
        if call.excinfo is None:
            _CRITERIA[number] = (title, "PASS", "")
        else:
            msg = str(call.excinfo.value).strip().splitlines()
            _CRITERIA[number] = (title, "FAIL", msg[0] if msg else call.excinfo.typename)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, status, note = _CRITERIA[number]
        line = f"criterion {number:>2} {status}  {title}"
        if note:
            line += f"  ({note[:160]})"
        terminalreporter.write_line(line)
