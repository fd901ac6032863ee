import time

import pytest

ACCEPTANCE: dict = {}


@pytest.fixture(scope="session")
def dataset():
    from chevmod.tables import load_paper_tables

    return load_paper_tables()


@pytest.fixture(scope="session")
def full_report(dataset):
    from chevmod.tables import verify_all

    start = time.perf_counter()
    report = verify_all(dataset)
    report.seconds = time.perf_counter() - start
    return report


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
