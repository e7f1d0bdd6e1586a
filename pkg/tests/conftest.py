import pytest
from hypothesis import settings

settings.register_profile("repo", deadline=None, derandomize=True, print_blob=True)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def atlas():
    from semiprim.atlas import atlas_load

    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = atlas_load(name)
        return cache[name]

    return get


@pytest.fixture(scope="session")
def table_report():
    from semiprim.harness import reproduce_tables

    return reproduce_tables()


@pytest.fixture(scope="session")
def default_reports():
    from semiprim.harness import run_corpus

    return run_corpus()


# one "PASS/FAIL criterion N: ..." line per acceptance check, echoed at the end of the run
ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    def record(number, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
