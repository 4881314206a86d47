import pytest
from hypothesis import settings

from phragmen_list import load_example

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def ex1():
    return load_example("example1")


@pytest.fixture
def ex2():
    return load_example("example2")


@pytest.fixture
def ex3():
    return load_example("example3")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key, ok in RESULTS.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}")
