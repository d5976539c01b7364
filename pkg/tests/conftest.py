import functools

import pytest

from planarlat import census
from planarlat.fixtures import FIXTURES

ACCEPTANCE = {}


@functools.lru_cache(maxsize=None)
def corpus(max_elements):
    return tuple(census.build_corpus(max_elements))


@pytest.fixture(scope="session")
def corpus10():
    return corpus(10)


@pytest.fixture(scope="session")
def corpus7():
    return corpus(7)


@pytest.fixture(scope="session")
def slim_semimodular(corpus10):
    return [e for e in corpus10 if e.predicates["slim"] and e.predicates["semimodular"]]


@pytest.fixture(params=sorted(FIXTURES))
def fixture_diagram(request):
    return request.param, FIXTURES[request.param]()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
