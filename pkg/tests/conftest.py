import pytest

from neumann_eigen import build_setup


@pytest.fixture(scope="session")
def setup_minus():
    return build_setup("example-minus", n_grid=1000)


@pytest.fixture(scope="session")
def setup_plus():
    return build_setup("example-plus", n_grid=1000)


@pytest.fixture(scope="session", params=["example-minus", "example-plus"])
def any_setup(request, setup_minus, setup_plus):
    return setup_minus if request.param == "example-minus" else setup_plus



_CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(number, passed, detail)``."""
    def record(number: int, passed: bool, detail: str) -> None:
        _CRITERIA[number] = (bool(passed), detail)
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        ok, detail = _CRITERIA[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
