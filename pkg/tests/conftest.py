import pytest

from nilform.verify import CRITERIA, Suite, criterion_status, run_verify


@pytest.fixture(scope="session")
def suite():
    """Shared knot and mapping-class reports; each diagram is computed once per session."""
    return Suite()


@pytest.fixture(scope="session")
def verify_results(suite):
    return run_verify(suite=suite)


_ACCEPTANCE_LINES: dict[int, str] = {}


def record_acceptance(criterion: int, line: str) -> None:
    _ACCEPTANCE_LINES[criterion] = line


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(_ACCEPTANCE_LINES[k])


__all__ = ["CRITERIA", "criterion_status", "record_acceptance"]
