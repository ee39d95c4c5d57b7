import pytest

_SUMMARY_KEY = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_SUMMARY_KEY] = {}


@pytest.fixture(scope="session")
def acceptance_summary(request):
    """Criterion number -> one-line verdict, printed at the end of the run."""
    return request.config.stash[_SUMMARY_KEY]


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_SUMMARY_KEY, {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(lines):
        terminalreporter.write_line(lines[k])
