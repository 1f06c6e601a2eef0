import pytest

from rrlab.groebner import engine


@pytest.fixture(autouse=True, scope="session")
def _verify_every_groebner_basis():
    """Every basis computed by the tests is re-checked by reducing all S-pairs."""
    engine.SELF_CHECK = True
    yield
    engine.SELF_CHECK = False


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
