from pathlib import Path

import pytest

from btsema import parse_tree
from btsema.scenario import parse_scenario

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def tour_spec():
    return parse_tree((FIXTURES / "tour.bt").read_text())


@pytest.fixture
def tour_scenario():
    return parse_scenario((FIXTURES / "tour_scenario.json").read_text())


@pytest.fixture(scope="session")
def acceptance_report(request) -> list[str]:
    """Lines printed in the terminal summary, one per acceptance criterion."""
    if not hasattr(request.config, "_acceptance_lines"):
        request.config._acceptance_lines = []
    return request.config._acceptance_lines


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "_acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
