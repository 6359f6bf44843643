from pathlib import Path

import pytest
from hypothesis import settings

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "etaq" / "fixtures"

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
