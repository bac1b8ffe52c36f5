from functools import lru_cache
from pathlib import Path

import pytest

from ncgraph.corpus import builtin, load_group

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# lines printed by test_acceptance, repeated in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def group(selector: str):
    """Builtin group, shared between tests (groups are immutable)."""
    return builtin(selector)


@lru_cache(maxsize=None)
def fixture(name: str):
    return load_group(FIXTURES / f"{name}.json")


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
