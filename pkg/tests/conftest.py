import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hopfstar.fixtures import fixture  # noqa: E402


@lru_cache(maxsize=None)
def bundle(name):
    return fixture(name)


@pytest.fixture(scope="session")
def fx():
    """Cached fixture bundles by name."""
    return bundle


@pytest.fixture
def z2():
    return bundle("group_z2")


@pytest.fixture
def z3():
    return bundle("group_z3")


@pytest.fixture
def sw():
    return bundle("sweedler(1)")


@pytest.fixture
def triv():
    return bundle("trivial")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    verdicts = getattr(mod, "VERDICTS", None)
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(verdicts):
        terminalreporter.write_line(verdicts[num])
