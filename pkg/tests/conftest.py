"""
Shared fixtures for the extreme-delaunay test suite.
"""

from pathlib import Path

import pytest

from extreme_delaunay.services import constructions


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def segment():
    return constructions.segment()


@pytest.fixture(scope="session")
def square():
    return constructions.unit_square()


@pytest.fixture(scope="session")
def cube():
    return constructions.unit_cube(3)


@pytest.fixture(scope="session")
def schlafli():
    return constructions.schlafli()


@pytest.fixture(scope="session")
def gosset():
    return constructions.gosset()


@pytest.fixture
def write_file(tmp_path):
    """Write text into tmp_path and return the path."""

    def _write(name: str, text: str) -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write
