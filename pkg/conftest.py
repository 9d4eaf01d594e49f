"""
Shared pytest fixtures for the Fuzzy Horn Engine suites
"""

import sys
from pathlib import Path

import pytest

# Add engine to path
REPO_ROOT = Path(__file__).parent
sys.path.insert(0, str(REPO_ROOT))

from engine.fuzzy_horn.algebra import get_algebra  # noqa: E402
from engine.fuzzy_horn.loader import TheoryLoader  # noqa: E402

WORKED_PACK = REPO_ROOT / "packs" / "worked"


@pytest.fixture(scope="session")
def pack_path() -> Path:
    return WORKED_PACK


@pytest.fixture
def loader() -> TheoryLoader:
    return TheoryLoader(WORKED_PACK)


@pytest.fixture(scope="session")
def fixtures_path() -> Path:
    return WORKED_PACK / "tests" / "fixtures"


@pytest.fixture(params=["boolean", "godel-5", "lukasiewicz-5", "lukasiewicz-11"])
def finite_algebra(request):
    """Bundled finite algebras checked exhaustively"""
    return get_algebra(request.param)


@pytest.fixture(params=["godel", "lukasiewicz", "product"])
def unit_algebra(request):
    return get_algebra(request.param)


@pytest.fixture
def lukasiewicz_example(loader):
    return loader.load_structure("lukasiewicz_example.structure.yaml")


@pytest.fixture
def godel_example(loader):
    return loader.load_structure("godel_example.structure.yaml")


@pytest.fixture
def two_point(loader):
    return loader.load_structure("two_point.structure.yaml")
