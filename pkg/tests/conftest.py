import os
import sys

import pytest

# Add project root to sys.path
PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

from src.core.residue import residue_coloring  # noqa: E402
from src.core.zm import parse_pattern, pattern_from_k  # noqa: E402


@pytest.fixture
def qr5():
    return residue_coloring(5, 2)


@pytest.fixture
def qr7():
    return residue_coloring(7, 2)


@pytest.fixture
def qr11():
    return residue_coloring(11, 2)


@pytest.fixture
def qr13():
    return residue_coloring(13, 2)


@pytest.fixture
def k3():
    return pattern_from_k(3)


@pytest.fixture
def k4():
    return pattern_from_k(4)


@pytest.fixture
def punched():
    return parse_pattern("0,2,3,5")
