import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from sumrank.gf import make_field  # noqa: E402


@pytest.fixture(scope="session")
def f2():
    return make_field(2, [1])


@pytest.fixture(scope="session")
def f3():
    return make_field(3, [1])


@pytest.fixture(scope="session")
def f4():
    return make_field(2, [2])


@pytest.fixture(scope="session")
def f8():
    return make_field(2, [3])


@pytest.fixture(scope="session")
def f9():
    return make_field(3, [2])


@pytest.fixture(scope="session")
def f16_tower():
    return make_field(2, [2, 2])
