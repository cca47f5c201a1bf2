from pathlib import Path

import pytest

from toricdeform.services.fan_core import require_supported
from toricdeform.services.fan_io import load_fan

FANS_DIR = Path(__file__).resolve().parent.parent / "fans"

# degrees of the two first-order classes on the obstructed threefold
U = (-1, 0, 0)
U2 = (0, -1, 0)
U_SUM = (-1, -1, 0)
Z = (1, 2, 3, 4)
Z2 = (6,)
# the hexagon through rho_8, rho_3, rho_4, rho_2, rho_7, rho_6
ALPHA = (7, 2, 3, 1, 6, 5)


def fan_path(name):
    return str(FANS_DIR / f"{name}.json")


def load_supported_fixture(name):
    fan, _ = load_fan(fan_path(name))
    return require_supported(fan)


@pytest.fixture(scope="session")
def threefold():
    return load_supported_fixture("obstructed_threefold")


@pytest.fixture(scope="session")
def p2():
    return load_supported_fixture("p2")


@pytest.fixture(scope="session")
def p3():
    return load_supported_fixture("p3")


@pytest.fixture(scope="session")
def cube():
    return load_supported_fixture("p1p1p1")


@pytest.fixture(scope="session")
def hirzebruch_fans():
    return {a: load_supported_fixture(f"f{a}") for a in range(4)}
