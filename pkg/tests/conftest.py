from pathlib import Path

import pytest

from models import CyclicAction, HyperquotientGerm, ToricGerm, ToricPair
from utils.parsing import parse_poly

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def ca7_germ() -> HyperquotientGerm:
    """x1 x2 + x3^7 in C^4 / 1/7(1,-1,2,0)."""
    return HyperquotientGerm(
        dim=4,
        action=CyclicAction(n=7, chars=(1, -1, 2, 0)),
        eqs=(parse_poly("x1*x2 + x3^7", 4),),
        tag="cA_over_n",
    )


@pytest.fixture
def cd_germ() -> HyperquotientGerm:
    return HyperquotientGerm(
        dim=4,
        action=CyclicAction(n=1, chars=(0, 0, 0, 0)),
        eqs=(parse_poly("x1^2 + x2^2*x4 + x3^3", 4),),
        tag="cD_41",
    )


@pytest.fixture
def smooth3() -> HyperquotientGerm:
    return HyperquotientGerm(dim=3, action=CyclicAction(n=1, chars=(0, 0, 0)), tag="Smooth")


@pytest.fixture
def smooth_plane() -> ToricGerm:
    return ToricGerm(dim=2, rays=((1, 0), (0, 1)))


@pytest.fixture
def square_cone() -> ToricGerm:
    """Cone over the unit square at height one."""
    return ToricGerm(dim=3, rays=((0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)))


@pytest.fixture
def plane_pair(smooth_plane) -> ToricPair:
    return ToricPair(germ=smooth_plane, coeffs=(0, 0))
