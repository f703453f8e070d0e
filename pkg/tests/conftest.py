import pytest

from hyhlab import fixtures
from hyhlab.curve import CurveParams
from hyhlab.hyh import PAPER, STRICT, SchemeConfig


@pytest.fixture(scope="session")
def f23():
    """The 28-point classroom curve y^2 = x^3 + x + 1 over F_23, with the
    full group order claimed so every subgroup is reachable."""
    return CurveParams(q=23, a=1, b=1, G=(0, 1), n=28, h=1)


@pytest.fixture(scope="session")
def f23_n7():
    return fixtures.load(fixtures.F23_N7)


@pytest.fixture(scope="session")
def toy16():
    return fixtures.load(fixtures.TOY16)


@pytest.fixture(scope="session")
def good_params():
    return fixtures.load(fixtures.GOOD)


@pytest.fixture(scope="session")
def paper16(toy16):
    return SchemeConfig(params=toy16, mode=PAPER)


@pytest.fixture(scope="session")
def strict16(toy16):
    return SchemeConfig(params=toy16, mode=STRICT)
