import pytest
import mpmath as mp

from laguerre_lab.quadrature import build_rule
from laguerre_lab.weights import preset


@pytest.fixture(autouse=True)
def working_precision():
    # comparisons in the tests happen at the working precision of the lab
    old = mp.mp.prec
    mp.mp.prec = 333
    yield 333
    mp.mp.prec = old


@pytest.fixture(scope="session")
def n1():
    return preset("N1")


@pytest.fixture(scope="session")
def n2():
    return preset("N2")


@pytest.fixture(scope="session")
def classical():
    return preset("classical")


@pytest.fixture(scope="session")
def rule40():
    # exact for the polynomial deformation of N1 and classical up to n ~ 18
    return build_rule(1, 40, 333)


@pytest.fixture(scope="session")
def rule200():
    return build_rule(1, 200, 333)
