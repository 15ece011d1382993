"""
Shared fixtures; computations above desk scale run only with --extended
"""
import pytest

from orbitres.algebra.polyring import PolynomialRing, VariableSpec
from orbitres.core.config import get_settings
from orbitres.services import CatalogService


def pytest_addoption(parser):
    parser.addoption("--extended", action="store_true", default=False,
                     help="run computations above desk scale")


def pytest_configure(config):
    config.addinivalue_line("markers", "extended: computation above desk scale")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--extended") or get_settings().EXTENDED:
        return
    skip = pytest.mark.skip(reason="needs --extended")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


def plain_ring(names):
    return PolynomialRing([VariableSpec(n, k) for k, n in enumerate(names)], name="".join(names))


@pytest.fixture
def xyz():
    """QQ[x, y, z] with standard grading"""
    return plain_ring(["x", "y", "z"])


@pytest.fixture
def abcd():
    return plain_ring(["a", "b", "c", "d"])


@pytest.fixture(scope="session")
def g2a2():
    return CatalogService("G2a2")


@pytest.fixture(scope="session")
def f4a2():
    return CatalogService("F4a2")


@pytest.fixture(scope="session")
def e6a4():
    return CatalogService("E6a4")
