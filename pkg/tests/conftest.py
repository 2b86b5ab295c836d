from pathlib import Path

import pytest

from hodgering.polycore import parse_polynomial

DATA = Path(__file__).parent / "data"
V3 = ["x", "y", "z"]
V2 = ["x", "y"]
X4 = ["X0", "X1", "X2", "X3"]
X3 = ["X0", "X1", "X2"]


def poly(text, names=V3):
    return parse_polynomial(text, names)


def data_poly(name, names):
    return parse_polynomial((DATA / name).read_text(), names)


@pytest.fixture(scope="session")
def quartic_node():
    return data_poly("quartic_node.poly", X4)


@pytest.fixture(scope="session")
def cubic_node():
    return data_poly("cubic_node.poly", X4)


@pytest.fixture(scope="session")
def quartic_curve_3nodes():
    return data_poly("quartic_curve_3nodes.poly", X3)
