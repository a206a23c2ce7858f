from fractions import Fraction

import pytest

from jetstrata import data
from jetstrata.rings.series import TruncatedSeries


def series(p, M, coeffs):
    return TruncatedSeries(p, M, coeffs)


@pytest.fixture
def cusp():
    return data.scheme("cusp")


@pytest.fixture
def node():
    return data.scheme("node")


@pytest.fixture
def axes():
    return data.scheme("axes3")


@pytest.fixture
def half():
    return Fraction(1, 2)
