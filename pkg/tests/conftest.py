from fractions import Fraction

import pytest

from copyposet.structures import BUILTIN_IDS, get_structure


@pytest.fixture(params=BUILTIN_IDS)
def structure(request):
    return get_structure(request.param)


@pytest.fixture
def dlo():
    return get_structure("dlo")


@pytest.fixture
def zorder():
    return get_structure("zorder")


@pytest.fixture
def pairs():
    return get_structure("pairs")


def F(*args):
    return Fraction(*args)
