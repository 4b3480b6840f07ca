import pytest

from gelfond.digits import PhaseParam
from gelfond.growth import GrowthFunction
from gelfond.sieve import build_tables


@pytest.fixture(scope="session")
def tables_16():
    return build_tables(1 << 16)


@pytest.fixture()
def alpha_half():
    return PhaseParam.parse("1/2")


@pytest.fixture()
def p_const1():
    return GrowthFunction.constant(1)


@pytest.fixture()
def p_log23():
    return GrowthFunction.parse("log:2/3", 2)
