import pytest

from mhpref import (
    Contract,
    CostFunction,
    OutputSpace,
    PreferenceOracle,
    UtilityFunction,
)


@pytest.fixture
def space2():
    return OutputSpace((0.0, 1.0))


@pytest.fixture
def space3():
    return OutputSpace((0.0, 1.0, 2.0))


@pytest.fixture
def u_lin():
    return UtilityFunction.linear()


@pytest.fixture
def u_cara():
    return UtilityFunction.cara(1.0)


@pytest.fixture
def quad_cost():
    return CostFunction.quadratic1d(1.0, 0.0)


@pytest.fixture
def mh_oracle(space2, quad_cost, u_lin):
    return PreferenceOracle.moral_hazard(space2, quad_cost, u_lin)


@pytest.fixture
def steep(space2):
    return Contract.from_prizes(space2, [0.0, 1.0])
