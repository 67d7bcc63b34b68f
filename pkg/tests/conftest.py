import pytest

from mzv.numerics import EvalContext


@pytest.fixture(scope="session")
def ctx40():
    return EvalContext(40)


@pytest.fixture(scope="session")
def ctx30():
    return EvalContext(30)
