import pytest

from nucleus_entanglement.constants import default_params
from nucleus_entanglement.corrections import build_correction_table


@pytest.fixture(scope="session")
def params():
    return default_params()


@pytest.fixture(scope="session")
def table_6x10(params):
    return build_correction_table(range(1, 7), range(1, 11), params)


@pytest.fixture(scope="session")
def table_10x10(params):
    return build_correction_table(range(1, 11), range(1, 11), params)
