import pytest

from coincalc import default_table_text, load_default_tables


@pytest.fixture(scope="session")
def tables():
    return load_default_tables()


@pytest.fixture(scope="session")
def table_text():
    return default_table_text()
