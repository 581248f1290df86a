import pytest

from hyperwitt.quadratic.builders import corpus


@pytest.fixture(scope="session")
def built_corpus():
    return corpus()
