import pytest

from minstab import page, ypq


@pytest.fixture(scope="session")
def page_mod():
    return page.page_model()


@pytest.fixture(scope="session")
def ypq21():
    return ypq.ypq_model(2, 1)
