import pytest

from btunital import build_context, build_bt_unital


@pytest.fixture(scope="session")
def ctx():
    return build_context(1)


@pytest.fixture(scope="session")
def unital(ctx):
    return build_bt_unital(ctx)


@pytest.fixture(scope="session")
def ctx2():
    return build_context(2)


@pytest.fixture(scope="session")
def unital2(ctx2):
    return build_bt_unital(ctx2)
