import pytest

from sp8local import checks


@pytest.fixture(scope="session")
def ctx():
    """One shared check context so L, P and the reports are built once."""
    return checks.Context(seed=0)


@pytest.fixture(scope="session")
def l_result(ctx):
    return ctx.l_result
