import pytest

from toricfan import catalog


@pytest.fixture(scope="session")
def tower():
    """(P4, X, W, Y): the built-in chain of blow-ups of P^4."""
    return catalog.counterexample_tower()


@pytest.fixture(scope="session")
def catalog_fans():
    """All built-in fans keyed by catalog key."""
    return {e.key: e.fan for e in catalog.entries()}
