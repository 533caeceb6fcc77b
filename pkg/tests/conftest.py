import pytest

from ramsey_deduce.engine import build


@pytest.fixture(scope="session")
def fixpoint():
    """Propagation result for the bundled seeds with every rule enabled."""
    return build()
