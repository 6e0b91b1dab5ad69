import pytest

from paswipt.config import default_config


@pytest.fixture(scope="session")
def lm_config():
    """Baseline setup with the linear harvester, 0.3 W transmit power."""
    return default_config(0.3)


@pytest.fixture(scope="session")
def nlm_config():
    """Baseline setup with the logistic harvester, 0.3 W transmit power."""
    return default_config(0.3, model="nlm")
