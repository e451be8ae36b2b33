import numpy as np
import pytest

from supfix.instances import unitary_group


@pytest.fixture(scope="session")
def named_groups():
    """The named unitary groups, closed once per session."""
    return {name: unitary_group(name) for name in ("q8", "s3", "c12")}


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
