import numpy as np
import pytest

from qcorr import named_state


@pytest.fixture
def classical_mixture():
    return named_state("classical_mixture")


@pytest.fixture
def nonorthogonal_mixture():
    return named_state("nonorthogonal_mixture")


@pytest.fixture
def discordant_state():
    return named_state("discordant_zero_fidelity")


@pytest.fixture
def bell_state():
    return named_state("bell_phi_plus")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
