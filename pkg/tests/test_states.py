import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from qcorr import (
    NotHermitian,
    NotPositive,
    NotUnitTrace,
    ParamOutOfRange,
    UnknownName,
    bloch_decompose,
    bloch_reconstruct,
    named_state,
    partial_trace,
    random_density,
    random_unitary,
    validate_density,
    von_neumann_entropy,
)
from qcorr.states import STATE_NAMES, ginibre_state


def test_validate_accepts_maximally_mixed():
    rho = validate_density(np.eye(4) / 4)
    assert_allclose(rho.mat, np.eye(4) / 4)


def test_validate_symmetrizes_tiny_asymmetry():
    m = np.eye(4, dtype=complex) / 4
    m[0, 1] = 1e-12
    rho = validate_density(m)
    assert_allclose(rho.mat, rho.mat.conj().T)


def test_validate_rejects_non_hermitian():
    m = np.eye(4, dtype=complex) / 4
    m[0, 1] = 0.2
    with pytest.raises(NotHermitian):
        validate_density(m)


def test_validate_rejects_bad_trace():
    with pytest.raises(NotUnitTrace):
        validate_density(np.eye(4) / 2)


def test_validate_rejects_negative_eigenvalue():
    with pytest.raises(NotPositive) as err:
        validate_density(np.diag([0.9, 0.3, -0.1, -0.1]))
    assert "-1" in str(err.value)  # reports the most negative eigenvalue


def test_validate_rejects_wrong_shape():
    with pytest.raises(ValueError):
        validate_density(np.eye(3) / 3)


def test_partial_traces_of_bell(bell_state):
    assert_allclose(partial_trace(bell_state, "A"), np.eye(2) / 2, atol=1e-12)
    assert_allclose(partial_trace(bell_state, "B"), np.eye(2) / 2, atol=1e-12)


def test_partial_trace_of_product():
    a = np.array([[0.7, 0.1], [0.1, 0.3]], dtype=complex)
    b = np.array([[0.2, 0.0], [0.0, 0.8]], dtype=complex)
    rho = validate_density(np.kron(a, b))
    assert_allclose(partial_trace(rho, "A"), a, atol=1e-12)
    assert_allclose(partial_trace(rho, "B"), b, atol=1e-12)


def test_entropy_in_bits():
    assert von_neumann_entropy(np.eye(2) / 2) == pytest.approx(1.0, abs=1e-12)
    assert von_neumann_entropy(np.eye(4) / 4) == pytest.approx(2.0, abs=1e-12)
    assert von_neumann_entropy(np.diag([1.0, 0.0])) == pytest.approx(0.0, abs=1e-12)


def test_entropy_rejects_negative_matrix():
    with pytest.raises(NotPositive):
        von_neumann_entropy(np.diag([1.1, -0.1]))


def test_bloch_of_discordant_state(discordant_state):
    b = bloch_decompose(discordant_state)
    assert_allclose(b.x, [0.4, 0.0, -0.4], atol=1e-12)
    assert_allclose(b.y, [0.4, 0.0, 0.0], atol=1e-12)
    assert_allclose(b.t, np.diag([0.0, 0.0, 0.2]), atol=1e-12)


def test_bloch_of_bell(bell_state):
    b = bloch_decompose(bell_state)
    assert_allclose(b.x, np.zeros(3), atol=1e-12)
    assert_allclose(b.y, np.zeros(3), atol=1e-12)
    assert_allclose(b.t, np.diag([1.0, -1.0, 1.0]), atol=1e-12)


def test_bloch_round_trip_on_named_states():
    for name in STATE_NAMES:
        rho = named_state(name)
        rebuilt = bloch_reconstruct(bloch_decompose(rho))
        assert_allclose(rebuilt, rho.mat, atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_bloch_round_trip_random(seed):
    rho = random_density(seed)
    rebuilt = bloch_reconstruct(bloch_decompose(rho))
    assert np.abs(rebuilt - rho.mat).max() < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=1, max_value=4))
def test_random_density_valid_and_entropy_bounded(seed, rank):
    rho = random_density(seed, rank)
    s = von_neumann_entropy(rho.mat)
    assert 0.0 <= s <= 2.0 + 1e-12
    marginal = von_neumann_entropy(partial_trace(rho, "A"))
    assert 0.0 <= marginal <= 1.0 + 1e-12


def test_random_density_deterministic():
    assert_allclose(random_density(42).mat, random_density(42).mat)


def test_random_density_rank_param():
    rho = random_density(7, rank=1)
    eigs = np.linalg.eigvalsh(rho.mat)
    assert eigs[-1] == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(ParamOutOfRange):
        random_density(0, rank=5)


def test_named_state_unknown():
    with pytest.raises(UnknownName):
        named_state("no_such_state")


def test_random_unitary_is_unitary(rng):
    u = random_unitary(rng)
    assert_allclose(u @ u.conj().T, np.eye(2), atol=1e-12)


def test_ginibre_state_stream_advances(rng):
    a = ginibre_state(rng)
    b = ginibre_state(rng)
    assert np.abs(a.mat - b.mat).max() > 1e-3
