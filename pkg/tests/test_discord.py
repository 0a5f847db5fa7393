import numpy as np
import pytest
from numpy.testing import assert_allclose

from qcorr import (
    NumericsError,
    OptimizerBudgetExceeded,
    OptimizerSettings,
    ParamOutOfRange,
    classical_correlations,
    conditional_state,
    discord,
    discord_oracle,
    geometric_discord,
    mutual_information,
    named_state,
    partial_trace,
    random_density,
    von_neumann_entropy,
)


def test_mutual_information_values(
    classical_mixture, bell_state, discordant_state, nonorthogonal_mixture
):
    assert mutual_information(classical_mixture) == pytest.approx(1.0, abs=1e-10)
    assert mutual_information(bell_state) == pytest.approx(2.0, abs=1e-10)
    assert mutual_information(discordant_state) == pytest.approx(0.1507583199, abs=1e-9)
    assert mutual_information(nonorthogonal_mixture) == pytest.approx(0.3904739489, abs=1e-9)


def test_discord_of_discordant_state(discordant_state):
    res = discord(discordant_state)
    assert res.side == "B"
    assert res.discord == pytest.approx(0.0262, abs=3e-4)
    assert res.classical_correlations == pytest.approx(0.1245, abs=3e-4)
    # exact bookkeeping between the three quantities
    assert res.mutual_information - res.classical_correlations == pytest.approx(
        res.discord, abs=1e-12
    )
    assert np.linalg.norm(res.direction) == pytest.approx(1.0, abs=1e-12)


def test_discord_side_asymmetry(discordant_state):
    d_a = discord(discordant_state, "A").discord
    d_b = discord(discordant_state, "B").discord
    assert d_a == pytest.approx(0.02436, abs=2e-4)
    assert d_b == pytest.approx(0.02622, abs=2e-4)
    assert d_a != pytest.approx(d_b, abs=1e-4)


def test_discord_of_classical_mixture(classical_mixture):
    for side in ("A", "B"):
        assert discord(classical_mixture, side).discord == pytest.approx(0.0, abs=1e-10)


def test_discord_of_bell(bell_state):
    res = discord(bell_state)
    assert res.discord == pytest.approx(1.0, abs=1e-9)
    assert res.classical_correlations == pytest.approx(1.0, abs=1e-9)


def test_discord_of_nonorthogonal_mixture(nonorthogonal_mixture):
    for side in ("A", "B"):  # symmetric state: both sides agree
        assert discord(nonorthogonal_mixture, side).discord == pytest.approx(
            0.1442, abs=3e-4
        )


def test_optimizer_never_beaten_by_dense_grid(discordant_state, nonorthogonal_mixture):
    # a larger J from the optimizer means a smaller discord
    for rho in (discordant_state, nonorthogonal_mixture):
        assert discord(rho).discord <= discord_oracle(rho) + 1e-9
    for seed in (3, 17, 91):
        rho = random_density(seed)
        assert discord(rho).discord <= discord_oracle(rho) + 1e-9


def test_oracle_close_to_optimizer(discordant_state):
    assert abs(discord(discordant_state).discord - discord_oracle(discordant_state)) <= 2e-3


def test_oracle_validates_grid(discordant_state):
    with pytest.raises(ParamOutOfRange):
        discord_oracle(discordant_state, fine_grid=(90, 180))


def test_pure_state_discord_equals_marginal_entropy():
    rng = np.random.default_rng(77)
    for _ in range(5):
        g = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        g /= np.linalg.norm(g)
        from qcorr import validate_density

        rho = validate_density(np.outer(g, g.conj()))
        marginal = von_neumann_entropy(partial_trace(rho, "A"))
        for side in ("A", "B"):
            assert discord(rho, side).discord == pytest.approx(marginal, abs=1e-6)


def test_classical_correlations_bounds(discordant_state):
    j, direction = classical_correlations(discordant_state)
    assert 0.0 <= j <= 1.0
    assert direction.shape == (3,)


def test_conditional_state_probabilities(discordant_state):
    outcomes = conditional_state(discordant_state, [0.0, 0.0, 1.0], "B")
    assert len(outcomes) == 2
    probs = [o.prob for o in outcomes]
    assert sum(probs) == pytest.approx(1.0, abs=1e-12)
    # p(+z on B) = (1 + y_3)/2 = 1/2 for this state
    assert probs[0] == pytest.approx(0.5, abs=1e-12)
    for o in outcomes:
        assert not o.degenerate
        assert np.trace(o.state).real == pytest.approx(1.0, abs=1e-10)
        assert np.linalg.eigvalsh(o.state)[0] >= -1e-12


def test_conditional_state_degenerate_branch():
    from qcorr import validate_density

    rho = validate_density(np.diag([1.0, 0.0, 0.0, 0.0]))  # |00>
    outcomes = conditional_state(rho, [0.0, 0.0, 1.0], "B")
    assert outcomes[0].prob == pytest.approx(1.0)
    assert outcomes[1].degenerate
    assert_allclose(outcomes[1].state, np.eye(2) / 2)


def test_conditional_state_validates_direction(discordant_state):
    with pytest.raises(ParamOutOfRange):
        conditional_state(discordant_state, [1.0, 1.0, 0.0], "B")
    with pytest.raises(ParamOutOfRange):
        conditional_state(discordant_state, [0.0, 0.0, 1.0], "C")


def test_geometric_discord_closed_form_values(
    classical_mixture, nonorthogonal_mixture, discordant_state, bell_state
):
    assert geometric_discord(classical_mixture) == pytest.approx(0.0, abs=1e-12)
    assert geometric_discord(discordant_state) == pytest.approx(0.01, abs=1e-12)
    assert geometric_discord(discordant_state, "A") == pytest.approx(0.0046887113, abs=1e-9)
    assert geometric_discord(nonorthogonal_mixture) == pytest.approx(0.0625, abs=1e-12)
    assert geometric_discord(bell_state) == pytest.approx(0.5, abs=1e-12)


def test_geometric_and_entropic_vanish_together(classical_mixture):
    # zero on the classical state, strictly positive on a discordant one
    assert geometric_discord(classical_mixture) == 0.0
    assert discord(classical_mixture).discord == pytest.approx(0.0, abs=1e-10)
    rho = named_state("discordant_zero_fidelity")
    assert geometric_discord(rho) > 1e-3
    assert discord(rho).discord > 1e-3


def test_settings_validation():
    with pytest.raises(ParamOutOfRange):
        OptimizerSettings(coarse_grid=(4, 64))
    with pytest.raises(ParamOutOfRange):
        OptimizerSettings(refine_iters=-1)
    with pytest.raises(ParamOutOfRange):
        OptimizerSettings(refine_shrink=1.0)


def test_no_refinement_fails_convergence_check(discordant_state):
    with pytest.raises(OptimizerBudgetExceeded):
        discord(discordant_state, settings=OptimizerSettings(refine_iters=0))


def test_discord_never_negative():
    for seed in range(10):
        rho = random_density(seed)
        res = discord(rho)
        assert res.discord >= 0.0
        assert res.classical_correlations >= 0.0


def test_coarser_grid_still_close(discordant_state):
    small = discord(discordant_state, settings=OptimizerSettings(coarse_grid=(8, 8))).discord
    assert small == pytest.approx(discord(discordant_state).discord, abs=1e-4)


def test_numerics_error_importable():
    assert issubclass(NumericsError, Exception)
