import numpy as np
import pytest
from numpy.testing import assert_allclose

from qcorr import (
    Annihilated,
    EmptyChannel,
    KrausChannel,
    LocalProductMap,
    ParamOutOfRange,
    UnknownName,
    apply_local,
    builtin_channel,
    kraus,
    named_state,
    random_channel,
    random_density,
    validate_cptp,
    validate_density,
)
from qcorr.channels import BUILTIN_CHANNELS, PARAMETRIC_CHANNELS


def test_all_builtin_channels_are_cptp():
    for name in BUILTIN_CHANNELS:
        chan = (
            builtin_channel(name, 0.3) if name in PARAMETRIC_CHANNELS else builtin_channel(name)
        )
        ok, defect = validate_cptp(chan)
        assert ok, f"{name} defect {defect}"
        assert defect < 1e-9


def test_parametric_channels_cptp_across_range():
    for name in PARAMETRIC_CHANNELS:
        for p in (0.0, 0.25, 0.5, 0.75, 1.0):
            ok, _ = validate_cptp(builtin_channel(name, p))
            assert ok, (name, p)


def test_builtin_rejects_bad_names_and_params():
    with pytest.raises(UnknownName):
        builtin_channel("not_a_channel")
    with pytest.raises(ParamOutOfRange):
        builtin_channel("dephasing", 1.5)
    with pytest.raises(ParamOutOfRange):
        builtin_channel("depolarizing", None)


def test_empty_channel_rejected():
    with pytest.raises(EmptyChannel):
        KrausChannel(())


def test_kraus_shape_checked():
    with pytest.raises(ValueError):
        kraus(np.eye(3))


def test_measure_and_prepare_chain(classical_mixture, nonorthogonal_mixture):
    chan = builtin_channel("zero_plus")
    out = apply_local(classical_mixture, LocalProductMap(a=chan, b=chan))
    assert np.abs(out.mat - nonorthogonal_mixture.mat).max() < 1e-12


def test_identity_channel_is_noop(discordant_state):
    ident = builtin_channel("identity")
    out = apply_local(discordant_state, LocalProductMap(a=ident, b=ident))
    assert_allclose(out.mat, discordant_state.mat, atol=1e-14)


def test_full_depolarizing_gives_maximally_mixed(bell_state):
    chan = builtin_channel("depolarizing", 1.0)
    out = apply_local(bell_state, LocalProductMap(a=chan, b=chan))
    assert_allclose(out.mat, np.eye(4) / 4, atol=1e-12)


def test_full_amplitude_damping_resets_to_ground(bell_state):
    chan = builtin_channel("amplitude_damping", 1.0)
    ident = builtin_channel("identity")
    out = apply_local(bell_state, LocalProductMap(a=chan, b=ident))
    reduced_a = out.mat.reshape(2, 2, 2, 2).trace(axis1=1, axis2=3)
    assert_allclose(reduced_a, np.diag([1.0, 0.0]), atol=1e-12)


def test_dephasing_kills_coherences():
    plus = named_state("product_plus")
    chan = builtin_channel("dephasing", 1.0)
    # p = 1 applies Z with certainty: |+><+| -> |->|<-|, coherences flip sign
    out = apply_local(plus, LocalProductMap(a=chan, b=builtin_channel("identity")))
    b = out.mat.reshape(2, 2, 2, 2).trace(axis1=0, axis2=2)
    assert_allclose(b, np.array([[0.5, 0.5], [0.5, 0.5]]), atol=1e-12)
    a = out.mat.reshape(2, 2, 2, 2).trace(axis1=1, axis2=3)
    assert_allclose(a, np.array([[0.5, -0.5], [-0.5, 0.5]]), atol=1e-12)


def test_apply_local_preserves_validity_over_random_pairs(rng):
    for _ in range(25):
        rho = random_density(int(rng.integers(0, 10_000)))
        pair = LocalProductMap(a=random_channel(rng), b=random_channel(rng))
        out = apply_local(rho, pair)
        assert np.trace(out.mat).real == pytest.approx(1.0, abs=1e-10)
        assert np.linalg.eigvalsh(out.mat)[0] >= -1e-10


def test_random_channels_are_cptp(rng):
    for _ in range(50):
        ok, defect = validate_cptp(random_channel(rng))
        assert ok, defect


def test_random_channel_op_count(rng):
    assert len(random_channel(rng, n_ops=3).ops) == 3
    with pytest.raises(ParamOutOfRange):
        random_channel(rng, n_ops=0)


def test_annihilating_filter_raises():
    rho = validate_density(np.diag([0.0, 0.0, 0.0, 1.0]))
    filt = kraus(np.array([[1.0, 0.0], [0.0, 0.0]]))  # keeps only |0>
    with pytest.raises(Annihilated):
        apply_local(rho, LocalProductMap(a=filt, b=filt))


def test_filtering_channel_renormalizes():
    rho = validate_density(np.eye(4) / 4)
    filt = kraus(np.array([[1.0, 0.0], [0.0, 0.0]]))
    ident = builtin_channel("identity")
    out = apply_local(rho, LocalProductMap(a=filt, b=ident))
    assert np.trace(out.mat).real == pytest.approx(1.0, abs=1e-12)
    assert_allclose(out.mat, np.kron(np.diag([1.0, 0.0]), np.eye(2) / 2), atol=1e-12)


def test_validate_cptp_reports_defect():
    lossy = kraus(np.array([[0.5, 0.0], [0.0, 0.5]]))
    ok, defect = validate_cptp(lossy)
    assert not ok
    assert defect == pytest.approx(0.75, abs=1e-12)
