"""Local quantum maps in Kraus form.

A channel is a plain list of 2x2 Kraus operators. Trace preservation is
not required: filtering maps (a single non-unitary operator) are legal and
simply flagged as non-CPTP, since :func:`apply_local` renormalizes by the
output trace either way.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Annihilated, EmptyChannel, ParamOutOfRange, UnknownName
from .states import (
    PAULI_I,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    DensityMatrix,
    Tolerances,
    DEFAULT_TOL,
    validate_density,
)

CPTP_TOL = 1e-9
ANNIHILATION_TOL = 1e-12


@dataclass(frozen=True)
class KrausChannel:
    ops: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.ops) == 0:
            raise EmptyChannel("channel needs at least one Kraus operator")
        for op in self.ops:
            if op.shape != (2, 2):
                raise ValueError(f"Kraus operators must be 2x2, got {op.shape}")


@dataclass(frozen=True)
class LocalProductMap:
    a: KrausChannel
    b: KrausChannel


def kraus(*ops: np.ndarray) -> KrausChannel:
    return KrausChannel(tuple(np.asarray(op, dtype=complex) for op in ops))


def validate_cptp(c: KrausChannel) -> tuple[bool, float]:
    """Completeness check: (is_cptp, defect).

    The defect is the operator norm of sum(K^dag K) - I; the channel counts
    as CPTP when it is below 1e-9.
    """
    acc = sum(op.conj().T @ op for op in c.ops) - np.eye(2)
    defect = float(np.linalg.norm(acc, ord=2))
    return defect < CPTP_TOL, defect


def apply_local(
    rho: DensityMatrix, m: LocalProductMap, tol: Tolerances = DEFAULT_TOL
) -> DensityMatrix:
    """Apply K_i (x) K_j on both sides, sum, renormalize by the trace.

    Renormalization is a no-op for trace-preserving channels. Raises
    Annihilated when a filtering map leaves (numerically) zero trace.
    """
    out = np.zeros((4, 4), dtype=complex)
    for ka in m.a.ops:
        for kb in m.b.ops:
            op = np.kron(ka, kb)
            out += op @ rho.mat @ op.conj().T
    tr = out.trace().real
    if tr <= ANNIHILATION_TOL:
        raise Annihilated(f"output trace {tr:.3e} below {ANNIHILATION_TOL:.0e}")
    return validate_density(out / tr, tol)


_KET0 = np.array([1, 0], dtype=complex)
_KET1 = np.array([0, 1], dtype=complex)
_KET_PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)


def _check_param(name: str, p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise ParamOutOfRange(f"{name} parameter must be in [0, 1], got {p!r}")
    return float(p)


def builtin_channel(name: str, param: float | None = None) -> KrausChannel:
    """Stock channels by name.

    zero_plus           measure in the computational basis, re-prepare |0>
                        for outcome 0 and |+> for outcome 1 (parameter-free)
    dephasing(p)        phase flip, rho -> (1-p) rho + p Z rho Z
    depolarizing(p)     rho -> (1-p) rho + p I/2
    amplitude_damping(g) decay |1> -> |0> with probability g
    identity            the do-nothing channel
    """
    if name == "zero_plus":
        return kraus(np.outer(_KET0, _KET0), np.outer(_KET_PLUS, _KET1))
    if name == "identity":
        return kraus(PAULI_I)
    if name not in PARAMETRIC_CHANNELS:
        raise UnknownName(f"unknown channel {name!r}")
    if param is None:
        raise ParamOutOfRange(f"channel {name!r} requires a parameter")
    p = _check_param(name, param)
    if name == "dephasing":
        return kraus(np.sqrt(1 - p) * PAULI_I, np.sqrt(p) * PAULI_Z)
    if name == "depolarizing":
        return kraus(
            np.sqrt(1 - 3 * p / 4) * PAULI_I,
            np.sqrt(p / 4) * PAULI_X,
            np.sqrt(p / 4) * PAULI_Y,
            np.sqrt(p / 4) * PAULI_Z,
        )
    if name == "amplitude_damping":
        k0 = np.array([[1, 0], [0, np.sqrt(1 - p)]], dtype=complex)
        k1 = np.array([[0, np.sqrt(p)], [0, 0]], dtype=complex)
        return kraus(k0, k1)
    raise UnknownName(f"unknown channel {name!r}")  # pragma: no cover - names vetted above


BUILTIN_CHANNELS = ("zero_plus", "identity", "dephasing", "depolarizing", "amplitude_damping")
PARAMETRIC_CHANNELS = ("dephasing", "depolarizing", "amplitude_damping")


def random_channel(rng: np.random.Generator, n_ops: int | None = None) -> KrausChannel:
    """Random CPTP qubit channel from a Haar-ish Stinespring isometry.

    ``n_ops`` picks the number of Kraus operators (1 gives a unitary);
    drawn uniformly from 1..4 when omitted.
    """
    if n_ops is None:
        n_ops = int(rng.integers(1, 5))
    if not 1 <= n_ops <= 4:
        raise ParamOutOfRange(f"n_ops must be in 1..4, got {n_ops}")
    g = rng.standard_normal((2 * n_ops, 2)) + 1j * rng.standard_normal((2 * n_ops, 2))
    q, _ = np.linalg.qr(g)
    return kraus(*(q[2 * i : 2 * i + 2, :] for i in range(n_ops)))
