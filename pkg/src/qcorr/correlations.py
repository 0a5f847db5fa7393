"""Correlation matrix, correlation ranks and the quantumness witness.

The correlation matrix R collects the Pauli expansion coefficients of a
two-qubit state in the block layout

    R = [[1,   y^T],
         [x,   T  ]]

(rows indexed by the A-side operator, columns by the B-side operator, the
overall 1/4 Bloch prefactor dropped). Its rank L_R counts how many product
operators a linear combination needs to represent the state; the rank L_T
of the 3x3 block T governs remote-state-preparation fidelity.

A rank L_R above 2 certifies correlations that no local processing of a
classical two-qubit state can produce. L_R <= 2 is compatible with both a
classical origin and locally created discord, so the witness stays silent
there.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ParamOutOfRange
from .linalg import real_svd, singular_values
from .states import PAULIS, BlochForm, DensityMatrix, bloch_decompose

RANK_REL_TOL = 1e-7

# orthonormal single-qubit operator basis under <A, B> = Tr[A^dag B]
_ORTHO_PAULIS = np.stack(PAULIS) / np.sqrt(2)


@dataclass(frozen=True)
class CorrelationMatrix:
    r: np.ndarray
    singular_values: np.ndarray


@dataclass(frozen=True)
class OperatorSchmidtTerm:
    weight: float
    op_a: np.ndarray
    op_b: np.ndarray


class Quantumness(Enum):
    CLASSICAL = "classical"
    LOCALLY_CREATABLE_DISCORD = "locally_creatable_discord"
    GENUINELY_QUANTUM = "genuinely_quantum"


@dataclass(frozen=True)
class QuantumnessVerdict:
    kind: Quantumness
    l_r: int
    discord_value: float
    l_t: int | None = None


def correlation_matrix(b: BlochForm) -> CorrelationMatrix:
    """Assemble R from a Bloch form, together with its singular values."""
    r = np.empty((4, 4))
    r[0, 0] = 1.0
    r[0, 1:] = b.y
    r[1:, 0] = b.x
    r[1:, 1:] = b.t
    return CorrelationMatrix(r=r, singular_values=singular_values(r))


def numerical_rank(m: np.ndarray, rel_tol: float = RANK_REL_TOL) -> int:
    """Number of singular values above rel_tol * largest; 0 for a zero matrix."""
    if not 0.0 < rel_tol < 1.0:
        raise ParamOutOfRange(f"rel_tol must be in (0, 1), got {rel_tol!r}")
    s = singular_values(m)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int((s > rel_tol * s[0]).sum())


def correlation_rank(rho: DensityMatrix, rel_tol: float = RANK_REL_TOL) -> int:
    """L_R, the rank of the correlation matrix. Always in 1..4."""
    return numerical_rank(correlation_matrix(bloch_decompose(rho)).r, rel_tol)


def tensor_rank(rho: DensityMatrix, rel_tol: float = RANK_REL_TOL) -> int:
    """L_T, the rank of the 3x3 correlation tensor. In 0..3."""
    return numerical_rank(bloch_decompose(rho).t, rel_tol)


def operator_schmidt(
    rho: DensityMatrix, rel_tol: float = RANK_REL_TOL
) -> list[OperatorSchmidtTerm]:
    """Decompose rho = sum_n c_n S_n (x) F_n with orthonormal S_n, F_n.

    The factors satisfy Tr[S_n S_m] = delta_nm (likewise F), the weights are
    positive and descending, and exactly L_R terms are returned. With this
    normalization the weights are the singular values of R/2.
    """
    r = correlation_matrix(bloch_decompose(rho)).r
    s, u, v = real_svd(r / 2.0)
    keep = numerical_rank(r, rel_tol)
    terms = []
    for k in range(keep):
        op_a = np.einsum("n,nij->ij", u[:, k], _ORTHO_PAULIS)
        op_b = np.einsum("n,nij->ij", v[:, k], _ORTHO_PAULIS)
        terms.append(OperatorSchmidtTerm(weight=float(s[k]), op_a=op_a, op_b=op_b))
    return terms


def classify(
    l_r: int, discord_value: float, tol: float, l_t: int | None = None
) -> QuantumnessVerdict:
    """Three-way verdict from the rank witness and a discord value.

    Discord at or below ``tol`` means classical. A correlation rank above 2
    (the qubit dimension) witnesses correlations that cannot have been
    created locally from a classical state. Discordant states with
    L_R <= 2 may or may not have a classical origin; the witness is
    inconclusive for them, so they are reported as locally creatable.
    """
    if not 1 <= l_r <= 4:
        raise ParamOutOfRange(f"l_r must be in 1..4, got {l_r}")
    if discord_value < -tol:
        raise ParamOutOfRange(f"discord_value {discord_value!r} below -tol")
    if discord_value <= tol:
        kind = Quantumness.CLASSICAL
    elif l_r > 2:
        kind = Quantumness.GENUINELY_QUANTUM
    else:
        kind = Quantumness.LOCALLY_CREATABLE_DISCORD
    return QuantumnessVerdict(kind=kind, l_r=l_r, discord_value=discord_value, l_t=l_t)
