"""Validated two-qubit density matrices and their Bloch representation.

Conventions fixed here and relied on everywhere else:

* basis ordering |00>, |01>, |10>, |11>, left tensor factor = subsystem A;
* entropies in bits (log base 2);
* Bloch form rho = (1/4)[I(x)I + sum_i x_i s_i(x)I + sum_i y_i I(x)s_i
  + sum_ij T_ij s_i(x)s_j] with s_i the Pauli matrices.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotHermitian, NotPositive, NotUnitTrace, ParamOutOfRange, UnknownName
from .linalg import Spectrum, hermitian_eigensystem

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (PAULI_I, PAULI_X, PAULI_Y, PAULI_Z)

# PAULI_PRODUCTS[4*n + m] = sigma_n (x) sigma_m, n indexing subsystem A
PAULI_PRODUCTS = np.stack(
    [np.kron(PAULIS[n], PAULIS[m]) for n in range(4) for m in range(4)]
)


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances shared by the validation and rank machinery."""

    herm: float = 1e-9
    trace: float = 1e-9
    psd: float = 1e-10
    eig: float = 1e-10
    rank_rel: float = 1e-7
    discord: float = 1e-8


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class DensityMatrix:
    """A validated 4x4 two-qubit state. Construct via :func:`validate_density`."""

    mat: np.ndarray
    dims: tuple[int, int] = (2, 2)


@dataclass(frozen=True)
class BlochForm:
    """Local Bloch vectors and correlation tensor of a two-qubit state."""

    x: np.ndarray
    y: np.ndarray
    t: np.ndarray


def validate_density(m: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> DensityMatrix:
    """Check Hermiticity, unit trace and positivity; return the validated state.

    Hermiticity is enforced by symmetrization (m + m^dag)/2 once the
    deviation is below ``tol.herm``; larger deviations raise NotHermitian.
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains non-finite entries")
    dev = np.abs(m - m.conj().T).max()
    if dev > tol.herm:
        raise NotHermitian(f"deviation from Hermitian is {dev:.3e} (tol {tol.herm:.1e})")
    m = (m + m.conj().T) / 2
    tr = m.trace().real
    if abs(tr - 1.0) > tol.trace:
        raise NotUnitTrace(f"trace is {tr!r} (tol {tol.trace:.1e})")
    lam = np.linalg.eigvalsh(m)
    if lam[0] < -tol.psd:
        raise NotPositive(
            f"most negative eigenvalue is {lam[0]:.3e} (tol {tol.psd:.1e})",
            min_eigenvalue=float(lam[0]),
        )
    return DensityMatrix(m)


def partial_trace(rho: DensityMatrix, keep: str) -> np.ndarray:
    """Reduced 2x2 state of subsystem ``keep`` ("A" or "B")."""
    r4 = rho.mat.reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("abcb->ac", r4)
    if keep == "B":
        return np.einsum("abad->bd", r4)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def von_neumann_entropy(m: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> float:
    """Entropy -sum(lam * log2 lam) in bits, with 0 log 0 = 0.

    Expects a Hermitian PSD matrix; eigenvalues below ``-tol.psd`` raise
    NotPositive, tiny negatives are clipped to zero.
    """
    m = np.asarray(m, dtype=complex)
    lam = np.linalg.eigvalsh((m + m.conj().T) / 2)
    if lam[0] < -tol.psd:
        raise NotPositive(
            f"entropy of a non-PSD matrix (min eigenvalue {lam[0]:.3e})",
            min_eigenvalue=float(lam[0]),
        )
    lam = lam[lam > 0.0]
    if lam.size == 0:
        return 0.0
    return float(-(lam * np.log2(lam)).sum())


def state_eigensystem(rho: DensityMatrix) -> Spectrum:
    return hermitian_eigensystem(rho.mat)


def pauli_coefficients(rho: DensityMatrix) -> np.ndarray:
    """4x4 real array c[n, m] = Tr[rho (sigma_n x sigma_m)], n indexing A."""
    return np.einsum("ab,nba->n", rho.mat, PAULI_PRODUCTS).real.reshape(4, 4)


def bloch_decompose(rho: DensityMatrix) -> BlochForm:
    """Local Bloch vectors x, y and correlation tensor T of a valid state."""
    c = pauli_coefficients(rho)
    return BlochForm(x=c[1:, 0].copy(), y=c[0, 1:].copy(), t=c[1:, 1:].copy())


def bloch_reconstruct(b: BlochForm) -> np.ndarray:
    """Rebuild the 4x4 matrix from a Bloch form.

    Always Hermitian with unit trace; positivity is NOT enforced here, the
    caller validates if a physical state is required.
    """
    coeff = np.ones((4, 4))
    coeff[1:, 0] = b.x
    coeff[0, 1:] = b.y
    coeff[1:, 1:] = b.t
    return np.einsum("n,nab->ab", coeff.reshape(16) / 4.0, PAULI_PRODUCTS)


_KET_PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)


def _projector(ket: np.ndarray) -> np.ndarray:
    return np.outer(ket, ket.conj())


def _named_matrices() -> dict[str, np.ndarray]:
    classical = np.diag([0.5, 0.0, 0.0, 0.5]).astype(complex)
    plus_plus = np.kron(_KET_PLUS, _KET_PLUS)
    nonorthogonal = 0.5 * np.diag([1.0, 0, 0, 0]).astype(complex) + 0.5 * _projector(plus_plus)
    discordant = np.array(
        [
            [0.2, 0.1, 0.1, 0.0],
            [0.1, 0.1, 0.0, 0.1],
            [0.1, 0.0, 0.3, 0.1],
            [0.0, 0.1, 0.1, 0.4],
        ],
        dtype=complex,
    )
    bell = _projector(np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2))
    return {
        "classical_mixture": classical,
        "nonorthogonal_mixture": nonorthogonal,
        "discordant_zero_fidelity": discordant,
        "bell_phi_plus": bell,
        "product_plus": _projector(plus_plus),
    }


STATE_NAMES = tuple(_named_matrices())


def named_state(name: str) -> DensityMatrix:
    """Bundled example states used throughout the test and reference suite.

    classical_mixture         equal mixture of |00> and |11>
    nonorthogonal_mixture     equal mixture of |00> and |++>
    discordant_zero_fidelity  rank-3 correlations, positive discord, zero
                              remote-preparation fidelity
    bell_phi_plus             maximally entangled (|00>+|11>)/sqrt(2)
    product_plus              |+>|+> product state
    """
    mats = _named_matrices()
    if name not in mats:
        raise UnknownName(f"unknown state {name!r}; choose from {sorted(mats)}")
    return validate_density(mats[name])


def random_density(seed: int, rank: int = 4) -> DensityMatrix:
    """Seeded random state via the Ginibre construction G G^dag / Tr(G G^dag)."""
    if not 1 <= rank <= 4:
        raise ParamOutOfRange(f"rank must be in 1..4, got {rank}")
    rng = np.random.default_rng(seed)
    return ginibre_state(rng, rank)


def ginibre_state(rng: np.random.Generator, rank: int = 4) -> DensityMatrix:
    """Random state drawn with an externally managed generator."""
    g = rng.standard_normal((4, rank)) + 1j * rng.standard_normal((4, rank))
    m = g @ g.conj().T
    return validate_density(m / m.trace().real)


def random_unitary(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    """Haar-ish random unitary from the QR decomposition of a Ginibre matrix."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))
