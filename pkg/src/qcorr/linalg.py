"""Small dense linear algebra with deterministic conventions.

Everything here operates on matrices of size 4x4 or smaller. LAPACK (via
numpy) does the factorizations; this module pins down ordering and phase
conventions so results are reproducible bit-for-bit across runs.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, NotHermitian

EIG_TOL = 1e-10
HERM_TOL = 1e-9


@dataclass(frozen=True)
class Spectrum:
    """Full eigensystem of a Hermitian matrix.

    ``eigenvalues`` are sorted descending; ``eigenvectors[:, k]`` is the
    eigenvector of ``eigenvalues[k]``, phase-fixed so that its first
    component of nonnegligible magnitude is real and positive.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    out = vectors.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        idx = np.flatnonzero(np.abs(col) > 1e-12)
        if idx.size:
            pivot = col[idx[0]]
            out[:, k] = col * (np.abs(pivot) / pivot)
    return out


def hermitian_eigensystem(m: np.ndarray) -> Spectrum:
    """Spectral decomposition of a Hermitian matrix (size <= 4).

    Raises NotHermitian if ``m`` is not Hermitian within 1e-9, and
    NoConvergence if the underlying solver gives up.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] > 4:
        raise ValueError(f"expected a square matrix of size <= 4, got shape {m.shape}")
    if np.abs(m - m.conj().T).max() > HERM_TOL:
        raise NotHermitian(
            f"matrix deviates from Hermitian by {np.abs(m - m.conj().T).max():.3e}"
        )
    try:
        vals, vecs = np.linalg.eigh((m + m.conj().T) / 2)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK rarely fails at 4x4
        raise NoConvergence(str(exc)) from exc
    order = np.argsort(vals)[::-1]
    return Spectrum(vals[order].copy(), _fix_phases(vecs[:, order]))


def real_svd(m: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """SVD of a real matrix (size <= 4): returns (singular_values, U, V).

    Singular values are nonnegative and descending; ``U @ diag(s) @ V.T``
    reconstructs the input.
    """
    m = np.asarray(m, dtype=float)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains non-finite entries")
    try:
        u, s, vt = np.linalg.svd(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise NoConvergence(str(exc)) from exc
    return s, u, vt.T


def singular_values(m: np.ndarray) -> np.ndarray:
    s, _, _ = real_svd(m)
    return s


def characteristic_eigenvalues(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix via Newton's identities + root finding.

    Deliberately avoids the eigh code path; used as an independent
    cross-check in tests. Returns roots sorted ascending.
    """
    m = np.asarray(m, dtype=complex)
    d = m.shape[0]
    power = m.copy()
    p = []
    for _ in range(d):
        p.append(np.trace(power).real)
        power = power @ m
    e = [1.0]
    for k in range(1, d + 1):
        acc = 0.0
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * p[i - 1]
        e.append(acc / k)
    coeffs = [(-1) ** k * e[k] for k in range(d + 1)]
    return np.sort(np.roots(coeffs).real)
