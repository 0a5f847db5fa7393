"""Entropic and geometric discord for two-qubit states.

Entropic discord is mutual information minus the classical correlations
J = max over projective measurements of S(reduced) - S(cond|measurement).
The maximization runs over the Bloch sphere of measurement directions
(rank-1 orthogonal projectors (I +- n.s)/2; general POVMs are out of
scope) with a deterministic coarse-grid-plus-local-refinement search.

Two independent evaluation routes exist on purpose. The optimizer scores
directions straight from the Bloch form; :func:`discord_oracle` brute
forces a dense grid through the density-matrix route (projector sandwich,
partial trace, 2x2 eigenvalues) and is used by the tests to bound the
optimizer's output.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericsError, OptimizerBudgetExceeded, ParamOutOfRange
from .states import (
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    BlochForm,
    DensityMatrix,
    bloch_decompose,
    partial_trace,
    von_neumann_entropy,
)

DEGENERATE_PROB = 1e-14
NEGATIVITY_GUARD = 1e-9

_PAULI_VEC = np.stack([PAULI_X, PAULI_Y, PAULI_Z])


@dataclass(frozen=True)
class OptimizerSettings:
    """Knobs of the deterministic measurement search."""

    coarse_grid: tuple[int, int] = (32, 64)
    refine_iters: int = 40
    refine_shrink: float = 0.5

    def __post_init__(self):
        if self.coarse_grid[0] < 8 or self.coarse_grid[1] < 8:
            raise ParamOutOfRange(f"coarse grid counts must be >= 8, got {self.coarse_grid}")
        if self.refine_iters < 0:
            raise ParamOutOfRange("refine_iters must be >= 0")
        if not 0.0 < self.refine_shrink < 1.0:
            raise ParamOutOfRange("refine_shrink must be in (0, 1)")


DEFAULT_SETTINGS = OptimizerSettings()


@dataclass(frozen=True)
class ConditionalOutcome:
    prob: float
    state: np.ndarray
    degenerate: bool = False


@dataclass(frozen=True)
class DiscordResult:
    discord: float
    classical_correlations: float
    mutual_information: float
    direction: np.ndarray
    side: str


def _unit_direction(n) -> np.ndarray:
    n = np.asarray(n, dtype=float).reshape(3)
    if abs(np.linalg.norm(n) - 1.0) > 1e-12:
        raise ParamOutOfRange(f"measurement direction must be a unit vector, |n|={np.linalg.norm(n)!r}")
    return n


def _check_side(side: str) -> str:
    if side not in ("A", "B"):
        raise ParamOutOfRange(f"side must be 'A' or 'B', got {side!r}")
    return side


def conditional_state(
    rho: DensityMatrix, direction, side: str = "B"
) -> list[ConditionalOutcome]:
    """Post-measurement ensemble on the unmeasured side.

    Projects ``side`` onto (I +- n.s)/2 and returns the two outcomes as
    (probability, 2x2 state). Outcomes with probability below 1e-14 carry
    a maximally mixed placeholder and degenerate=True.
    """
    n = _unit_direction(direction)
    _check_side(side)
    ns = np.einsum("i,iab->ab", n, _PAULI_VEC)
    outcomes = []
    for sign in (1.0, -1.0):
        proj = (np.eye(2) + sign * ns) / 2
        big = np.kron(np.eye(2), proj) if side == "B" else np.kron(proj, np.eye(2))
        sandwich = big @ rho.mat @ big.conj().T
        reduced = (
            sandwich.reshape(2, 2, 2, 2).trace(axis1=1, axis2=3)
            if side == "B"
            else sandwich.reshape(2, 2, 2, 2).trace(axis1=0, axis2=2)
        )
        p = float(reduced.trace().real)
        if p < DEGENERATE_PROB:
            outcomes.append(ConditionalOutcome(prob=max(p, 0.0), state=np.eye(2, dtype=complex) / 2, degenerate=True))
        else:
            outcomes.append(ConditionalOutcome(prob=p, state=reduced / p))
    return outcomes


def mutual_information(rho: DensityMatrix) -> float:
    """S(rho_A) + S(rho_B) - S(rho), in bits."""
    total = (
        von_neumann_entropy(partial_trace(rho, "A"))
        + von_neumann_entropy(partial_trace(rho, "B"))
        - von_neumann_entropy(rho.mat)
    )
    return float(min(max(total, 0.0), 2.0))


def _binary_entropy(q: np.ndarray) -> np.ndarray:
    q = np.clip(q, 0.0, 1.0)
    out = np.zeros_like(q)
    for p in (q, 1.0 - q):
        mask = p > 0.0
        out[mask] -= p[mask] * np.log2(p[mask])
    return out


def _objective_bloch(b: BlochForm, s_reduced: float, side: str, dirs: np.ndarray) -> np.ndarray:
    """J-objective at each direction (k,3), computed from the Bloch form."""
    if side == "B":
        marg, cond, tn = b.y, b.x, dirs @ b.t.T
    else:
        marg, cond, tn = b.x, b.y, dirs @ b.t
    p_plus = (1.0 + dirs @ marg) / 2.0
    p_minus = 1.0 - p_plus
    cond_ent = np.zeros(len(dirs))
    for p, sign in ((p_plus, 1.0), (p_minus, -1.0)):
        v = cond[None, :] + sign * tn
        mask = p > DEGENERATE_PROB
        r = np.zeros_like(p)
        r[mask] = np.linalg.norm(v[mask], axis=1) / (2.0 * p[mask])
        r = np.clip(r, 0.0, 1.0)
        cond_ent[mask] += p[mask] * _binary_entropy((1.0 + r[mask]) / 2.0)
    return s_reduced - cond_ent


def _sphere_grid(n_theta: int, n_phi: int) -> tuple[np.ndarray, np.ndarray]:
    theta = np.linspace(0.0, np.pi, n_theta)
    phi = np.linspace(0.0, 2 * np.pi, n_phi, endpoint=False)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    return tt.ravel(), pp.ravel()


def _angles_to_dirs(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)


def maximize_over_sphere(objective, settings: OptimizerSettings) -> tuple[float, np.ndarray]:
    """Coarse grid + shrinking local search for a smooth f: S^2 -> R.

    ``objective`` maps an array of unit vectors (k, 3) to values (k,).
    Deterministic: ties resolve to the lowest grid index, refinement
    shrinks by a fixed factor each iteration. Raises
    OptimizerBudgetExceeded when the final refinement step still moved the
    incumbent by 1e-10 or more.
    """
    n_theta, n_phi = settings.coarse_grid
    theta, phi = _sphere_grid(n_theta, n_phi)
    vals = objective(_angles_to_dirs(theta, phi))
    k = int(np.argmax(vals))
    best_val, best_theta, best_phi = float(vals[k]), float(theta[k]), float(phi[k])

    h_theta = np.pi / (n_theta - 1)
    h_phi = 2 * np.pi / n_phi
    last_step = np.inf if settings.refine_iters == 0 else 0.0
    offsets = np.linspace(-1.0, 1.0, 5)
    for _ in range(settings.refine_iters):
        th = np.clip(best_theta + offsets * h_theta, 0.0, np.pi)
        ph = best_phi + offsets * h_phi
        tt, pp = np.meshgrid(th, ph, indexing="ij")
        local = objective(_angles_to_dirs(tt.ravel(), pp.ravel()))
        j = int(np.argmax(local))
        if local[j] > best_val:
            last_step = float(local[j]) - best_val
            best_val = float(local[j])
            best_theta, best_phi = float(tt.ravel()[j]), float(pp.ravel()[j])
        else:
            last_step = 0.0
        h_theta *= settings.refine_shrink
        h_phi *= settings.refine_shrink
    if last_step >= 1e-10:
        raise OptimizerBudgetExceeded(
            f"final refinement step still changed the objective by {last_step:.2e}"
        )
    return best_val, _angles_to_dirs(np.array(best_theta), np.array(best_phi))


def classical_correlations(
    rho: DensityMatrix, side: str = "B", settings: OptimizerSettings = DEFAULT_SETTINGS
) -> tuple[float, np.ndarray]:
    """Maximal classical correlations J and the best measurement direction."""
    _check_side(side)
    b = bloch_decompose(rho)
    s_reduced = von_neumann_entropy(partial_trace(rho, "A" if side == "B" else "B"))
    best, direction = maximize_over_sphere(
        lambda dirs: _objective_bloch(b, s_reduced, side, dirs), settings
    )
    return float(min(max(best, 0.0), 1.0)), direction


def discord(
    rho: DensityMatrix, side: str = "B", settings: OptimizerSettings = DEFAULT_SETTINGS
) -> DiscordResult:
    """Entropic discord I - J with the measurement applied to ``side``."""
    info = mutual_information(rho)
    j, direction = classical_correlations(rho, side, settings)
    if info - j < -NEGATIVITY_GUARD:
        raise NumericsError(f"discord {info - j:.3e} below the -1e-9 guard")
    j = min(j, info)
    return DiscordResult(
        discord=info - j,
        classical_correlations=j,
        mutual_information=info,
        direction=direction,
        side=side,
    )


def geometric_discord(rho: DensityMatrix, side: str = "B") -> float:
    """Closed-form squared Hilbert-Schmidt distance to the zero-discord set.

    For measurements on B this is (|y|^2 + |T|_F^2 - lmax(y y^T + T^T T))/4,
    with x and T T^T taking over for side A.
    """
    _check_side(side)
    b = bloch_decompose(rho)
    if side == "B":
        v, k = b.y, b.t.T @ b.t
    else:
        v, k = b.x, b.t @ b.t.T
    lam_max = float(np.linalg.eigvalsh(np.outer(v, v) + k)[-1])
    val = 0.25 * (float(v @ v) + float((b.t * b.t).sum()) - lam_max)
    if val < -1e-12:
        raise NumericsError(f"geometric discord {val:.3e} below the -1e-12 guard")
    return max(val, 0.0)


def _qubit_ensemble_entropy(m_branch: np.ndarray, p: np.ndarray) -> np.ndarray:
    """sum_j p_j S(M_j / p_j) for a batch of unnormalized 2x2 Hermitian M."""
    tr = (m_branch[:, 0, 0] + m_branch[:, 1, 1]).real
    det = (m_branch[:, 0, 0] * m_branch[:, 1, 1] - m_branch[:, 0, 1] * m_branch[:, 1, 0]).real
    root = np.sqrt(np.clip(tr * tr - 4.0 * det, 0.0, None))
    out = np.zeros_like(p)
    mask = p > DEGENERATE_PROB
    for mu in ((tr + root) / 2.0, (tr - root) / 2.0):
        lam = np.clip(mu[mask] / p[mask], 0.0, 1.0)
        pos = lam > 0.0
        contrib = np.zeros_like(lam)
        contrib[pos] = -lam[pos] * np.log2(lam[pos])
        out[mask] += p[mask] * contrib
    return out


def discord_oracle(
    rho: DensityMatrix, side: str = "B", fine_grid: tuple[int, int] = (180, 360)
) -> float:
    """Brute-force discord over a dense direction grid, no refinement.

    Evaluates the measurement objective through the density-matrix route
    (projectors, partial traces, 2x2 spectra), deliberately sharing no code
    with the Bloch-form objective the optimizer uses. Grid must be at
    least 180 x 360; the result is accurate to the grid resolution only.
    """
    _check_side(side)
    if fine_grid[0] < 180 or fine_grid[1] < 360:
        raise ParamOutOfRange(f"fine grid must be at least (180, 360), got {fine_grid}")
    theta, phi = _sphere_grid(*fine_grid)
    dirs = _angles_to_dirs(theta, phi)
    projectors = 0.5 * (np.eye(2)[None, :, :] + np.einsum("ki,iab->kab", dirs, _PAULI_VEC))
    rho4 = rho.mat.reshape(2, 2, 2, 2)
    if side == "B":
        m_plus = np.einsum("abcd,kdb->kac", rho4, projectors)
        reduced = partial_trace(rho, "A")
        s_reduced = von_neumann_entropy(reduced)
    else:
        m_plus = np.einsum("kae,ebad->kbd", projectors, rho4)
        reduced = partial_trace(rho, "B")
        s_reduced = von_neumann_entropy(reduced)
    m_minus = reduced[None, :, :] - m_plus
    p_plus = (m_plus[:, 0, 0] + m_plus[:, 1, 1]).real
    p_minus = 1.0 - p_plus
    cond = _qubit_ensemble_entropy(m_plus, p_plus) + _qubit_ensemble_entropy(m_minus, p_minus)
    best_j = float((s_reduced - cond).max())
    return max(mutual_information(rho) - best_j, 0.0)
