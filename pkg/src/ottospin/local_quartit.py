"""Reduction of the coupled-quartit Gibbs state to one particle.

The reduced matrix is diagonal in the local S3 basis (the Hamiltonian
commutes with the total S3 and is permutation symmetric), so a local entropy
and internal energy are well defined, and two inverse local temperatures can
be compared: the thermodynamic derivative ds/du and the spectroscopic
level-ratio average.
"""

from dataclasses import dataclass

import numpy as np

from . import spectrum
from .gibbs_thermo import thermal_state

__all__ = [
    "LocalState",
    "reduce_closed_form",
    "partial_trace_oracle",
    "local_entropy",
    "local_internal_energy",
    "local_beta",
    "spectroscopic_beta",
]

# Local level pattern: eigenvalues of the one-particle Zeeman term are
# h/2 * (3, 1, -1, -3), aligned with pi_1..pi_4.
LOCAL_LEVEL_PATTERN = np.array([3.0, 1.0, -1.0, -3.0]) / 2.0

# Closed-form reduction weights: pi_k = (5 + REDUCTION_WEIGHTS[k] @ p) / 20
# for a branch-ordered population vector p.  Each row sums to zero, so the
# four pi always sum to 1.
REDUCTION_WEIGHTS = np.array(
    [
        [-5, 1, -5, -5, -5, 5, 5, 0, 4, 0, -4, 15, -5, -5, -1, 5],
        [1, 3, -5, 5, -5, -5, 5, 0, -4, 0, 4, -5, -5, -1, 7, 5],
        [3, 1, 5, -5, -5, 5, -5, 0, -4, 0, 4, -5, 5, 7, -1, -5],
        [1, -5, 5, 5, 15, -5, -5, 0, 4, 0, -4, -5, 5, -1, -5, -5],
    ],
    dtype=float,
)


@dataclass(frozen=True)
class LocalState:
    """Diagonal one-particle state: populations pi_k at levels h/2*(3,1,-1,-3)."""

    populations: np.ndarray
    local_energies: np.ndarray


def reduce_closed_form(p, h: float) -> LocalState:
    """Reduce a branch-ordered 16-population vector to one quartit.

    Evaluates the fixed linear combinations in ``REDUCTION_WEIGHTS``; tiny
    negative rounding residues (>= -1e-14) are clamped to zero and the result
    renormalized, so logarithms never see a negative population.
    """
    p = np.asarray(p, dtype=float)
    if p.shape != (16,):
        raise ValueError(f"expected 16 populations, got shape {p.shape}")
    pi = (5.0 + REDUCTION_WEIGHTS @ p) / 20.0
    pi = np.maximum(pi, 0.0)
    pi = pi / pi.sum()
    return LocalState(pi, LOCAL_LEVEL_PATTERN * h)


def partial_trace_oracle(rho: np.ndarray, keep: int = 0) -> np.ndarray:
    """Brute-force partial trace of a 16x16 pair state down to one 4x4 factor.

    ``keep=0`` keeps the left (slow-index) particle, ``keep=1`` the right.
    Ground truth for the closed-form reduction weights.
    """
    rho = np.asarray(rho)
    if rho.shape != (16, 16):
        raise ValueError(f"expected a 16x16 matrix, got shape {rho.shape}")
    four = rho.reshape(4, 4, 4, 4)
    if keep == 0:
        return np.einsum("ikjk->ij", four)
    if keep == 1:
        return np.einsum("kikj->ij", four)
    raise ValueError("keep must be 0 (left particle) or 1 (right)")


def local_entropy(ls: LocalState) -> float:
    """s = -sum_k pi_k ln pi_k with 0 ln 0 = 0; between 0 and ln 4."""
    pi = ls.populations[ls.populations > 0.0]
    return float(-(pi @ np.log(pi)))


def local_internal_energy(ls: LocalState) -> float:
    """u = sum_k eps_k pi_k over the local levels."""
    return float(ls.local_energies @ ls.populations)


def _local_su(h: float, J: float, beta: float):
    state = thermal_state(spectrum.biquartit_levels(h, J), beta)
    ls = reduce_closed_form(state.populations, h)
    return local_entropy(ls), local_internal_energy(ls)


def local_beta(h: float, J: float, beta: float, step: float | None = None) -> float:
    """Inverse local temperature ds/du = (ds/dbeta) / (du/dbeta).

    Central differences in beta with step 1e-5 * max(1, |beta|) unless
    overridden.  At J = 0 the reduced state is itself Gibbs, so this
    collapses to beta for either temperature sign.
    """
    if step is None:
        step = 1e-5 * max(1.0, abs(beta))
    s_hi, u_hi = _local_su(h, J, beta + step)
    s_lo, u_lo = _local_su(h, J, beta - step)
    du = (u_hi - u_lo) / (2.0 * step)
    if abs(du) < 1e-12:
        raise ValueError("local temperature singular: du/dbeta vanishes here")
    return (s_hi - s_lo) / (u_hi - u_lo)


def spectroscopic_beta(ls: LocalState) -> float:
    """Inverse spectroscopic temperature of a diagonal local state.

    Populations are re-indexed by ascending level energy (the lowest level is
    index 1); the result is the weighted average of the adjacent-level
    log-ratio slopes

        -(1 - (pi_1 + pi_M)/2)^(-1) * sum_{i>=2} (pi_i + pi_{i-1})/2
                                      * (ln pi_i - ln pi_{i-1}) / (eps_i - eps_{i-1})

    and agrees with beta exactly whenever the populations are Boltzmann.
    """
    order = np.argsort(ls.local_energies, kind="stable")
    eps = ls.local_energies[order]
    pi = ls.populations[order]
    gaps = np.diff(eps)
    if np.any(gaps == 0.0):
        raise ValueError("spectroscopic temperature needs distinct local levels (h != 0)")
    if np.any(pi <= 0.0):
        raise ValueError("spectroscopic temperature needs strictly positive populations")
    weights = 0.5 * (pi[1:] + pi[:-1])
    slopes = np.diff(np.log(pi)) / gaps
    norm = 1.0 - 0.5 * (pi[0] + pi[-1])
    return float(-(weights @ slopes) / norm)
