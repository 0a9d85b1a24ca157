"""Gibbs equilibrium states and their thermodynamic potentials.

Inverse temperature beta is the primary variable (k_B = 1) and may be
negative: for a bounded spectrum the beta < 0 Gibbs state is the physical
population-inverted equilibrium.  beta = 0 gives the uniform state.
"""

from dataclasses import dataclass

import numpy as np

from . import spectrum

__all__ = [
    "ThermalState",
    "thermal_state",
    "free_energy",
    "internal_energy",
    "entropy",
    "heat_capacity",
    "gibbs_density_matrix",
]


@dataclass(frozen=True)
class ThermalState:
    """Occupation snapshot of a discrete spectrum at inverse temperature beta.

    ``energies`` and ``populations`` stay aligned with the branch order of the
    level list the state was built from.
    """

    beta: float
    energies: np.ndarray
    populations: np.ndarray
    log_z: float


def thermal_state(energies, beta: float) -> ThermalState:
    """Build the Gibbs state p_i = exp(-beta e_i) / Z over the given levels.

    The exponentials are shifted by their maximum before normalization, so
    arbitrarily large |beta * e| cannot overflow (log Z stays finite and the
    populations still sum to 1).
    """
    e = np.asarray(energies, dtype=float)
    if e.ndim != 1 or e.size == 0:
        raise ValueError("energies must be a non-empty 1-d sequence")
    if not (np.all(np.isfinite(e)) and np.isfinite(beta)):
        raise ValueError("energies and beta must be finite")
    x = -beta * e
    shift = x.max()
    log_z = shift + np.log(np.exp(x - shift).sum())
    populations = np.exp(x - log_z)
    return ThermalState(float(beta), e, populations, float(log_z))


def free_energy(state: ThermalState) -> float:
    """F = -ln(Z) / beta.  Undefined at beta = 0 (infinite temperature)."""
    if state.beta == 0.0:
        raise ValueError("free energy is undefined at beta = 0 (T infinite)")
    return -state.log_z / state.beta


def internal_energy(state: ThermalState) -> float:
    """U = sum_i e_i p_i, the first energy moment of the occupation."""
    return float(state.energies @ state.populations)


def entropy(state: ThermalState) -> float:
    """S = -sum_i p_i ln p_i, with 0 ln 0 = 0.

    Equals beta * (U - F) whenever beta != 0; bounded by ln(level count).
    """
    p = state.populations[state.populations > 0.0]
    return float(-(p @ np.log(p)))


def heat_capacity(state: ThermalState) -> float:
    """C = beta^2 * Var(E) under the occupation; non-negative for either
    sign of beta."""
    e = state.energies
    p = state.populations
    u = e @ p
    return float(state.beta**2 * (((e - u) ** 2) @ p))


def gibbs_density_matrix(h: float, J: float, beta: float) -> np.ndarray:
    """Full 16x16 Gibbs density matrix of the coupled-quartit pair,
    assembled from the constant branch projectors:  rho = sum_i p_i P_i."""
    state = thermal_state(spectrum.biquartit_levels(h, J), beta)
    return np.einsum("i,iab->ab", state.populations, spectrum.projector_stack())
