"""Bloch-decomposition correlation measure for the coupled-quartit state.

A pair state is expanded over the 16-element Hermitian operator basis
{I, generalized Gell-Mann matrices} per factor; the measure

    m_SM = sqrt( 1/(D-1) * sum_ij (R_i0 R_0j - R_ij)^2 ),  D = 16,

is the distance of the Bloch tensor R from the product of its marginals, so
it vanishes identically on product states.  The basis is normalized to
trace(C_i^2) = 2 for i >= 1 and R is scaled so that R_00 = 1; trend shapes
are normalization independent, absolute heights are a convention.
"""

from dataclasses import dataclass
from itertools import combinations

import math

import numpy as np

from .gibbs_thermo import gibbs_density_matrix

__all__ = ["OperatorBasis", "su4_basis", "bloch_decompose", "m_sm", "thermal_m_sm"]


@dataclass(frozen=True)
class OperatorBasis:
    """Trace-orthogonal Hermitian basis C_0..C_15 of the 4x4 operators.

    ``elements[i] = scales[i] * cores[i]`` where the cores have exact
    (Gaussian-)integer entries; keeping them separate lets trace
    contractions cancel exactly instead of accumulating rounding noise.
    ``norms[i] = sqrt(trace(C_i^2) / 4)``.
    """

    elements: np.ndarray  # (16, 4, 4) complex Hermitian, elements[0] = I
    norms: np.ndarray  # (16,)
    cores: np.ndarray  # (16, 4, 4) integer-entry complex
    scales: np.ndarray  # (16,)


def su4_basis() -> OperatorBasis:
    """Identity plus the 15 generalized Gell-Mann matrices of dimension 4:
    6 symmetric, 6 antisymmetric, 3 diagonal; trace(C_i^2) = 2 for i >= 1."""
    cores = [np.eye(4, dtype=complex)]
    scales = [1.0]
    for j, k in combinations(range(4), 2):
        m = np.zeros((4, 4), dtype=complex)
        m[j, k] = 1.0
        m[k, j] = 1.0
        cores.append(m)
        scales.append(1.0)
    for j, k in combinations(range(4), 2):
        m = np.zeros((4, 4), dtype=complex)
        m[j, k] = -1.0j
        m[k, j] = 1.0j
        cores.append(m)
        scales.append(1.0)
    for pattern, scale in (
        ([1, -1, 0, 0], 1.0),
        ([1, 1, -2, 0], 1.0 / math.sqrt(3.0)),
        ([1, 1, 1, -3], 1.0 / math.sqrt(6.0)),
    ):
        cores.append(np.diag(pattern).astype(complex))
        scales.append(scale)
    cores = np.array(cores)
    scales = np.array(scales)
    elements = scales[:, None, None] * cores
    norms = np.sqrt(np.einsum("iab,iba->i", elements, elements).real / 4.0)
    return OperatorBasis(elements, norms, cores, scales)


_BASIS: OperatorBasis | None = None


def default_basis() -> OperatorBasis:
    """Shared read-only basis instance (construction is cheap but repeated
    sweeps reuse it)."""
    global _BASIS
    if _BASIS is None:
        _BASIS = su4_basis()
    return _BASIS


def bloch_decompose(rho: np.ndarray, basis: OperatorBasis | None = None) -> np.ndarray:
    """Bloch tensor R_ij = trace(rho (C_i (x) C_j)) / (n_i n_j) of a 16x16 state.

    Contracted through the integer cores, so traces that cancel algebraically
    (e.g. for the maximally mixed state) cancel exactly.  R_00 = trace(rho).
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (16, 16):
        raise ValueError(f"expected a 16x16 density matrix, got shape {rho.shape}")
    basis = basis or default_basis()
    four = rho.reshape(4, 4, 4, 4)
    # trace(rho (M_i (x) M_j)) with row (a, c) and column (b, d) indices
    traces = np.einsum("acbd,iba,jdc->ij", four, basis.cores, basis.cores)
    t = basis.scales / basis.norms
    return np.outer(t, t) * traces.real


def m_sm(R: np.ndarray) -> float:
    """Root-mean-square gap between the Bloch tensor and the product of its
    marginals, normalized by 1/(D-1) with D the per-factor basis size."""
    R = np.asarray(R, dtype=float)
    if abs(R[0, 0] - 1.0) > 1e-12:
        raise ValueError("Bloch tensor must be normalized to R[0, 0] = 1")
    d = R.shape[0]
    gap = np.outer(R[:, 0], R[0, :]) - R
    return float(np.sqrt((gap**2).sum() / (d - 1)))


def thermal_m_sm(h: float, J: float, beta: float, basis: OperatorBasis | None = None) -> float:
    """m_SM of the coupled-quartit Gibbs state at (h, J, beta)."""
    return m_sm(bloch_decompose(gibbs_density_matrix(h, J, beta), basis))
