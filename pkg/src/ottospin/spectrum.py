"""Closed-form spectra of the coupled-pair Hamiltonians.

Levels carry a fixed 1-based branch index with eigenvectors that do not
depend on (h, J).  The branch order is NOT ascending energy: the Otto-cycle
adiabats pair endpoint levels by this identity, and re-sorting would corrupt
that bookkeeping whenever branches cross.
"""

import math

import numpy as np

from .spin_algebra import SpinKind

__all__ = [
    "H_WEIGHTS",
    "J_WEIGHTS",
    "biquartit_levels",
    "biqubit_levels",
    "levels",
    "biquartit_eigenvectors",
    "projector",
    "projector_stack",
]

# Each coupled-quartit branch is e_k = H_WEIGHTS[k]*h + J_WEIGHTS[k]*J.
H_WEIGHTS = np.array(
    [-1, 1, -2, -1, -3, 1, 2, 0, 0, 0, 0, 3, -2, -1, 1, 2], dtype=float
)
J_WEIGHTS = np.array(
    [-11, -11, -3, -3, 9, -3, -3, -15, -11, -3, 9, 9, 9, 9, 9, 9], dtype=float
)

_SQ3 = math.sqrt(3.0)

# Constant eigenvectors, one per branch, as (position, value) sparse entries
# in the |m1, m2> product basis (m descending, left particle slowest).
_VECTOR_ENTRIES = (
    ((7, 1.0), (10, -2.0 / _SQ3), (13, 1.0)),
    ((2, 1.0), (5, -2.0 / _SQ3), (8, 1.0)),
    ((11, -1.0), (14, 1.0)),
    ((7, -1.0), (13, 1.0)),
    ((15, 1.0),),
    ((2, -1.0), (8, 1.0)),
    ((1, -1.0), (4, 1.0)),
    ((3, -1.0), (6, 1.0), (9, -1.0), (12, 1.0)),
    ((3, 1.0), (6, -1.0 / 3.0), (9, -1.0 / 3.0), (12, 1.0)),
    ((3, -1.0), (6, -1.0), (9, 1.0), (12, 1.0)),
    ((3, 1.0), (6, 3.0), (9, 3.0), (12, 1.0)),
    ((0, 1.0),),
    ((11, 1.0), (14, 1.0)),
    ((7, 1.0), (10, _SQ3), (13, 1.0)),
    ((2, 1.0), (5, _SQ3), (8, 1.0)),
    ((1, 1.0), (4, 1.0)),
)


def biquartit_levels(h: float, J: float) -> np.ndarray:
    """The 16 coupled-quartit energies in branch order.

    The branches sum to zero identically (the Hamiltonian is traceless).
    """
    return H_WEIGHTS * h + J_WEIGHTS * J


def biqubit_levels(h: float, J: float) -> np.ndarray:
    """The 4 coupled-qubit energies in branch order:
    (-3J, J, -h+J, h+J) = (singlet, triplet-0, triplet-down, triplet-up)."""
    return np.array([-3.0 * J, J, -h + J, h + J])


def levels(kind: SpinKind, h: float, J: float) -> np.ndarray:
    """Branch-ordered energies for either working pair."""
    if kind is SpinKind.THREE_HALVES:
        return biquartit_levels(h, J)
    return biqubit_levels(h, J)


def _build_vectors() -> np.ndarray:
    vecs = np.zeros((16, 16))
    for row, entries in zip(vecs, _VECTOR_ENTRIES):
        for pos, val in entries:
            row[pos] = val
        row /= math.sqrt((row**2).sum())
    vecs.setflags(write=False)
    return vecs


_VECTORS = _build_vectors()


def biquartit_eigenvectors() -> np.ndarray:
    """The 16 unit eigenvectors as rows, aligned with the branch order.

    Constant in (h, J); mutually orthonormal.  Row k is the eigenvector of
    branch energy e_{k+1}.
    """
    return _VECTORS


def projector(index: int) -> np.ndarray:
    """Rank-one projector |e_i><e_i| onto the 1-based branch ``index``."""
    if not 1 <= index <= 16:
        raise ValueError(f"branch index must be in 1..16, got {index}")
    v = _VECTORS[index - 1]
    return np.outer(v, v).astype(complex)


def projector_stack() -> np.ndarray:
    """All 16 projectors stacked as a (16, 16, 16) array (branch, row, col)."""
    return np.einsum("ka,kb->kab", _VECTORS, _VECTORS).astype(complex)
