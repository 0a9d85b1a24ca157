"""Spin operators, the coupled-pair Hamiltonian, and a dense Hermitian eigensolver.

Units are dimensionless throughout: the magnetic moment and the Boltzmann
constant are 1, so the field h, the exchange constant J and temperatures all
share one energy unit.
"""

import math
from enum import Enum

import numpy as np

__all__ = [
    "SpinKind",
    "spin_matrices",
    "kron",
    "build_hamiltonian",
    "diagonalize_hermitian",
]

# Relative tolerance for the Hermiticity admission check.
HERMITICITY_TOL = 1e-14


class SpinKind(Enum):
    """Spin species of a single particle in the coupled pair."""

    HALF = "half"
    THREE_HALVES = "three-halves"

    @property
    def dim(self) -> int:
        """Hilbert-space dimension of one particle."""
        return 2 if self is SpinKind.HALF else 4

    @property
    def spin(self) -> float:
        return 0.5 if self is SpinKind.HALF else 1.5


def spin_matrices(kind: SpinKind):
    """Return the spin-component matrices (S1, S2, S3) for one particle.

    S3 is diagonal with the magnetic quantum numbers in descending order;
    S1 and S2 follow from the ladder operators in the same basis, so e.g.
    for spin 3/2 the (0, 1) entry of S1 is sqrt(3)/2.
    """
    s = kind.spin
    m = s - np.arange(kind.dim)  # descending: s, s-1, ..., -s
    raising = np.zeros((kind.dim, kind.dim), dtype=complex)
    for j in range(1, kind.dim):
        raising[j - 1, j] = math.sqrt(s * (s + 1) - m[j] * (m[j] + 1))
    s1 = 0.5 * (raising + raising.conj().T)
    s2 = -0.5j * (raising - raising.conj().T)
    s3 = np.diag(m).astype(complex)
    return s1, s2, s3


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; the left factor owns the coarse block index:

        out[i*db + k, j*db + l] = a[i, j] * b[k, l]

    Composite basis states are therefore ordered |m1, m2> with the left
    particle index varying slowest.
    """
    return np.kron(np.asarray(a), np.asarray(b))


def build_hamiltonian(kind: SpinKind, h: float, J: float) -> np.ndarray:
    """Hamiltonian of two identical coupled spins in a static field h along z:

        H = h (E (x) S3 + S3 (x) E) + 4 J (S1 (x) S1 + S2 (x) S2 + S3 (x) S3)

    J > 0 is the antiferromagnetic case, J < 0 ferromagnetic.  The Zeeman and
    exchange parts commute, so H is linear separately in h and in J and is a
    real symmetric matrix in the product basis.
    """
    s1, s2, s3 = spin_matrices(kind)
    eye = np.eye(kind.dim, dtype=complex)
    zeeman = kron(eye, s3) + kron(s3, eye)
    exchange = kron(s1, s1) + kron(s2, s2) + kron(s3, s3)
    return h * zeeman + 4.0 * J * exchange


def diagonalize_hermitian(matrix, tol: float = 1e-14, max_sweeps: int = 60):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Self-contained brute-force solver used as the verification oracle for the
    closed-form spectra.  Sweeps run until the off-diagonal Frobenius norm
    drops below ``tol * max(1, frobenius(M))``.

    Parameters
    ----------
    matrix : array_like
        Square Hermitian matrix (checked entrywise against its adjoint).
    tol : float
        Convergence threshold on the off-diagonal norm, relative to scale.
    max_sweeps : int
        Safety bound on full cyclic sweeps.

    Returns
    -------
    values : ndarray
        Eigenvalues in ascending order.
    vectors : ndarray
        Orthonormal eigenvectors as the corresponding columns.
    """
    a = np.array(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    scale = np.abs(a).max()
    if np.abs(a - a.conj().T).max() > HERMITICITY_TOL * max(scale, 1.0):
        raise ValueError("matrix is not Hermitian")

    n = a.shape[0]
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    thresh = tol * max(1.0, np.linalg.norm(a))
    # Pivots below this leave the off-diagonal norm under thresh even if
    # every one of the n(n-1) entries sits at the bound.
    skip = thresh / (n * n)

    for _ in range(max_sweeps):
        sq = np.abs(a) ** 2
        np.fill_diagonal(sq, 0.0)
        off = math.sqrt(sq.sum())
        if off <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _jacobi_rotate(a, v, p, q, skip)
    else:
        raise RuntimeError("Jacobi iteration did not converge")

    values = np.diag(a).real.copy()
    order = np.argsort(values, kind="stable")
    return values[order], v[:, order]


def _jacobi_rotate(a, v, p, q, skip):
    """Zero a[p, q] with a unitary plane rotation; update a and v in place."""
    b = a[p, q]
    babs = abs(b)
    if babs <= skip:
        return
    phase = b / babs
    alpha = a[p, p].real
    gamma = a[q, q].real
    # Smaller-angle root of the quadratic for tan(theta); keeps |theta|<=pi/4
    # so the diagonal never reorders under a rotation.
    xi = (gamma - alpha) / (2.0 * babs)
    sgn = 1.0 if xi >= 0.0 else -1.0
    t = -sgn / (abs(xi) + math.hypot(1.0, xi))
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c

    sp = s * phase
    spc = s * phase.conjugate()

    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p + spc * col_q
    a[:, q] = -sp * col_p + c * col_q
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p + sp * row_q
    a[q, :] = -spc * row_p + c * row_q
    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real

    vcol_p = v[:, p].copy()
    vcol_q = v[:, q].copy()
    v[:, p] = c * vcol_p + spc * vcol_q
    v[:, q] = -sp * vcol_p + c * vcol_q
