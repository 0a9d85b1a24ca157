"""Equilibrium thermodynamics, local temperatures, entanglement, and
quasi-static Otto-cycle performance for exchange-coupled spin pairs."""

from .spin_algebra import SpinKind, build_hamiltonian, diagonalize_hermitian, kron, spin_matrices
from .spectrum import biqubit_levels, biquartit_eigenvectors, biquartit_levels, levels, projector

__version__ = "0.1.0"
