"""Seeded runner for the cross-module invariant suites.

Every suite re-derives its expectation through an independent route (brute
diagonalization, partial trace, finite differences, algebraic identities).
Sub-checks may carry different tolerances; a suite reports the residual of
its worst check relative to that check's tolerance.  Exit status is nonzero
if any suite fails, so the runner doubles as a regression gate.
"""

from dataclasses import dataclass

import numpy as np

from . import spectrum
from .entanglement import bloch_decompose, default_basis, m_sm, thermal_m_sm
from .gibbs_thermo import (entropy, free_energy, gibbs_density_matrix, heat_capacity,
                           internal_energy, thermal_state)
from .local_quartit import (local_beta, local_entropy, local_internal_energy,
                            partial_trace_oracle, reduce_closed_form, spectroscopic_beta)
from .otto_cycle import CycleParams, Regime, heat_decomposition, local_split, run_cycle
from .spin_algebra import SpinKind, build_hamiltonian, diagonalize_hermitian, kron, spin_matrices

__all__ = ["SuiteResult", "verify_all", "SUITES"]


@dataclass(frozen=True)
class SuiteResult:
    name: str
    worst: float
    tol: float
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.worst <= self.tol


class _Checks:
    """Collects (residual, tolerance) pairs and keeps the binding one."""

    def __init__(self):
        self.residual = 0.0
        self.tol = 1.0
        self._ratio = -1.0

    def add(self, residual, tol):
        ratio = float(residual) / tol
        if ratio > self._ratio:
            self._ratio = ratio
            self.residual = float(residual)
            self.tol = tol

    def result(self, name, note=""):
        return SuiteResult(name, self.residual, self.tol, note)


def _suite_spin_algebra(rng):
    checks = _Checks()
    for kind in SpinKind:
        s1, s2, s3 = spin_matrices(kind)
        eye = np.eye(kind.dim)
        for a, b, c in ((s1, s2, s3), (s2, s3, s1), (s3, s1, s2)):
            checks.add(np.abs(a @ b - b @ a - 1j * c).max(), 1e-14)
        casimir = s1 @ s1 + s2 @ s2 + s3 @ s3
        target = kind.spin * (kind.spin + 1.0)
        checks.add(np.abs(casimir - target * eye).max(), 1e-14)
    return checks.result("spin-algebra", "commutators and Casimir, both spin kinds")


def _suite_hamiltonian_structure(rng):
    checks = _Checks()
    for kind in SpinKind:
        s1, s2, s3 = spin_matrices(kind)
        eye = np.eye(kind.dim, dtype=complex)
        zeeman = kron(eye, s3) + kron(s3, eye)
        exchange = kron(s1, s1) + kron(s2, s2) + kron(s3, s3)
        for _ in range(50):
            h, J = rng.uniform(-5.0, 5.0, 2)
            ext = h * zeeman
            inner = 4.0 * J * exchange
            checks.add(np.abs(ext @ inner - inner @ ext).max(), 1e-12)
            built = build_hamiltonian(kind, h, J)
            checks.add(np.abs(built - (ext + inner)).max(), 1e-12)
            # linear separately in h and in J
            checks.add(np.abs(build_hamiltonian(kind, 2.0 * h, J) - built - ext).max(), 1e-12)
            checks.add(np.abs(build_hamiltonian(kind, h, 2.0 * J) - built - inner).max(), 1e-12)
    return checks.result("hamiltonian-structure",
                         "field part commutes with the exchange part; H linear in h and J")


def _suite_spectrum_oracle(rng):
    checks = _Checks()
    for _ in range(100):
        h, J = rng.uniform(-5.0, 5.0, 2)
        values, _ = diagonalize_hermitian(build_hamiltonian(SpinKind.THREE_HALVES, h, J))
        checks.add(np.abs(np.sort(spectrum.biquartit_levels(h, J)) - values).max(), 1e-10)
        values, _ = diagonalize_hermitian(build_hamiltonian(SpinKind.HALF, h, J))
        checks.add(np.abs(np.sort(spectrum.biqubit_levels(h, J)) - values).max(), 1e-10)
    return checks.result("spectrum-oracle",
                         "closed-form levels against brute diagonalization")


def _suite_eigenvector_residuals(rng):
    checks = _Checks()
    vectors = spectrum.biquartit_eigenvectors()
    checks.add(np.abs(vectors @ vectors.T - np.eye(16)).max(), 1e-12)
    checks.add(np.abs(spectrum.projector_stack().sum(axis=0) - np.eye(16)).max(), 1e-12)
    for _ in range(20):
        h, J = rng.uniform(-5.0, 5.0, 2)
        ham = build_hamiltonian(SpinKind.THREE_HALVES, h, J)
        energies = spectrum.biquartit_levels(h, J)
        scale = 1.0 + np.linalg.norm(ham)
        checks.add(abs(energies.sum()) / scale, 1e-12)
        for k in range(16):
            res = np.linalg.norm(ham @ vectors[k] - energies[k] * vectors[k])
            checks.add(res / scale, 1e-12)
    return checks.result("eigenvector-residuals",
                         "constant eigenvectors stay exact across (h, J)")


def _suite_gibbs_symmetry(rng):
    checks = _Checks()
    levels = spectrum.biquartit_levels(1.0, 0.0)
    for k in range(1, 21):
        beta = 0.25 * k
        plus = thermal_state(levels, beta)
        minus = thermal_state(levels, -beta)
        checks.add(abs(entropy(plus) - entropy(minus)), 1e-12)
        checks.add(abs(heat_capacity(plus) - heat_capacity(minus)), 1e-12)
        checks.add(abs(internal_energy(plus) + internal_energy(minus)), 1e-12)
    # population ordering follows the sign of beta
    levels = spectrum.biquartit_levels(1.3, 0.4)
    for beta, pick in ((2.0, np.argmin), (-2.0, np.argmax)):
        state = thermal_state(levels, beta)
        checks.add(0.0 if np.argmax(state.populations) == pick(levels) else 1.0, 0.5)
    return checks.result("gibbs-symmetry", "S, C even and U odd in beta at J = 0")


def _suite_gibbs_stability(rng):
    checks = _Checks()
    for beta in (500.0, -500.0):
        state = thermal_state(spectrum.biquartit_levels(10.0, 0.3), beta)
        finite = np.isfinite(state.log_z) and np.all(np.isfinite(state.populations))
        checks.add(0.0 if finite else np.inf, 1.0)
        checks.add(abs(state.populations.sum() - 1.0), 1e-12)
    return checks.result("gibbs-stability", "max-shift normalization survives |beta| = 500")


def _suite_gibbs_derivatives(rng):
    checks = _Checks()
    for _ in range(10):
        h = rng.uniform(0.5, 3.0)
        J = rng.uniform(-0.5, 0.5)
        beta = rng.choice([-1.0, 1.0]) * rng.uniform(0.4, 2.0)
        levels = spectrum.biquartit_levels(h, J)
        state = thermal_state(levels, beta)

        def log_z(b):
            return thermal_state(levels, b).log_z

        delta = 1e-5
        u_fd = -(log_z(beta + delta) - log_z(beta - delta)) / (2.0 * delta)
        checks.add(abs(u_fd - internal_energy(state)) / max(abs(u_fd), 1e-3), 1e-5)
        f_hi = free_energy(thermal_state(levels, beta + delta))
        f_lo = free_energy(thermal_state(levels, beta - delta))
        s_fd = beta**2 * (f_hi - f_lo) / (2.0 * delta)
        checks.add(abs(s_fd - entropy(state)) / max(abs(s_fd), 1e-3), 1e-5)
        delta = 2e-4
        c_fd = -beta**2 * (-log_z(beta + delta) + 2.0 * log_z(beta) - log_z(beta - delta)) / delta**2
        checks.add(abs(c_fd - heat_capacity(state)) / max(abs(c_fd), 1e-3), 1e-5)
    return checks.result("gibbs-derivatives",
                         "moment formulas against finite differences of F")


def _suite_local_reduction(rng):
    checks = _Checks()
    for _ in range(50):
        h = rng.uniform(-3.0, 3.0)
        J = rng.uniform(-1.0, 1.0)
        beta = rng.uniform(-2.0, 2.0)
        rho = gibbs_density_matrix(h, J, beta)
        reduced = partial_trace_oracle(rho)
        state = thermal_state(spectrum.biquartit_levels(h, J), beta)
        ls = reduce_closed_form(state.populations, h)
        checks.add(np.abs(ls.populations - np.diag(reduced).real).max(), 1e-12)
        off = reduced - np.diag(np.diag(reduced))
        checks.add(np.abs(off).max(), 1e-12)
        checks.add(np.abs(reduced - partial_trace_oracle(rho, keep=1)).max(), 1e-12)
    return checks.result("local-reduction",
                         "closed-form weights against the partial-trace oracle")


def _suite_local_temperatures(rng):
    checks = _Checks()
    for beta in (0.5, 1.0, 2.0, -0.5, -1.0, -2.0):
        checks.add(abs(local_beta(2.0, 0.0, beta) - beta), 1e-6)
        state = thermal_state(spectrum.biquartit_levels(2.0, 0.0), beta)
        ls = reduce_closed_form(state.populations, 2.0)
        checks.add(abs(spectroscopic_beta(ls) - beta), 1e-6)
        # the reduced state at J = 0 is itself Gibbs for the local levels
        local = thermal_state(ls.local_energies, beta)
        checks.add(abs(local_entropy(ls) - entropy(local)), 1e-12)
        checks.add(abs(local_internal_energy(ls) - internal_energy(local)), 1e-12)
    return checks.result("local-temperatures",
                         "both local-temperature definitions collapse to beta at J = 0")


def _suite_entanglement_null(rng):
    checks = _Checks()
    for h in (0.5, 1.0, 2.0, 4.0):
        for beta in (-3.0, -1.0, -0.4, 0.4, 1.0, 3.0):
            checks.add(thermal_m_sm(h, 0.0, beta), 1e-10)
    uniform = m_sm(bloch_decompose(np.eye(16, dtype=complex) / 16.0))
    checks.add(0.0 if uniform == 0.0 else 1.0, 0.5)
    # swap symmetry and continuity in J at a generic point
    rho = gibbs_density_matrix(1.2, 0.35, 0.9)
    swapped = rho.reshape(4, 4, 4, 4).transpose(1, 0, 3, 2).reshape(16, 16)
    checks.add(abs(m_sm(bloch_decompose(rho)) - m_sm(bloch_decompose(swapped))), 1e-12)
    checks.add(abs(thermal_m_sm(1.2, 0.35, 0.9) - thermal_m_sm(1.2, 0.35 + 1e-6, 0.9)), 1e-4)
    return checks.result("entanglement-null",
                         "zero on uncoupled states, swap symmetric, continuous in J")


def _suite_entanglement_roundtrip(rng):
    checks = _Checks()
    basis = default_basis()
    elems = basis.elements
    overlap = np.einsum("iab,jba->ij", elems, elems).real
    checks.add(np.abs(overlap - np.diag(np.diag(overlap))).max(), 1e-12)
    checks.add(np.abs(np.diag(overlap)[1:] - 2.0).max(), 1e-12)
    tr2 = np.diag(overlap)
    for _ in range(5):
        h = rng.uniform(0.5, 2.0)
        J = rng.uniform(-0.6, 0.6)
        beta = rng.uniform(-1.5, 1.5)
        rho = gibbs_density_matrix(h, J, beta)
        decomp = bloch_decompose(rho, basis)
        coeff = decomp * np.outer(basis.norms, basis.norms) / np.outer(tr2, tr2)
        rebuilt = np.einsum("ij,iab,jcd->acbd", coeff, elems, elems).reshape(16, 16)
        checks.add(np.abs(rebuilt - rho).max(), 1e-12)
    return checks.result("entanglement-roundtrip",
                         "basis orthogonality and state reassembly from the Bloch tensor")


def _draw_cycle_params(rng, kind, positive_fields=False):
    if positive_fields:
        h, h_prime = rng.uniform(0.2, 5.0, 2)
    else:
        h, h_prime = rng.uniform(-5.0, 5.0, 2)
    return CycleParams(
        T_hot=float(rng.choice([-1.0, 1.0]) * rng.uniform(0.2, 3.0)),
        T_cold=float(rng.choice([-1.0, 1.0]) * rng.uniform(0.2, 3.0)),
        h=float(h),
        h_prime=float(h_prime),
        J=float(rng.uniform(-1.0, 1.0)),
        kind=kind,
    )


def _suite_cycle_balance(rng):
    checks = _Checks()
    for k in range(200):
        kind = SpinKind.THREE_HALVES if k % 2 else SpinKind.HALF
        report = run_cycle(_draw_cycle_params(rng, kind))
        scale = max(1.0, abs(report.Q1), abs(report.W2), abs(report.Q3), abs(report.W4))
        checks.add(abs(report.Q1 + report.W2 + report.Q3 + report.W4) / scale, 1e-12)
    return checks.result("cycle-balance", "four stage energies cancel around the loop")


def _suite_cycle_decomposition(rng):
    checks = _Checks()
    for _ in range(100):
        params = _draw_cycle_params(rng, SpinKind.THREE_HALVES)
        report = run_cycle(params)
        m, n = heat_decomposition(report.p, report.p_prime)
        scale = max(1.0, abs(report.Q1), abs(report.Q3), abs(report.net_work))
        checks.add(abs(report.Q1 - (params.J * m + params.h * n)) / scale, 1e-12)
        checks.add(abs(report.Q3 + params.J * m + params.h_prime * n) / scale, 1e-12)
        checks.add(abs(-report.net_work - (params.h - params.h_prime) * n) / scale, 1e-12)
        q1, q2, w, w_total = local_split(report, params)
        checks.add(abs(w_total - 2.0 * w) / scale, 1e-12)
        checks.add(abs(report.Q1 - params.J * m - 2.0 * q1) / scale, 1e-12)
        checks.add(abs(report.Q3 + params.J * m - 2.0 * q2) / scale, 1e-12)
    return checks.result("cycle-decomposition",
                         "heat and work split into the (m, n) components")


def _suite_cycle_efficiency(rng):
    checks = _Checks()
    engines = 0
    for _ in range(200):
        params = _draw_cycle_params(rng, SpinKind.THREE_HALVES, positive_fields=True)
        report = run_cycle(params)
        if (report.eta is not None and report.Q1 > 0.0 and report.Q3 < 0.0
                and abs(params.h * report.n) > 1e-9):
            closed = report.eta0 / (1.0 + params.J * report.m / (params.h * report.n))
            checks.add(abs(closed - report.eta), 1e-10)
        # uncoupled draws: the two-level engine criterion (positive fields)
        uncoupled = CycleParams(params.T_hot, params.T_cold, params.h,
                                params.h_prime, 0.0, params.kind)
        ur = run_cycle(uncoupled)
        if ur.regime is Regime.HEAT_ENGINE:
            engines += 1
            ok = params.h_prime / params.T_cold > params.h / params.T_hot
            checks.add(0.0 if ok else 1.0, 0.5)
    return checks.result("cycle-efficiency",
                         f"closed-form ratio identity; {engines} uncoupled engine draws "
                         "obey h'/T' > h/T")


SUITES = (
    _suite_spin_algebra,
    _suite_hamiltonian_structure,
    _suite_spectrum_oracle,
    _suite_eigenvector_residuals,
    _suite_gibbs_symmetry,
    _suite_gibbs_stability,
    _suite_gibbs_derivatives,
    _suite_local_reduction,
    _suite_local_temperatures,
    _suite_entanglement_null,
    _suite_entanglement_roundtrip,
    _suite_cycle_balance,
    _suite_cycle_decomposition,
    _suite_cycle_efficiency,
)


def verify_all(seed: int = 42):
    """Run every invariant suite with one seeded generator.

    Returns (report text, exit status); status 0 means every suite passed.
    """
    results = [suite(np.random.default_rng(seed)) for suite in SUITES]
    lines = []
    for res in results:
        mark = "PASS" if res.passed else "FAIL"
        lines.append(f"[{mark}] {res.name:26s} worst {res.worst:9.3e}  tol {res.tol:.0e}  {res.note}")
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} suites passed (seed {seed})")
    return "\n".join(lines), (0 if failed == 0 else 1)
