"""Quasi-static four-stage Otto cycle over the coupled-pair spectra.

Stage 1: thermalize at field h with the stage-1 bath (temperature T_hot),
Stage 2: adiabatic field change h -> h' at frozen branch occupations,
Stage 3: thermalize at h' with the stage-3 bath (T_cold),
Stage 4: adiabatic return h' -> h.

Sign convention: Q > 0 means heat absorbed by the working pair, W > 0 means
work done ON it, so Q1 + W2 + Q3 + W4 = 0 around the cycle.  Branches are
paired by their fixed index through the adiabats, never re-sorted.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import spectrum
from .gibbs_thermo import thermal_state
from .spin_algebra import SpinKind

__all__ = [
    "CycleParams",
    "CycleReport",
    "Regime",
    "run_cycle",
    "heat_decomposition",
    "efficiency",
    "classify_regime",
    "carnot_point",
    "local_split",
]

# Exchange- and field-conjugate weights of the stage-1 heat:
# Q1 = J * (M_WEIGHTS @ dp) + h * (N_WEIGHTS @ dp) with dp = p - p'.
M_WEIGHTS = np.array(
    [-11, -11, -3, -3, 9, -3, -3, -15, -11, -3, 9, 9, 9, 9, 9, 9], dtype=float
)
N_WEIGHTS = np.array(
    [-1, 1, -2, -1, -3, 1, 2, 0, 0, 0, 0, 3, -2, -1, 1, 2], dtype=float
)


class Regime(Enum):
    """Operating mode classified from the signs of (Q1, W2+W4, Q3)."""

    HEAT_ENGINE = "HeatEngine"
    REFRIGERATOR = "Refrigerator"
    HEATER = "Heater"
    WORK_TO_HEAT = "WorkToHeat"
    PURE_HEAT_TRANSFER = "PureHeatTransfer"
    DOUBLE_HEAT_INPUT = "DoubleHeatInput"
    OTHER = "Other"


@dataclass(frozen=True)
class CycleParams:
    """Control parameters of one cycle.

    Temperatures may be negative (population-inverted baths) but not zero;
    the exchange constant J is held fixed through all four stages.
    """

    T_hot: float
    T_cold: float
    h: float
    h_prime: float
    J: float
    kind: SpinKind = SpinKind.THREE_HALVES

    def __post_init__(self):
        for name in ("T_hot", "T_cold", "h", "h_prime", "J"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.T_hot == 0.0 or self.T_cold == 0.0:
            raise ValueError("bath temperatures must be nonzero")


@dataclass(frozen=True)
class CycleReport:
    """Heats, works and derived quantities of one quasi-static cycle.

    ``m`` and ``n`` (and the local split built on ``n``) exist only for the
    coupled-quartit pair; ``eta`` is absent outside the recognized
    conversion regimes.
    """

    Q1: float
    W2: float
    Q3: float
    W4: float
    p: np.ndarray
    p_prime: np.ndarray
    eta0: float
    m: float | None = None
    n: float | None = None
    eta: float | None = None
    regime: Regime = Regime.OTHER

    @property
    def net_work(self) -> float:
        """W2 + W4; negative when the cycle delivers work."""
        return self.W2 + self.W4


def run_cycle(params: CycleParams) -> CycleReport:
    """Evaluate one quasi-static cycle.

    Endpoint occupations are the Gibbs populations at (h, 1/T_hot) and
    (h', 1/T_cold); the four stage energies are index-paired sums

        Q1 = sum_i e_i (p_i - p'_i)     W2 = sum_i p_i (e'_i - e_i)
        Q3 = sum_i e'_i (p'_i - p_i)    W4 = sum_i p'_i (e_i - e'_i)

    which cancel identically around the loop.
    """
    e = spectrum.levels(params.kind, params.h, params.J)
    e_prime = spectrum.levels(params.kind, params.h_prime, params.J)
    p = thermal_state(e, 1.0 / params.T_hot).populations
    p_prime = thermal_state(e_prime, 1.0 / params.T_cold).populations

    dp = p - p_prime
    q1 = float(e @ dp)
    w2 = float(p @ (e_prime - e))
    q3 = float(-e_prime @ dp)
    w4 = float(p_prime @ (e - e_prime))
    eta0 = 1.0 - params.h_prime / params.h if params.h != 0.0 else math.nan

    m = n = None
    if params.kind is SpinKind.THREE_HALVES:
        m, n = heat_decomposition(p, p_prime)

    report = CycleReport(q1, w2, q3, w4, p, p_prime, eta0, m, n)
    regime = classify_regime(report)
    return CycleReport(q1, w2, q3, w4, p, p_prime, eta0, m, n, efficiency(report), regime)


def heat_decomposition(p, p_prime):
    """Split the endpoint population shift into the exchange-conjugate and
    field-conjugate components (m, n), so Q1 = J m + h n and
    Q3 = -J m - h' n."""
    dp = np.asarray(p, dtype=float) - np.asarray(p_prime, dtype=float)
    if dp.shape != (16,):
        raise ValueError(f"expected 16 populations, got shape {dp.shape}")
    return float(M_WEIGHTS @ dp), float(N_WEIGHTS @ dp)


def efficiency(report: CycleReport) -> float | None:
    """Conversion efficiency for the recognized sign patterns.

    heat -> work with one-sided input (Q1 > 0 > Q3, net work out):
        eta = -(W2 + W4) / Q1
    heat -> work fed by both baths (Q1, Q3 > 0, net work out):
        eta = -(W2 + W4) / (Q1 + Q3), identically 1 by energy balance
    work -> heat (Q1, Q3 < 0, net work in):
        eta = -(Q1 + Q3) / (W2 + W4), identically 1

    Any other sign pattern has no defined efficiency (returns None).
    """
    w_net = report.W2 + report.W4
    if report.Q1 > 0.0 and report.Q3 < 0.0 and w_net < 0.0:
        return -w_net / report.Q1
    if report.Q1 > 0.0 and report.Q3 > 0.0 and w_net < 0.0:
        return -w_net / (report.Q1 + report.Q3)
    if report.Q1 < 0.0 and report.Q3 < 0.0 and w_net > 0.0:
        return -(report.Q1 + report.Q3) / w_net
    return None


def classify_regime(report: CycleReport, eps: float | None = None) -> Regime:
    """Sign-pattern classification with a scale-relative dead band ``eps``
    (default 1e-12 of the largest energy flow) so regimes cannot flap at
    boundaries such as the Carnot point."""
    w = report.W2 + report.W4
    q1 = report.Q1
    q3 = report.Q3
    if eps is None:
        eps = 1e-12 * max(abs(q1), abs(q3), abs(w), 1.0)
    elif eps <= 0.0:
        raise ValueError("eps must be positive")
    if q1 > eps and q3 < -eps and w < -eps:
        return Regime.HEAT_ENGINE
    if q1 > eps and q3 > eps and w < -eps:
        return Regime.DOUBLE_HEAT_INPUT
    if q1 < -eps and q3 < -eps and w > eps:
        return Regime.WORK_TO_HEAT
    if abs(w) <= eps and q1 > eps and q3 < -eps:
        return Regime.PURE_HEAT_TRANSFER
    if w > eps and q3 > eps:
        return Regime.REFRIGERATOR
    if w > eps and q1 > eps and q3 < -eps:
        return Regime.HEATER
    return Regime.OTHER


def carnot_point(h: float, T_hot: float, T_cold: float) -> float:
    """Field value h' = h * T_cold / T_hot where the uncoupled device crosses
    from refrigerator to engine operation."""
    if T_hot == 0.0:
        raise ValueError("T_hot must be nonzero")
    return h * T_cold / T_hot


def local_split(report: CycleReport, params: CycleParams):
    """Per-particle share of the energy flows, built on the field-conjugate
    component n:

        q1 = (h/2) n      q2 = -(h'/2) n      w = q1 + q2

    Returns (q1, q2, w, W_total) with W_total = 2 w = (h - h') n, the work
    delivered per cycle; the pair heats split as Q1 = J m + 2 q1 and
    Q3 = -J m + 2 q2 (the stage-3 identity, with q2 carrying its own sign).
    """
    if report.n is None:
        raise ValueError("local split needs the coupled-quartit decomposition (n)")
    q1 = 0.5 * params.h * report.n
    q2 = -0.5 * params.h_prime * report.n
    w = q1 + q2
    return q1, q2, w, 2.0 * w
