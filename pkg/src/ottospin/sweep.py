"""Parameter sweeps over one control axis, scenario presets, CSV assembly.

A sweep fixes all control parameters but one, walks that axis over a linear
grid, and emits one CSV row per grid point.  Rows are independent, so grid
points may be evaluated in parallel (``OTTOSPIN_THREADS``); output order is
always the grid order and runs are byte-reproducible.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import spectrum
from .entanglement import thermal_m_sm
from .gibbs_thermo import entropy, free_energy, heat_capacity, internal_energy, thermal_state
from .local_quartit import local_beta, reduce_closed_form, spectroscopic_beta
from .otto_cycle import CycleParams, local_split, run_cycle
from .spin_algebra import SpinKind

__all__ = [
    "SweepSpec",
    "ScenarioPreset",
    "CsvTable",
    "run_sweep",
    "run_preset",
    "figure_preset",
    "PRESET_NAMES",
]

AXES = ("J", "h_prime", "beta", "h")
FIXED_KEYS = ("h", "h_prime", "T", "T_prime", "J", "beta")

# Columns built from a single equilibrium state at (h, J, beta).
THERMO_COLUMNS = ("S", "U", "C", "F", "m_SM", "beta_loc", "beta_Mloc")
# Columns built from one full cycle at (h, h_prime, T, T_prime, J).
CYCLE_COLUMNS = ("Q1", "W2", "Q3", "W4", "m", "n", "eta", "regime", "q1", "q2", "w",
                 "m_SM", "m_SM_prime")
QUARTIT_ONLY = ("m", "n", "q1", "q2", "w", "m_SM", "m_SM_prime", "beta_loc", "beta_Mloc")

MAX_COUNT = 10**6


@dataclass(frozen=True)
class SweepSpec:
    """One swept axis plus fixed parameters and the requested output columns."""

    substance: SpinKind
    fixed: dict
    axis: str
    start: float
    stop: float
    count: int
    outputs: tuple

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if self.axis in self.fixed:
            raise ValueError(f"axis {self.axis!r} must not also be fixed")
        for key in self.fixed:
            if key not in FIXED_KEYS:
                raise ValueError(f"unknown fixed parameter {key!r}")
        if not 2 <= self.count <= MAX_COUNT:
            raise ValueError(f"count must be in 2..{MAX_COUNT}")
        if self.start == self.stop:
            raise ValueError("sweep range must not be degenerate")
        object.__setattr__(self, "outputs", tuple(self.outputs))
        known = set(THERMO_COLUMNS) | set(CYCLE_COLUMNS)
        for col in self.outputs:
            if col not in known:
                raise ValueError(f"unknown output column {col!r}")
            if self.substance is SpinKind.HALF and col in QUARTIT_ONLY:
                raise ValueError(f"column {col!r} exists only for the coupled-quartit pair")
        params = set(self.fixed) | {self.axis}
        if self._needs_cycle():
            if not {"h", "h_prime", "T", "T_prime", "J"} <= params:
                raise ValueError("cycle columns need h, h_prime, T, T_prime and J")
            mixed = [c for c in self.outputs if c in THERMO_COLUMNS and c != "m_SM"]
            if mixed:
                raise ValueError(f"cannot mix cycle columns with state columns {mixed}")
        if self._needs_thermo() and not ({"h", "J"} <= params and params & {"beta", "T"}):
            raise ValueError("state columns need h, J and beta (or T)")

    def _needs_cycle(self):
        return any(c in CYCLE_COLUMNS and c not in ("m_SM",) for c in self.outputs) or (
            "m_SM" in self.outputs and "beta" not in set(self.fixed) | {self.axis}
        )

    def _needs_thermo(self):
        return any(c in THERMO_COLUMNS for c in self.outputs) and not self._needs_cycle()


@dataclass(frozen=True)
class CsvTable:
    """Rectangular table of formatted cells; comma-delimited, LF endings."""

    header: tuple
    rows: tuple

    def to_csv(self) -> str:
        lines = [",".join(self.header)]
        lines.extend(",".join(row) for row in self.rows)
        return "\n".join(lines) + "\n"

    def column(self, name):
        """Cells of one column as a list of strings."""
        idx = self.header.index(name)
        return [row[idx] for row in self.rows]

    def floats(self, name):
        """One column parsed to floats with empty cells as NaN."""
        return np.array([float(c) if c else np.nan for c in self.column(name)])


@dataclass(frozen=True)
class ScenarioPreset:
    """Named sweep bundle reproducing one figure scenario; ``series`` pairs a
    label with the sweep producing that curve family."""

    name: str
    title: str
    series: tuple  # of (label, SweepSpec)
    expected: dict = field(default_factory=dict)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return repr(float(value))


def _evaluate_row(spec: SweepSpec, axis_value: float):
    """Compute the requested columns at one grid point.

    Returns (values dict, error message); per-point failures (T = 0,
    beta = 0 where forbidden, singular local temperature) fill the error
    cell and leave the affected cells empty instead of aborting the sweep.
    """
    params = dict(spec.fixed)
    params[spec.axis] = axis_value
    values = {}
    errors = []

    beta = params.get("beta")
    if beta is None and "T" in params and not spec._needs_cycle():
        if params["T"] == 0.0:
            return values, "T = 0 has no inverse temperature"
        beta = 1.0 / params["T"]

    if spec._needs_cycle():
        try:
            cycle_params = CycleParams(
                params["T"], params["T_prime"], params["h"], params["h_prime"],
                params["J"], spec.substance,
            )
            report = run_cycle(cycle_params)
        except ValueError as exc:
            return values, str(exc)
        values.update(Q1=report.Q1, W2=report.W2, Q3=report.Q3, W4=report.W4,
                      m=report.m, n=report.n, eta=report.eta,
                      regime=report.regime.value)
        if report.n is not None and {"q1", "q2", "w"} & set(spec.outputs):
            q1, q2, w, _ = local_split(report, cycle_params)
            values.update(q1=q1, q2=q2, w=w)
        if "m_SM" in spec.outputs:
            values["m_SM"] = thermal_m_sm(params["h"], params["J"], 1.0 / params["T"])
        if "m_SM_prime" in spec.outputs:
            values["m_SM_prime"] = thermal_m_sm(
                params["h_prime"], params["J"], 1.0 / params["T_prime"])
        return values, ""

    if beta is None:
        return values, "state columns need beta (or T)"
    h, J = params["h"], params["J"]
    state = thermal_state(spectrum.levels(spec.substance, h, J), beta)
    for col in spec.outputs:
        try:
            if col == "S":
                values[col] = entropy(state)
            elif col == "U":
                values[col] = internal_energy(state)
            elif col == "C":
                values[col] = heat_capacity(state)
            elif col == "F":
                values[col] = free_energy(state)
            elif col == "m_SM":
                values[col] = thermal_m_sm(h, J, beta)
            elif col == "beta_loc":
                values[col] = local_beta(h, J, beta)
            elif col == "beta_Mloc":
                ls = reduce_closed_form(state.populations, h)
                values[col] = spectroscopic_beta(ls)
        except ValueError as exc:
            errors.append(f"{col}: {exc}")
    return values, "; ".join(errors)


def _thread_count() -> int:
    raw = os.environ.get("OTTOSPIN_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_sweep(spec: SweepSpec) -> CsvTable:
    """Evaluate the sweep grid and return the formatted table.

    One row per grid point, axis strictly monotone, column order is
    (axis, *outputs, error); repeated runs are byte-identical.
    """
    grid = np.linspace(spec.start, spec.stop, spec.count)

    def one(x):
        values, err = _evaluate_row(spec, float(x))
        return (_fmt(float(x)), *(_fmt(values.get(c)) for c in spec.outputs), err)

    workers = _thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = tuple(pool.map(one, grid))
    else:
        rows = tuple(one(x) for x in grid)
    return CsvTable((spec.axis, *spec.outputs, "error"), rows)


def run_preset(preset: ScenarioPreset) -> CsvTable:
    """Run every series of a preset and stack them under a shared header.

    Columns are the union across series (first-seen order); cells a series
    does not produce stay empty.
    """
    columns = []
    for _, spec in preset.series:
        for col in spec.outputs:
            if col not in columns:
                columns.append(col)
    axis = preset.series[0][1].axis
    rows = []
    for label, spec in preset.series:
        table = run_sweep(spec)
        for row in table.rows:
            cells = dict(zip(table.header, row))
            rows.append((label, row[0], *(cells.get(c, "") for c in columns),
                         cells.get("error", "")))
    return CsvTable(("series", axis, *columns, "error"), tuple(rows))


def _cycle_series(T, T_prime, h, h_prime, j_start, j_stop, count,
                  quartit_cols, qubit_cols):
    fixed = {"h": h, "h_prime": h_prime, "T": T, "T_prime": T_prime}
    return (
        ("biquartit", SweepSpec(SpinKind.THREE_HALVES, dict(fixed), "J",
                                j_start, j_stop, count, quartit_cols)),
        ("biqubit", SweepSpec(SpinKind.HALF, dict(fixed), "J",
                              j_start, j_stop, count, qubit_cols)),
    )


QW_COLUMNS = ("Q1", "W2", "Q3", "W4", "eta", "regime")


def figure_preset(name: str) -> ScenarioPreset:
    """Preset reproducing one figure scenario by name (fig2..fig11).

    Fixed parameters are the published scenario values; grid ranges for the
    axes the scenarios leave open are package choices, kept wide enough to
    show every regime the scenario exhibits.
    """
    quartit = SpinKind.THREE_HALVES
    if name == "fig2":
        return ScenarioPreset(name, "U, S, C versus inverse temperature (h=1, J=0.1)", (
            ("biquartit", SweepSpec(quartit, {"h": 1.0, "J": 0.1}, "beta",
                                    -5.0, 5.0, 500, ("U", "S", "C"))),
        ))
    if name == "fig3":
        return ScenarioPreset(name, "entanglement versus heat capacity (h=1)", tuple(
            (f"J={J}", SweepSpec(quartit, {"h": 1.0, "J": J}, "beta",
                                 -5.0, 5.0, 500, ("C", "m_SM")))
            for J in (0.1, 0.4)))
    if name == "fig4":
        return ScenarioPreset(name, "local inverse temperatures versus beta (h=2)", tuple(
            (f"J={J}", SweepSpec(quartit, {"h": 2.0, "J": J}, "beta",
                                 -5.0, 5.0, 500, ("beta_loc", "beta_Mloc")))
            for J in (0.0, 0.1, 0.2)))
    if name == "fig5":
        return ScenarioPreset(
            name, "heat and work versus coupling (T=-1, T'=-3, h=1, h'=-1)",
            _cycle_series(-1.0, -3.0, 1.0, -1.0, -1.0, 1.0, 401,
                          QW_COLUMNS, QW_COLUMNS))
    if name == "fig6":
        return ScenarioPreset(
            name, "heat and work versus coupling (T=-1, T'=2, h=4, h'=0.155)",
            _cycle_series(-1.0, 2.0, 4.0, 0.155, -0.5, 0.0, 501,
                          ("Q1", "W2", "Q3", "W4", "q1", "q2", "w", "eta", "regime"),
                          QW_COLUMNS))
    if name == "fig7":
        return ScenarioPreset(
            name, "heat-to-work efficiency versus coupling (T=-1, T'=2, h=4, h'=0.155)",
            _cycle_series(-1.0, 2.0, 4.0, 0.155, -0.5, 0.0, 501,
                          ("eta", "Q3", "regime"), ("eta", "Q3", "regime")))
    if name == "fig8":
        return ScenarioPreset(
            name, "engine efficiency versus coupling (T=2.5, T'=0.25, h=16, h'=12)",
            _cycle_series(2.5, 0.25, 16.0, 12.0, 0.0, 3.0, 601,
                          ("eta", "regime"), ("eta", "regime")))
    if name == "fig9":
        return ScenarioPreset(
            name, "heat and work versus coupling (T=2, T'=1, h=4, h'=-1)",
            _cycle_series(2.0, 1.0, 4.0, -1.0, -1.0, 1.0, 401,
                          QW_COLUMNS, QW_COLUMNS))
    if name == "fig10":
        series = []
        for label, (T, T_prime, h, h_prime) in (
            ("heat-to-work", (-1.0, -3.0, 1.0, -1.0)),
            ("work-to-heat", (2.0, 1.0, 4.0, -1.0)),
        ):
            fixed = {"h": h, "h_prime": h_prime, "T": T, "T_prime": T_prime}
            cols = ("W2", "W4", "m_SM", "m_SM_prime")
            series.append((f"{label} J>0", SweepSpec(
                quartit, dict(fixed), "J", 0.0025, 1.0, 400, cols)))
            series.append((f"{label} J<0", SweepSpec(
                quartit, dict(fixed), "J", -1.0, -0.0025, 400, cols)))
        return ScenarioPreset(name, "work versus entanglement at both endpoints",
                              tuple(series))
    if name == "fig11":
        return ScenarioPreset(
            name, "heat and work versus final field (h=1, T=1, T'=0.5)", tuple(
                (f"J={J}", SweepSpec(quartit,
                                     {"h": 1.0, "T": 1.0, "T_prime": 0.5, "J": J},
                                     "h_prime", 0.1, 1.5, 1000, QW_COLUMNS))
                for J in (0.0, 0.2, -0.2)))
    raise ValueError(f"unknown figure preset {name!r}; known: {', '.join(PRESET_NAMES)}")


PRESET_NAMES = tuple(f"fig{k}" for k in range(2, 12))
