"""Matplotlib rendering of the scenario-preset tables to image files.

Each preset gets a small axes recipe keyed on its name; everything draws from
the same CSV table the ``figure`` command writes, so the image is always a
view of the emitted data, never a second computation path.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .sweep import CsvTable, ScenarioPreset

__all__ = ["render_preset"]

_SERIES_STYLES = ("-", "--", "-.", ":")


def _split_series(table: CsvTable):
    """Yield (label, sub-table slice as dict of float arrays) per series."""
    labels = []
    for cell in table.column("series"):
        if cell not in labels:
            labels.append(cell)
    rows = np.array(table.rows, dtype=object)
    series_col = np.array(table.column("series"))
    for label in labels:
        mask = series_col == label
        sub = {}
        for idx, name in enumerate(table.header):
            if name in ("series", "error", "regime"):
                continue
            cells = rows[mask, idx]
            sub[name] = np.array([float(c) if c else np.nan for c in cells])
        yield label, sub


def _line_panels(axes, table, x_name, y_names):
    """One panel per quantity, one line per series, shared x axis."""
    for ax, y_name in zip(axes, y_names):
        for k, (label, sub) in enumerate(_split_series(table)):
            if np.all(np.isnan(sub[y_name])):
                continue
            ax.plot(sub[x_name], sub[y_name], _SERIES_STYLES[k % len(_SERIES_STYLES)],
                    label=label, lw=1.2)
        ax.set_ylabel(y_name)
        ax.grid(alpha=0.3)
    axes[-1].set_xlabel(x_name)
    axes[0].legend(fontsize=8, ncol=2)


def render_preset(preset: ScenarioPreset, table: CsvTable, path: str) -> None:
    """Render the preset's table to ``path`` (format from the extension)."""
    name = preset.name
    if name == "fig2":
        fig, axes = plt.subplots(3, 1, figsize=(6, 7), sharex=True)
        _line_panels(axes, table, "beta", ("U", "S", "C"))
    elif name == "fig3":
        fig, ax = plt.subplots(figsize=(6, 4.5))
        for k, (label, sub) in enumerate(_split_series(table)):
            ax.plot(sub["C"], sub["m_SM"], _SERIES_STYLES[k % 4], label=label, lw=1.2)
        ax.set_xlabel("C")
        ax.set_ylabel("m_SM")
        ax.grid(alpha=0.3)
        ax.legend(fontsize=8)
    elif name == "fig4":
        fig, ax = plt.subplots(figsize=(6, 4.5))
        for k, (label, sub) in enumerate(_split_series(table)):
            ax.plot(sub["beta"], sub["beta_loc"], _SERIES_STYLES[k % 4],
                    label=f"{label} (derivative)", lw=1.2)
            ax.plot(sub["beta"], sub["beta_Mloc"], _SERIES_STYLES[k % 4],
                    label=f"{label} (spectroscopic)", lw=0.8, alpha=0.6)
        ax.set_xlabel("beta")
        ax.set_ylabel("local inverse temperature")
        ax.grid(alpha=0.3)
        ax.legend(fontsize=7)
    elif name in ("fig5", "fig6", "fig9"):
        fig, axes = plt.subplots(2, 1, figsize=(6.5, 7), sharex=True)
        for k, (label, sub) in enumerate(_split_series(table)):
            style = _SERIES_STYLES[k % 4]
            for col, color in (("Q1", "C0"), ("W2", "C1"), ("Q3", "C2"), ("W4", "C3")):
                axes[0].plot(sub["J"], sub[col], style, color=color,
                             label=f"{col} ({label})", lw=1.1)
            axes[1].plot(sub["J"], sub["eta"], style, label=f"eta ({label})", lw=1.2)
        axes[0].set_ylabel("heat / work")
        axes[0].grid(alpha=0.3)
        axes[0].legend(fontsize=6, ncol=4)
        axes[1].set_ylabel("eta")
        axes[1].set_xlabel("J")
        axes[1].grid(alpha=0.3)
        axes[1].legend(fontsize=7)
    elif name in ("fig7", "fig8"):
        fig, ax = plt.subplots(figsize=(6, 4.5))
        for k, (label, sub) in enumerate(_split_series(table)):
            ax.plot(sub["J"], sub["eta"], _SERIES_STYLES[k % 4], label=label, lw=1.2)
        ax.set_xlabel("J")
        ax.set_ylabel("eta")
        ax.grid(alpha=0.3)
        ax.legend(fontsize=8)
    elif name == "fig10":
        fig, axes = plt.subplots(1, 2, figsize=(9, 4), sharey=False)
        for k, (label, sub) in enumerate(_split_series(table)):
            style = _SERIES_STYLES[k % 4]
            axes[0].plot(sub["m_SM"], sub["W2"], style, label=label, lw=1.1)
            axes[1].plot(sub["m_SM_prime"], sub["W4"], style, label=label, lw=1.1)
        axes[0].set_xlabel("m_SM (hot endpoint)")
        axes[0].set_ylabel("W2")
        axes[1].set_xlabel("m_SM (cold endpoint)")
        axes[1].set_ylabel("W4")
        for ax in axes:
            ax.grid(alpha=0.3)
        axes[0].legend(fontsize=7)
    elif name == "fig11":
        fig, ax = plt.subplots(figsize=(6, 4.5))
        for k, (label, sub) in enumerate(_split_series(table)):
            ax.plot(sub["h_prime"], -(sub["W2"] + sub["W4"]),
                    _SERIES_STYLES[k % 4], label=label, lw=1.2)
        ax.axhline(0.0, color="k", lw=0.6)
        ax.set_xlabel("h_prime")
        ax.set_ylabel("delivered work -(W2+W4)")
        ax.grid(alpha=0.3)
        ax.legend(fontsize=8)
    else:
        # generic fallback: every numeric column against the axis
        axis = table.header[1]
        numeric = [c for c in table.header[2:] if c not in ("regime", "error")]
        fig, axes = plt.subplots(len(numeric), 1, figsize=(6, 2.2 * len(numeric)),
                                 sharex=True, squeeze=False)
        _line_panels(axes[:, 0], table, axis, numeric)
    fig.suptitle(preset.title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
