"""Command-line surface: one-shot evaluations, sweeps, figure presets, verify.

All tabular output is CSV (comma separated, LF line endings, '.' decimal
separator, floats in shortest round-trip form).  Temperatures given as --T
are converted to inverse temperatures via beta = 1/T; T = 0 is rejected.
Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

import argparse
import os
import sys

import numpy as np

from . import spectrum
from .entanglement import thermal_m_sm
from .gibbs_thermo import entropy, free_energy, heat_capacity, internal_energy, thermal_state
from .local_quartit import local_beta, local_entropy, local_internal_energy, \
    reduce_closed_form, spectroscopic_beta
from .otto_cycle import CycleParams, local_split, run_cycle
from .spin_algebra import SpinKind
from .sweep import (CsvTable, PRESET_NAMES, SweepSpec, figure_preset, run_preset,
                    run_sweep)
from .verify import verify_all

SUBSTANCES = {"biquartit": SpinKind.THREE_HALVES, "biqubit": SpinKind.HALF}


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return repr(float(value))


def _write(text: str, out_path):
    if out_path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)


def _resolve_beta(parser, args) -> float:
    if args.beta is not None and args.T is not None:
        parser.error("give either --beta or --T, not both")
    if args.beta is not None:
        return args.beta
    if args.T is not None:
        if args.T == 0.0:
            parser.error("T = 0 has no inverse temperature; pass --beta instead")
        return 1.0 / args.T
    parser.error("one of --beta or --T is required")


def _cmd_thermo(parser, args):
    kind = SUBSTANCES[args.substance]
    beta = _resolve_beta(parser, args)
    state = thermal_state(spectrum.levels(kind, args.h, args.J), beta)
    header = ["substance", "h", "J", "beta", "logZ", "S", "U", "C", "F"]
    row = [args.substance, _fmt(args.h), _fmt(args.J), _fmt(beta), _fmt(state.log_z),
           _fmt(entropy(state)), _fmt(internal_energy(state)),
           _fmt(heat_capacity(state))]
    error = ""
    try:
        row.append(_fmt(free_energy(state)))
    except ValueError as exc:
        row.append("")
        error = str(exc)
    if kind is SpinKind.THREE_HALVES:
        header.append("m_SM")
        row.append(_fmt(thermal_m_sm(args.h, args.J, beta)))
    header.append("error")
    row.append(error)
    _write(CsvTable(tuple(header), (tuple(row),)).to_csv(), args.out)
    return 0


def _cmd_local(parser, args):
    beta = _resolve_beta(parser, args)
    state = thermal_state(spectrum.biquartit_levels(args.h, args.J), beta)
    ls = reduce_closed_form(state.populations, args.h)
    errors = []
    cells = {}
    for name, func in (("beta_loc", lambda: local_beta(args.h, args.J, beta)),
                       ("beta_Mloc", lambda: spectroscopic_beta(ls))):
        try:
            cells[name] = _fmt(func())
        except ValueError as exc:
            cells[name] = ""
            errors.append(f"{name}: {exc}")
    header = ("h", "J", "beta", "pi1", "pi2", "pi3", "pi4", "s", "u",
              "beta_loc", "beta_Mloc", "error")
    row = (_fmt(args.h), _fmt(args.J), _fmt(beta),
           *(_fmt(p) for p in ls.populations),
           _fmt(local_entropy(ls)), _fmt(local_internal_energy(ls)),
           cells["beta_loc"], cells["beta_Mloc"], "; ".join(errors))
    _write(CsvTable(header, (row,)).to_csv(), args.out)
    return 0


def _cmd_cycle(parser, args):
    kind = SUBSTANCES[args.substance]
    if args.T == 0.0 or args.T_prime == 0.0:
        parser.error("bath temperatures must be nonzero")
    params = CycleParams(args.T, args.T_prime, args.h, args.h_prime, args.J, kind)
    report = run_cycle(params)
    header = ["substance", "h", "h_prime", "T", "T_prime", "J",
              "Q1", "W2", "Q3", "W4", "eta0", "eta", "regime"]
    row = [args.substance, _fmt(args.h), _fmt(args.h_prime), _fmt(args.T),
           _fmt(args.T_prime), _fmt(args.J), _fmt(report.Q1), _fmt(report.W2),
           _fmt(report.Q3), _fmt(report.W4), _fmt(report.eta0), _fmt(report.eta),
           report.regime.value]
    if report.n is not None:
        q1, q2, w, w_total = local_split(report, params)
        header += ["m", "n", "q1", "q2", "w", "W_total"]
        row += [_fmt(report.m), _fmt(report.n), _fmt(q1), _fmt(q2), _fmt(w), _fmt(w_total)]
    _write(CsvTable(tuple(header), (tuple(row),)).to_csv(), args.out)
    return 0


def _cmd_sweep(parser, args):
    fixed = {}
    for key, value in (("h", args.h), ("h_prime", args.h_prime), ("T", args.T),
                       ("T_prime", args.T_prime), ("J", args.J), ("beta", args.beta)):
        if value is not None:
            fixed[key] = value
    if args.axis in fixed:
        parser.error(f"--{args.axis.replace('_', '-')} conflicts with --axis {args.axis}")
    columns = tuple(c.strip() for c in args.columns.split(",") if c.strip())
    try:
        spec = SweepSpec(SUBSTANCES[args.substance], fixed, args.axis,
                         args.start, args.stop, args.count, columns)
    except ValueError as exc:
        parser.error(str(exc))
    _write(run_sweep(spec).to_csv(), args.out)
    return 0


def _cmd_figure(parser, args):
    try:
        preset = figure_preset(args.name)
    except ValueError as exc:
        parser.error(str(exc))
    table = run_preset(preset)
    os.makedirs(args.outdir, exist_ok=True)
    csv_path = os.path.join(args.outdir, f"{preset.name}.csv")
    _write(table.to_csv(), csv_path)
    written = [csv_path]
    if not args.no_plot:
        from .plotting import render_preset  # matplotlib import deferred to here

        image_path = os.path.join(args.outdir, f"{preset.name}.png")
        render_preset(preset, table, image_path)
        written.append(image_path)
    print("\n".join(written))
    return 0


def _cmd_verify(parser, args):
    report, status = verify_all(args.seed)
    print(report)
    return status


def _add_param_flags(sub, *names):
    flags = {
        "h": ("--h", "field during stages 1 and 4 (energy units, moment = 1)"),
        "h_prime": ("--h-prime", "field during stages 2 and 3"),
        "T": ("--T", "stage-1 bath temperature (nonzero, may be negative)"),
        "T_prime": ("--T-prime", "stage-3 bath temperature (nonzero, may be negative)"),
        "J": ("--J", "exchange coupling (J > 0 antiferromagnetic)"),
        "beta": ("--beta", "inverse temperature 1/T (k_B = 1)"),
    }
    for name in names:
        flag, help_text = flags[name]
        sub.add_argument(flag, dest=name, type=float, default=None, help=help_text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ottospin",
        description="Equilibrium thermodynamics and quasi-static Otto-cycle "
                    "performance for exchange-coupled spin pairs.",
        epilog="CSV cells are comma separated with LF line endings; floats are "
               "written in shortest round-trip decimal form.  Set "
               "OTTOSPIN_THREADS to evaluate sweep rows in parallel.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("thermo", help="equilibrium potentials at one (h, J, beta)")
    _add_param_flags(p, "h", "J", "beta", "T")
    p.set_defaults(h=1.0, J=0.0)
    p.add_argument("--substance", choices=SUBSTANCES, default="biquartit")
    p.add_argument("--out", default=None, help="output path ('-' or absent: stdout)")
    p.set_defaults(func=_cmd_thermo)

    p = sub.add_parser("local", help="reduced one-quartit state and local temperatures")
    _add_param_flags(p, "h", "J", "beta", "T")
    p.set_defaults(h=1.0, J=0.0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_local)

    p = sub.add_parser("cycle", help="one quasi-static Otto cycle")
    _add_param_flags(p, "h", "h_prime", "T", "T_prime", "J")
    p.set_defaults(h=1.0, h_prime=0.5, T=1.0, T_prime=0.5, J=0.0)
    p.add_argument("--substance", choices=SUBSTANCES, default="biquartit")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_cycle)

    p = sub.add_parser("sweep", help="sweep one axis, emit one CSV row per grid point")
    p.add_argument("--substance", choices=SUBSTANCES, default="biquartit")
    p.add_argument("--axis", choices=("J", "h_prime", "beta", "h"), required=True)
    p.add_argument("--from", dest="start", type=float, required=True,
                   help="axis start value")
    p.add_argument("--to", dest="stop", type=float, required=True,
                   help="axis stop value")
    p.add_argument("--count", type=int, default=201, help="grid points (default 201)")
    p.add_argument("--columns", default="Q1,W2,Q3,W4,eta,regime",
                   help="comma-separated output columns")
    _add_param_flags(p, "h", "h_prime", "T", "T_prime", "J", "beta")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("figure", help="run a published-scenario preset (CSV + PNG)")
    p.add_argument("name", choices=PRESET_NAMES)
    p.add_argument("--outdir", default=".", help="directory for <name>.csv/<name>.png")
    p.add_argument("--no-plot", action="store_true", help="write only the CSV")
    p.set_defaults(func=_cmd_figure)

    p = sub.add_parser("verify", help="run the seeded invariant suites")
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except ValueError as exc:
        parser.exit(2, f"error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
