"""Command-line surface: weights, dispersion, delta, solve, scan.

Every command emits one machine-readable table (CSV by default, JSON with
``--format json``) and can additionally render the matching figure next to
it with ``--plot``.  Exit codes: 0 success, 2 usage error, 3 numeric or
range error, 4 eigensolver non-convergence.  The only environment variable
read is GRIDOPS_OUTPUT_DIR, which relocates relative output paths.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .dispersion import delta_eps, delta_p, dispersion_curve
from .grid import GridSpec, PhysScale
from .schrodinger import (
    ConvergenceError,
    PoschlTellerPotential,
    exact_poschl_teller_levels,
    scan_vs_M,
    scan_vs_N,
    solve_bound_states,
)
from .stencil import (
    infinite_order_kinetic_element,
    infinite_order_momentum_element,
    kinetic_weights,
    momentum_weights,
)
from .tables import RunTable, write_csv, write_json

AUTO_PLOT = "__auto__"


class UsageError(Exception):
    """Inconsistent or invalid flag combination (exit code 2)."""


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="table format (default: csv)")
    parser.add_argument("--output", metavar="PATH",
                        help="write the table here instead of stdout")
    parser.add_argument("--plot", metavar="PATH", nargs="?", const=AUTO_PLOT,
                        help="also render a figure (default: next to --output)")
    parser.add_argument("--hbar", type=float, default=1.0, help="hbar (default 1)")
    parser.add_argument("--hbar2-over-2mu", dest="hbar2_over_2mu", type=float,
                        default=1.0, help="hbar^2 / 2 mu (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridops",
        description="Finite-difference momentum/kinetic operators on uniform 1D grids: "
                    "weights, dispersion analysis, error constants, bound states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weights", help="closed-form stencil weights for one order")
    p.add_argument("--M", type=int, required=True, help="stencil order (half bandwidth)")
    p.add_argument("--a", type=float, default=1.0, help="grid spacing (default 1)")
    _add_common(p)

    p = sub.add_parser("dispersion", help="periodic-grid eigenvalues over all wavevectors")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--N", type=int, required=True, help="number of grid points")
    p.add_argument("--a", type=float, default=1.0)
    _add_common(p)

    p = sub.add_parser("delta", help="leading dispersion error constants per order")
    p.add_argument("--M-min", dest="m_min", type=int, default=1)
    p.add_argument("--M-max", dest="m_max", type=int, default=8)
    _add_common(p)

    p = sub.add_parser("solve", help="bound states in a hard-wall box")
    p.add_argument("--potential", choices=("poschl-teller", "none"),
                   default="poschl-teller")
    p.add_argument("--U0", type=float, default=21.0, help="well depth (default 21)")
    p.add_argument("--alpha", type=float, default=1.4, help="inverse well width (default 1.4)")
    p.add_argument("--N", type=int, default=2000)
    p.add_argument("--M", type=int, default=8)
    p.add_argument("--L", type=float, default=None, help="box length (default 20)")
    p.add_argument("--a", type=float, default=None, help="grid spacing (alternative to --L)")
    p.add_argument("--count", type=int, default=3, help="number of eigenpairs (default 3)")
    p.add_argument("--dump-states", dest="dump_states", metavar="PATH",
                   help="also write the eigenvectors as a table (same --format)")
    _add_common(p)

    p = sub.add_parser("scan", help="convergence scan of the bound levels")
    p.add_argument("--axis", choices=("N", "M"), required=True)
    p.add_argument("--values", required=True,
                   help="comma-separated, strictly increasing scan values")
    p.add_argument("--M", type=int, default=4, help="fixed order for an N scan")
    p.add_argument("--N", type=int, default=2000, help="fixed grid size for an M scan")
    p.add_argument("--L", type=float, default=20.0)
    p.add_argument("--U0", type=float, default=21.0)
    p.add_argument("--alpha", type=float, default=1.4)
    p.add_argument("--count", type=int, default=3)
    _add_common(p)

    return parser


def _scale(args) -> PhysScale:
    return PhysScale(hbar=args.hbar, hbar2_over_2mu=args.hbar2_over_2mu)


def cmd_weights(args) -> RunTable:
    scale = _scale(args)
    mom = momentum_weights(args.M, args.a)
    kin = kinetic_weights(args.M, args.a)
    h2m = scale.hbar2_over_2mu
    rows = [(0, 0.0, float(kin.diag), 0.0,
             -infinite_order_kinetic_element(0, args.a, scale) / h2m)]
    for m in range(1, args.M + 1):
        rows.append((
            m,
            float(mom.weights[m - 1]),
            float(kin.offdiag[m - 1]),
            -infinite_order_momentum_element(m, args.a),
            -infinite_order_kinetic_element(m, args.a, scale) / h2m,
        ))
    meta = {"command": "weights", "M": args.M, "a": args.a,
            "hbar": args.hbar, "hbar2_over_2mu": args.hbar2_over_2mu}
    return RunTable(meta, ("m", "W_m", "c_m", "W_inf", "c_inf"), rows)


def cmd_dispersion(args) -> RunTable:
    scale = _scale(args)
    curve = dispersion_curve(args.M, args.N, args.a, scale)
    rows = []
    for nu in range(args.N):
        k = float(curve.wavevector[nu])
        p = float(curve.momentum[nu])
        eps = float(curve.energy[nu])
        if nu == 0:
            p_err = eps_err = 0.0
        else:
            p_err = (p - scale.hbar * k) / (scale.hbar * k)
            eps_err = (eps - scale.hbar2_over_2mu * k**2) / (scale.hbar2_over_2mu * k**2)
        rows.append((nu, k, p, eps, p_err, eps_err))
    meta = {"command": "dispersion", "M": args.M, "N": args.N, "a": args.a,
            "hbar": args.hbar, "hbar2_over_2mu": args.hbar2_over_2mu}
    return RunTable(meta, ("nu", "k", "p", "eps", "p_rel_err", "eps_rel_err"), rows)


def cmd_delta(args) -> RunTable:
    if args.m_min < 1 or args.m_max < args.m_min:
        raise ValueError(f"need 1 <= M-min <= M-max, got {args.m_min}..{args.m_max}")
    rows = []
    for order in range(args.m_min, args.m_max + 1):
        dp, de = delta_p(order), delta_eps(order)
        rows.append((order, dp, de, dp / de))
    meta = {"command": "delta", "M_min": args.m_min, "M_max": args.m_max}
    return RunTable(meta, ("M", "delta_p", "delta_eps", "ratio"), rows)


def _solve_grid(args) -> GridSpec:
    if args.L is not None and args.a is not None:
        raise UsageError("give exactly one of --L and --a, not both")
    length = args.L
    spacing = args.a
    if spacing is None:
        length = 20.0 if length is None else length
        spacing = length / args.N
    return GridSpec(args.N, spacing, "dirichlet")


def cmd_solve(args) -> tuple[RunTable, RunTable | None]:
    scale = _scale(args)
    grid = _solve_grid(args)
    pot = None
    if args.potential == "poschl-teller":
        pot = PoschlTellerPotential(depth=args.U0, width=args.alpha)
    result = solve_bound_states(grid, args.M, pot, scale, args.count)

    meta = {"command": "solve", "potential": args.potential, "N": args.N,
            "M": args.M, "a": grid.spacing, "L": grid.length, "count": args.count,
            "boundary": "dirichlet", "hbar": args.hbar,
            "hbar2_over_2mu": args.hbar2_over_2mu}
    if args.potential == "poschl-teller":
        meta.update({"U0": args.U0, "alpha": args.alpha})
        exact = exact_poschl_teller_levels(pot, scale).energies
        rows = []
        for i, energy in enumerate(result.energies):
            if i < exact.size:
                rows.append((i, float(energy), float(exact[i]), float(energy - exact[i])))
            else:
                rows.append((i, float(energy), "", ""))
        table = RunTable(meta, ("n", "energy", "exact", "error"), rows)
    else:
        rows = [(i, float(e)) for i, e in enumerate(result.energies)]
        table = RunTable(meta, ("n", "energy"), rows)

    states = None
    if args.dump_states:
        columns = ("x",) + tuple(f"psi_{i}" for i in range(args.count))
        srows = []
        points = grid.points
        for j in range(grid.n):
            srows.append((float(points[j]),) + tuple(float(result.states[i, j])
                                                     for i in range(args.count)))
        states = RunTable({**meta, "command": "solve_states"}, columns, srows)
    return table, states


def cmd_scan(args) -> RunTable:
    scale = _scale(args)
    try:
        values = [int(v) for v in args.values.split(",") if v.strip() != ""]
    except ValueError:
        raise UsageError(f"--values must be a comma-separated integer list, got {args.values!r}")
    if len(values) == 0:
        raise UsageError("--values must not be empty")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise UsageError("--values must be strictly increasing")
    pot = PoschlTellerPotential(depth=args.U0, width=args.alpha)

    if args.axis == "N":
        result = scan_vs_N(values, args.M, pot, scale, args.L, args.count)
        fixed = {"M": args.M}
    else:
        result = scan_vs_M(values, args.N, pot, scale, args.L, args.count)
        fixed = {"N": args.N}

    count = result.energies.shape[1]
    columns = ((args.axis,)
               + tuple(f"E_{i}" for i in range(count)) + ("E_sum",)
               + tuple(f"err_{i}" for i in range(count)) + ("err_sum",))
    rows = []
    errors = result.errors
    for r, value in enumerate(result.values):
        row = [int(value)]
        row += [float(e) for e in result.energies[r]]
        row.append(float(result.sums[r]))
        row += [float(e) for e in errors[r]]
        row.append(float(np.sum(errors[r])))
        rows.append(tuple(row))
    meta = {"command": "scan", "axis": args.axis, "values": values, **fixed,
            "L": args.L, "U0": args.U0, "alpha": args.alpha, "count": args.count,
            "hbar": args.hbar, "hbar2_over_2mu": args.hbar2_over_2mu}
    return RunTable(meta, columns, rows)


def _resolve_path(path: str | None) -> str | None:
    if path is None:
        return None
    outdir = os.environ.get("GRIDOPS_OUTPUT_DIR")
    if outdir and not os.path.isabs(path):
        return os.path.join(outdir, path)
    return path


def _plot_path(args, output: str | None) -> str | None:
    if args.plot is None:
        return None
    if args.plot != AUTO_PLOT:
        return _resolve_path(args.plot)
    if output is None:
        raise UsageError("--plot without a path needs --output to derive one from")
    stem, _ = os.path.splitext(output)
    return stem + ".png"


def _write(table: RunTable, fmt: str, output: str | None):
    if output is None:
        writer = write_csv if fmt == "csv" else write_json
        writer(table, sys.stdout)
        return
    with open(output, "w", encoding="utf-8", newline="") as stream:
        (write_csv if fmt == "csv" else write_json)(table, stream)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if getattr(args, "count", 1) < 1:
            raise UsageError(f"--count must be >= 1, got {args.count}")
        states = None
        if args.command == "weights":
            table = cmd_weights(args)
        elif args.command == "dispersion":
            table = cmd_dispersion(args)
        elif args.command == "delta":
            table = cmd_delta(args)
        elif args.command == "solve":
            table, states = cmd_solve(args)
        else:
            table = cmd_scan(args)

        output = _resolve_path(args.output)
        plot = _plot_path(args, output)
        _write(table, args.format, output)
        if states is not None:
            _write(states, args.format, _resolve_path(args.dump_states))
        if plot is not None:
            from .figures import render_figure

            render_figure(table, plot)
    except UsageError as exc:
        print(f"gridops: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"gridops: error: {exc}", file=sys.stderr)
        return 3
    except ConvergenceError as exc:
        print(f"gridops: solver did not converge: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
