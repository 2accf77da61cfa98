"""Render a command's table to a matplotlib figure file.

Each command gets one canonical plot: weight magnitudes versus offset,
dispersion curves against the free-particle lines, error constants versus
order on a log scale, the potential with its levels, and per-level scan
errors.  Figures are written next to the delimited output; the data files
stay the format of record.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .tables import RunTable


def _weights_figure(table: RunTable, ax):
    m = np.asarray(table.column("m"))
    w = np.abs(np.asarray(table.column("W_m")))
    c = np.abs(np.asarray(table.column("c_m")))
    inner = m >= 1
    ax.semilogy(m[inner], w[inner], "o-", label="|W_m|")
    ax.semilogy(m, c, "s--", label="|c_m|")
    ax.set_xlabel("offset m")
    ax.set_ylabel("weight magnitude")
    ax.set_title(f"stencil weights, order M={table.meta['M']}, a={table.meta['a']}")
    ax.legend()


def _dispersion_figure(table: RunTable, ax):
    k = np.asarray(table.column("k"))
    p = np.asarray(table.column("p"))
    eps = np.asarray(table.column("eps"))
    hbar = table.meta["hbar"]
    h2m = table.meta["hbar2_over_2mu"]
    ax.plot(k, p, "o", ms=3, label="p(k)")
    ax.plot(k, eps, "s", ms=3, label="eps(k)")
    ax.plot(k, hbar * k, "-", lw=1, label="free momentum")
    ax.plot(k, h2m * k**2, "--", lw=1, label="free energy")
    ax.set_xlabel("wavevector k")
    ax.set_ylabel("eigenvalue")
    ax.set_title(f"dispersion, M={table.meta['M']}, N={table.meta['N']}")
    ax.legend(fontsize=8)


def _delta_figure(table: RunTable, ax):
    m = np.asarray(table.column("M"))
    ax.semilogy(m, table.column("delta_p"), "o-", label="momentum constant")
    ax.semilogy(m, table.column("delta_eps"), "s--", label="kinetic constant")
    ax.set_xlabel("order M")
    ax.set_ylabel("leading error constant")
    ax.set_title("dispersion error constants")
    ax.legend()


def _solve_figure(table: RunTable, ax):
    meta = table.meta
    length = meta["N"] * meta["a"]
    x = np.linspace(-length / 2, length / 2, 801)
    if meta["potential"] == "poschl-teller":
        v = -meta["U0"] / np.cosh(meta["alpha"] * x) ** 2
        ax.plot(x, v, "-", lw=1.2, label="potential")
    else:
        ax.axhline(0.0, color="k", lw=1.2, label="box floor")
    for energy in table.column("energy"):
        ax.axhline(energy, color="tab:red", lw=0.8)
    ax.set_xlabel("x")
    ax.set_ylabel("energy")
    ax.set_title(f"bound levels, M={meta['M']}, N={meta['N']}")
    ax.legend()


def _scan_figure(table: RunTable, ax):
    axis = table.meta["axis"]
    values = np.asarray(table.column(axis))
    level = 0
    while f"err_{level}" in table.columns:
        err = np.abs(np.asarray(table.column(f"err_{level}")))
        ax.semilogy(values, np.maximum(err, 1e-18), "o-", label=f"|error| level {level}")
        level += 1
    ax.set_xlabel(axis)
    ax.set_ylabel("|E - E_exact|")
    ax.set_title(f"convergence scan over {axis}")
    if axis == "N":
        ax.set_xscale("log", base=2)
    ax.legend(fontsize=8)


_RENDERERS = {
    "weights": _weights_figure,
    "dispersion": _dispersion_figure,
    "delta": _delta_figure,
    "solve": _solve_figure,
    "scan": _scan_figure,
}


def render_figure(table: RunTable, path: str) -> str:
    """Draw the canonical figure for `table` and write it to `path`."""
    command = table.meta.get("command")
    if command not in _RENDERERS:
        raise ValueError(f"no figure renderer for command {command!r}")
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    try:
        _RENDERERS[command](table, ax)
        fig.savefig(path, dpi=150, bbox_inches="tight")
    finally:
        plt.close(fig)
    return path
