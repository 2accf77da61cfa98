"""Bound states of the 1D Schrodinger equation on a hard-wall grid.

The benchmark potential is the Poschl-Teller well ``V = -U0 / cosh^2(alpha x)``,
whose levels are known in closed form, so the finite-difference solver can
be scanned against an exact answer: `scan_vs_N` varies the grid resolution
at fixed stencil order, `scan_vs_M` varies the order on a fixed grid.  On
a fixed grid the numerical levels rise monotonically toward the exact ones
as the order grows (the dispersion error constants are positive, so the
kinetic spectrum is approached from below); when the grid itself changes,
the potential is sampled differently at every step and small grids may
break that monotonicity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import eig_banded

from .grid import GridSpec, PhysScale
from .operators import apply, build_hamiltonian, inf_norm

#: Contract on returned eigenpairs: ||H v - E v|| <= RESIDUAL_TOL * ||H||.
RESIDUAL_TOL = 1e-10


class ConvergenceError(RuntimeError):
    """Eigensolver failed or returned pairs outside the residual contract."""


@dataclass(frozen=True)
class PoschlTellerPotential:
    """Attractive well ``V(x) = -depth / cosh(width * x)**2``.

    `depth` (energy units) is positive for a well; `width` is an inverse
    length.  The well supports at least one bound state for any positive
    depth.
    """

    depth: float
    width: float

    def __post_init__(self):
        if not self.depth > 0:
            raise ValueError(f"well depth must be positive, got {self.depth}")
        if not self.width > 0:
            raise ValueError(f"width parameter must be positive, got {self.width}")

    def __call__(self, x):
        return -self.depth / np.cosh(self.width * np.asarray(x, dtype=float)) ** 2


@dataclass(frozen=True)
class BoundStateSpectrum:
    """Strictly increasing bound-state energies."""

    energies: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.energies, dtype=float)
        if e.ndim != 1 or e.size < 1:
            raise ValueError("spectrum needs at least one energy")
        if np.any(np.diff(e) <= 0):
            raise ValueError("energies must be strictly increasing")
        object.__setattr__(self, "energies", e)

    def __len__(self) -> int:
        return self.energies.size


def exact_poschl_teller_levels(
    pot: PoschlTellerPotential, scale: PhysScale = PhysScale()
) -> BoundStateSpectrum:
    """Closed-form bound levels of the Poschl-Teller well.

    With ``s = sqrt(depth / (width^2 hbar^2/2mu) + 1/4) - 1/2`` the levels
    are ``E_j = -(hbar^2/2mu) width^2 (s - j)^2`` for integer j >= 0 with
    ``s - j > 0``.  Pure function of the potential and unit scale; no grid
    is involved.
    """
    s = math.sqrt(pot.depth / (pot.width**2 * scale.hbar2_over_2mu) + 0.25) - 0.5
    count = math.ceil(s)
    levels = [
        -scale.hbar2_over_2mu * pot.width**2 * (s - j) ** 2 for j in range(count)
    ]
    return BoundStateSpectrum(np.sort(np.asarray(levels)))


@dataclass(frozen=True)
class BoundStates:
    """Numeric eigenpairs: energies ascending, states grid-normalized.

    ``states[i]`` holds the i-th eigenvector scaled so that
    ``sum(states[i]**2) * spacing = 1``; signs are fixed so the first lobe
    (first extremum from the left) is positive.  `residuals` records
    ``||H v - E v||_2`` per pair, all within `RESIDUAL_TOL` times the
    operator norm bound.
    """

    grid: GridSpec
    order: int
    energies: np.ndarray
    states: np.ndarray
    residuals: np.ndarray

    @property
    def spectrum(self) -> BoundStateSpectrum:
        return BoundStateSpectrum(self.energies)


def _fix_sign(state: np.ndarray) -> np.ndarray:
    mag = np.abs(state)
    threshold = 0.1 * float(np.max(mag))
    idx = int(np.argmax(mag >= threshold))  # first point inside the first lobe
    return -state if state[idx] < 0 else state


def _resolve_potential(potential, grid: GridSpec) -> np.ndarray:
    if potential is None:
        return np.zeros(grid.n)
    if callable(potential):
        v = np.asarray(potential(grid.points), dtype=float)
    else:
        v = np.asarray(potential, dtype=float)
    if v.shape != (grid.n,):
        raise ValueError(f"potential has shape {v.shape}, expected ({grid.n},)")
    return v


def solve_bound_states(
    grid: GridSpec,
    order: int,
    potential,
    scale: PhysScale = PhysScale(),
    count: int = 3,
) -> BoundStates:
    """Lowest `count` eigenpairs of ``H = T + V`` on a dirichlet grid.

    `potential` may be a callable (sampled on the grid points), an array of
    per-point values, or None for a hard-wall box.  Eigenvalues come back
    ascending; every returned pair satisfies the residual contract or a
    `ConvergenceError` is raised with the worst offender in the message.
    """
    if grid.boundary != "dirichlet":
        raise ValueError("bound-state solves need a dirichlet (hard-wall) grid")
    if count < 1:
        raise ValueError(f"need count >= 1 eigenpairs, got {count}")
    if count > grid.n:
        raise ValueError(f"cannot extract {count} eigenpairs from a {grid.n}-point grid")

    v = _resolve_potential(potential, grid)
    ham = build_hamiltonian(grid, order, scale, v)
    try:
        energies, vectors = eig_banded(
            ham.bands, lower=True, select="i", select_range=(0, count - 1),
            check_finite=False,
        )
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ConvergenceError(f"banded eigensolver did not converge: {exc}") from exc

    norm_bound = inf_norm(ham)
    residuals = np.empty(count)
    states = np.empty((count, grid.n))
    for i in range(count):
        vec = vectors[:, i]
        residuals[i] = float(np.linalg.norm(apply(ham, vec) - energies[i] * vec))
        states[i] = _fix_sign(vec / math.sqrt(grid.spacing))
    if np.max(residuals) > RESIDUAL_TOL * norm_bound:
        worst = int(np.argmax(residuals))
        raise ConvergenceError(
            f"eigenpair {worst} has residual {residuals[worst]:.3e}, "
            f"above {RESIDUAL_TOL:.0e} * ||H|| = {RESIDUAL_TOL * norm_bound:.3e}"
        )

    idx = np.argsort(energies)
    return BoundStates(grid, order, energies[idx], states[idx], residuals[idx])


@dataclass(frozen=True)
class ConvergenceTable:
    """Energies, their sum, and signed errors vs the exact levels per scan row."""

    axis: str  # "N" or "M"
    values: tuple
    energies: np.ndarray  # (rows, count)
    exact: np.ndarray  # (count,)
    fixed: dict

    def __post_init__(self):
        if self.axis not in ("N", "M"):
            raise ValueError(f"scan axis must be 'N' or 'M', got {self.axis!r}")
        if len(self.values) < 2:
            raise ValueError("a convergence scan needs at least 2 rows")
        if np.any(np.diff(np.asarray(self.values)) <= 0):
            raise ValueError("scan values must be strictly increasing")
        if self.energies.shape[0] != len(self.values):
            raise ValueError("one energy row per scan value required")

    @property
    def sums(self) -> np.ndarray:
        return np.sum(self.energies, axis=1)

    @property
    def errors(self) -> np.ndarray:
        return self.energies - self.exact[None, :]


def _scan_setup(pot, scale, count):
    exact = exact_poschl_teller_levels(pot, scale)
    if count is None:
        count = len(exact)
    return exact.energies[:count], count


def scan_vs_N(
    ns: Sequence[int],
    order: int,
    pot: PoschlTellerPotential,
    scale: PhysScale = PhysScale(),
    box_length: float = 20.0,
    count: int | None = None,
) -> ConvergenceTable:
    """Levels versus grid size at fixed stencil order and box length.

    The spacing is ``box_length / n``, so the potential is sampled
    differently on every row; monotonic convergence from below sets in
    only once the grid resolves the well.
    """
    exact, count = _scan_setup(pot, scale, count)
    rows = np.empty((len(ns), count))
    for i, n in enumerate(ns):
        grid = GridSpec(int(n), box_length / int(n), "dirichlet")
        rows[i] = solve_bound_states(grid, order, pot, scale, count).energies
    return ConvergenceTable(
        axis="N",
        values=tuple(int(n) for n in ns),
        energies=rows,
        exact=exact,
        fixed={"M": order, "L": box_length, "U0": pot.depth, "alpha": pot.width},
    )


def scan_vs_M(
    orders: Sequence[int],
    n: int,
    pot: PoschlTellerPotential,
    scale: PhysScale = PhysScale(),
    box_length: float = 20.0,
    count: int | None = None,
) -> ConvergenceTable:
    """Levels versus stencil order on one fixed grid.

    Here the grid (and thus the potential samples) never changes, so each
    level rises monotonically toward its exact value as the order grows.
    """
    exact, count = _scan_setup(pot, scale, count)
    grid = GridSpec(int(n), box_length / int(n), "dirichlet")
    rows = np.empty((len(orders), count))
    for i, order in enumerate(orders):
        rows[i] = solve_bound_states(grid, int(order), pot, scale, count).energies
    return ConvergenceTable(
        axis="M",
        values=tuple(int(m) for m in orders),
        energies=rows,
        exact=exact,
        fixed={"N": int(n), "L": box_length, "U0": pot.depth, "alpha": pot.width},
    )
