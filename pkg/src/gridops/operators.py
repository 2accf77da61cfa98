"""Banded Hermitian operators (momentum, kinetic, Hamiltonian) on 1D grids.

Operators are stored by diagonals: ``bands[m, j]`` is the real coefficient
coupling grid point j to point j + m, for m = 0..order.  For the kinetic
and Hamiltonian kinds the matrix is real symmetric and ``bands`` holds the
matrix elements themselves (this layout is exactly the LAPACK lower banded
storage, so it feeds scipy's banded eigensolvers directly).  For the
momentum kind the true element is ``-i * bands[m, j]`` above the diagonal
and ``+i * bands[m, j]`` below it, with hbar already folded in, so the
stored band stays real and the full matrix is Hermitian.

Boundary closure is decided by the grid: periodic grids wrap band indices
modulo n (the matrix is circulant), dirichlet grids simply drop couplings
that would leave the box.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .grid import GridSpec, PhysScale
from .stencil import kinetic_weights, momentum_weights

OperatorKind = Literal["momentum", "kinetic", "hamiltonian"]


@dataclass(frozen=True)
class BandedHermitianOperator:
    grid: GridSpec
    order: int
    kind: OperatorKind
    bands: np.ndarray  # (order + 1, grid.n), real

    @property
    def is_momentum(self) -> bool:
        return self.kind == "momentum"


def _check_fit(grid: GridSpec, order: int):
    # A circulant closure folds wrapped couplings by summation, so any order
    # is admissible on a periodic grid and plane waves stay exact
    # eigenvectors; a hard-wall grid genuinely needs the stencil to fit.
    if grid.boundary == "dirichlet" and grid.n < 2 * order + 1:
        raise ValueError(
            f"stencil of order {order} needs at least {2 * order + 1} grid points, "
            f"grid has {grid.n}"
        )


def _band_layout(grid: GridSpec, order: int, row0: np.ndarray) -> np.ndarray:
    """Tile a constant stencil row into band storage, honoring the closure."""
    bands = np.tile(row0[:, None], (1, grid.n))
    if grid.boundary == "dirichlet":
        for m in range(1, order + 1):
            bands[m, grid.n - m:] = 0.0  # couplings past the wall are dropped
    return bands


def build_momentum_operator(
    grid: GridSpec, order: int, scale: PhysScale = PhysScale()
) -> BandedHermitianOperator:
    """Momentum operator: element ``-i hbar W_m`` at column offset +m, zero diagonal."""
    _check_fit(grid, order)
    st = momentum_weights(order, grid.spacing)
    row0 = np.concatenate([[0.0], scale.hbar * st.weights])
    return BandedHermitianOperator(grid, order, "momentum", _band_layout(grid, order, row0))


def build_kinetic_operator(
    grid: GridSpec, order: int, scale: PhysScale = PhysScale()
) -> BandedHermitianOperator:
    """Kinetic operator: ``-(hbar^2 / 2 mu)`` times the second-derivative stencil."""
    _check_fit(grid, order)
    st = kinetic_weights(order, grid.spacing)
    row0 = -scale.hbar2_over_2mu * np.concatenate([[st.diag], st.offdiag])
    return BandedHermitianOperator(grid, order, "kinetic", _band_layout(grid, order, row0))


def build_hamiltonian(
    grid: GridSpec,
    order: int,
    scale: PhysScale,
    potential: np.ndarray,
) -> BandedHermitianOperator:
    """Hamiltonian: kinetic operator plus the potential on the diagonal."""
    v = np.asarray(potential, dtype=float)
    if v.shape != (grid.n,):
        raise ValueError(f"potential has {v.size} values, grid has {grid.n} points")
    if not np.all(np.isfinite(v)):
        raise ValueError("potential contains non-finite values")
    kin = build_kinetic_operator(grid, order, scale)
    bands = kin.bands.copy()
    bands[0] += v
    return BandedHermitianOperator(grid, order, "hamiltonian", bands)


def sample_potential(f: Callable[[np.ndarray], np.ndarray], grid: GridSpec) -> np.ndarray:
    """Pointwise samples ``V_j = f(x_j)`` of an analytic potential."""
    v = np.asarray(f(grid.points), dtype=float)
    if v.shape != (grid.n,):
        v = np.broadcast_to(v, (grid.n,)).astype(float)
    if not np.all(np.isfinite(v)):
        raise ValueError("potential is not finite on every grid point")
    return v


def apply(op: BandedHermitianOperator, vec: np.ndarray) -> np.ndarray:
    """Banded matrix-vector product honoring the boundary closure.

    O(n * order) work.  Real input stays real for the symmetric kinds; the
    momentum kind always returns a complex vector.
    """
    v = np.asarray(vec)
    n = op.grid.n
    if v.shape != (n,):
        raise ValueError(f"vector has shape {v.shape}, operator acts on length {n}")
    bands = op.bands
    periodic = op.grid.boundary == "periodic"

    upper = np.zeros(n, dtype=v.dtype)
    lower = np.zeros(n, dtype=v.dtype)
    if periodic:
        for m in range(1, op.order + 1):
            upper += bands[m] * np.roll(v, -m)
            lower += np.roll(bands[m] * v, m)
    else:
        for m in range(1, op.order + 1):
            upper[: n - m] += bands[m, : n - m] * v[m:]
            lower[m:] += bands[m, : n - m] * v[: n - m]

    if op.is_momentum:
        return -1j * (upper - lower) + bands[0] * v
    return bands[0] * v + upper + lower


def to_dense(op: BandedHermitianOperator) -> np.ndarray:
    """Densify the operator (test and small-problem utility).

    Complex for the momentum kind, real otherwise.
    """
    n = op.grid.n
    periodic = op.grid.boundary == "periodic"
    dtype = complex if op.is_momentum else float
    out = np.zeros((n, n), dtype=dtype)
    up = -1j if op.is_momentum else 1.0
    down = 1j if op.is_momentum else 1.0
    out[np.arange(n), np.arange(n)] = op.bands[0]
    for m in range(1, op.order + 1):
        for j in range(n):
            coeff = op.bands[m, j]
            if j + m < n:
                out[j, j + m] += up * coeff
                out[j + m, j] += down * coeff
            elif periodic:
                out[j, (j + m) % n] += up * coeff
                out[(j + m) % n, j] += down * coeff
    return out


def inf_norm(op: BandedHermitianOperator) -> float:
    """Max absolute row sum, an upper bound on the spectral norm."""
    n = op.grid.n
    rows = np.abs(op.bands[0]).astype(float)
    periodic = op.grid.boundary == "periodic"
    for m in range(1, op.order + 1):
        mag = np.abs(op.bands[m])
        if periodic:
            rows += mag + np.roll(mag, m)
        else:
            rows[: n - m] += mag[: n - m]
            rows[m:] += mag[: n - m]
    return float(np.max(rows))
