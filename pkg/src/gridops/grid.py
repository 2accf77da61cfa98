"""Uniform 1D grids and physical unit scales shared by every operator."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

Boundary = Literal["periodic", "dirichlet"]

BOUNDARIES = ("periodic", "dirichlet")


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid of `n` points with spacing `spacing`.

    Grid points are ``x_j = origin + j * spacing`` for ``j = 0 .. n-1``.
    If `origin` is not given it defaults to 0 for a periodic grid and to
    ``-(n - 1) * spacing / 2`` (grid centered on x = 0) for a dirichlet one.

    The boundary closure decides how operator stencils treat couplings
    that leave the grid: "periodic" wraps indices modulo `n`, "dirichlet"
    drops them (the state is implicitly zero outside the box).
    """

    n: int
    spacing: float
    boundary: Boundary = "dirichlet"
    origin: float | None = None  # resolved to a float in __post_init__

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 2:
            raise ValueError(f"grid needs at least 2 points, got n={self.n}")
        if not self.spacing > 0:
            raise ValueError(f"grid spacing must be positive, got {self.spacing}")
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"boundary must be one of {BOUNDARIES}, got {self.boundary!r}")
        if self.origin is None:
            default = 0.0 if self.boundary == "periodic" else -(self.n - 1) * self.spacing / 2.0
            object.__setattr__(self, "origin", default)

    @property
    def length(self) -> float:
        """Total grid length ``n * spacing``."""
        return self.n * self.spacing

    @property
    def points(self) -> np.ndarray:
        return self.origin + self.spacing * np.arange(self.n)


@dataclass(frozen=True)
class PhysScale:
    """Unit scale: ``hbar`` and ``hbar^2 / (2 mu)``.

    The defaults (both 1) give Rydberg-style units: energies in Ry when
    lengths are in bohr.
    """

    hbar: float = 1.0
    hbar2_over_2mu: float = 1.0

    def __post_init__(self):
        if not self.hbar > 0:
            raise ValueError(f"hbar must be positive, got {self.hbar}")
        if not self.hbar2_over_2mu > 0:
            raise ValueError(f"hbar2_over_2mu must be positive, got {self.hbar2_over_2mu}")
