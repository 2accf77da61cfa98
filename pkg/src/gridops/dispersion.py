"""Analytic eigenvalues of the periodic operators and their error constants.

On a periodic grid of n points the momentum and kinetic operators are
circulant and plane waves diagonalize them, so their eigenvalues have
closed forms indexed by the wavevectors ``k_nu = 2 pi nu / (n a)``:

    p(k)   = (hbar / a)         sum_m sin(m a k) / (m omega(M, m))
    eps(k) = (hbar^2 / 2 mu a^2) sum_m 4 sin^2(m a k / 2) / (m^2 omega(M, m))

Both approach the free-particle values hbar k and (hbar k)^2 / 2 mu from
below as the order M grows or the spacing shrinks; the leading relative
error is ``delta * (k a)**(2 M)`` with the positive constants computed by
`delta_p` and `delta_eps`.  `leading_error_fit` recovers the exponent and
constant numerically from a small-(k a) log-log fit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import numpy as np

from .grid import PhysScale
from .stencil import _omega_values, check_order

#: Error-constant evaluation is done in exact rational arithmetic and is
#: capped where the package has validated it.
MAX_DELTA_ORDER = 12


def wavevectors(n: int, spacing: float) -> np.ndarray:
    """Periodic-grid wavevectors ``k_nu = 2 pi nu / (n a)``, nu = 0..n-1."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"need a positive number of grid points, got {n}")
    if not spacing > 0:
        raise ValueError(f"spacing must be positive, got {spacing}")
    return 2.0 * math.pi * np.arange(n) / (n * spacing)


def momentum_dispersion(order, spacing, scale: PhysScale, k):
    """Momentum eigenvalue(s) p(k) of the order-`order` periodic operator.

    Accepts a scalar or array of wavevectors.  Any order >= 1 is allowed;
    large orders serve as surrogates for the infinite-order limit.
    """
    order = check_order(order, cap=None)
    if not spacing > 0:
        raise ValueError(f"spacing must be positive, got {spacing}")
    om = _omega_values(order)
    m = np.arange(1, order + 1)
    karr = np.atleast_1d(np.asarray(k, dtype=float))
    with np.errstate(over="ignore"):
        terms = np.sin(np.outer(karr, m) * spacing) / (m * om)
    out = scale.hbar / spacing * np.sum(np.where(np.isfinite(terms), terms, 0.0), axis=1)
    return out[0] if np.isscalar(k) or np.ndim(k) == 0 else out


def kinetic_dispersion(order, spacing, scale: PhysScale, k):
    """Kinetic eigenvalue(s) eps(k) of the order-`order` periodic operator."""
    order = check_order(order, cap=None)
    if not spacing > 0:
        raise ValueError(f"spacing must be positive, got {spacing}")
    om = _omega_values(order)
    m = np.arange(1, order + 1)
    karr = np.atleast_1d(np.asarray(k, dtype=float))
    with np.errstate(over="ignore"):
        terms = 4.0 * np.sin(np.outer(karr, m) * spacing / 2.0) ** 2 / (m * m * om)
    out = scale.hbar2_over_2mu / spacing**2 * np.sum(
        np.where(np.isfinite(terms), terms, 0.0), axis=1
    )
    return out[0] if np.isscalar(k) or np.ndim(k) == 0 else out


@dataclass(frozen=True)
class DispersionCurve:
    """Tabulated (nu, k, p, eps) rows for one (order, n, spacing) triple."""

    order: int
    n: int
    spacing: float
    nu: np.ndarray
    wavevector: np.ndarray
    momentum: np.ndarray
    energy: np.ndarray

    def __post_init__(self):
        if abs(self.momentum[0]) > 0 or abs(self.energy[0]) > 0:
            raise ValueError("dispersion rows must start with p = eps = 0 at nu = 0")
        if np.min(self.energy) < -1e-12 * max(1.0, float(np.max(self.energy))):
            raise ValueError("kinetic eigenvalues must be non-negative")


def dispersion_curve(order: int, n: int, spacing: float, scale: PhysScale = PhysScale()) -> DispersionCurve:
    k = wavevectors(n, spacing)
    return DispersionCurve(
        order=order,
        n=n,
        spacing=spacing,
        nu=np.arange(n),
        wavevector=k,
        momentum=momentum_dispersion(order, spacing, scale, k),
        energy=kinetic_dispersion(order, spacing, scale, k),
    )


def _omega_exact(order: int, m: int) -> Fraction:
    """omega as an exact rational: (-1)^(m-1) (M+m)! (M-m)! / (2 (M!)^2)."""
    sign = 1 if m % 2 == 1 else -1
    return Fraction(
        sign * math.factorial(order + m) * math.factorial(order - m),
        2 * math.factorial(order) ** 2,
    )


def _delta_order(order: int) -> int:
    order = check_order(order, cap=None)
    if order > MAX_DELTA_ORDER:
        raise ValueError(
            f"error constants are evaluated for orders up to {MAX_DELTA_ORDER}, got {order}"
        )
    return order


def _weighted_power_sum(order: int) -> Fraction:
    return abs(sum(Fraction(m ** (2 * order)) / _omega_exact(order, m) for m in range(1, order + 1)))


def delta_p(order: int) -> float:
    """Leading momentum error constant: ``p = hbar k [1 - delta_p (k a)^(2M) - ...]``.

    Evaluated as ``2 (M+1) / (2M+2)! * |sum_m m^(2M) / omega(M, m)|`` in
    exact rational arithmetic (the alternating sum cancels catastrophically
    in floating point), then converted to float.  Always positive, which is
    why the momentum eigenvalues converge from below.
    """
    order = _delta_order(order)
    return float(Fraction(2 * (order + 1), math.factorial(2 * order + 2)) * _weighted_power_sum(order))


def delta_eps(order: int) -> float:
    """Leading kinetic error constant; same sum as `delta_p` with prefactor 2/(2M+2)!."""
    order = _delta_order(order)
    return float(Fraction(2, math.factorial(2 * order + 2)) * _weighted_power_sum(order))


@dataclass(frozen=True)
class ErrorCoefficients:
    """Leading error constants for one order: always positive, ratio M + 1."""

    order: int
    delta_p: float
    delta_eps: float

    def __post_init__(self):
        if not (self.delta_p > 0 and self.delta_eps > 0):
            raise ValueError("error constants must be positive")


def error_coefficients(order: int) -> ErrorCoefficients:
    return ErrorCoefficients(order, delta_p(order), delta_eps(order))


@dataclass(frozen=True)
class LeadingErrorFit:
    kind: str
    order: int
    slope: float
    coefficient: float
    n_points: int


def leading_error_fit(
    order: int,
    spacing: float,
    scale: PhysScale,
    k_max_fraction: float,
    kind: Literal["momentum", "kinetic"] = "momentum",
) -> LeadingErrorFit:
    """Fit slope and constant of the small-(k a) dispersion error.

    Least squares of ``log(relative error)`` against ``log(k a)`` on a
    geometric ladder of wavevectors with ``k a`` up to `k_max_fraction`
    (capped at 0.2 so only the leading term matters).  The slope estimates
    ``2 * order`` and ``exp(intercept)`` the corresponding error constant.
    Points whose relative error drowns in rounding are discarded; fewer
    than 3 usable points is reported as an error.
    """
    order = check_order(order)
    if not 0 < k_max_fraction <= 0.2:
        raise ValueError(f"k_max_fraction must be in (0, 0.2], got {k_max_fraction}")
    if kind not in ("momentum", "kinetic"):
        raise ValueError(f"kind must be 'momentum' or 'kinetic', got {kind!r}")

    ka = np.geomspace(k_max_fraction / 4.0, k_max_fraction, 12)
    k = ka / spacing
    if kind == "momentum":
        rel = 1.0 - momentum_dispersion(order, spacing, scale, k) / (scale.hbar * k)
    else:
        rel = 1.0 - kinetic_dispersion(order, spacing, scale, k) / (
            scale.hbar2_over_2mu * k**2
        )
    usable = np.isfinite(rel) & (rel > 1e-15)
    if int(np.sum(usable)) < 3:
        raise ValueError(
            f"degenerate fit: only {int(np.sum(usable))} usable points; "
            "the dispersion error is below rounding at this order"
        )
    design = np.column_stack([np.log(ka[usable]), np.ones(int(np.sum(usable)))])
    (slope, intercept), *_ = np.linalg.lstsq(design, np.log(rel[usable]), rcond=None)
    return LeadingErrorFit(kind, order, float(slope), float(math.exp(intercept)), int(np.sum(usable)))
