"""Central finite-difference weights for first and second derivatives.

The weights come from a closed form rather than from a linear solve: the
antisymmetric first-derivative (momentum) weights are

    W_m = 1 / (2 a m omega(M, m)),        m = 1 .. M,

and the symmetric second-derivative (kinetic) weights are

    c_m = 1 / (a^2 m^2 omega(M, m)),      c_0 = -2 sum_l 1 / (a^2 l^2 omega(M, l)),

where ``omega(M, m)`` is the product of ``1 - (m/l)^2`` over the other
offsets l. The quantum matrix elements follow as ``-i hbar W_m`` for the
momentum operator and ``-(hbar^2 / 2 mu) c_m`` for the kinetic one.

As the order M grows the weights approach the ones obtained by
differentiating the sinc (Whittaker cardinal) interpolant, which is the
pseudospectral limit; `infinite_order_momentum_element` and
`infinite_order_kinetic_element` give those limits directly.

`fornberg_weights` provides an independent route to the same weights and
is used as an oracle in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import PhysScale

#: Largest stencil order for which weights are generated.  The omega
#: products and the weight magnitudes stay comfortably inside float64 for
#: orders up to ~30; beyond that nothing in this package needs material
#: weights, so the cap is enforced rather than worked around.
MAX_ORDER = 30


def check_order(order: int, cap: int | None = MAX_ORDER) -> int:
    """Validate a stencil order (integer, 1 <= order <= cap)."""
    if isinstance(order, bool) or not isinstance(order, (int, np.integer)):
        raise ValueError(f"stencil order must be an integer, got {order!r}")
    if order < 1:
        raise ValueError(f"stencil order must be >= 1, got {order}")
    if cap is not None and order > cap:
        raise ValueError(f"stencil order {order} exceeds the supported cap {cap}")
    return int(order)


def omega(order: int, m: int) -> float:
    """Product of ``1 - (m/l)**2`` over ``l = 1..order``, ``l != m``.

    This is the denominator entering every closed-form weight.  The empty
    product (order 1) is 1.  Any order >= 1 is accepted here; only weight
    generation enforces `MAX_ORDER`.  For ``m`` of a few hundred the
    product magnitude can overflow to inf, which downstream sums treat as
    a vanishing reciprocal.

    >>> omega(1, 1)
    1.0
    >>> omega(2, 2)
    -3.0
    """
    order = check_order(order, cap=None)
    if not 1 <= m <= order:
        raise ValueError(f"offset m must satisfy 1 <= m <= {order}, got {m}")
    out = 1.0
    for l in range(1, order + 1):
        if l != m:
            out *= 1.0 - (m / l) ** 2
    return out


def _omega_values(order: int) -> np.ndarray:
    """omega(order, m) for m = 1..order, computed in one sweep.

    At orders of several hundred the products for the largest offsets
    overflow; they are left as inf, which callers treat as a vanishing
    reciprocal.
    """
    ratios = np.arange(1, order + 1, dtype=float)
    out = np.empty(order)
    with np.errstate(over="ignore"):
        for m in range(1, order + 1):
            factors = 1.0 - (m / ratios) ** 2
            factors[m - 1] = 1.0
            out[m - 1] = np.prod(factors)
    return out


@dataclass(frozen=True)
class MomentumStencil:
    """Antisymmetric first-derivative weights W_m for m = 1..order.

    Only the positive offsets are stored; the full stencil has
    ``W_{-m} = -W_m`` and ``W_0 = 0``.  Units are 1/length.  The momentum
    matrix element at offset m is ``-i hbar W_m``.
    """

    order: int
    spacing: float
    weights: np.ndarray

    def full(self) -> np.ndarray:
        """Signed stencil over offsets -order..order (length 2*order + 1)."""
        return np.concatenate([-self.weights[::-1], [0.0], self.weights])


@dataclass(frozen=True)
class KineticStencil:
    """Symmetric second-derivative weights: diagonal c_0 and c_m for m >= 1.

    Convention: ``d2psi/dx2 ~ sum_m c_m psi(x_{j+m})`` with ``c_{-m} = c_m``.
    Units are 1/length^2.  The kinetic matrix element at offset m is
    ``-(hbar^2 / 2 mu) c_m``.
    """

    order: int
    spacing: float
    diag: float
    offdiag: np.ndarray

    def full(self) -> np.ndarray:
        """Symmetric stencil over offsets -order..order."""
        return np.concatenate([self.offdiag[::-1], [self.diag], self.offdiag])


def momentum_weights(order: int, spacing: float) -> MomentumStencil:
    """First-derivative weights ``W_m = 1 / (2 a m omega(order, m))``.

    >>> momentum_weights(1, 1.0).weights
    array([0.5])
    """
    order = check_order(order)
    if not spacing > 0:
        raise ValueError(f"spacing must be positive, got {spacing}")
    om = _omega_values(order)
    m = np.arange(1, order + 1)
    return MomentumStencil(order, spacing, 1.0 / (2.0 * spacing * m * om))


def kinetic_weights(order: int, spacing: float) -> KineticStencil:
    """Second-derivative weights ``c_m = 1 / (a^2 m^2 omega(order, m))``.

    The diagonal ``c_0 = -2 sum_l c_l`` makes the stencil annihilate
    constants exactly.

    >>> kinetic_weights(1, 1.0).full()
    array([ 1., -2.,  1.])
    """
    order = check_order(order)
    if not spacing > 0:
        raise ValueError(f"spacing must be positive, got {spacing}")
    om = _omega_values(order)
    m = np.arange(1, order + 1)
    offdiag = 1.0 / (spacing**2 * m**2 * om)
    return KineticStencil(order, spacing, -2.0 * float(np.sum(offdiag)), offdiag)


def fornberg_weights(deriv: int, order: int) -> np.ndarray:
    """Central-difference weights of the `deriv`-th derivative, unit spacing.

    Independent oracle for the closed-form weights, computed with the
    standard recursive algorithm for finite-difference coefficients on the
    points ``-order .. order``.  Returns the full stencil of
    ``2 * order + 1`` weights.  Only first and second derivatives are
    supported.  The result is checked internally against monomials up to
    degree ``2 * order`` before it is returned.
    """
    if deriv not in (1, 2):
        raise ValueError(f"only derivative orders 1 and 2 are supported, got {deriv}")
    order = check_order(order)
    x = np.arange(-order, order + 1, dtype=float)
    npts = x.size
    c = np.zeros((npts, deriv + 1))
    c[0, 0] = 1.0
    c1 = 1.0
    c4 = x[0]
    for i in range(1, npts):
        mn = min(i, deriv)
        c2 = 1.0
        c5 = c4
        c4 = x[i]
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    weights = c[:, deriv].copy()

    # Exactness on x^p up to degree 2*order is what defines the stencil;
    # fail loudly if the recursion ever degraded.
    for p in range(2 * order + 1):
        applied = float(np.sum(weights * x**p))
        expected = math.factorial(deriv) if p == deriv else 0.0
        scale = max(1.0, float(np.max(np.abs(weights * x**p))))
        if abs(applied - expected) > 1e-9 * scale:
            raise RuntimeError(
                f"finite-difference weights failed the monomial check at degree {p}"
            )
    return weights


def moment(stencil: MomentumStencil | KineticStencil, power: int) -> float:
    """Moment sum ``sum_m m**power * w_m`` of a stencil.

    For a momentum stencil the sum runs over the stored positive offsets,
    which is the form the defining conditions take (the negative side
    contributes identically for odd powers and cancels for even ones).
    For a kinetic stencil the sum runs over the full symmetric stencil,
    diagonal included, with the ``0**0 = 1`` convention.
    """
    if power < 0:
        raise ValueError(f"moment power must be >= 0, got {power}")
    if isinstance(stencil, MomentumStencil):
        # float powers: int64 overflows already at 11**19
        m = np.arange(1, stencil.order + 1, dtype=float)
        return float(np.sum(m**power * stencil.weights))
    if isinstance(stencil, KineticStencil):
        m = np.arange(1, stencil.order + 1, dtype=float)
        diag_term = stencil.diag if power == 0 else 0.0
        sides = 2.0 if power % 2 == 0 else 0.0
        return float(diag_term + sides * np.sum(m**power * stencil.offdiag))
    raise TypeError(f"expected a momentum or kinetic stencil, got {type(stencil).__name__}")


def infinite_order_momentum_element(m: int, spacing: float) -> float:
    """Real coefficient r of the infinite-order momentum element ``i hbar r``.

    ``r = (-1)**m / (spacing * m)`` for m != 0, and 0 for m = 0.  These are
    the momentum matrix elements in the sinc (pseudospectral) basis, i.e.
    the limit of the finite-order elements as the order grows.
    """
    if not spacing > 0:
        raise ValueError(f"spacing must be positive, got {spacing}")
    if m == 0:
        return 0.0
    sign = 1.0 if m % 2 == 0 else -1.0
    return sign / (spacing * m)


def infinite_order_kinetic_element(m: int, spacing: float, scale: PhysScale = PhysScale()) -> float:
    """Infinite-order kinetic matrix element at offset m (an energy).

    ``(hbar^2 / 2 mu a^2) * 2 (-1)**m / m**2`` off the diagonal and
    ``(hbar^2 / 2 mu a^2) * pi**2 / 3`` on it: the kinetic matrix in the
    sinc basis, again the large-order limit of the finite stencil.
    """
    if not spacing > 0:
        raise ValueError(f"spacing must be positive, got {spacing}")
    prefactor = scale.hbar2_over_2mu / spacing**2
    if m == 0:
        return prefactor * math.pi**2 / 3.0
    sign = 1.0 if m % 2 == 0 else -1.0
    return prefactor * 2.0 * sign / m**2


def sinc_cardinal(x: float, n: int, spacing: float) -> float:
    """Cardinal sine centered on grid point n: ``sin(pi u) / (pi u)``.

    Here ``u = (x - n * spacing) / spacing``.  Equals 1 at the center
    (removable singularity, taken when ``|x - n a| < 1e-12 a``) and 0 at
    every other grid point.
    """
    if not spacing > 0:
        raise ValueError(f"spacing must be positive, got {spacing}")
    dx = x - n * spacing
    if abs(dx) < 1e-12 * spacing:
        return 1.0
    u = math.pi * dx / spacing
    return math.sin(u) / u
