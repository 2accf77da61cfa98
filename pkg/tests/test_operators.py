"""Banded operator assembly, boundary closure, and matvec against dense oracles."""

import numpy as np
import pytest

from gridops import (
    GridSpec,
    PhysScale,
    apply,
    build_hamiltonian,
    build_kinetic_operator,
    build_momentum_operator,
    inf_norm,
    kinetic_dispersion,
    momentum_dispersion,
    sample_potential,
    to_dense,
)


class TestGridSpec:
    def test_points_and_length(self):
        grid = GridSpec(5, 0.5, "periodic")
        np.testing.assert_allclose(grid.points, [0.0, 0.5, 1.0, 1.5, 2.0])
        assert grid.length == pytest.approx(2.5)

    def test_dirichlet_grid_is_centered_by_default(self):
        grid = GridSpec(4, 1.0, "dirichlet")
        np.testing.assert_allclose(grid.points, [-1.5, -0.5, 0.5, 1.5])

    def test_explicit_origin(self):
        grid = GridSpec(3, 1.0, "periodic", origin=2.0)
        np.testing.assert_allclose(grid.points, [2.0, 3.0, 4.0])

    def test_validation(self):
        with pytest.raises(ValueError):
            GridSpec(1, 1.0, "periodic")
        with pytest.raises(ValueError):
            GridSpec(8, 0.0, "periodic")
        with pytest.raises(ValueError):
            GridSpec(8, 1.0, "reflecting")

    def test_phys_scale_validation(self):
        with pytest.raises(ValueError):
            PhysScale(hbar=0.0)
        with pytest.raises(ValueError):
            PhysScale(hbar2_over_2mu=-1.0)


class TestMomentumOperator:
    def test_small_periodic_structure(self):
        grid = GridSpec(4, 1.0, "periodic")
        dense = to_dense(build_momentum_operator(grid, 1))
        assert dense[0, 0] == 0
        assert dense[0, 1] == pytest.approx(-0.5j)
        assert dense[0, 3] == pytest.approx(+0.5j)  # wraparound coupling
        assert dense[0, 2] == 0

    def test_periodic_eigenvalues_lowest_order(self):
        grid = GridSpec(8, 1.0, "periodic")
        dense = to_dense(build_momentum_operator(grid, 1))
        eigs = np.sort(np.linalg.eigvalsh(dense))
        expected = np.sort(np.sin(2.0 * np.pi * np.arange(8) / 8.0))
        np.testing.assert_allclose(eigs, expected, atol=1e-12)

    def test_small_dirichlet_structure(self):
        grid = GridSpec(3, 1.0, "dirichlet")
        dense = to_dense(build_momentum_operator(grid, 1))
        expected = np.array(
            [[0, -0.5j, 0], [0.5j, 0, -0.5j], [0, 0.5j, 0]], dtype=complex
        )
        np.testing.assert_allclose(dense, expected, atol=1e-15)

    def test_plane_waves_are_eigenvectors(self):
        # v_j = exp(+i k x_j) pairs with the analytic eigenvalue branch
        grid = GridSpec(16, 0.7, "periodic")
        scale = PhysScale(hbar=1.3)
        op = build_momentum_operator(grid, 3, scale)
        x = grid.points
        for nu in range(grid.n):
            k = 2.0 * np.pi * nu / grid.length
            v = np.exp(1j * k * x)
            p = momentum_dispersion(3, grid.spacing, scale, k)
            residual = np.linalg.norm(apply(op, v) - p * v)
            assert residual <= 1e-12 * max(1.0, abs(p)) * np.linalg.norm(v)

    def test_hbar_scales_elements(self):
        grid = GridSpec(8, 1.0, "periodic")
        base = to_dense(build_momentum_operator(grid, 2, PhysScale(hbar=1.0)))
        scaled = to_dense(build_momentum_operator(grid, 2, PhysScale(hbar=2.5)))
        np.testing.assert_allclose(scaled, 2.5 * base, atol=1e-15)

    def test_stencil_must_fit_in_hard_wall_box(self):
        with pytest.raises(ValueError):
            build_momentum_operator(GridSpec(6, 1.0, "dirichlet"), 3)

    def test_periodic_folding_keeps_plane_waves_exact(self):
        # wrapped couplings sum into the circulant; the analytic eigenvalues
        # still apply even when 2 * order + 1 exceeds the grid size
        grid = GridSpec(8, 1.0, "periodic")
        op = build_momentum_operator(grid, 6)
        x = grid.points
        for nu in range(8):
            k = 2.0 * np.pi * nu / grid.length
            v = np.exp(1j * k * x)
            p = momentum_dispersion(6, 1.0, PhysScale(), k)
            assert np.linalg.norm(apply(op, v) - p * v) <= 1e-12 * np.linalg.norm(v)


class TestKineticOperator:
    def test_annihilates_constants_periodic(self):
        for order in (1, 2, 5):
            grid = GridSpec(32, 0.5, "periodic")
            op = build_kinetic_operator(grid, order)
            out = apply(op, np.ones(grid.n))
            assert np.max(np.abs(out)) <= 1e-12 * inf_norm(op)

    def test_periodic_spectrum_matches_analytic(self):
        grid = GridSpec(32, 1.0, "periodic")
        op = build_kinetic_operator(grid, 2)
        eigs = np.sort(np.linalg.eigvalsh(to_dense(op)))
        k = 2.0 * np.pi * np.arange(32) / 32.0
        expected = np.sort(kinetic_dispersion(2, 1.0, PhysScale(), k))
        np.testing.assert_allclose(eigs, expected, atol=1e-10)

    def test_periodic_positive_semidefinite(self):
        grid = GridSpec(24, 0.3, "periodic")
        for order in (1, 3, 6):
            eigs = np.linalg.eigvalsh(to_dense(build_kinetic_operator(grid, order)))
            assert np.min(eigs) >= -1e-12 * np.max(eigs)

    def test_dirichlet_lowest_order_spectrum(self):
        # tridiagonal Toeplitz closed form: (2 - 2 cos(pi j / (N+1))) / a^2
        n, spacing = 37, 0.3
        grid = GridSpec(n, spacing, "dirichlet")
        eigs = np.sort(np.linalg.eigvalsh(to_dense(build_kinetic_operator(grid, 1))))
        j = np.arange(1, n + 1)
        expected = np.sort((2.0 - 2.0 * np.cos(np.pi * j / (n + 1))) / spacing**2)
        np.testing.assert_allclose(eigs, expected, atol=1e-10)

    def test_energy_scale_prefactor(self):
        grid = GridSpec(16, 1.0, "periodic")
        base = to_dense(build_kinetic_operator(grid, 2, PhysScale()))
        scaled = to_dense(build_kinetic_operator(grid, 2, PhysScale(hbar2_over_2mu=3.0)))
        np.testing.assert_allclose(scaled, 3.0 * base, atol=1e-15)


class TestHamiltonian:
    def test_zero_potential_equals_kinetic(self):
        grid = GridSpec(20, 0.5, "dirichlet")
        ham = build_hamiltonian(grid, 3, PhysScale(), np.zeros(20))
        kin = build_kinetic_operator(grid, 3, PhysScale())
        np.testing.assert_array_equal(ham.bands, kin.bands)

    def test_constant_potential_shifts_spectrum(self):
        grid = GridSpec(24, 0.5, "dirichlet")
        scale = PhysScale()
        base = np.linalg.eigvalsh(to_dense(build_hamiltonian(grid, 2, scale, np.zeros(24))))
        shifted = np.linalg.eigvalsh(
            to_dense(build_hamiltonian(grid, 2, scale, np.full(24, 1.75)))
        )
        np.testing.assert_allclose(shifted, base + 1.75, atol=1e-10)

    def test_length_mismatch(self):
        grid = GridSpec(16, 1.0, "dirichlet")
        with pytest.raises(ValueError):
            build_hamiltonian(grid, 2, PhysScale(), np.zeros(15))

    def test_nonfinite_potential(self):
        grid = GridSpec(16, 1.0, "dirichlet")
        values = np.zeros(16)
        values[3] = np.inf
        with pytest.raises(ValueError):
            build_hamiltonian(grid, 2, PhysScale(), values)


class TestSamplePotential:
    def test_zero_function(self):
        grid = GridSpec(9, 1.0, "dirichlet")
        np.testing.assert_array_equal(sample_potential(lambda x: 0.0 * x, grid), np.zeros(9))

    def test_well_minimum_at_center(self):
        grid = GridSpec(9, 0.5, "dirichlet")  # odd count puts a point at x = 0
        depth, width = 21.0, 1.4
        v = sample_potential(lambda x: -depth / np.cosh(width * x) ** 2, grid)
        assert v[4] == pytest.approx(-depth)
        assert np.min(v) == pytest.approx(-depth)

    def test_symmetric_sampling(self):
        grid = GridSpec(10, 0.7, "dirichlet")
        v = sample_potential(lambda x: x**2, grid)
        np.testing.assert_allclose(v, v[::-1], atol=1e-14)

    def test_rejects_nonfinite_samples(self):
        grid = GridSpec(9, 1.0, "dirichlet")  # odd count: pole of 1/x is on the grid
        with np.errstate(divide="ignore"):
            with pytest.raises(ValueError):
                sample_potential(lambda x: 1.0 / x, grid)
        with pytest.raises(ValueError):
            sample_potential(lambda x: np.where(x > 0, x, np.nan), grid)


class TestHermiticityAndClosure:
    @pytest.mark.parametrize("boundary", ["periodic", "dirichlet"])
    def test_random_operators_are_hermitian(self, boundary):
        rng = np.random.default_rng(7)
        for _ in range(8):
            order = int(rng.integers(1, 7))
            n = int(rng.integers(2 * order + 1, 200))
            grid = GridSpec(n, float(rng.uniform(0.1, 2.0)), boundary)
            scale = PhysScale(hbar=float(rng.uniform(0.5, 2)), hbar2_over_2mu=float(rng.uniform(0.5, 2)))
            v = rng.normal(size=n)
            for op in (
                build_momentum_operator(grid, order, scale),
                build_kinetic_operator(grid, order, scale),
                build_hamiltonian(grid, order, scale, v),
            ):
                dense = to_dense(op)
                defect = np.max(np.abs(dense - dense.conj().T))
                assert defect <= 1e-14 * max(1.0, np.max(np.abs(dense)))

    def test_periodic_rows_are_cyclic_shifts(self):
        grid = GridSpec(12, 0.8, "periodic")
        for builder in (build_momentum_operator, build_kinetic_operator):
            dense = to_dense(builder(grid, 3))
            for r in range(12):
                np.testing.assert_array_equal(dense[r], np.roll(dense[0], r))

    def test_dirichlet_has_no_wraparound(self):
        grid = GridSpec(10, 1.0, "dirichlet")
        dense = to_dense(build_kinetic_operator(grid, 3))
        assert np.all(dense[:3, -3:][np.triu_indices(3)] == 0.0)
        assert np.all(dense[0, 4:] == 0.0)


class TestApply:
    def test_matches_dense_multiply(self):
        rng = np.random.default_rng(11)
        grid = GridSpec(50, 0.9, "dirichlet")
        scale = PhysScale()
        v = rng.normal(size=50) + 1j * rng.normal(size=50)
        pot = rng.normal(size=50)
        for op in (
            build_momentum_operator(grid, 4, scale),
            build_kinetic_operator(grid, 4, scale),
            build_hamiltonian(grid, 4, scale, pot),
        ):
            direct = to_dense(op) @ v
            banded = apply(op, v)
            assert np.max(np.abs(direct - banded)) <= 1e-13 * max(1.0, np.max(np.abs(direct)))

    def test_matches_dense_multiply_periodic(self):
        rng = np.random.default_rng(13)
        grid = GridSpec(41, 0.6, "periodic")
        v = rng.normal(size=41)
        for op in (
            build_momentum_operator(grid, 5),
            build_kinetic_operator(grid, 5),
        ):
            direct = to_dense(op) @ v
            banded = apply(op, v)
            assert np.max(np.abs(direct - banded)) <= 1e-13 * max(1.0, np.max(np.abs(direct)))

    def test_length_mismatch(self):
        op = build_kinetic_operator(GridSpec(16, 1.0, "periodic"), 2)
        with pytest.raises(ValueError):
            apply(op, np.ones(15))

    def test_inf_norm_bounds_spectrum(self):
        grid = GridSpec(30, 0.5, "periodic")
        op = build_kinetic_operator(grid, 3)
        eigs = np.linalg.eigvalsh(to_dense(op))
        assert np.max(np.abs(eigs)) <= inf_norm(op) * (1 + 1e-14)
