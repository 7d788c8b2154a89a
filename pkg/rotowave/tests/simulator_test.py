"""
Pseudo-spectral integration of the linearized equations.
"""

import math
import unittest

import numpy as np

from rotowave import dispersion as d
from rotowave import planewave as pw
from rotowave import simulator as sim
from rotowave.util import InvalidParameterError, StabilityError, NonFiniteFieldError
from . import TestCase

TWO_PI = 2 * math.pi

def eigenmode(grid, alpha=2.0, m=(1, 1), branch=d.PLUS):
    params = d.FluidParams(alpha)
    return params, pw.build_eigenmode(params, grid.wave_vector(*m), branch)

class TestGrid(TestCase):
    def test_validation(self):
        self.assertRaises(InvalidParameterError, sim.Grid, 12, 16, 1.0, 1.0)
        self.assertRaises(InvalidParameterError, sim.Grid, 4, 16, 1.0, 1.0)
        self.assertRaises(InvalidParameterError, sim.Grid, 16, 16, 0.0, 1.0)
        self.assertRaises(InvalidParameterError, sim.Grid, 16, 16, 1.0, float("inf"))

    def test_spectrum(self):
        grid = sim.Grid(8, 16, TWO_PI, 2 * TWO_PI)
        K1, K3 = grid.wavenumbers()
        self.assertEqual(K1.shape, (8, 16))
        self.assertAlmostEqual(K1[1, 0], 1.0)
        self.assertAlmostEqual(K3[0, 1], 0.5)
        X1, X3 = grid.coordinates()
        self.assertAlmostEqual(X1[1, 0], TWO_PI / 8)
        self.assertAlmostEqual(X3[0, 1], TWO_PI / 8)
        self.assertAlmostEqual(grid.cell_area, (TWO_PI / 8) ** 2)

    def test_wave_vector(self):
        grid = sim.Grid(8, 8, TWO_PI, TWO_PI)
        self.assertEqual(grid.wave_vector(3, -2), (3.0, -2.0))
        self.assertRaises(InvalidParameterError, grid.wave_vector, 4, 0)

class TestDynamics(TestCase):
    def setUp(self):
        self.grid = sim.Grid(16, 16, TWO_PI, TWO_PI)

    def test_zero_state(self):
        params = d.FluidParams(1)
        zero = sim.FieldState.zeros(self.grid)
        tendency = sim.rhs(params, self.grid, zero)
        self.assertEqual(tendency.norm(), 0.0)
        config = sim.SimConfig(params, self.grid, sim.default_dt(params, self.grid), 1)
        self.assertEqual(sim.step(config, zero).norm(), 0.0)
        self.assertEqual(sim.total_energy(params, self.grid, zero), 0.0)

    def test_rhs_matches_mode(self):
        params, mode = eigenmode(self.grid)
        state = sim.state_from_mode(self.grid, mode, 0.4)
        exact = pw.mode_time_derivative(mode, self.grid.coordinates(), 0.4)
        tendency = sim.rhs(params, self.grid, state)
        for name, actual, expected in zip(sim.FIELDS, tendency.fields, exact):
            self.assertLessEqual(np.max(np.abs(actual - expected)), 1e-12 * max(1.0, np.max(np.abs(expected))), name)

    def test_non_finite(self):
        state = sim.FieldState.zeros(self.grid)
        state.p[3, 4] = float("nan")
        self.assertRaises(NonFiniteFieldError, sim.rhs, d.FluidParams(1), self.grid, state)

    def test_uniform_tendencies(self):
        params = d.FluidParams(1.5)
        state = sim.FieldState(*(np.full(self.grid.shape, value) for value in (0.3, -0.7, 0.2, 0.4)), t=0.0)
        tendency = sim.rhs(params, self.grid, state)
        for actual, expected in zip(tendency.fields, (1.5 * -0.7, -1.5 * 0.3, 0.0, 0.0)):
            self.assertLessEqual(np.max(np.abs(actual - expected)), 1e-13)

    def test_transverse_only(self):
        zero = np.zeros(self.grid.shape)
        v2 = sim.random_state(self.grid, seed=6, mmax=3).v2
        tendency = sim.rhs(d.FluidParams(0), self.grid, sim.FieldState(zero, v2, zero, zero, t=0.0))
        self.assertEqual(tendency.norm(), 0.0)

    def test_inertial_oscillation(self):
        # a uniform flow turns with the rotation: (v1, v2) = (cos t, -sin t)
        params = d.FluidParams(1)
        dt = 0.01
        initial = sim.FieldState.zeros(self.grid)
        initial.v1[:] = 1.0
        final = sim.step(sim.SimConfig(params, self.grid, dt, 1), initial)
        self.assertLessEqual(np.max(np.abs(final.v1 - math.cos(dt))), dt ** 5)
        self.assertLessEqual(np.max(np.abs(final.v2 + math.sin(dt))), dt ** 5)
        self.assertLessEqual(np.max(np.abs(final.v3)), 1e-15)
        self.assertLessEqual(np.max(np.abs(final.p)), 1e-15)

    def test_no_rotation(self):
        params = d.FluidParams(0)
        initial = sim.random_state(self.grid, seed=8, mmax=3)
        config = sim.SimConfig(params, self.grid, sim.default_dt(params, self.grid), 200, record_every=200)
        final = sim.run(config, initial).snapshots[-1]
        self.assertTrue(np.array_equal(final.v2, initial.v2))
        self.assertGreater(final.combine(initial, -1.0).norm(), 0.0)

    def test_stays_real(self):
        params = d.FluidParams(1.5, 0.5)
        initial = sim.random_state(self.grid, seed=9, mmax=7)
        config = sim.SimConfig(params, self.grid, sim.default_dt(params, self.grid), 20, record_every=20)
        final = sim.run(config, initial).snapshots[-1]
        for f in final.fields:
            self.assertFalse(np.iscomplexobj(f))
        self.assertLessEqual(sim.imaginary_leakage(self.grid, final), 1e-12)

    def test_one_period(self):
        params, mode = eigenmode(self.grid)
        period = TWO_PI / mode.gamma
        config = sim.SimConfig(params, self.grid, period / 200, 200, record_every=200)
        initial = sim.state_from_mode(self.grid, mode)
        record = sim.run(config, initial)
        final = record.snapshots[-1]
        self.assertAlmostEqual(final.t, period, delta=1e-12)
        self.assertLessEqual(final.combine(initial, -1.0).norm() / initial.norm(), 1e-6)
        energy = record.energy[:, 1]
        self.assertLessEqual(np.max(np.abs(energy - energy[0])) / energy[0], 1e-8)

    def test_stability(self):
        params = d.FluidParams(1)
        limit = sim.stability_limit(params, self.grid)
        self.assertRaises(StabilityError, sim.run,
                          sim.SimConfig(params, self.grid, 1.01 * limit, 1), sim.FieldState.zeros(self.grid))
        self.assertRaises(StabilityError, sim.step,
                          sim.SimConfig(params, self.grid, 1.01 * limit, 1), sim.FieldState.zeros(self.grid))
        self.assertLess(sim.default_dt(params, self.grid), limit)

    def test_shape(self):
        params = d.FluidParams(1)
        config = sim.SimConfig(params, self.grid, 0.01, 1)
        self.assertRaises(InvalidParameterError, sim.step, config, sim.FieldState.zeros(sim.Grid(8, 8, 1.0, 1.0)))

    def test_config(self):
        params = d.FluidParams(1)
        self.assertRaises(InvalidParameterError, sim.SimConfig, params, self.grid, 0.0, 1)
        self.assertRaises(InvalidParameterError, sim.SimConfig, params, self.grid, 0.01, -1)
        self.assertRaises(InvalidParameterError, sim.SimConfig, params, self.grid, 0.01, 1, 0)
        self.assertRaises(InvalidParameterError, sim.SimConfig, params, self.grid, 0.01, 1, 1, (16, 0))

class TestEnergy(TestCase):
    def setUp(self):
        self.grid = sim.Grid(16, 16, TWO_PI, TWO_PI)
        self.params = d.FluidParams(1.5, 0.5)

    def test_quadratic(self):
        state = sim.random_state(self.grid, seed=11)
        doubled = state.combine(state, 1.0)
        self.assertRelClose(sim.total_energy(self.params, self.grid, doubled),
                            4 * sim.total_energy(self.params, self.grid, state))

    def test_pressure_weight(self):
        state = sim.FieldState.zeros(self.grid)
        state.p[:] = 1.0
        self.assertRelClose(sim.total_energy(self.params, self.grid, state), 0.5 / 0.25 * TWO_PI ** 2)

class TestRun(TestCase):
    def setUp(self):
        self.grid = sim.Grid(8, 8, TWO_PI, TWO_PI)
        self.params = d.FluidParams(1)

    def test_no_steps(self):
        initial = sim.random_state(self.grid, seed=1)
        record = sim.run(sim.SimConfig(self.params, self.grid, 0.01, 0), initial)
        self.assertEqual(len(record.snapshots), 1)
        self.assertIs(record.snapshots[0], initial)
        self.assertEqual(record.probe.shape, (1, 5))
        self.assertEqual(record.energy.shape, (1, 2))

    def test_recording(self):
        initial = sim.random_state(self.grid, seed=2)
        config = sim.SimConfig(self.params, self.grid, 0.01, 25, record_every=10, probe=(2, 3))
        record = sim.run(config, initial)
        self.assertEqual([s.t for s in record.snapshots], [0.0, record.snapshots[1].t, record.snapshots[2].t])
        self.assertAlmostEqual(record.snapshots[2].t, 0.2, delta=1e-14)
        self.assertEqual(record.probe.shape, (26, 5))
        self.assertEqual(record.probe[0, 4], initial.p[2, 3])
        self.assertEqual(record.probe[20, 1], record.snapshots[2].v1[2, 3])

    def test_max_speed(self):
        initial = sim.random_state(self.grid, seed=3)
        every = sim.run(sim.SimConfig(self.params, self.grid, 0.05, 40, record_every=1), initial)
        sparse = sim.run(sim.SimConfig(self.params, self.grid, 0.05, 40, record_every=40), initial)
        speeds = [float(np.max(np.sqrt(s.v1 ** 2 + s.v2 ** 2 + s.v3 ** 2))) for s in every.snapshots]
        self.assertEqual(every.max_speed, max(speeds))
        self.assertEqual(sparse.max_speed, every.max_speed)

    def test_deterministic(self):
        config = sim.SimConfig(self.params, self.grid, 0.02, 30, record_every=5)
        first = sim.run(config, sim.random_state(self.grid, seed=5))
        second = sim.run(config, sim.random_state(self.grid, seed=5))
        self.assertTrue(np.array_equal(first.probe, second.probe))
        self.assertTrue(np.array_equal(first.energy, second.energy))
        for a, b in zip(first.snapshots, second.snapshots):
            for f, g in zip(a.fields, b.fields):
                self.assertTrue(np.array_equal(f, g))

class TestInitialStates(TestCase):
    def test_random_state(self):
        grid = sim.Grid(16, 8, TWO_PI, TWO_PI)
        state = sim.random_state(grid, seed=4, mmax=2)
        spectrum = np.abs(np.fft.fft2(state.p))
        K1, K3 = grid.wavenumbers()
        outside = (np.abs(K1) > 2.5) | (np.abs(K3) > 2.5)
        self.assertLessEqual(np.max(spectrum[outside]), 1e-10 * np.max(spectrum))
        self.assertRaises(InvalidParameterError, sim.random_state, grid, 4, 4)

    def test_leakage(self):
        grid = sim.Grid(16, 16, TWO_PI, TWO_PI)
        self.assertLessEqual(sim.imaginary_leakage(grid, sim.random_state(grid, seed=9, mmax=7)), 1e-12)

    def test_state_from_mode(self):
        grid = sim.Grid(8, 8, TWO_PI, TWO_PI)
        _, mode = eigenmode(grid)
        state = sim.state_from_mode(grid, mode, 0.25)
        self.assertEqual(state.t, 0.25)
        self.assertAlmostEqual(state.p[0, 0], math.cos(mode.gamma * 0.25), delta=1e-15)

if __name__ == "__main__":
    unittest.main()
