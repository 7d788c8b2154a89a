"""
Dispersion relation, velocities and regime classification.
"""

import math
import unittest

import numpy as np

from rotowave import dispersion as d
from rotowave.util import InvalidParameterError, DegenerateWaveVectorError, \
    DegenerateGroupVelocityError, FormulaSingularityError
from . import TestCase

SQRT5 = math.sqrt(5)

class TestTypes(TestCase):
    def test_fluid_params(self):
        params = d.FluidParams(2)
        self.assertEqual(params, (2.0, 1.0, 1.0))
        self.assertRaises(InvalidParameterError, d.FluidParams, -1.0)
        self.assertRaises(InvalidParameterError, d.FluidParams, 1.0, 0.0)
        self.assertRaises(InvalidParameterError, d.FluidParams, 1.0, 1.0, 2.0)
        self.assertRaises(InvalidParameterError, d.FluidParams, float("nan"))

    def test_wave_vector(self):
        self.assertRaises(InvalidParameterError, d.WaveVector, float("inf"), 0.0)
        self.assertEqual(d.WaveVector(3, 4).magnitude, 5.0)
        self.assertEqual(d.WaveVector.from_polar(2.0, 0.0), (0.0, 2.0))
        self.assertEqual(d.WaveVector.from_polar(2.0, math.pi / 2), (2.0, 0.0))
        self.assertAlmostEqual(d.WaveVector.from_polar(2.0, math.pi / 3).theta, math.pi / 3, delta=1e-15)

    def test_wave_angle_symmetry(self):
        self.assertEqual(d.wave_angle(d.WaveVector(1, -1)), d.wave_angle(d.WaveVector(-1, 1)))
        self.assertAlmostEqual(d.wave_angle(d.WaveVector(1, 1)), math.pi / 4)

    def test_regime(self):
        self.assertRaises(InvalidParameterError, d.PropagationRegime, "Unknown")
        self.assertRaises(InvalidParameterError, d.PropagationRegime, d.EVANESCENT_PERPENDICULAR, 0.0)

class TestResidual(TestCase):
    def test_rest_fluid(self):
        self.assertEqual(d.dispersion_residual(d.FluidParams(0), d.WaveVector(1, 0), 1.0), 0.0)

    def test_axial(self):
        params = d.FluidParams(1)
        for k3 in (0.5, 1.0, 3.0, 17.0):
            self.assertEqual(d.dispersion_residual(params, d.WaveVector(0, k3), k3), 0.0)

    def test_oblique(self):
        residual = d.dispersion_residual(d.FluidParams(2), d.WaveVector(1, 1), 2.2882456)
        self.assertLessEqual(abs(residual), 1e-6)

    def test_vectorized(self):
        values = d.dispersion_residual(d.FluidParams(0), d.WaveVector(3, 4), np.array([0.0, 5.0, 1.0]))
        self.assertEqual(list(values), [0.0, 0.0, 1.0 - 25.0])

    def test_operator_symbol(self):
        params, kvec = d.FluidParams(1.5, 2.0), d.WaveVector(0.3, 0.7)
        self.assertRelClose(d.operator_symbol(params, kvec, 0.9), d.dispersion_residual(params, kvec, 0.9) / 4.0)

class TestBranches(TestCase):
    def test_rest_fluid(self):
        self.assertEqual(d.frequency_branches(d.FluidParams(0), d.WaveVector(3, 4)), (0.0, 5.0))

    def test_oblique(self):
        branches = d.frequency_branches(d.FluidParams(2), d.WaveVector(1, 1))
        self.assertRelClose(branches.gamma_minus, math.sqrt(3 - SQRT5))
        self.assertRelClose(branches.gamma_plus, math.sqrt(3 + SQRT5))
        self.assertAlmostEqual(branches.gamma_minus, 0.8740320, places=7)
        self.assertAlmostEqual(branches.gamma_plus, 2.2882456, places=7)

    def test_perpendicular(self):
        branches = d.frequency_branches(d.FluidParams(1), d.WaveVector(1, 0))
        self.assertEqual(branches.gamma_minus, 0.0)
        self.assertRelClose(branches.gamma_plus, math.sqrt(2))

    def test_zero_wave_vector(self):
        self.assertRaises(DegenerateWaveVectorError, d.frequency_branches, d.FluidParams(1), d.WaveVector(0, 0))

    def test_ordering(self):
        rng = np.random.default_rng(7)
        n = 5000
        alpha, c = rng.uniform(0, 10, n), rng.uniform(0.1, 10, n)
        k, phi = rng.uniform(1e-3, 100, n), rng.uniform(0, 2 * np.pi, n)
        kvec = d.WaveVector(k * np.sin(phi), k * np.cos(phi))
        branches = d.frequency_branches(d.FluidParams(alpha, c), kvec)
        slack = 1e-12 * (alpha + c * k)
        self.assertTrue(np.all(branches.gamma_minus >= 0))
        self.assertTrue(np.all(branches.gamma_minus <= alpha * np.abs(np.cos(phi)) + slack))
        self.assertTrue(np.all(branches.gamma_plus >= np.maximum(alpha, c * k) - slack))

    def test_select_branch(self):
        branches = d.DispersionBranches(1.0, 2.0)
        self.assertEqual(d.select_branch(branches, d.MINUS), 1.0)
        self.assertEqual(d.select_branch(branches, d.PLUS), 2.0)
        self.assertRaises(InvalidParameterError, d.select_branch, branches, "middle")

    def test_discriminant(self):
        self.assertRelClose(d.discriminant(d.FluidParams(2), d.WaveVector(1, 1)), 2 * SQRT5)

class TestRegimes(TestCase):
    def test_examples(self):
        params = d.FluidParams(1)
        self.assertEqual(d.classify_regime(params, 0.75, math.pi / 3).tag, d.FORBIDDEN)
        regime = d.classify_regime(params, 0.5, math.pi / 2)
        self.assertEqual(regime.tag, d.EVANESCENT_PERPENDICULAR)
        self.assertRelClose(regime.decay_rate, math.sqrt(0.75))
        self.assertEqual(d.classify_regime(params, 0.0, 0.0).tag, d.AXIAL_ANY_FREQUENCY)

    def test_boundaries_propagate(self):
        params = d.FluidParams(1)
        self.assertEqual(d.classify_regime(params, 1.0, math.pi / 3).tag, d.PROPAGATING)
        self.assertEqual(d.classify_regime(params, math.cos(math.pi / 3), math.pi / 3).tag, d.PROPAGATING)
        self.assertEqual(d.classify_regime(params, 1.0, math.pi / 2).tag, d.PROPAGATING)

    def test_invalid(self):
        params = d.FluidParams(1)
        self.assertRaises(InvalidParameterError, d.classify_regime, params, -0.1, 0.5)
        self.assertRaises(InvalidParameterError, d.classify_regime, params, 0.5, 2.0)

    def test_wavenumber(self):
        self.assertRelClose(d.wavenumber_from_frequency(d.FluidParams(0), 2.0, 0.7).wavenumber, 2.0)
        params = d.FluidParams(1)
        self.assertRelClose(d.wavenumber_from_frequency(params, math.sqrt(2), math.pi / 2).wavenumber, 1.0)
        self.assertEqual(d.wavenumber_from_frequency(params, 0.75, math.pi / 3).tag, d.FORBIDDEN)
        self.assertEqual(d.wavenumber_from_frequency(params, 0.5, math.pi / 2).tag, d.EVANESCENT_PERPENDICULAR)
        self.assertGreater(d.wavenumber_from_frequency(params, math.cos(math.pi / 3), math.pi / 3).wavenumber, 1e6)
        self.assertRaises(InvalidParameterError, d.wavenumber_from_frequency, params, -1.0, 0.3)

    def test_wavenumber_round_trip(self):
        params = d.FluidParams(1.3, 0.8)
        for theta in (0.2, 0.7, 1.2):
            kvec = d.WaveVector.from_polar(2.5, theta)
            for gamma in d.frequency_branches(params, kvec):
                regime = d.wavenumber_from_frequency(params, gamma, theta)
                self.assertEqual(regime.tag, d.PROPAGATING)
                self.assertRelClose(regime.wavenumber, 2.5, rel=1e-9)

class TestVelocities(TestCase):
    def test_group_velocity(self):
        self.assertVelocityClose(d.group_velocity(d.FluidParams(0), d.WaveVector(3, 4), 5.0), (0.6, 0.8))
        self.assertVelocityClose(d.group_velocity(d.FluidParams(1), d.WaveVector(1, 0), math.sqrt(2)),
                                 (1 / math.sqrt(2), 0.0))
        self.assertVelocityClose(d.group_velocity(d.FluidParams(1), d.WaveVector(0, 2), 2.0), (0.0, 1.0))

    def test_group_velocity_degenerate(self):
        params = d.FluidParams(1)
        self.assertRaises(DegenerateGroupVelocityError, d.group_velocity, params, d.WaveVector(0, 1), 1.0)
        self.assertRaises(DegenerateGroupVelocityError, d.group_velocity, params, d.WaveVector(1, 0), 0.0)

    def test_phase_velocity(self):
        self.assertVelocityClose(d.phase_velocity(d.WaveVector(3, 4), 5.0), (0.6, 0.8))
        self.assertVelocityClose(d.phase_velocity(d.WaveVector(1, 0), math.sqrt(2)), (math.sqrt(2), 0.0))
        self.assertVelocityClose(d.phase_velocity(d.WaveVector(0, 3), 3.0), (0.0, 1.0))
        self.assertRaises(DegenerateWaveVectorError, d.phase_velocity, d.WaveVector(0, 0), 1.0)

    def test_normal_dispersion(self):
        params, kvec = d.FluidParams(1), d.WaveVector(1, 0)
        gamma = math.sqrt(2)
        self.assertLess(d.group_speed(params, kvec, gamma), d.phase_speed(kvec, gamma))
        self.assertRelClose(d.group_speed(params, kvec, gamma) * d.phase_speed(kvec, gamma), 1.0)

    def test_denominator_sign(self):
        params, kvec = d.FluidParams(2), d.WaveVector(1, 1)
        branches = d.frequency_branches(params, kvec)
        # the acoustic branch moves along k, the inertial branch against k1
        self.assertGreater(d.group_velocity(params, kvec, branches.gamma_plus).v1, 0)
        self.assertLess(d.group_velocity(params, kvec, branches.gamma_minus).v1, 0)

class TestGroupAngle(TestCase):
    def test_examples(self):
        self.assertAlmostEqual(d.group_angle(d.FluidParams(0), d.WaveVector(1, 1), math.sqrt(2)), math.pi / 4)
        self.assertEqual(d.group_angle(d.FluidParams(1), d.WaveVector(0, 2), 2.0), 0.0)

    def test_inertial(self):
        params, kvec = d.FluidParams(2), d.WaveVector(1, 1)
        gamma = d.frequency_branches(params, kvec).gamma_minus
        angle = d.group_angle(params, kvec, gamma)
        self.assertAlmostEqual(angle, -math.atan(SQRT5 - 2), places=12)
        vg = d.group_velocity(params, kvec, gamma)
        self.assertAlmostEqual(angle, math.atan2(vg.v1, vg.v3), places=12)

    def test_negative_k3(self):
        # the angle of the line, so atan2 of the group velocity is off by pi
        params, kvec = d.FluidParams(2), d.WaveVector(1, -1)
        gamma = d.frequency_branches(params, kvec).gamma_minus
        angle = d.group_angle(params, kvec, gamma)
        self.assertAlmostEqual(angle, math.atan(SQRT5 - 2), places=12)
        self.assertAlmostEqual(angle, -d.group_angle(params, d.WaveVector(1, 1), gamma), places=15)
        vg = d.group_velocity(params, kvec, gamma)
        self.assertLess(vg.v3, 0)
        self.assertAlmostEqual(abs(angle - math.atan2(vg.v1, vg.v3)), math.pi, places=12)

    def test_singular(self):
        params = d.FluidParams(1)
        self.assertRaises(FormulaSingularityError, d.group_angle, params, d.WaveVector(1, 0), math.sqrt(2))
        self.assertRaises(FormulaSingularityError, d.group_angle, params, d.WaveVector(1, 1), 1.0)

class TestCone(TestCase):
    def test_examples(self):
        params = d.FluidParams(1)
        self.assertTrue(d.inside_characteristic_cone(params, 0.5, (0, 1)))
        self.assertFalse(d.inside_characteristic_cone(params, 0.5, (1, 0)))
        gamma = 1 / math.sqrt(2)
        self.assertTrue(d.inside_characteristic_cone(params, gamma, (1, 1.001)))
        self.assertFalse(d.inside_characteristic_cone(params, gamma, (1, 0.999)))

    def test_open_cone(self):
        self.assertTrue(d.inside_characteristic_cone(d.FluidParams(1), 1.5, (1, 0)))
        self.assertEqual(d.cone_half_angle(d.FluidParams(1), 1.5), math.pi / 2)

    def test_half_angle(self):
        self.assertAlmostEqual(d.cone_half_angle(d.FluidParams(1), 1 / math.sqrt(2)), math.pi / 4)

    def test_singular(self):
        params = d.FluidParams(1)
        self.assertRaises(FormulaSingularityError, d.inside_characteristic_cone, params, 0.0, (0, 1))
        self.assertRaises(InvalidParameterError, d.inside_characteristic_cone, params, -0.5, (0, 1))
        self.assertRaises(FormulaSingularityError, d.cone_half_angle, params, 0.0)

if __name__ == "__main__":
    unittest.main()
