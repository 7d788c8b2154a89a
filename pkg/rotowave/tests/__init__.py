"""
Tests of the rotowave package.

Classes:
TestCase -- unittest.TestCase with numeric assertions.
"""

import unittest

import numpy as np

class TestCase(unittest.TestCase):
    def assertRelClose(self, actual, expected, rel=1e-12, msg=None):
        """
        Asserts |actual - expected| <= rel * |expected| elementwise, with an
        absolute floor of rel for expected values at zero.
        """
        actual, expected = np.asarray(actual, dtype=float), np.asarray(expected, dtype=float)
        bound = rel * np.maximum(np.abs(expected), 1.0)
        error = np.abs(actual - expected)
        if not np.all(error <= bound):
            self.fail(msg or "{} != {} within relative {}".format(actual, expected, rel))

    def assertVelocityClose(self, actual, expected, tol=1e-12):
        self.assertAlmostEqual(actual[0], expected[0], delta=tol)
        self.assertAlmostEqual(actual[1], expected[1], delta=tol)
