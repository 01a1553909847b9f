# tests.test_bestfit
# Tests for the bestfit module.
#
# Created:  Thu Mar 05 10:02:17 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Tests for the bestfit module.
"""

##########################################################################
## Imports
##########################################################################

import unittest
import numpy as np

from tests.base import PessimismTestCase

from pessimism.bestfit import *
from pessimism.exceptions import PessimismValueError


##########################################################################
## Best fit tests
##########################################################################

class BestFitTests(PessimismTestCase):

    def test_bad_estimator(self):
        """
        Test that a bad estimator name raises a value error.
        """
        with self.assertRaises(PessimismValueError):
            fit_backup(np.eye(2), [1.0, 2.0], "pepper")

    def test_exact_linear(self):
        """
        Assert a linear target is reproduced exactly
        """
        features = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        targets = features.dot([0.5, -2.0])
        coef, predictions = fit_backup(features, targets)
        self.assertEqual(coef.shape, (2, 1))
        self.assertAllClose(coef[:, 0], [0.5, -2.0])
        self.assertAllClose(predictions[:, 0], targets)

    def test_multiple_targets(self):
        """
        Test every target column is fit separately
        """
        features = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        targets = np.column_stack([features.dot([1.0, 0.0]), features.dot([0.0, 3.0])])
        coef, predictions = fit_backup(features, targets)
        self.assertAllClose(coef, [[1.0, 0.0], [0.0, 3.0]])
        self.assertAllClose(predictions, targets)

    def test_minimum_norm(self):
        """
        Assert rank deficient features give the minimum norm solution
        """
        features = np.array([[1.0, 1.0], [1.0, 1.0]])
        coef, predictions = fit_backup(features, [2.0, 2.0])
        self.assertAllClose(coef[:, 0], [1.0, 1.0])
        self.assertAllClose(predictions[:, 0], [2.0, 2.0])

    def test_constant(self):
        """
        Test the constant fit is the mean of the column
        """
        coef, predictions = fit_backup(np.ones((3, 1)), [1.0, 2.0, 6.0], CONSTANT)
        self.assertAllClose(coef, [[3.0]])
        self.assertAllClose(predictions[:, 0], [3.0, 3.0, 3.0])

    def test_shapes(self):
        with self.assertRaises(PessimismValueError):
            fit_backup(np.ones(3), [1.0, 2.0, 3.0])
        with self.assertRaises(PessimismValueError):
            fit_backup(np.ones((3, 1)), [1.0, 2.0])

    def test_empty(self):
        coef, predictions = fit_backup(np.zeros((0, 2)), np.zeros(0))
        self.assertEqual(coef.shape, (2, 1))
        self.assertEqual(predictions.shape, (0, 1))

    def test_clip_predictions(self):
        """
        Assert only columns exceeding the limit are rescaled
        """
        predictions = np.array([[1.0, 4.0], [-0.5, -1.0]])
        clipped, scale = clip_predictions(predictions, 2.0)
        self.assertAllClose(scale, [1.0, 0.5])
        self.assertAllClose(clipped, [[1.0, 2.0], [-0.5, -0.5]])

    def test_max_residual(self):
        self.assertEqual(max_residual([1.0, 2.0], [1.5, 1.0]), 1.0)
        self.assertEqual(max_residual([], []), 0.0)


if __name__ == '__main__':
    unittest.main()
