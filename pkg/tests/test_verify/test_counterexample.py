# tests.test_verify.test_counterexample
# Tests for the softmax counterexample.
#
# Created:  Tue Mar 10 10:02:46 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Tests for the softmax counterexample.
"""

##########################################################################
## Imports
##########################################################################

import unittest

from tests.base import PessimismTestCase

from pessimism.verify.counterexample import *


##########################################################################
## Counterexample Tests
##########################################################################

class CounterexampleTests(PessimismTestCase):

    def test_mdp(self):
        mdp = counterexample_mdp()
        self.assertEqual(mdp.horizon, 2)
        self.assertEqual(mdp.dim, 1)
        self.assertEqual(mdp.n_actions, 3)
        self.assertEqual(mdp.state_names, ["first", "second"])
        self.assertAllClose(mdp.rewards, 0.0)
        self.assertAllClose(counterexample_mdp(0.5).rewards[1, 1], [0.5, 0.5, -0.5])

    def test_closed_form_values(self):
        self.assertAlmostEqual(SOFTMAX_GAP, 0.298032, places=6)
        self.assertAlmostEqual(SOFTMAX_VALUE_FIRST, 0.575210, places=6)

    def test_softmax_counterexample(self):
        """
        Test zero inherent Bellman error next to a nonlinear softmax backup
        """
        report = softmax_counterexample(ibe_samples=32, stream=self.stream)
        self.assertLessEqual(report.eps_be, 1e-9)
        self.assertEqual(report.certificate_residual, 0.0)

        self.assertAlmostEqual(report.value_first, SOFTMAX_VALUE_FIRST, places=9)
        self.assertAlmostEqual(report.value_second, SOFTMAX_VALUE_SECOND, places=9)
        self.assertAlmostEqual(report.gap, SOFTMAX_GAP, places=9)

        # The best constant sits halfway between the two values
        self.assertAlmostEqual(report.fit_residual, 0.149016, places=6)
