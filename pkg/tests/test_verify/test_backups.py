# tests.test_verify.test_backups
# Tests for the linearity of backups and Q functions.
#
# Created:  Mon Mar 09 16:40:18 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Tests for the linearity of backups and Q functions.
"""

##########################################################################
## Imports
##########################################################################

import unittest
import numpy as np

from tests.base import PessimismTestCase

from pessimism.verify.backups import *
from pessimism.verify.counterexample import counterexample_mdp
from pessimism.policies import Policy, PerturbedLinear
from pessimism.instances import tabular_chain, random_mdp, random_tabular_policy
from pessimism.exceptions import DimensionError, UnsupportedPolicyError


PROBES = np.linspace(-1.0, 1.0, 9)[:, np.newaxis]


##########################################################################
## Backup Fit Tests
##########################################################################

class BackupFitTests(PessimismTestCase):

    def test_perturbed_backups_are_linear(self):
        """
        Assert perturbed linear backups on the counterexample fit exactly
        """
        mdp = counterexample_mdp()
        report = fit_linear_backup(mdp, 1, PerturbedLinear([1.0], 0.5), PROBES, stream=self.stream)
        self.assertTrue(report.checked)
        self.assertTrue(report.passed)
        self.assertLessEqual(report.residual, 1e-9)
        self.assertEqual(report.coef.shape, (1, 9))
        self.assertEqual(report.zeta, 0.0)
        self.assertAllClose(report.slack, 0.0)

    def test_policy_argument(self):
        mdp = counterexample_mdp()
        policy = Policy.perturbed_linear([[1.0], [1.0]], 0.25)
        report = fit_linear_backup(mdp, 1, policy, PROBES, stream=self.stream)
        self.assertEqual(report.h, 1)
        self.assertIn("9 probes", report.probes)

    def test_deterministic_rule(self):
        """
        Test deterministic rules are fit but not checked against a bound
        """
        mdp = counterexample_mdp()
        report = fit_linear_backup(mdp, 1, PerturbedLinear([1.0], 0.0), PROBES)
        self.assertFalse(report.checked)
        self.assertIsNone(report.passed)
        self.assertIsNone(report.bounds)

    def test_misspecified_bound(self):
        mdp = counterexample_mdp()
        report = fit_linear_backup(mdp, 1, PerturbedLinear([1.0], 0.5), PROBES, eps_be=0.01)
        self.assertGreater(report.zeta, 0.0)
        self.assertAllClose(report.bounds, 0.01 + np.abs(PROBES[:, 0]) * report.zeta)

    def test_invalid(self):
        mdp = counterexample_mdp()
        with self.assertRaises(UnsupportedPolicyError):
            fit_linear_backup(mdp, 1, Policy.softmax([[1.0], [1.0]], 1.0), PROBES)
        with self.assertRaises(DimensionError):
            fit_linear_backup(mdp, 2, PerturbedLinear([1.0], 0.5), PROBES)
        with self.assertRaises(DimensionError):
            fit_linear_backup(mdp, 1, PerturbedLinear([1.0], 0.5), np.ones((3, 2)))


##########################################################################
## Q Linearity Tests
##########################################################################

class QLinearityTests(PessimismTestCase):

    def test_counterexample(self):
        """
        Test Q functions of a perturbed linear policy are linear
        """
        mdp = counterexample_mdp(reward=0.8)
        policy = Policy.perturbed_linear([[1.0], [-0.5]], 0.5)
        residuals = qlinearity_check(mdp, policy)
        self.assertEqual(len(residuals), 2)
        self.assertLessEqual(max(residuals), 1e-9)

    def test_one_hot_features(self):
        """
        One-hot features represent every Q function
        """
        mdp = tabular_chain().mdp
        self.assertLessEqual(max(qlinearity_check(mdp, Policy.uniform(mdp))), 1e-9)

        mdp = random_mdp(self.stream.child(0))
        policy = random_tabular_policy(mdp, self.stream.child(1))
        self.assertEqual(len(qlinearity_check(mdp, policy)), mdp.horizon)
