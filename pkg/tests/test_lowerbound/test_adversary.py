# tests.test_lowerbound.test_adversary
# Tests for the behavior statistics and the adversarial bits.
#
# Created:  Wed Mar 11 17:05:13 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Tests for the behavior statistics and the adversarial bits.
"""

##########################################################################
## Imports
##########################################################################

import unittest
import numpy as np

from tests.base import PessimismTestCase

from pessimism.lowerbound.adversary import *
from pessimism.lowerbound.algorithms import ConstantPolicy
from pessimism.lowerbound.instance import build_instance, reference_policy
from pessimism.policies import Policy, MixturePolicy
from pessimism.exceptions import CaseSelectionWarning, PessimismValueError


EPS = 1.0 / 16.0


def flat_estimate(rho0, rho1, Z0=(1.0, 0.0), L=4):
    """
    An estimate with vanishing reward statistics and the given sign-matching
    probabilities at every level.
    """
    zeros = np.zeros((2, L + 1))
    rho0 = np.tile(np.asarray(rho0, dtype=float), (2, 1))
    rho1 = np.tile(np.asarray(rho1, dtype=float), (2, 1))
    return PolicyDistributionEstimate(Z0=Z0, eta=zeros, gamma=zeros, rho0=rho0, rho1=rho1, trials=1)


##########################################################################
## Statistics Tests
##########################################################################

class StatisticsTests(PessimismTestCase):

    def setUp(self):
        super(StatisticsTests, self).setUp()
        self.template = build_instance(EPS)

    def test_reference_policy(self):
        """
        Test the reference policy never plays the shifted first action
        """
        estimate = summarize_policies([reference_policy(self.template)], self.template)
        self.assertAllClose(estimate.Z0, [0.0, 1.0])
        self.assertEqual(estimate.L, 4)
        self.assertEqual(estimate.trials, 1)

        self.assertAllClose(estimate.eta[1], [1, 0, 0, 0, 0])
        self.assertAllClose(estimate.gamma, 0.0)
        self.assertAllClose(estimate.rho0[1], 1.0)
        self.assertAllClose(estimate.rho1[1], [0, 1, 1, 1, 1])
        self.assertAllClose(estimate.rho[1], [1, 2, 2, 2, 2])

        # Nothing reaches the shifted states when b_init = 0
        self.assertAllClose(estimate.rho0[0], 0.0)

    def test_uniform_policy(self):
        """
        Assert aliased actions count toward action 0
        """
        uniform = Policy.uniform(self.template.mdp)
        estimate = summarize_policies([uniform], self.template)
        self.assertAllClose(estimate.Z0, [0.25, 0.75])
        self.assertAllClose(estimate.eta[1], 0.375)
        self.assertAllClose(estimate.eta[0], 0.125)
        self.assertAllClose(estimate.rho0[1], 0.75)
        self.assertAllClose(estimate.rho1[1], 0.25)

    def test_mixture_weights(self):
        uniform = Policy.uniform(self.template.mdp)
        reference = reference_policy(self.template)
        mixture = MixturePolicy([uniform, reference], weights=[0.25, 0.75])

        estimate = summarize_policies([mixture], self.template)
        self.assertAllClose(estimate.Z0, [0.25 * 0.25, 0.25 * 0.75 + 0.75])

        weighted = summarize_policies([uniform, reference], self.template, weights=[0.25, 0.75])
        self.assertAllClose(weighted.Z0, estimate.Z0)
        self.assertAllClose(weighted.eta, estimate.eta)

    def test_invalid(self):
        with self.assertRaises(PessimismValueError):
            summarize_policies([], self.template)
        with self.assertRaises(PessimismValueError):
            PolicyDistributionEstimate(
                Z0=[1.0, 0.0], eta=np.zeros(5), gamma=np.zeros((2, 5)),
                rho0=np.zeros((2, 5)), rho1=np.zeros((2, 5)), trials=1,
            )
        with self.assertRaises(PessimismValueError):
            collect_policies(ConstantPolicy(), self.template, 30, 0)

    def test_estimate_policy_distribution(self):
        """
        Test trials of a data independent algorithm agree with its statistics
        """
        estimate = estimate_policy_distribution(ConstantPolicy(), self.template, 30, 2, self.stream)
        self.assertEqual(estimate.trials, 2)
        self.assertAllClose(estimate.Z0, [0.0, 1.0])

        policies = collect_policies(ConstantPolicy(b_init=1), self.template, 30, 3, self.stream)
        self.assertEqual(len(policies), 3)
        self.assertEqual(policies[0].rule(1).w.tolist(), [1.0, -1.0])


##########################################################################
## Case Selection Tests
##########################################################################

class AdversarialBitsTests(PessimismTestCase):

    def test_staircase(self):
        """
        The reference policy of b_init = 0 climbs at the first level
        """
        template = build_instance(EPS)
        estimate = summarize_policies([reference_policy(template)], template)
        bits, case, flagged = adversarial_b(estimate, EPS)

        self.assertEqual(case, 3)
        self.assertFalse(flagged)
        self.assertEqual((bits.b_rew, bits.b_init), (1, 1))
        self.assertEqual(bits.levels[:, 0].tolist(), [0, 0, 0, 0])
        self.assertEqual(bits.levels[:, 1].tolist(), [1, 1, 1, 1])

    def test_reward_sign(self):
        """
        Test a large reward statistic sets the sign against it
        """
        template = build_instance(EPS)
        estimate = summarize_policies([Policy.uniform(template.mdp)], template)
        bits, case, flagged = adversarial_b(estimate, EPS)

        self.assertEqual(case, 1)
        self.assertEqual((bits.b_rew, bits.b_init), (1, 1))
        self.assertFalse(bits.levels.any())

    def test_flat(self):
        estimate = flat_estimate(np.zeros(5), np.zeros(5))
        bits, case, flagged = adversarial_b(estimate, EPS)
        self.assertEqual(case, 2)
        self.assertFalse(flagged)
        self.assertEqual(bits.b_init, 0)
        self.assertFalse(bits.levels.any())

    def test_neither_case(self):
        """
        Assert the larger margin is taken with a warning when no case holds
        """
        estimate = flat_estimate(np.ones(5), np.ones(5))
        with self.assertWarns(CaseSelectionWarning):
            bits, case, flagged = adversarial_b(estimate, EPS)

        self.assertTrue(flagged)
        self.assertEqual(case, 3)
        self.assertEqual(bits.b_rew, 0)
        self.assertEqual(bits.levels[:, 0].tolist(), [1, 1, 1, 1])
