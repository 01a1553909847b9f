# tests.test_lowerbound.test_algorithms
# Tests for the baseline learners and the algorithm factory.
#
# Created:  Thu Mar 12 10:31:08 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Tests for the baseline learners and the algorithm factory.
"""

##########################################################################
## Imports
##########################################################################

import math
import unittest

from tests.base import TemporaryDirectoryTestCase, slow
from tests.checks import check_algorithm

from pessimism.lowerbound.algorithms import *
from pessimism.lowerbound.instance import build_instance, generate_lb_dataset, T1
from pessimism.actor import OfflineActorCritic
from pessimism.config import ExperimentConfig, ALGORITHMS
from pessimism.policies import Policy
from pessimism.serialize import write_policy
from pessimism.exceptions import PessimismValueError


EPS = 1.0 / 16.0


##########################################################################
## Factory Tests
##########################################################################

class FactoryTests(unittest.TestCase):

    def setUp(self):
        self.section = ExperimentConfig().section("run-lower")

    def test_every_configured_name(self):
        self.assertEqual(set(ALGORITHM_FACTORIES), set(ALGORITHMS))
        for name in ALGORITHMS:
            self.assertTrue(make_algorithm(name, self.section).name)

    def test_builtin_actor(self):
        """
        Test the built in actor assumes the misspecification of the family
        """
        model = make_algorithm("builtin-actor", self.section)
        self.assertIsInstance(model, OfflineActorCritic)
        self.assertEqual(model.eps_be, 2.0 * self.section["eps"])
        self.assertAlmostEqual(model.bound_B, math.sqrt(2.0))
        self.assertEqual(model.t_cap, self.section["t_cap"])

    def test_unknown(self):
        with self.assertRaises(PessimismValueError):
            make_algorithm("oracle", self.section)


##########################################################################
## Baseline Tests
##########################################################################

class BaselineTests(TemporaryDirectoryTestCase):

    def setUp(self):
        super(BaselineTests, self).setUp()
        self.instance = build_instance(EPS)
        self.dataset = generate_lb_dataset(self.instance, 60, self.stream)

    def test_constant(self):
        policy = ConstantPolicy()(self.dataset, self.instance.mdp)
        self.assertEqual(policy.rule(1).w.tolist(), [1.0, 1.0])

        fixed = Policy.uniform(self.instance.mdp)
        self.assertIs(ConstantPolicy(policy=fixed)(self.dataset, self.instance.mdp), fixed)

    def test_uniform(self):
        policy = UniformPolicy()(self.dataset, self.instance.mdp)
        self.assertAllClose(policy.action_table(self.instance.mdp), 0.25)

    def test_naive_greedy(self):
        """
        Assert least squares value iteration trusts the single covered level
        """
        model = NaiveGreedy().fit(self.dataset, self.instance.mdp)
        w1, w2 = model.weights_

        self.assertEqual(w2[0], 0.0)
        self.assertGreater(w2[1], 0.0)
        self.assertGreater(w1[0], 0.0)
        self.assertAlmostEqual(w1[1], 0.0)
        self.assertTrue(model.policy_.rule(1).deterministic)

        # Tied first actions at t1 go to action 0
        table = model.policy_.action_table(self.instance.mdp)
        self.assertEqual(table[0, T1].tolist(), [1.0, 0.0, 0.0, 0.0])

    def test_policy_files(self):
        """
        Test trial k replays file k modulo the number of files
        """
        paths = []
        for idx, w in enumerate(([1.0, 1.0], [1.0, -1.0])):
            paths.append(self.path("policy-{}.txt".format(idx)))
            write_policy(Policy.perturbed_linear([w, [0.0, 1.0]], 0.0), paths[-1])

        model = PolicyFileAlgorithm(paths=tuple(paths))
        self.assertEqual(model(self.dataset, self.instance.mdp).rule(1).w.tolist(), [1.0, 1.0])

        third = model.for_trial(3)
        self.assertIsNot(third, model)
        self.assertEqual(third(self.dataset, self.instance.mdp).rule(1).w.tolist(), [1.0, -1.0])

        with self.assertRaises(PessimismValueError):
            PolicyFileAlgorithm()(self.dataset, self.instance.mdp)

##########################################################################
## Conformance Tests
##########################################################################

class ConformanceTests(TemporaryDirectoryTestCase):

    def setUp(self):
        super(ConformanceTests, self).setUp()
        self.instance = build_instance(EPS)
        self.dataset = generate_lb_dataset(self.instance, 30, self.stream)
        self.section = ExperimentConfig({"run-lower": {"t_cap": 2}}).section("run-lower")

    def test_baselines(self):
        for name in ("constant-pi-star", "uniform", "naive-greedy"):
            check_algorithm(make_algorithm(name, self.section), self.dataset, self.instance.mdp, self.stream)

    def test_policy_files(self):
        path = self.path("policy.txt")
        write_policy(Policy.perturbed_linear([[1.0, 1.0], [0.0, 1.0]], 0.0), path)
        section = dict(self.section, policy_files=[path])
        check_algorithm(make_algorithm("external", section), self.dataset, self.instance.mdp, self.stream)

    @slow
    def test_builtin_actor(self):
        model = make_algorithm("builtin-actor", self.section)
        check_algorithm(model, self.dataset, self.instance.mdp, self.stream)


if __name__ == '__main__':
    unittest.main()
