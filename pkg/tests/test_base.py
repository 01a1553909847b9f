# tests.test_base
# Assertions for the base classes and abstract hierarchy.
#
# Created:  Sat Mar 07 17:02:51 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Assertions for the base classes and abstract hierarchy.
"""

##########################################################################
## Imports
##########################################################################

import unittest

from pessimism.base import *
from pessimism.dataset import OfflineDataset
from pessimism.policies import Policy
from pessimism.instances import tabular_chain
from pessimism.exceptions import PessimismTypeError


class UniformLearner(OfflineAlgorithm):

    def __init__(self, rounds=1):
        self.rounds = rounds

    def learn(self, dataset, mdp, stream=None):
        return Policy.uniform(mdp)


class BrokenLearner(OfflineAlgorithm):

    def learn(self, dataset, mdp, stream=None):
        return "greedy"


##########################################################################
## Base Tests
##########################################################################

class BaseTests(unittest.TestCase):
    """
    Test the high level API for offline algorithms
    """

    def setUp(self):
        self.mdp = tabular_chain().mdp
        self.dataset = OfflineDataset.from_tuples([(1, 0, 0, 0.1, 0)])

    def test_fit_returns_self(self):
        """
        Assert that all algorithms return self
        """
        learner = UniformLearner()
        self.assertIs(learner.fit(self.dataset, self.mdp), learner)
        self.assertIsInstance(learner.policy_, Policy)

    def test_call(self):
        self.assertIsInstance(UniformLearner()(self.dataset, self.mdp), Policy)

    def test_learn_interface(self):
        """
        Assert that learn cannot be called at the base level
        """
        with self.assertRaises(NotImplementedError):
            OfflineAlgorithm().fit(self.dataset, self.mdp)

    def test_policy_required(self):
        with self.assertRaises(PessimismTypeError) as ctx:
            BrokenLearner().fit(self.dataset, self.mdp)
        self.assertIn("BrokenLearner", str(ctx.exception))

    def test_name_and_trial(self):
        learner = UniformLearner(rounds=3)
        self.assertEqual(learner.name, "UniformLearner")
        self.assertIs(learner.for_trial(7), learner)
        self.assertEqual(learner.get_params(), {"rounds": 3})


if __name__ == '__main__':
    unittest.main()
