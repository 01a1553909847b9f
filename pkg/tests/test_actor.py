# tests.test_actor
# Tests for the actor schedule, the actor loop and its estimator.
#
# Created:  Sun Mar 08 15:20:44 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Tests for the actor schedule, the actor loop and its estimator.
"""

##########################################################################
## Imports
##########################################################################

import math
import unittest
import numpy as np

from tests.base import PessimismTestCase, slow

from pessimism.actor import *
from pessimism.dataset import OfflineDataset, generate_dataset
from pessimism.policies import Policy, MixturePolicy
from pessimism.instances import bandit, tabular_chain
from pessimism.mdp import exact_policy_value, optimal_value
from pessimism.exceptions import (
    InfeasibleProgramError, PessimismKeyError, PessimismValueError, PreconditionError,
)


FULL_PLAN = [
    (1, 0, 0, 10), (1, 0, 1, 10),
    (2, 0, 0, 10), (2, 0, 1, 10), (2, 1, 0, 10), (2, 1, 1, 10),
]


##########################################################################
## Schedule Tests
##########################################################################

class ScheduleTests(unittest.TestCase):

    def test_default_params(self):
        """
        Test the schedule on d = 4, H = 2, B = 2 with the iteration cap hit
        """
        config = default_params(0.5, 0.1, 100, 4, 2, 2.0, t_cap=5000)
        self.assertEqual(config.beta, 8.0)
        self.assertAlmostEqual(config.T_theory, 8192.0)
        self.assertEqual(config.T, 5000)
        self.assertAlmostEqual(config.eps_apx, 0.1)
        self.assertAlmostEqual(config.eta, 400.0)
        self.assertAlmostEqual(config.sigma, 0.01)
        self.assertEqual(config.zeta, 0.0)
        self.assertAlmostEqual(config.alpha, 32.0 * math.sqrt(math.log(3.2e6)))

    def test_uncapped(self):
        config = default_params(4.0, 0.1, 100, 1, 1, 1.0, t_cap=5000)
        self.assertEqual(config.beta, 2.0)
        self.assertEqual(config.T, 4)
        self.assertEqual(config.T_theory, 4.0)

    def test_overrides_feed_later_formulas(self):
        """
        Assert an overridden T changes eta and sigma but not beta
        """
        config = default_params(0.5, 0.1, 100, 4, 2, 2.0, T=3)
        self.assertEqual(config.T, 3)
        self.assertAlmostEqual(config.eta, 8.0 * math.sqrt(1.5))
        self.assertAlmostEqual(config.sigma, config.eta / 24.0)
        self.assertEqual(config.overrides, {"T": 3})

        config = default_params(0.5, 0.1, 100, 4, 2, 2.0, T=3, alpha=0.25)
        self.assertEqual(config.alpha, 0.25)

    def test_misspecified(self):
        config = default_params(0.5, 0.1, 100, 4, 2, 2.0, eps_be=0.01, T=4)
        self.assertAlmostEqual(config.eta, 8.0 * max(2.0 / math.sqrt(2.0), 4 * 0.1))
        self.assertGreater(config.zeta, 0.0)

    def test_invalid(self):
        with self.assertRaises(PessimismKeyError):
            default_params(0.5, 0.1, 100, 4, 2, 2.0, gamma=1.0)
        with self.assertRaises(PessimismValueError):
            default_params(0.0, 0.1, 100, 4, 2, 2.0)
        with self.assertRaises(PessimismValueError):
            default_params(0.5, 1.0, 100, 4, 2, 2.0)
        with self.assertRaises(PessimismValueError):
            default_params(0.5, 0.1, 100, 4, 2, 0.0)
        with self.assertRaises(PessimismValueError):
            default_params(0.5, 0.1, 100, 4, 2, 2.0, T=0)

    def test_zeta_sigma(self):
        self.assertEqual(zeta_sigma(0.0, 4, 0.1), 0.0)
        self.assertEqual(zeta_sigma(0.01, 4, 0.0), math.inf)
        self.assertEqual(zeta_sigma(0.01, 4, math.inf), 0.0)
        self.assertAlmostEqual(
            zeta_sigma(0.01, 1, 1.0), 0.01 * (math.sqrt(math.log(100.0)) + 1.0)
        )
        self.assertAlmostEqual(zeta_sigma(0.01, 1, 1.0, C=3.0), 3.0 * zeta_sigma(0.01, 1, 1.0))

        # log(d / (eps sigma)) < 0 is clipped
        self.assertAlmostEqual(zeta_sigma(1.0, 1, 2.0), 0.5)


##########################################################################
## Actor Loop Tests
##########################################################################

class ActorLoopTests(PessimismTestCase):

    def setUp(self):
        super(ActorLoopTests, self).setUp()
        self.mdp = tabular_chain().mdp
        self.dataset = generate_dataset(self.mdp, plan=FULL_PLAN, stream=self.stream.child(0))
        self.config = default_params(0.5, 0.1, self.dataset.n, 4, 2, 2.0, T=3)

    def test_run(self):
        """
        Test the policy weights accumulate the critic weights
        """
        run = run_actor(self.dataset, self.config, self.mdp, stream=self.stream.child(1))
        self.assertEqual(run.T, 3)
        self.assertEqual(len(run.policies), 3)
        self.assertIsInstance(run.mixture, MixturePolicy)
        self.assertIsInstance(run.pi_hat, Policy)

        self.assertAllClose(run.thetas[0], 0.0)
        self.assertAllClose(run.thetas[2], run.weights[0] + run.weights[1])
        self.assertAllClose(run.policies[1].rule(1).w, run.thetas[1][0])
        self.assertFalse(run.flags.any())
        self.assertAllClose(run.alphas, self.config.alpha)

        # The weights stay inside the ball of radius beta
        norms = np.linalg.norm(run.weights, axis=2)
        self.assertTrue((norms <= self.config.beta + 1e-6).all())

    def test_log_frame(self):
        run = run_actor(self.dataset, self.config, self.mdp, stream=self.stream.child(1))
        frame = run.log_frame()
        self.assertEqual(
            list(frame.columns), ["t", "objective", "w_norm_1", "w_norm_2", "alpha", "flagged"]
        )
        self.assertEqual(frame["t"].tolist(), [1, 2, 3])
        self.assertAllClose(frame["objective"], run.objectives)

    def test_reproducible(self):
        first = run_actor(self.dataset, self.config, self.mdp, stream=self.stream.child(1))
        second = run_actor(self.dataset, self.config, self.mdp, stream=self.stream.child(1))
        np.testing.assert_array_equal(first.weights, second.weights)

    def test_preconditions(self):
        with self.assertRaises(PreconditionError):
            run_actor(OfflineDataset.from_tuples([]), self.config, self.mdp)
        with self.assertRaises(PessimismValueError):
            run_actor(self.dataset, self.config, self.mdp, on_infeasible="retry")

    def test_infeasible(self):
        """
        Assert an infeasible critic names the iteration under both policies
        """
        config = default_params(0.5, 0.1, self.dataset.n, 4, 2, 2.0, T=2, alpha=0.0, beta=0.01)
        for policy in (ABORT, INFLATE):
            with self.assertRaises(InfeasibleProgramError) as ctx:
                run_actor(self.dataset, config, self.mdp, stream=self.stream, on_infeasible=policy)
            self.assertIn("iteration 1", str(ctx.exception))

    def test_unconverged_critic(self):
        """
        Assert a critic stopped by its iteration budget is handled like an
        infeasible one
        """
        for policy in (ABORT, INFLATE):
            with self.assertRaises(InfeasibleProgramError) as ctx:
                run_actor(
                    self.dataset, self.config, self.mdp, stream=self.stream.child(1),
                    on_infeasible=policy, max_iter=1, restarts=0,
                )
            self.assertIn("iteration 1", str(ctx.exception))

    def test_regret_probe(self):
        run = run_actor(self.dataset, self.config, self.mdp, stream=self.stream.child(1))
        comparator = Policy.perturbed_linear(np.zeros((2, 4)), 0.0)
        regret, bound = actor_regret_probe(run, self.mdp, comparator, 1, 0, stream=self.stream)

        self.assertAlmostEqual(
            bound, 64.0 * 3 / self.config.eta + self.config.eta * 2.0
        )
        self.assertLessEqual(regret, bound)


##########################################################################
## Estimator Tests
##########################################################################

class OfflineActorCriticTests(PessimismTestCase):

    def test_fit_returns_self(self):
        """
        Assert fit returns self and stores the learned mixture
        """
        mdp = tabular_chain().mdp
        dataset = generate_dataset(mdp, plan=FULL_PLAN, stream=self.stream)
        model = OfflineActorCritic(params={"T": 2})

        self.assertIs(model.fit(dataset, mdp, stream=self.stream), model)
        self.assertIsInstance(model.policy_, MixturePolicy)
        self.assertEqual(len(model.policy_), 2)
        self.assertEqual(model.config_.T, 2)

        # B defaults to sqrt(d)
        self.assertEqual(model.config_.beta, 8.0)

    def test_representative_policy(self):
        mdp = tabular_chain().mdp
        dataset = generate_dataset(mdp, plan=FULL_PLAN, stream=self.stream)
        model = OfflineActorCritic(return_mixture=False, params={"T": 1})
        self.assertIsInstance(model(dataset, mdp, stream=self.stream), Policy)

    def test_get_params(self):
        params = OfflineActorCritic(eps_final=0.25).get_params()
        self.assertEqual(params["eps_final"], 0.25)
        self.assertEqual(params["on_infeasible"], ABORT)

    @slow
    def test_bandit_acceptance(self):
        """
        On the two armed bandit with 4800 uniform episodes the sampled policy
        is within 0.1 of the optimal value averaged over 20 seeds
        """
        instance = bandit()
        mdp = instance.mdp
        optimal, _ = optimal_value(mdp)

        gaps = []
        for seed in range(20):
            stream = self.stream.child(seed)
            dataset = generate_dataset(mdp, behavior=Policy.uniform(mdp), episodes=4800, stream=stream.child(0))
            model = OfflineActorCritic(bound_B=instance.bound_B, return_mixture=False)
            pi_hat = model(dataset, mdp, stream=stream.child(1))
            gaps.append(optimal.value - exact_policy_value(mdp, pi_hat, stream=stream.child(2)).value)

        self.assertAlmostEqual(optimal.value, 0.6)
        self.assertLessEqual(np.mean(gaps), 0.1)


if __name__ == '__main__':
    unittest.main()
