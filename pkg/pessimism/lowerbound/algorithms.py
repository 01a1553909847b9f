# pessimism.lowerbound.algorithms
# Baseline offline learners evaluated on the hard family.
#
# Created:  Thu Mar 12 08:55:14 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Baseline offline learners evaluated on the hard family, and the factory
that resolves the algorithm names of the configuration file.
"""

##########################################################################
## Imports
##########################################################################

import math
import logging
import numpy as np

from ..actor import OfflineActorCritic
from ..base import OfflineAlgorithm
from ..critic import EmpiricalBellman
from ..config import DEFAULTS
from ..mdp import TERMINAL
from ..policies import Policy
from ..serialize import read_policy
from ..exceptions import PessimismValueError


logger = logging.getLogger(__name__)


##########################################################################
## Baselines
##########################################################################

class ConstantPolicy(OfflineAlgorithm):
    """
    Ignores the data and returns a fixed policy, by default the reference
    policy of the family for the given ``b_init``.
    """

    def __init__(self, policy=None, b_init=0):
        self.policy = policy
        self.b_init = b_init

    def learn(self, dataset, mdp, stream=None):
        if self.policy is not None:
            return self.policy
        return Policy.perturbed_linear([[1.0, 1.0 - 2.0 * self.b_init], [0.0, 1.0]], 0.0)


class UniformPolicy(OfflineAlgorithm):
    """
    Plays every action with equal probability.
    """

    def learn(self, dataset, mdp, stream=None):
        return Policy.uniform(mdp)


class NaiveGreedy(OfflineAlgorithm):
    """
    Least-squares value iteration without pessimism: the weights of each
    step regress the reward plus the greedy value of the next weights, and
    the output acts greedily with respect to them.

    Parameters
    ----------
    lam : float, default: 1.0
        The ridge regularizer.
    """

    def __init__(self, lam=DEFAULTS.ridge):
        self.lam = lam

    def learn(self, dataset, mdp, stream=None):
        # The extra row is the zero value after the last step
        weights = np.zeros((mdp.horizon + 1, mdp.dim))
        for h in range(mdp.horizon, 0, -1):
            w_next = weights[h]
            phi_hat = np.zeros((dataset.n, mdp.dim))
            if h < mdp.horizon:
                live = np.flatnonzero((dataset.h == h) & (dataset.x_next != TERMINAL))
                next_features = mdp.step_features(h + 1)[dataset.x_next[live]]
                greedy = next_features.dot(w_next).argmax(axis=1)
                phi_hat[live] = next_features[np.arange(len(live)), greedy]

            operator = EmpiricalBellman(dataset, h, phi_hat, self.lam, mdp)
            weights[h - 1] = operator.apply(w_next)

        weights = weights[:-1]

        self.weights_ = weights
        return Policy.perturbed_linear(weights, 0.0)


class PolicyFileAlgorithm(OfflineAlgorithm):
    """
    Replays externally computed policies: trial ``k`` returns the policy
    stored in ``paths[k % len(paths)]``.
    """

    def __init__(self, paths=(), trial=0):
        self.paths = paths
        self.trial = trial

    def for_trial(self, trial):
        return self.__class__(paths=self.paths, trial=trial)

    def learn(self, dataset, mdp, stream=None):
        if not self.paths:
            raise PessimismValueError("the external algorithm needs at least one policy file")
        path = self.paths[self.trial % len(self.paths)]
        logger.debug("trial %d reads %s", self.trial, path)
        return read_policy(path).check(mdp)


##########################################################################
## Factory
##########################################################################

def _builtin_actor(section):
    return OfflineActorCritic(
        eps_final=section["eps_final"], delta=section["delta"],
        eps_be=2.0 * section["eps"], bound_B=math.sqrt(2.0),
        t_cap=section["t_cap"],
    )


ALGORITHM_FACTORIES = {
    "builtin-actor": _builtin_actor,
    "naive-greedy": lambda section: NaiveGreedy(),
    "constant-pi-star": lambda section: ConstantPolicy(),
    "uniform": lambda section: UniformPolicy(),
    "external": lambda section: PolicyFileAlgorithm(paths=tuple(section["policy_files"])),
}


def make_algorithm(name, section):
    """
    Resolves an algorithm name of the ``run-lower`` section into an
    unfitted learner configured from the rest of the section.
    """
    try:
        factory = ALGORITHM_FACTORIES[name]
    except KeyError:
        raise PessimismValueError(
            "unknown algorithm '{}'; choose from {}".format(name, ", ".join(ALGORITHM_FACTORIES))
        )
    return factory(section)
