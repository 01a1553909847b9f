# pessimism.ftpl
# Expected follow-the-perturbed-leader over a finite set of vectors.
#
# Created:  Sat Mar 07 14:05:52 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Expected follow-the-perturbed-leader over a finite set of vectors.

At round ``t`` the learner plays the expectation, over Gaussian
perturbations ``rho ~ N(0, eta^2 I)``, of the leader
``argmax_phi omega <sum_{s<t} w^s, phi> + <rho, phi>``. Gaussian
perturbations are stable with ``J = eta sqrt(d)`` and ``L = 1 / eta``, so
the expected regret after ``T`` rounds against reward vectors of norm at
most ``G`` over actions of norm at most ``D`` is bounded by
``omega L D G^2 T + J D / omega``.
"""

##########################################################################
## Imports
##########################################################################

import math
import logging
import numpy as np

from collections import namedtuple

from .config import DEFAULTS
from .policies import argmax_counts
from .utils.random import check_stream
from .exceptions import DimensionError, PessimismValueError


logger = logging.getLogger(__name__)

# Outcome of a regret run: realized regret, its bound and Monte-Carlo error
RegretReport = namedtuple("RegretReport", ("regret", "bound", "std_err"))


##########################################################################
## Learner State
##########################################################################

class FtplState(object):
    """
    The state of an expected FTPL learner.

    Parameters
    ----------
    action_set : array-like of shape K x d
        The vectors the learner chooses from.

    omega : float, default: 1.0
        Scale of the cumulative reward inside the leader.

    eta : float, default: 1.0
        Standard deviation of the Gaussian perturbation, ``eta >= 0``.
    """

    def __init__(self, action_set, omega=1.0, eta=1.0):
        self.action_set = np.atleast_2d(np.asarray(action_set, dtype=float))
        if self.action_set.size == 0:
            raise PessimismValueError("the action set must not be empty")
        if omega <= 0 or eta < 0:
            raise PessimismValueError("need omega > 0 and eta >= 0")

        self.omega = float(omega)
        self.eta = float(eta)
        self.cumulative = np.zeros(self.dim)
        self.round = 0

    @property
    def dim(self):
        return self.action_set.shape[1]

    @property
    def diameter(self):
        """
        The largest action norm ``D``.
        """
        return float(np.linalg.norm(self.action_set, axis=1).max())

    def observe(self, reward):
        reward = np.asarray(reward, dtype=float)
        if reward.shape != (self.dim,):
            raise DimensionError("reward of shape {} does not match d = {}".format(reward.shape, self.dim))
        self.cumulative = self.cumulative + reward
        self.round += 1
        return self

    def distribution(self, mc_samples=None, stream=None):
        """
        Estimated probabilities of each action being the perturbed leader.
        With ``eta = 0`` the leader is exact, ties going to the first action.
        """
        leader = self.omega * self.cumulative
        if self.eta == 0:
            probs = np.zeros(len(self.action_set))
            probs[self.action_set.dot(leader).argmax()] = 1.0
            return probs

        mc_samples = mc_samples or DEFAULTS.mc_draws
        generator = check_stream(stream).generator()
        counts = argmax_counts(self.action_set, leader, self.eta, mc_samples, generator)
        return counts / float(mc_samples)

    def __repr__(self):
        return "FtplState(K={}, d={}, round={})".format(len(self.action_set), self.dim, self.round)


def ftpl_step(state, mc_samples=None, stream=None):
    """
    Returns the Monte-Carlo estimate of the expected perturbed leader, a
    point in the convex hull of the action set.
    """
    return state.distribution(mc_samples, stream).dot(state.action_set)


##########################################################################
## Regret Harness
##########################################################################

def regret_bound(omega, eta, dim, diameter, reward_norm, rounds):
    """
    ``omega L D G^2 T + J D / omega`` with ``J = eta sqrt(d)`` and ``L = 1/eta``.
    """
    if eta == 0:
        return math.inf
    return (
        omega * diameter * reward_norm ** 2 * rounds / eta
        + eta * math.sqrt(dim) * diameter / omega
    )


def ftpl_regret_harness(action_set, adversary, omega=1.0, eta=1.0, T=None,
                        mc_samples=None, stream=None):
    """
    Plays expected FTPL against a fixed sequence of reward vectors and
    compares the realized regret against the best fixed action with the
    stability bound.

    Parameters
    ----------
    action_set : array-like of shape K x d

    adversary : array-like of shape T x d
        The reward vector of every round.

    omega, eta : float
        Leader scale and perturbation standard deviation.

    T : int, default: None
        Number of rounds to play, all of the adversary's if None.

    mc_samples : int, default: None
        Perturbations per round.

    stream : RandomStream or int, default: None
        Round ``t`` draws from ``stream.child(t)``.

    Returns
    -------
    report : RegretReport
        The realized expected regret, its bound, and the Monte-Carlo
        standard error of the regret.
    """
    adversary = np.atleast_2d(np.asarray(adversary, dtype=float))
    T = len(adversary) if T is None else int(T)
    if T > len(adversary):
        raise PessimismValueError("the adversary has only {} rounds".format(len(adversary)))
    adversary = adversary[:T]

    stream = check_stream(stream)
    state = FtplState(action_set, omega=omega, eta=eta)
    mc_samples = mc_samples or DEFAULTS.mc_draws

    earned, variance = 0.0, 0.0
    for t, reward in enumerate(adversary, start=1):
        probs = state.distribution(mc_samples, stream.child(t))
        payoffs = state.action_set.dot(reward)
        mean = probs.dot(payoffs)
        earned += mean
        if state.eta > 0:
            variance += max(probs.dot(payoffs ** 2) - mean ** 2, 0.0) / mc_samples
        state.observe(reward)

    best = float(state.action_set.dot(adversary.sum(axis=0)).max()) if T else 0.0
    reward_norm = float(np.linalg.norm(adversary, axis=1).max()) if T else 0.0
    bound = regret_bound(omega, eta, state.dim, state.diameter, reward_norm, T)

    report = RegretReport(regret=best - earned, bound=bound, std_err=math.sqrt(variance))
    logger.debug("ftpl regret %.6g against bound %.6g over %d rounds", report.regret, bound, T)
    return report
