# pessimism.instances
# Shipped MDP instances and random instance generators.
#
# Created:  Thu Mar 05 09:03:26 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Shipped MDP instances and random instance generators.

The shipped instances use one-hot features over (state, action) pairs, so
every function of the pair is linear and their inherent Bellman error is
zero. With one-hot features ``B_h`` is the unit cube and ``B = sqrt(d)``.
"""

##########################################################################
## Imports
##########################################################################

import numpy as np

from collections import namedtuple

from .mdp import FeatureMDP
from .policies import Policy
from .utils.random import check_stream
from .exceptions import PessimismKeyError


# An MDP together with the norm bound of its admissible weights
Instance = namedtuple("Instance", ("mdp", "bound_B"))


##########################################################################
## One-hot Instances
##########################################################################

def one_hot_features(horizon, n_states, n_actions):
    """
    Features ``phi_h(x, a) = e_{x A + a}`` in ``d = X A`` dimensions.
    """
    eye = np.eye(n_states * n_actions).reshape(n_states, n_actions, -1)
    return np.repeat(eye[np.newaxis], horizon, axis=0)


def tabular_chain():
    """
    Two states, two actions and two steps. The greedy first action is only
    slightly better than the alternative (0.62 against 0.59), so learning it
    requires data at both actions of the initial state.
    """
    features = one_hot_features(2, 2, 2)
    transitions = np.array([
        [[[0.8, 0.2], [0.1, 0.9]],
         [[0.5, 0.5], [0.0, 1.0]]],
        [[[1.0, 0.0], [0.0, 1.0]],
         [[1.0, 0.0], [0.0, 1.0]]],
    ])
    rewards = np.array([
        [0.1, 0.0, 0.2, 0.3],
        [0.2, 0.5, 0.6, 0.1],
    ])
    mdp = FeatureMDP(
        features, transitions, reward_coeffs=rewards, initial_state=0,
        state_names=["left", "right"], strict=True,
    )
    return Instance(mdp, float(np.sqrt(4)))


def bandit():
    """
    One state, two actions and a single step with rewards 0.3 and 0.6.
    """
    features = one_hot_features(1, 1, 2)
    transitions = np.ones((1, 1, 2, 1))
    mdp = FeatureMDP(
        features, transitions, reward_coeffs=[[0.3, 0.6]], strict=True,
    )
    return Instance(mdp, float(np.sqrt(2)))


INSTANCES = {
    "tabular-chain": tabular_chain,
    "bandit": bandit,
}


def load_instance(name):
    """
    Returns the shipped instance of the given name.
    """
    if name not in INSTANCES:
        raise PessimismKeyError(
            "'{}' is not a shipped instance; choose from {}".format(name, ", ".join(INSTANCES))
        )
    return INSTANCES[name]()


##########################################################################
## Random Instances
##########################################################################

def random_mdp(stream=None, n_states=5, n_actions=3, dim=3, horizon=3):
    """
    A random feature MDP: features are Gaussian directions with norms drawn
    uniformly from ``[0.2, 1]``, transition rows are Dirichlet draws and
    reward vectors are random with norm at most one.
    """
    rng = check_stream(stream).generator()

    features = rng.standard_normal((horizon, n_states, n_actions, dim))
    features /= np.linalg.norm(features, axis=-1, keepdims=True)
    features *= rng.uniform(0.2, 1.0, size=(horizon, n_states, n_actions, 1))

    transitions = rng.dirichlet(np.ones(n_states), size=(horizon, n_states, n_actions))

    rewards = rng.standard_normal((horizon, dim))
    rewards /= np.linalg.norm(rewards, axis=1, keepdims=True)
    rewards *= rng.uniform(0.1, 1.0, size=(horizon, 1))

    return FeatureMDP(features, transitions, reward_coeffs=rewards, strict=True)


def random_tabular_policy(mdp, stream=None):
    """
    A random stochastic tabular policy with Dirichlet rows.
    """
    rng = check_stream(stream).generator()
    tables = rng.dirichlet(np.ones(mdp.n_actions), size=(mdp.horizon, mdp.n_states))
    return Policy.tabular(tables)
