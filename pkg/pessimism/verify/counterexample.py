# pessimism.verify.counterexample
# A linear Bellman complete MDP whose softmax backups are not linear.
#
# Created:  Tue Mar 10 09:15:48 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
A linear Bellman complete MDP whose softmax backups are not linear.

Two states loop on themselves for two steps with zero rewards and
one-dimensional features. At the first step every action of both states has
feature 1; at the second the three actions have features ``1, 0, -1`` in
the first state and ``1, 1, -1`` in the second. The greedy value of any
weight ``w`` is ``|w|`` at both states, so greedy backups are constant and
the MDP has zero inherent Bellman error. The softmax value of ``w = 1``
differs between the states although their first step features agree, so
no linear function reproduces the softmax backup.
"""

##########################################################################
## Imports
##########################################################################

import math
import numpy as np

from dataclasses import dataclass

from ..bestfit import CONSTANT, fit_backup, max_residual
from ..mdp import FeatureMDP, BoundedBallSpec, bellman_backup, measure_inherent_bellman_error
from ..policies import Policy


# Closed-form softmax values of w = 1 at the two states and their gap
SOFTMAX_VALUE_FIRST = (math.e - 1.0 / math.e) / (math.e + 1.0 + 1.0 / math.e)
SOFTMAX_VALUE_SECOND = (2.0 * math.e - 1.0 / math.e) / (2.0 * math.e + 1.0 / math.e)
SOFTMAX_GAP = SOFTMAX_VALUE_SECOND - SOFTMAX_VALUE_FIRST


def counterexample_mdp(reward=0.0):
    """
    The counterexample MDP; ``reward`` is the second step reward coefficient,
    which leaves the inherent Bellman error at zero.
    """
    features = np.array([
        [[[1.0], [1.0], [1.0]],
         [[1.0], [1.0], [1.0]]],
        [[[1.0], [0.0], [-1.0]],
         [[1.0], [1.0], [-1.0]]],
    ])
    loops = np.zeros((2, 2, 3, 2))
    loops[:, 0, :, 0] = 1.0
    loops[:, 1, :, 1] = 1.0
    return FeatureMDP(
        features, loops, reward_coeffs=[[0.0], [reward]], initial_state=0,
        state_names=["first", "second"], strict=True,
    )


@dataclass
class CounterexampleReport:
    """
    The measured inherent Bellman error, the residual of the greedy
    certificate ``T_1 w = |w|``, the softmax values at both states, their
    gap, and the residual of the best linear fit of the softmax backup.
    """

    eps_be: float
    certificate_residual: float
    value_first: float
    value_second: float
    gap: float
    fit_residual: float


def softmax_counterexample(eta=1.0, w=1.0, ibe_samples=None, stream=None):
    """
    Builds the counterexample MDP and measures the quantities of
    :class:`CounterexampleReport`.
    """
    mdp = counterexample_mdp()
    spec = BoundedBallSpec(sampling_count=ibe_samples) if ibe_samples else BoundedBallSpec()
    eps_be = measure_inherent_bellman_error(mdp, spec, stream)

    # Greedy certificate: max_a w phi_2(x, a) = |w| at both states
    probes = np.linspace(-1.0, 1.0, 41)
    greedy = np.array([(mdp.step_features(2)[:, :, 0] * v).max(axis=1) for v in probes])
    certificate = float(np.abs(greedy - np.abs(probes)[:, np.newaxis]).max())

    softmax = Policy.softmax([[w], [w]], eta).action_table(mdp)
    backup = bellman_backup(mdp, 1, softmax[1], [w])
    xs, acts = mdp.supported_pairs(1)
    # Identical first step features admit only constant fits
    _, predictions = fit_backup(mdp.features[0, xs, acts], backup[xs, acts], CONSTANT)

    return CounterexampleReport(
        eps_be=eps_be,
        certificate_residual=certificate,
        value_first=float(backup[0, 0]),
        value_second=float(backup[1, 0]),
        gap=float(backup[1, 0] - backup[0, 0]),
        fit_residual=max_residual(predictions[:, 0], backup[xs, acts]),
    )
