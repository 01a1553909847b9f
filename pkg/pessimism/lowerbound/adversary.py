# pessimism.lowerbound.adversary
# Behavior statistics of an algorithm's outputs and the adversarial bits.
#
# Created:  Wed Mar 11 14:12:36 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Behavior statistics of an algorithm's outputs and the adversarial bits.

The dataset law of the family does not depend on the bits, so neither does
the distribution of the policy an algorithm returns. These statistics
summarize that distribution at the states where the bits matter, and
:func:`adversarial_b` picks the member on which it performs badly.

Actions 2 and 3 behave exactly like action 0 wherever only two actions are
specified, so ``pi(0 | x)`` below always means ``p_0 + p_2 + p_3`` at ``t1``
and the shifted states. At the level states all four actions differ and
no aggregation takes place.
"""

##########################################################################
## Imports
##########################################################################

import math
import logging
import warnings
import numpy as np

from dataclasses import dataclass
from joblib import Parallel, delayed

from .instance import T1, LowerBoundBits, generate_lb_dataset
from ..utils import div_safe, positive_part, is_mixture
from ..utils.random import check_stream
from ..exceptions import CaseSelectionWarning, PessimismValueError


logger = logging.getLogger(__name__)

# Case labels
CASE_REWARD = 1
CASE_FLAT = 2
CASE_STAIRCASE = 3


##########################################################################
## Policy Statistics
##########################################################################

@dataclass
class PolicyDistributionEstimate:
    """
    Averages over the output distribution of an algorithm. Every array is
    indexed first by the candidate ``b_init`` and then, where it has a second
    axis, by the level ``l = 0..L``.

    ``Z0[b]`` is the mass on the first action that does not lead to the
    level states, ``eta`` and ``gamma`` are the reward-sign statistics of
    the shifted and the level states, and ``rho0``, ``rho1`` the
    probabilities of the sign-matching action at the shifted states under
    the distribution reweighted by ``Z0``.
    """

    Z0: np.ndarray
    eta: np.ndarray
    gamma: np.ndarray
    rho0: np.ndarray
    rho1: np.ndarray
    trials: int

    def __post_init__(self):
        self.Z0 = np.asarray(self.Z0, dtype=float)
        for name in ("eta", "gamma", "rho0", "rho1"):
            values = np.asarray(getattr(self, name), dtype=float)
            if values.ndim != 2 or values.shape[0] != 2:
                raise PessimismValueError("{} must have shape 2 x (L + 1)".format(name))
            setattr(self, name, values)
        if self.Z0.shape != (2,):
            raise PessimismValueError("Z0 must hold one value per b_init")

    @property
    def L(self):
        return self.eta.shape[1] - 1

    @property
    def rho(self):
        return self.rho0 + self.rho1


def _statistics(table, instance):
    """
    The unnormalized statistics of one Markov policy from its action table.
    """
    L = instance.L
    step2 = table[1]
    first = table[0, T1]
    behavior = np.array([first[0] + first[2] + first[3], first[1]])

    levels = np.array([step2[instance.level(l)] for l in range(L + 1)])
    keep0 = np.array([
        step2[instance.shifted(0, l), [0, 2, 3]].sum() for l in range(L + 1)
    ])
    flip1 = np.array([step2[instance.shifted(1, l), 1] for l in range(L + 1)])

    stats = {key: np.zeros((2, L + 1)) for key in ("eta", "gamma", "rho0", "rho1")}
    Z0 = np.zeros(2)
    for b in (0, 1):
        away, toward = behavior[1 - b], behavior[b]
        Z0[b] = away
        stats["eta"][b] = away * (keep0 - flip1)
        stats["gamma"][b] = toward * (levels[:, 1] - levels[:, 3])
        stats["rho0"][b] = away * keep0
        stats["rho1"][b] = away * flip1
    return Z0, stats


def policy_statistics(policy, instance, mc_draws=None, stream=None):
    """
    The unnormalized statistics of a policy or a mixture, as a pair
    ``(Z0, stats)``. Mixture components are weighted by their mixture weight.
    """
    stream = check_stream(stream)
    if is_mixture(policy):
        parts = [
            policy_statistics(component, instance, mc_draws, stream.child(idx))
            for idx, component in enumerate(policy.policies)
        ]
        Z0 = sum(w * part[0] for w, part in zip(policy.weights, parts))
        stats = {
            key: sum(w * part[1][key] for w, part in zip(policy.weights, parts))
            for key in parts[0][1]
        }
        return Z0, stats

    table = policy.action_table(instance.mdp, draws=mc_draws, stream=stream)
    return _statistics(table, instance)


def summarize_policies(policies, instance, mc_draws=None, stream=None, weights=None):
    """
    Averages the statistics of the given policies into a
    :class:`PolicyDistributionEstimate`. Policy ``i`` uses ``stream.child(i)``
    and, when ``weights`` are given, carries weight ``weights[i]`` instead
    of an equal share.
    """
    policies = list(policies)
    if not policies:
        raise PessimismValueError("cannot summarize an empty set of policies")

    stream = check_stream(stream)
    parts = [
        policy_statistics(policy, instance, mc_draws, stream.child(idx))
        for idx, policy in enumerate(policies)
    ]

    average = lambda values: np.average(values, axis=0, weights=weights)
    Z0 = average([part[0] for part in parts])
    means = {key: average([part[1][key] for part in parts]) for key in parts[0][1]}
    return PolicyDistributionEstimate(
        Z0=Z0,
        eta=means["eta"],
        gamma=means["gamma"],
        rho0=div_safe(means["rho0"], Z0[:, np.newaxis]),
        rho1=div_safe(means["rho1"], Z0[:, np.newaxis]),
        trials=len(policies),
    )


##########################################################################
## Running Trials
##########################################################################

def _run_trial(algorithm, template, n, trial, stream):
    dataset = generate_lb_dataset(template, n, stream.child(0))
    learner = algorithm.for_trial(trial)
    return learner(dataset, template.mdp, stream.child(1))


def collect_policies(algorithm, template, n, trials, stream=None, jobs=1):
    """
    Runs the algorithm on ``trials`` independent canonical datasets drawn
    from the template and returns its output policies in trial order. Trial
    ``i`` uses ``stream.child(i)`` whatever the number of jobs.
    """
    if trials < 1:
        raise PessimismValueError("at least one trial is required")

    stream = check_stream(stream)
    tasks = (
        delayed(_run_trial)(algorithm, template, n, idx, stream.child(idx))
        for idx in range(trials)
    )
    return Parallel(n_jobs=jobs)(tasks)


def estimate_policy_distribution(algorithm, template, n, trials, stream=None,
                                 mc_draws=None, jobs=1):
    """
    Estimates the output distribution of an algorithm on the family.

    Parameters
    ----------
    algorithm : OfflineAlgorithm
        The learner; only the features of ``template.mdp`` are available to
        it.

    template : LowerBoundInstance
        Any member of the family; the datasets do not depend on its bits.

    n : int
        The dataset size.

    trials : int
        The number of independent datasets.

    stream : RandomStream or int, default: None
        Trials draw from ``stream.child(0, i)``, the action tables of the
        outputs from ``stream.child(1)``.

    mc_draws : int, default: None
        Monte-Carlo draws for perturbed linear action probabilities.

    jobs : int, default: 1
        Trials run concurrently on this many workers.

    Returns
    -------
    estimate : PolicyDistributionEstimate
    """
    stream = check_stream(stream)
    policies = collect_policies(algorithm, template, n, trials, stream.child(0), jobs)
    return summarize_policies(policies, template, mc_draws, stream.child(1))


##########################################################################
## Adversarial Bits
##########################################################################

def adversarial_b(estimate, eps):
    """
    Chooses the bits of the member of the family on which the estimated
    output distribution is at least ``c_phi sqrt(eps) / 40`` worse than the
    reference policy.

    ``b_init`` makes the mass off the informative first action at least one
    half. If the reward-sign statistics are large the reward sign is set
    against them (case 1). Otherwise either the sign-matching probabilities
    stay low on the upper half of the levels (case 2, same bits as case 1)
    or they increase along the levels, and the level bits shift the
    successors of the increasing sign down by one (case 3).

    Returns
    -------
    bits : LowerBoundBits

    case : int
        1, 2 or 3.

    flagged : bool
        True when neither case 2 nor case 3 held and the one with the
        larger relative margin was taken; a CaseSelectionWarning is issued.
    """

    L = estimate.L
    root = math.sqrt(eps)
    b_init = 0 if estimate.Z0[0] >= 0.5 else 1

    total = float((estimate.eta[b_init, 1:] + estimate.gamma[b_init, 1:]).sum())
    flat = LowerBoundBits(0 if total < 0 else 1, b_init, np.zeros((L, 2), dtype=np.int64))

    if abs(total / L) > root / 10.0:
        logger.info("case 1: reward statistic %.4g", total / L)
        return flat, CASE_REWARD, False

    rho = estimate.rho[b_init]
    upper = float((rho[L // 2:] - 1.0).sum())
    rises = {e: np.diff(getattr(estimate, "rho{}".format(e))[b_init]) for e in (0, 1)}
    climb = float(positive_part(np.diff(rho)).sum())

    margin_flat = (L / 4.0 - upper) / (L / 4.0)
    margin_climb = (climb - root / 2.0) / (root / 2.0)

    flagged = False
    if margin_flat < 0 and margin_climb < 0:
        flagged = True
        warnings.warn(
            "neither case 2 ({:.3g}) nor case 3 ({:.3g}) holds; "
            "taking the larger margin".format(margin_flat, margin_climb),
            CaseSelectionWarning,
        )

    if margin_flat >= 0 or (flagged and margin_flat >= margin_climb):
        logger.info("case 2: upper levels sum %.4g", upper)
        return flat, CASE_FLAT, flagged

    gains = [float(positive_part(rises[e]).sum()) for e in (0, 1)]
    e_star = int(np.argmax(gains))
    levels = np.zeros((L, 2), dtype=np.int64)
    levels[:, e_star] = (rises[e_star] >= 0).astype(np.int64)

    logger.info("case 3: climb %.4g, sign %d", climb, e_star)
    return LowerBoundBits(e_star, b_init, levels), CASE_STAIRCASE, flagged
