# pessimism.policies
# Perturbed linear, softmax and tabular policies and feature estimation.
#
# Created:  Wed Mar 04 10:14:19 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Perturbed linear, softmax and tabular policies and feature estimation.

A :class:`Policy` holds one decision rule per step:

- :class:`PerturbedLinear` draws ``theta ~ N(w, sigma^2 I)`` and plays the
  action maximizing ``<phi_h(x, a), theta>``; ``sigma = 0`` is the
  deterministic argmax on ``w``.
- :class:`Softmax` plays ``a`` with probability proportional to
  ``exp(eta <phi_h(x, a), w>)``.
- :class:`Tabular` stores an explicit action distribution per state.

Argmax ties are broken toward the smallest action index everywhere, so
actions with identical features behave as their lowest indexed twin.
Action probabilities of perturbed linear rules are estimated by Monte-Carlo
(one random sub-stream per step and state) except in one dimension, where
they have a closed form.
"""

##########################################################################
## Imports
##########################################################################

import math
import logging
import warnings
import numpy as np

from dataclasses import dataclass
from scipy.stats import norm
from scipy.special import softmax

from .config import TOLERANCES, DEFAULTS
from .utils.random import check_stream
from .exceptions import (
    BoundWarning, DimensionError, PessimismValueError, UnsupportedModeError,
    UnsupportedPolicyError,
)


logger = logging.getLogger(__name__)

# Names of the action probability computations
MONTE_CARLO = 'mc'
CLOSED_FORM = 'closed-form-1d'
AUTO        = 'auto'

# Perturbations scored per block when counting argmax actions
CHUNK_SIZE = 65536


##########################################################################
## Perturbation Sampling
##########################################################################

def argmax_counts(features, w, sigma, draws, generator):
    """
    Counts how often each action maximizes ``<phi(a), w + sigma z>`` over
    ``draws`` standard normal perturbations ``z``.
    """
    counts = np.zeros(len(features), dtype=np.int64)
    remaining = draws
    while remaining > 0:
        size = min(remaining, CHUNK_SIZE)
        thetas = w + sigma * generator.standard_normal((size, len(w)))
        choices = thetas.dot(features.T).argmax(axis=1)
        counts += np.bincount(choices, minlength=len(features))
        remaining -= size
    return counts


##########################################################################
## Decision Rules
##########################################################################

class DecisionRule(object):
    """
    The behavior of a policy at one step. Subclasses implement
    ``probabilities`` over the features of one state and ``sample``.
    """

    def probabilities(self, features, draws=None, generator=None, mode=AUTO):
        raise NotImplementedError

    def sample(self, features, generator):
        raise NotImplementedError

    def check_dim(self, dim, step=None):
        pass


class PerturbedLinear(DecisionRule):
    """
    Plays ``argmax_a <phi(a), theta>`` with ``theta ~ N(w, sigma^2 I)``.

    Parameters
    ----------
    w : array-like of length d
        The mean of the perturbed weight.

    sigma : float
        The perturbation scale, ``sigma >= 0``.
    """

    def __init__(self, w, sigma):
        self.w = np.array(w, dtype=float)
        self.sigma = float(sigma)
        if self.w.ndim != 1:
            raise PessimismValueError("w must be a vector not {}".format(self.w.shape))
        if self.sigma < 0:
            raise PessimismValueError("sigma must be nonnegative not {}".format(sigma))

    @property
    def dim(self):
        return len(self.w)

    def check_dim(self, dim, step=None):
        if self.dim != dim:
            raise DimensionError(
                "perturbed linear weight of length {} does not match feature dimension {}".format(
                    self.dim, dim
                ), step=step,
            )

    @property
    def noise_ratio(self):
        """
        ``sigma / ||w||``; a zero weight is admitted with ratio infinity.
        """
        scale = np.linalg.norm(self.w)
        if scale == 0:
            return math.inf
        return self.sigma / scale

    @property
    def deterministic(self):
        return self.sigma == 0

    def probabilities(self, features, draws=None, generator=None, mode=AUTO):
        features = np.asarray(features, dtype=float)
        n_actions = len(features)

        if self.deterministic or n_actions == 1:
            probs = np.zeros(n_actions)
            probs[features.dot(self.w).argmax()] = 1.0
            return probs

        if mode == CLOSED_FORM or (mode == AUTO and self.dim == 1):
            return self._closed_form(features)

        if mode not in (MONTE_CARLO, AUTO):
            raise UnsupportedModeError("unknown action probability mode '{}'".format(mode))

        draws = draws or DEFAULTS.mc_draws
        counts = argmax_counts(features, self.w, self.sigma, draws, generator)
        return counts / float(draws)

    def _closed_form(self, features):
        if self.dim != 1:
            raise UnsupportedModeError(
                "closed form probabilities need d = 1, not d = {}".format(self.dim)
            )

        # A positive perturbed weight plays the largest feature, a negative
        # one the smallest; each set of ties resolves to its first action.
        values = features[:, 0]
        up = norm.cdf(self.w[0] / self.sigma)
        probs = np.zeros(len(values))
        probs[values.argmax()] += up
        probs[values.argmin()] += 1.0 - up
        return probs

    def sample(self, features, generator):
        theta = self.w + self.sigma * generator.standard_normal(self.dim)
        return int(np.asarray(features).dot(theta).argmax())

    def __repr__(self):
        return "PerturbedLinear(w={}, sigma={})".format(self.w.tolist(), self.sigma)


class Softmax(DecisionRule):
    """
    Plays ``a`` with probability proportional to ``exp(eta <phi(a), w>)``.
    """

    def __init__(self, w, eta):
        self.w = np.array(w, dtype=float)
        self.eta = float(eta)
        if self.eta <= 0:
            raise PessimismValueError("softmax eta must be positive not {}".format(eta))

    @property
    def dim(self):
        return len(self.w)

    def check_dim(self, dim, step=None):
        if self.dim != dim:
            raise DimensionError(
                "softmax weight of length {} does not match feature dimension {}".format(
                    self.dim, dim
                ), step=step,
            )

    def probabilities(self, features, draws=None, generator=None, mode=AUTO):
        return softmax(self.eta * np.asarray(features, dtype=float).dot(self.w))

    def sample(self, features, generator):
        return int(generator.choice(len(features), p=self.probabilities(features)))

    def __repr__(self):
        return "Softmax(w={}, eta={})".format(self.w.tolist(), self.eta)


class Tabular(DecisionRule):
    """
    An explicit action distribution for every state, as an X x A table.
    """

    def __init__(self, table):
        self.table = np.array(table, dtype=float)
        if self.table.ndim != 2:
            raise PessimismValueError("tabular rule must be an X x A table")
        if (self.table < 0).any():
            raise PessimismValueError("tabular rule has negative probabilities")
        sums = self.table.sum(axis=1)
        if (np.abs(sums - 1.0) > TOLERANCES.probability).any():
            raise PessimismValueError(
                "tabular rule rows must sum to 1, row {} sums to {!r}".format(
                    int(np.argmax(np.abs(sums - 1.0))), sums[np.argmax(np.abs(sums - 1.0))]
                )
            )

    def probabilities(self, features, draws=None, generator=None, mode=AUTO, state=None):
        return self.table[state].copy()

    def sample(self, features, generator, state=None):
        return int(generator.choice(self.table.shape[1], p=self.table[state]))

    def __repr__(self):
        return "Tabular(states={}, actions={})".format(*self.table.shape)


##########################################################################
## Policies
##########################################################################

class Policy(object):
    """
    A Markov policy: one decision rule per step.

    Parameters
    ----------
    rules : list of DecisionRule
        The rule of each step, in order.
    """

    def __init__(self, rules):
        self.rules = list(rules)
        if not self.rules:
            raise PessimismValueError("a policy needs at least one step")

    @classmethod
    def perturbed_linear(klass, weights, sigma):
        """
        Perturbed linear rules from an H x d weight array; ``sigma`` is a
        scalar or one value per step.
        """
        weights = np.atleast_2d(np.asarray(weights, dtype=float))
        sigmas = np.broadcast_to(np.asarray(sigma, dtype=float), (len(weights),))
        return klass([PerturbedLinear(w, s) for w, s in zip(weights, sigmas)])

    @classmethod
    def softmax(klass, weights, eta):
        weights = np.atleast_2d(np.asarray(weights, dtype=float))
        return klass([Softmax(w, eta) for w in weights])

    @classmethod
    def tabular(klass, tables):
        return klass([Tabular(t) for t in tables])

    @classmethod
    def uniform(klass, mdp):
        shape = (mdp.horizon, mdp.n_states, mdp.n_actions)
        return klass.tabular(np.full(shape, 1.0 / mdp.n_actions))

    @property
    def horizon(self):
        return len(self.rules)

    def rule(self, h):
        if not 1 <= h <= self.horizon:
            raise DimensionError(
                "step {} is outside 1..{}".format(h, self.horizon), step=h
            )
        return self.rules[h - 1]

    def check(self, mdp):
        """
        Raises a DimensionError naming the step if this policy does not fit
        the MDP.
        """
        if self.horizon != mdp.horizon:
            raise DimensionError(
                "policy has {} steps but the MDP has {}".format(self.horizon, mdp.horizon)
            )

        for h, rule in enumerate(self.rules, start=1):
            rule.check_dim(mdp.dim, step=h)
            if isinstance(rule, Tabular) and rule.table.shape != (mdp.n_states, mdp.n_actions):
                raise DimensionError(
                    "tabular rule of shape {} does not match the MDP".format(rule.table.shape),
                    step=h,
                )
        return self

    def action_table(self, mdp, draws=None, stream=None, mode=AUTO):
        """
        Action probabilities of every step and state, ``H x X x A``. State
        ``x`` of step ``h`` uses the sub-stream ``stream.child(h, x)``.
        """
        self.check(mdp)
        stream = check_stream(stream)
        table = np.zeros((mdp.horizon, mdp.n_states, mdp.n_actions))
        for h in range(1, mdp.horizon + 1):
            for x in range(mdp.n_states):
                table[h - 1, x] = action_probabilities(
                    mdp, self, h, x, mode=mode, draws=draws, stream=stream.child(h, x)
                )
        return table

    def __repr__(self):
        return "Policy({})".format(", ".join(repr(r) for r in self.rules))


class MixturePolicy(object):
    """
    A mixture over Markov policies: a component is drawn once per episode.

    Parameters
    ----------
    policies : list of Policy
        The components.

    weights : array-like, default: None
        The mixture weights, uniform if None.
    """

    def __init__(self, policies, weights=None):
        self.policies = list(policies)
        if not self.policies:
            raise PessimismValueError("a mixture needs at least one policy")

        if weights is None:
            weights = np.full(len(self.policies), 1.0 / len(self.policies))
        self.weights = np.asarray(weights, dtype=float)

        if len(self.weights) != len(self.policies) or (self.weights < 0).any():
            raise PessimismValueError("mixture weights must be one nonnegative weight per policy")
        if abs(self.weights.sum() - 1.0) > TOLERANCES.probability * len(self.weights):
            raise PessimismValueError("mixture weights must sum to 1")

    @property
    def horizon(self):
        return self.policies[0].horizon

    def action_table(self, mdp, draws=None, stream=None, mode=AUTO):
        """
        The weighted average of the components' action tables. Each
        component uses the sub-stream of its index.
        """
        stream = check_stream(stream)
        return sum(
            weight * policy.action_table(mdp, draws, stream.child(idx), mode)
            for idx, (weight, policy) in enumerate(zip(self.weights, self.policies))
        )

    def sample(self, stream):
        """
        Draws one component according to the mixture weights.
        """
        generator = check_stream(stream).generator()
        return self.policies[int(generator.choice(len(self.policies), p=self.weights))]

    def __len__(self):
        return len(self.policies)

    def __repr__(self):
        return "MixturePolicy(components={})".format(len(self.policies))


##########################################################################
## Acting
##########################################################################

def sample_action(mdp, policy, h, x, stream):
    """
    Draws the action of the policy at step ``h`` (1-based) and state ``x``.
    """
    rule = policy.rule(h)
    rule.check_dim(mdp.dim, step=h)
    generator = check_stream(stream).generator()
    features = mdp.step_features(h)[x]

    if isinstance(rule, Tabular):
        return rule.sample(features, generator, state=x)
    return rule.sample(features, generator)


def action_probabilities(mdp, policy, h, x, mode=AUTO, draws=None, stream=None):
    """
    The action distribution of the policy at step ``h`` and state ``x``.

    Parameters
    ----------
    mode : string, default: 'auto'
        ``'mc'`` estimates perturbed linear probabilities from ``draws``
        perturbations, ``'closed-form-1d'`` uses the Gaussian CDF (d = 1
        only) and ``'auto'`` picks the closed form when d = 1. Deterministic,
        softmax and tabular rules are always exact.

    draws : int, default: None
        Monte-Carlo draws, 20,000 by default.

    stream : RandomStream or int, default: None
        The random stream for the perturbations.
    """
    rule = policy.rule(h)
    rule.check_dim(mdp.dim, step=h)
    if mode not in (MONTE_CARLO, CLOSED_FORM, AUTO):
        raise UnsupportedModeError("unknown action probability mode '{}'".format(mode))

    features = mdp.step_features(h)[x]
    if isinstance(rule, Tabular):
        return rule.probabilities(features, state=x)

    if mode == CLOSED_FORM and mdp.dim != 1:
        raise UnsupportedModeError(
            "closed form probabilities need d = 1, not d = {}".format(mdp.dim)
        )

    generator = check_stream(stream).generator()
    return rule.probabilities(features, draws=draws, generator=generator, mode=mode)


##########################################################################
## Feature Estimation
##########################################################################

@dataclass
class FeatureEstimate:
    """
    A Monte-Carlo estimate of the expected feature of a perturbed linear
    rule at one state.
    """

    phi_hat: np.ndarray
    sample_count: int
    eps_apx: float
    delta: float


def sample_count(eps_apx, delta, dim):
    """
    The number of perturbations ``ceil(2 eps^-2 log(2d / delta))`` that
    estimates an expected feature to accuracy ``eps_apx`` with probability
    at least ``1 - delta``.
    """
    return int(math.ceil(2.0 * eps_apx ** -2 * math.log(2.0 * dim / delta)))


def est_feature(mdp, x, policy, h, eps_apx, delta, stream=None):
    """
    Estimates ``phi_h(x, pi_h(x))`` for a perturbed linear rule by averaging
    the argmax features of ``N = ceil(2 eps^-2 log(2d / delta))``
    perturbations.

    Parameters
    ----------
    mdp : FeatureMDP

    x : int
        The state.

    policy : Policy
        Must be perturbed linear at step ``h``.

    h : int
        The 1-based step.

    eps_apx, delta : float in (0, 1)
        The accuracy and failure probability.

    stream : RandomStream or int, default: None

    Returns
    -------
    estimate : FeatureEstimate
    """
    rule = policy.rule(h)
    if not isinstance(rule, PerturbedLinear):
        raise UnsupportedPolicyError(
            "feature estimation needs a perturbed linear rule at step {}, not {}".format(
                h, type(rule).__name__
            )
        )

    if not (0 < eps_apx < 1 and 0 < delta < 1):
        raise PessimismValueError("eps_apx and delta must lie in (0, 1)")

    rule.check_dim(mdp.dim, step=h)
    features = mdp.step_features(h)[x]
    count = sample_count(eps_apx, delta, mdp.dim)

    if rule.deterministic or len(features) == 1:
        probs = rule.probabilities(features)
    else:
        generator = check_stream(stream).generator()
        probs = argmax_counts(features, rule.w, rule.sigma, count, generator) / float(count)

    return FeatureEstimate(
        phi_hat=probs.dot(features), sample_count=count, eps_apx=eps_apx, delta=delta,
    )


##########################################################################
## Gaussian Stability
##########################################################################

def gaussian_stability_check(eta, v):
    """
    Returns the total variation distance between ``N(0, eta^2 I)`` and
    ``N(v, eta^2 I)``, ``2 Phi(||v|| / (2 eta)) - 1``, together with its
    bound ``||v|| / (2 eta)``. Issues a :class:`BoundWarning` when the
    distance exceeds the bound.
    """
    if eta <= 0:
        raise PessimismValueError("eta must be positive not {}".format(eta))

    shift = float(np.linalg.norm(np.asarray(v, dtype=float))) / (2.0 * eta)
    tv = float(2.0 * norm.cdf(shift) - 1.0)
    if tv > shift + TOLERANCES.identity:
        warnings.warn(
            "total variation {:.6g} exceeds its stability bound {:.6g}".format(tv, shift),
            BoundWarning,
        )
    return tv, shift
