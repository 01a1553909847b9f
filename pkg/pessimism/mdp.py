# pessimism.mdp
# Finite-horizon feature MDPs, exact dynamic programming and Bellman error.
#
# Created:  Tue Mar 03 15:47:02 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Finite-horizon feature MDPs, exact dynamic programming and Bellman error.

A :class:`FeatureMDP` stores every table densely as numpy arrays:

- ``features[h, x, a]``     the feature vector ``phi_h(x, a)`` in R^d
- ``transitions[h, x, a]``  the next state distribution ``P_h(. | x, a)``
- ``reward_coeffs[h]``      the reward vector ``theta^r_h``

Steps are 1-based in every public function (``1 <= h <= H``) and 0-based in
the arrays. Features at step ``H + 1`` are zero by convention, so the
successor recorded for a step ``H`` tuple is inert; datasets mark it with
:data:`TERMINAL`.

Policies are passed either as policy objects from :mod:`pessimism.policies`
or directly as an ``H x X x A`` array of action probabilities. Passing the
array makes repeated evaluations use identical Monte-Carlo probabilities.
"""

##########################################################################
## Imports
##########################################################################

import logging
import numpy as np

from dataclasses import dataclass

from .config import TOLERANCES, DEFAULTS
from .bestfit import fit_backup, clip_predictions, max_residual
from .utils.decorators import memoized
from .utils.helpers import sphere_samples, signed_basis
from .utils.random import check_stream
from .utils.types import is_mixture
from .exceptions import DimensionError, PessimismValueError


logger = logging.getLogger(__name__)

# Reserved successor index of the last step of an episode
TERMINAL = -1


##########################################################################
## Feature MDP
##########################################################################

class FeatureMDP(object):
    """
    A finite-horizon MDP with per-step feature maps and linear rewards.

    Parameters
    ----------
    features : array-like of shape H x X x A x d
        The feature map of every step.

    transitions : array-like of shape H x X x A x X
        The transition law of every step. Rows of the last step are kept for
        completeness and never used by dynamic programming.

    reward_coeffs : array-like of shape H x d, default: None
        The reward vectors; rewards are ``<phi_h(x, a), theta^r_h>``.

    initial_state : int, default: 0
        The state every episode starts in.

    support : array-like of bool of shape H x X, default: None
        Marks the states that exist at each step. Unsupported (step, state)
        pairs keep valid rows in every table but are ignored when measuring
        Bellman error. None means every state exists at every step.

    reward_table : array-like of shape H x X x A, default: None
        Explicit rewards, used instead of ``reward_coeffs`` by induced MDPs
        whose rewards are not linear in the features.

    state_names : list of str, default: None
        Optional labels used in reports and the text container.

    validate : bool, default: True
        Check the invariants of the tables on construction.

    strict : bool, default: False
        Also require ``||theta^r_h|| <= 1``. By default only the realized
        rewards are required to lie in ``[-1, 1]``.
    """

    def __init__(self, features, transitions, reward_coeffs=None,
                 initial_state=0, support=None, reward_table=None,
                 state_names=None, validate=True, strict=False):

        self.features = self._frozen(features)
        self.transitions = self._frozen(transitions)

        if (reward_coeffs is None) == (reward_table is None):
            raise PessimismValueError(
                "exactly one of reward_coeffs and reward_table must be given"
            )

        self.reward_coeffs = None if reward_coeffs is None else self._frozen(reward_coeffs)
        self.reward_table = None if reward_table is None else self._frozen(reward_table)
        self.initial_state = int(initial_state)

        if support is None:
            support = np.ones(self.features.shape[:2], dtype=bool)
        self.support = self._frozen(support, dtype=bool)

        self.state_names = list(state_names) if state_names is not None else None

        self._check_shapes()
        if validate:
            self.validate(strict=strict)

    @staticmethod
    def _frozen(values, dtype=float):
        array = np.array(values, dtype=dtype)
        array.setflags(write=False)
        return array

    ##////////////////////////////////////////////////////////////////////
    ## Dimensions
    ##////////////////////////////////////////////////////////////////////

    @property
    def horizon(self):
        return self.features.shape[0]

    @property
    def n_states(self):
        return self.features.shape[1]

    @property
    def n_actions(self):
        return self.features.shape[2]

    @property
    def dim(self):
        return self.features.shape[3]

    def step_index(self, h):
        """
        Converts a 1-based step to an array index, validating its range.
        """
        if not 1 <= h <= self.horizon:
            raise DimensionError(
                "step {} is outside 1..{}".format(h, self.horizon), step=h
            )
        return h - 1

    ##////////////////////////////////////////////////////////////////////
    ## Tables
    ##////////////////////////////////////////////////////////////////////

    @memoized
    def rewards(self):
        """
        The realized reward table of shape H x X x A.
        """
        if self.reward_table is not None:
            return self.reward_table
        table = np.einsum("hxad,hd->hxa", self.features, self.reward_coeffs)
        table.setflags(write=False)
        return table

    def feature(self, h, x, a):
        return self.features[self.step_index(h), x, a]

    def step_features(self, h):
        return self.features[self.step_index(h)]

    def next_features(self, h):
        """
        Features at step ``h + 1``, all zeros after the last step.
        """
        if h == self.horizon:
            return np.zeros(self.features.shape[1:])
        return self.step_features(h + 1)

    def supported_states(self, h):
        return np.flatnonzero(self.support[self.step_index(h)])

    def supported_pairs(self, h):
        """
        Returns the states and actions of every supported pair at step h as
        two aligned index arrays, in state-major order.
        """
        states = self.supported_states(h)
        xs = np.repeat(states, self.n_actions)
        acts = np.tile(np.arange(self.n_actions), len(states))
        return xs, acts

    def state_name(self, x):
        if self.state_names is None:
            return str(x)
        return self.state_names[x]

    def state_index(self, name):
        if self.state_names is None or name not in self.state_names:
            raise PessimismValueError("unknown state name '{}'".format(name))
        return self.state_names.index(name)

    def with_rewards(self, reward_table, validate=False):
        """
        Returns a copy of this MDP with an explicit reward table.
        """
        return FeatureMDP(
            self.features, self.transitions, reward_table=reward_table,
            initial_state=self.initial_state, support=self.support,
            state_names=self.state_names, validate=validate,
        )

    ##////////////////////////////////////////////////////////////////////
    ## Validation
    ##////////////////////////////////////////////////////////////////////

    def _check_shapes(self):
        if self.features.ndim != 4:
            raise DimensionError(
                "features must be an H x X x A x d array not {}".format(self.features.shape)
            )

        H, X, A, d = self.features.shape
        if self.transitions.shape != (H, X, A, X):
            raise DimensionError(
                "transitions must have shape {} not {}".format((H, X, A, X), self.transitions.shape)
            )

        if self.reward_coeffs is not None and self.reward_coeffs.shape != (H, d):
            raise DimensionError(
                "reward_coeffs must have shape {} not {}".format((H, d), self.reward_coeffs.shape)
            )

        if self.reward_table is not None and self.reward_table.shape != (H, X, A):
            raise DimensionError(
                "reward_table must have shape {} not {}".format((H, X, A), self.reward_table.shape)
            )

        if self.support.shape != (H, X):
            raise DimensionError(
                "support must have shape {} not {}".format((H, X), self.support.shape)
            )

        if not 0 <= self.initial_state < X:
            raise PessimismValueError(
                "initial state {} is not one of the {} states".format(self.initial_state, X)
            )

        if self.state_names is not None and len(self.state_names) != X:
            raise DimensionError(
                "{} state names given for {} states".format(len(self.state_names), X)
            )

    def validate(self, strict=False):
        """
        Checks the table invariants: transition rows are distributions,
        features lie in the unit ball and rewards lie in ``[-1, 1]``.
        """
        tol = TOLERANCES

        if (self.transitions < 0).any():
            h = int(np.argwhere(self.transitions < 0)[0][0]) + 1
            raise PessimismValueError("negative transition probability at step {}".format(h))

        sums = self.transitions.sum(axis=-1)
        bad = np.abs(sums - 1.0) > tol.probability
        if bad.any():
            h, x, a = np.argwhere(bad)[0]
            raise PessimismValueError(
                "transition row (h={}, x={}, a={}) sums to {!r}".format(h + 1, x, a, sums[h, x, a])
            )

        norms = np.linalg.norm(self.features, axis=-1)
        if (norms > 1.0 + tol.feature_norm).any():
            h, x, a = np.argwhere(norms > 1.0 + tol.feature_norm)[0]
            raise PessimismValueError(
                "feature (h={}, x={}, a={}) has norm {!r} > 1".format(h + 1, x, a, norms[h, x, a])
            )

        if (np.abs(self.rewards) > 1.0 + tol.feature_norm).any():
            h = int(np.argwhere(np.abs(self.rewards) > 1.0 + tol.feature_norm)[0][0]) + 1
            raise PessimismValueError("reward outside [-1, 1] at step {}".format(h))

        if strict and self.reward_coeffs is not None:
            theta = np.linalg.norm(self.reward_coeffs, axis=1)
            if (theta > 1.0 + tol.feature_norm).any():
                h = int(np.argmax(theta)) + 1
                raise PessimismValueError(
                    "reward vector of step {} has norm {!r} > 1".format(h, theta[h - 1])
                )

        return self

    def __repr__(self):
        return "FeatureMDP(H={}, states={}, actions={}, d={})".format(
            self.horizon, self.n_states, self.n_actions, self.dim
        )


##########################################################################
## Value Tables
##########################################################################

@dataclass
class ValueTable:
    """
    Q and V values of a policy, stored 0-based as ``Q[h-1, x, a]`` and
    ``V[h-1, x]``; step ``H + 1`` is zero by convention.
    """

    Q: np.ndarray
    V: np.ndarray
    initial_state: int = 0

    def q(self, h, x, a):
        return float(self.Q[h - 1, x, a])

    def v(self, h, x):
        return float(self.V[h - 1, x])

    @property
    def value(self):
        """
        The expected total reward from the initial state.
        """
        return float(self.V[0, self.initial_state])


@dataclass(frozen=True)
class BoundedBallSpec:
    """
    The admissible weights used when measuring inherent Bellman error.

    ``radius_inner`` is the radius of the ball every ``B_h`` is known to
    contain (1 for features in the unit ball) and ``bound_B`` is the bound
    on the norm of weights in ``B_h``.
    """

    radius_inner: float = 1.0
    bound_B: float = 1.0
    sampling_count: int = DEFAULTS.ibe_samples

    def __post_init__(self):
        if self.sampling_count < 1:
            raise PessimismValueError("sampling_count must be at least 1")
        if self.radius_inner > self.bound_B:
            raise PessimismValueError(
                "radius_inner {} exceeds bound_B {}".format(self.radius_inner, self.bound_B)
            )


##########################################################################
## Policy Tables
##########################################################################

def policy_tables(mdp, policy, mc_draws=None, stream=None):
    """
    Returns the action probabilities of a Markov policy at every step and
    state as an ``H x X x A`` array. Arrays are validated and passed through.
    """
    if isinstance(policy, np.ndarray):
        if policy.shape != (mdp.horizon, mdp.n_states, mdp.n_actions):
            raise DimensionError(
                "policy table of shape {} does not match the MDP".format(policy.shape)
            )
        return policy
    return policy.action_table(mdp, draws=mc_draws, stream=stream)


def _mixture_average(mdp, policy, func, mc_draws, stream):
    stream = check_stream(stream)
    results = [
        func(mdp, component, mc_draws, stream.child(idx))
        for idx, component in enumerate(policy.policies)
    ]
    return results, policy.weights


##########################################################################
## Dynamic Programming
##########################################################################

def exact_policy_value(mdp, policy, mc_draws=None, stream=None):
    """
    Evaluates a policy by backward induction.

    Parameters
    ----------
    mdp : FeatureMDP
        The MDP to evaluate in.

    policy : Policy, MixturePolicy or ndarray of shape H x X x A
        The policy. A mixture is evaluated component by component and the
        tables are averaged with the mixture weights, which is exact for the
        value from the initial state.

    mc_draws : int, default: None
        Perturbation draws for policies whose action probabilities are
        estimated by Monte-Carlo.

    stream : RandomStream or int, default: None
        The random stream for Monte-Carlo action probabilities.

    Returns
    -------
    values : ValueTable
    """
    if is_mixture(policy):
        tables, weights = _mixture_average(
            mdp, policy, exact_policy_value, mc_draws, stream
        )
        return ValueTable(
            Q=sum(w * t.Q for w, t in zip(weights, tables)),
            V=sum(w * t.V for w, t in zip(weights, tables)),
            initial_state=mdp.initial_state,
        )

    probs = policy_tables(mdp, policy, mc_draws, stream)
    rewards = mdp.rewards

    H, X, A = probs.shape
    Q = np.zeros((H, X, A))
    V = np.zeros((H, X))

    v_next = np.zeros(X)
    for idx in reversed(range(H)):
        Q[idx] = rewards[idx] + mdp.transitions[idx].dot(v_next)
        V[idx] = (probs[idx] * Q[idx]).sum(axis=1)
        v_next = V[idx]

    return ValueTable(Q=Q, V=V, initial_state=mdp.initial_state)


def optimal_value(mdp):
    """
    Computes the optimal values by greedy backward induction and returns
    them along with an optimal deterministic tabular policy (ties broken
    toward the smallest action index).
    """
    # NOTE: This must be imported here to avoid recursive import.
    from .policies import Policy

    H, X, A = mdp.horizon, mdp.n_states, mdp.n_actions
    Q = np.zeros((H, X, A))
    V = np.zeros((H, X))
    greedy = np.zeros((H, X, A))

    v_next = np.zeros(X)
    for idx in reversed(range(H)):
        Q[idx] = mdp.rewards[idx] + mdp.transitions[idx].dot(v_next)
        best = Q[idx].argmax(axis=1)
        greedy[idx, np.arange(X), best] = 1.0
        V[idx] = Q[idx][np.arange(X), best]
        v_next = V[idx]

    table = ValueTable(Q=Q, V=V, initial_state=mdp.initial_state)
    return table, Policy.tabular(greedy)


def occupancy(mdp, policy, mc_draws=None, stream=None):
    """
    Propagates the state-action distribution of a policy forward from the
    initial state. Returns an ``H x X x A`` array whose step slices each sum
    to one.
    """
    if is_mixture(policy):
        tables, weights = _mixture_average(mdp, policy, occupancy, mc_draws, stream)
        return sum(w * t for w, t in zip(weights, tables))

    probs = policy_tables(mdp, policy, mc_draws, stream)
    H, X, A = probs.shape

    dist = np.zeros((H, X, A))
    states = np.zeros(X)
    states[mdp.initial_state] = 1.0
    for idx in range(H):
        dist[idx] = states[:, np.newaxis] * probs[idx]
        states = np.einsum("xa,xay->y", dist[idx], mdp.transitions[idx])

    return dist


def expected_features(mdp, policy, mc_draws=None, stream=None):
    """
    The mean feature ``E[phi_h(x_h, a_h)]`` of every step under the policy,
    as an ``H x d`` array.
    """
    dist = occupancy(mdp, policy, mc_draws, stream)
    return np.einsum("hxa,hxad->hd", dist, mdp.features)


##########################################################################
## Bellman Backups
##########################################################################

def _mean_features(features, probs):
    # Expected feature at every state under a per-state action distribution
    return np.einsum("xa,xad->xd", probs, features)


def bellman_backup(mdp, h, policy_next, w):
    """
    The Bellman backup of the linear function ``<phi_{h+1}, w>`` under the
    action distribution of step ``h + 1``.

    Parameters
    ----------
    mdp : FeatureMDP

    h : int
        The 1-based step, ``1 <= h <= H``.

    policy_next : ndarray of shape X x A or None
        The action distribution of every state at step ``h + 1``; ignored
        (and may be None) at the last step.

    w : array-like of length d
        The weight of the next step linear function.

    Returns
    -------
    backup : ndarray of shape X x A
        ``r_h(x, a) + E_{x'}[<phi_{h+1}(x', pi_{h+1}(x')), w>]``.
    """
    idx = mdp.step_index(h)
    w = np.asarray(w, dtype=float)
    if w.shape != (mdp.dim,):
        raise DimensionError(
            "weight of length {} does not match feature dimension {}".format(len(w), mdp.dim),
            step=h + 1,
        )

    rewards = mdp.rewards[idx]
    if h == mdp.horizon:
        return rewards.copy()

    policy_next = np.asarray(policy_next, dtype=float)
    if policy_next.shape != (mdp.n_states, mdp.n_actions):
        raise DimensionError(
            "next step action distribution of shape {} does not match the MDP".format(
                policy_next.shape
            ),
            step=h + 1,
        )

    values = _mean_features(mdp.step_features(h + 1), policy_next).dot(w)
    return rewards + mdp.transitions[idx].dot(values)


def induced_mdp(mdp, weights, policy, mc_draws=None, stream=None):
    """
    Builds the induced MDP in which ``f_h(x, a) = <phi_h(x, a), w_h>`` is the
    exact Q function of the policy: transitions are unchanged and rewards
    become ``f_h(x, a) - E_{x'}[f_{h+1}(x', pi_{h+1}(x'))]``.

    Parameters
    ----------
    weights : array-like of shape H x d

    policy : Policy or ndarray of shape H x X x A
    """
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (mdp.horizon, mdp.dim):
        raise DimensionError(
            "weights must have shape {} not {}".format((mdp.horizon, mdp.dim), weights.shape)
        )

    probs = policy_tables(mdp, policy, mc_draws, stream)
    f = np.einsum("hxad,hd->hxa", mdp.features, weights)

    rewards = np.array(f)
    for idx in range(mdp.horizon - 1):
        v_next = (probs[idx + 1] * f[idx + 1]).sum(axis=1)
        rewards[idx] -= mdp.transitions[idx].dot(v_next)

    return mdp.with_rewards(rewards)


def performance_difference(mdp, pi, pi_prime, mc_draws=None, stream=None):
    """
    Returns both sides of the performance difference identity,
    ``V^pi_1(x_1) - V^pi'_1(x_1)`` and
    ``sum_h E^pi'[V^pi_h(x_h) - Q^pi_h(x_h, a_h)]``.
    """
    stream = check_stream(stream)
    pi = policy_tables(mdp, pi, mc_draws, stream.child(0))
    pi_prime = policy_tables(mdp, pi_prime, mc_draws, stream.child(1))

    values = exact_policy_value(mdp, pi)
    others = exact_policy_value(mdp, pi_prime)
    dist = occupancy(mdp, pi_prime)

    lhs = values.value - others.value
    rhs = float((dist * (values.V[:, :, np.newaxis] - values.Q)).sum())
    return lhs, rhs


##########################################################################
## Inherent Bellman Error
##########################################################################

def measure_inherent_bellman_error(mdp, spec=None, stream=None):
    """
    Estimates the inherent Bellman error of the MDP.

    For every sampled weight ``theta`` on the sphere of radius
    ``spec.radius_inner`` (plus the signed basis directions) and every step,
    the greedy backup ``r_h(x, a) + E_{x'}[max_a' <phi_{h+1}(x', a'), theta>]``
    is fit by least squares against ``phi_h`` over the supported pairs. The
    fitted function is rescaled so that its values lie in ``[-2, 2]`` (the
    set ``2 B_h``), and the largest absolute residual over all samples and
    steps, doubled, is returned.

    The samples are drawn row by row from the stream, so that decreasing
    ``sampling_count`` under a fixed seed evaluates a subset of the same
    weights and can only decrease the estimate. Rank deficient features are
    fit by the minimum norm solution.

    Parameters
    ----------
    mdp : FeatureMDP

    spec : BoundedBallSpec, default: None
        The sampling specification; the default samples 256 directions.

    stream : RandomStream or int, default: None
        The random stream for the sphere samples.

    Returns
    -------
    eps_be : float
    """
    spec = spec or BoundedBallSpec()
    rng = check_stream(stream).generator()

    thetas = np.vstack([
        sphere_samples(rng, spec.sampling_count, mdp.dim),
        signed_basis(mdp.dim),
    ]) * spec.radius_inner

    worst = 0.0
    for h in range(1, mdp.horizon + 1):
        idx = h - 1
        xs, acts = mdp.supported_pairs(h)
        if len(xs) == 0:
            continue

        phi = mdp.features[idx, xs, acts]
        rewards = mdp.rewards[idx, xs, acts]

        if h < mdp.horizon:
            # Greedy value of every next state for every sampled weight: S x X
            greedy = np.einsum("xad,sd->sxa", mdp.step_features(h + 1), thetas).max(axis=2)
            targets = rewards[:, np.newaxis] + mdp.transitions[idx, xs, acts].dot(greedy.T)
        else:
            targets = rewards[:, np.newaxis]

        _, predictions = fit_backup(phi, targets)
        predictions, _ = clip_predictions(predictions, 2.0)
        residual = max_residual(predictions, targets)

        logger.debug("step %d: worst backup residual %.3e", h, residual)
        worst = max(worst, residual)

    return 2.0 * worst
