# pessimism.actor
# The actor loop, its parameter schedule and the estimator facade.
#
# Created:  Sun Mar 08 09:51:37 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
The actor loop, its parameter schedule and the estimator facade.

The actor plays expected follow-the-perturbed-leader at every state
against a sequence of pessimistic critics. At iteration ``t`` the policy is
perturbed linear with weights ``theta_h^t = sum_{s<t} w_h^s`` and
perturbation scale ``eta``, which is exactly expected FTPL over the
features of each state. The critic returns the weights ``w^t`` of the most
pessimistic value estimate of that policy, and the output is the uniform
mixture over the ``T`` policies played.
"""

##########################################################################
## Imports
##########################################################################

import math
import logging
import numpy as np
import pandas as pd

from dataclasses import dataclass, field

from .base import OfflineAlgorithm
from .config import DEFAULTS, INFEASIBLE_POLICIES
from .critic import CriticProblem, solve_critic
from .policies import Policy, MixturePolicy
from .mdp import policy_tables
from .utils.random import check_stream
from .exceptions import (
    InfeasibleProgramError, PessimismKeyError, PessimismValueError,
    PreconditionError,
)


logger = logging.getLogger(__name__)

# Names of the critic infeasibility policies
ABORT = "abort"
INFLATE = "inflate"


##########################################################################
## Parameter Schedule
##########################################################################

@dataclass
class ActorConfig:
    """
    The inputs of the actor and the parameters derived from them. Build it
    with :func:`default_params`, which applies the schedule and any
    overrides.
    """

    eps_final: float
    delta: float
    n: int
    dim: int
    horizon: int
    bound_B: float
    eps_be: float = 0.0
    c_zeta: float = 1.0
    c_alpha: float = 1.0
    t_cap: int = DEFAULTS.t_cap

    # derived
    beta: float = None
    T_theory: float = None
    T: int = None
    eps_apx: float = None
    eta: float = None
    sigma: float = None
    zeta: float = None
    alpha: float = None
    overrides: dict = field(default_factory=dict)


def zeta_sigma(eps_be, dim, sigma, C=1.0):
    """
    The linearity error ``C eps d^1.5 (sqrt(d log(d / (eps sigma))) + 1/sigma)``
    of backups under perturbed linear policies with noise ratio ``sigma``;
    zero without misspecification. A negative logarithm is clipped to zero.
    """
    if eps_be == 0:
        return 0.0
    if sigma <= 0:
        return math.inf
    if math.isinf(sigma):
        return 0.0
    log_term = max(math.log(dim / (eps_be * sigma)), 0.0)
    return C * eps_be * dim ** 1.5 * (math.sqrt(dim * log_term) + 1.0 / sigma)


def default_params(eps_final, delta, n, dim, horizon, bound_B, eps_be=0.0,
                   c_zeta=1.0, c_alpha=1.0, t_cap=None, **overrides):
    """
    Derives the actor parameters::

        beta    = 2 B H
        T       = min(ceil(16 beta^2 sqrt(d) / eps_final^2), t_cap)
        eps_apx = 1 / sqrt(n)
        eta     = beta max(sqrt(T) d^-0.25, T sqrt(eps_be))
        sigma   = eta / (T beta)
        zeta    = zeta_sigma(eps_be, d, sigma, c_zeta)
        alpha   = 4 beta zeta sqrt(n) + c_alpha beta d sqrt(log(d n beta / (sigma delta)))

    ``eta`` and everything after it use the capped ``T``; the uncapped value
    is kept as ``T_theory``. Any of ``beta``, ``T``, ``eps_apx``, ``eta``,
    ``sigma`` and ``alpha`` may be overridden by keyword, and the override
    feeds the formulas that follow it.
    """
    unknown = set(overrides) - {"beta", "T", "eps_apx", "eta", "sigma", "alpha"}
    if unknown:
        raise PessimismKeyError("unknown actor overrides: {}".format(", ".join(sorted(unknown))))

    if not (0 < eps_final and 0 < delta < 1):
        raise PessimismValueError("need eps_final > 0 and delta in (0, 1)")
    if min(n, dim, horizon) < 1 or bound_B <= 0 or eps_be < 0:
        raise PessimismValueError("n, d, H and B must be positive and eps_be nonnegative")

    t_cap = DEFAULTS.t_cap if t_cap is None else int(t_cap)
    get = lambda key, value: overrides[key] if key in overrides else value

    beta = get("beta", 2.0 * bound_B * horizon)
    T_theory = 16.0 * beta ** 2 * math.sqrt(dim) / eps_final ** 2
    T = int(get("T", min(int(math.ceil(T_theory)), t_cap)))
    if T < 1:
        raise PessimismValueError("the actor needs at least one iteration")

    eps_apx = get("eps_apx", 1.0 / math.sqrt(n))
    eta = get("eta", beta * max(math.sqrt(T) * dim ** -0.25, T * math.sqrt(eps_be)))
    sigma = get("sigma", eta / (T * beta))
    zeta = zeta_sigma(eps_be, dim, sigma, c_zeta)

    log_term = max(math.log(dim * n * beta / (sigma * delta)), 0.0)
    alpha = get("alpha", 4.0 * beta * zeta * math.sqrt(n) + c_alpha * beta * dim * math.sqrt(log_term))

    config = ActorConfig(
        eps_final=eps_final, delta=delta, n=n, dim=dim, horizon=horizon,
        bound_B=bound_B, eps_be=eps_be, c_zeta=c_zeta, c_alpha=c_alpha,
        t_cap=t_cap, beta=beta, T_theory=T_theory, T=T, eps_apx=eps_apx,
        eta=eta, sigma=sigma, zeta=zeta, alpha=alpha, overrides=dict(overrides),
    )

    logger.info(
        "actor parameters: beta=%.4g T=%d (prescribed %.1f) eta=%.4g sigma=%.4g zeta=%.4g alpha=%.4g",
        beta, T, T_theory, eta, sigma, zeta, alpha,
    )
    return config


##########################################################################
## Actor Loop
##########################################################################

@dataclass
class ActorRun:
    """
    The record of one actor run. ``thetas[t]`` and ``weights[t]`` are the
    policy weights and critic weights of iteration ``t + 1``.
    """

    config: ActorConfig
    thetas: np.ndarray
    weights: np.ndarray
    objectives: np.ndarray
    flags: np.ndarray
    alphas: np.ndarray
    mixture: MixturePolicy
    pi_hat: Policy

    @property
    def policies(self):
        return self.mixture.policies

    @property
    def T(self):
        return len(self.objectives)

    def log_frame(self):
        """
        One row per iteration: ``t``, the critic objective, ``|w_h|`` per
        step and whether the critic needed an inflated radius.
        """
        frame = pd.DataFrame({"t": np.arange(1, self.T + 1), "objective": self.objectives})
        for h in range(self.weights.shape[1]):
            frame["w_norm_{}".format(h + 1)] = np.linalg.norm(self.weights[:, h], axis=1)
        frame["alpha"] = self.alphas
        frame["flagged"] = self.flags
        return frame


def _solve(mdp, dataset, policy, config, alpha, delta, stream, on_infeasible,
           lam, share_estimates, solver):
    """
    One critic call, inflating ``alpha`` when configured and the critic is
    infeasible or stops without convergence.
    Returns the solution, the radius used and whether it was inflated.
    """
    retries = DEFAULTS.inflate_retries if on_infeasible == INFLATE else 0
    for attempt in range(retries + 1):
        problem = CriticProblem.build(
            mdp, dataset, policy, config.eps_apx, alpha, config.beta, delta,
            lam=lam, stream=stream.child(0), share_estimates=share_estimates,
        )
        try:
            return solve_critic(problem, stream.child(1), **solver), alpha, attempt > 0
        except InfeasibleProgramError as e:
            if attempt == retries:
                raise
            logger.warning(
                "critic failed (%s); inflating alpha %.4g -> %.4g",
                e, alpha, alpha * DEFAULTS.inflate_factor,
            )
            alpha *= DEFAULTS.inflate_factor


def run_actor(dataset, config, mdp, stream=None, on_infeasible=ABORT, lam=None,
              share_estimates=True, **solver):
    """
    Runs the actor for ``config.T`` iterations.

    Parameters
    ----------
    dataset : OfflineDataset
        The offline data, must be nonempty.

    config : ActorConfig
        The parameters, see :func:`default_params`.

    mdp : FeatureMDP
        Provides the features; transitions are never read.

    stream : RandomStream or int, default: None
        Iteration ``t`` uses ``stream.child(t)``; the representative policy
        is drawn from ``stream.child(0)``.

    on_infeasible : string, default: 'abort'
        ``'abort'`` raises the critic's error, ``'inflate'`` doubles the
        critic radius up to three times for that iteration and flags it.

    lam : float, default: 1.0
        The ridge regularizer of the critic.

    solver : dict
        Options passed to :func:`~pessimism.critic.solve_critic`.

    Returns
    -------
    run : ActorRun
    """
    if on_infeasible not in INFEASIBLE_POLICIES:
        raise PessimismValueError(
            "unknown infeasibility policy '{}'; choose from {}".format(on_infeasible, INFEASIBLE_POLICIES)
        )
    if dataset.n == 0:
        raise PreconditionError("the actor needs a nonempty dataset")

    stream = check_stream(stream)
    lam = DEFAULTS.ridge if lam is None else lam
    H, d, T = mdp.horizon, mdp.dim, config.T
    delta = config.delta / (2.0 * T)

    thetas = np.zeros((T, H, d))
    weights = np.zeros((T, H, d))
    objectives = np.zeros(T)
    alphas = np.zeros(T)
    flags = np.zeros(T, dtype=bool)
    policies = []

    for t in range(1, T + 1):
        idx = t - 1
        if idx > 0:
            thetas[idx] = thetas[idx - 1] + weights[idx - 1]

        policy = Policy.perturbed_linear(thetas[idx], config.eta)
        try:
            solution, alphas[idx], flags[idx] = _solve(
                mdp, dataset, policy, config, config.alpha, delta, stream.child(t),
                on_infeasible, lam, share_estimates, solver,
            )
        except InfeasibleProgramError as e:
            logger.error("critic failed at iteration %d of %d", t, T)
            raise InfeasibleProgramError(
                "critic failed at iteration {}: {}".format(t, e),
                best_residual=e.best_residual, step=e.step,
            )

        weights[idx] = solution.w
        objectives[idx] = solution.objective
        policies.append(policy)
        logger.debug("iteration %d: objective %.6g", t, solution.objective)

    mixture = MixturePolicy(policies)
    return ActorRun(
        config=config, thetas=thetas, weights=weights, objectives=objectives,
        flags=flags, alphas=alphas, mixture=mixture,
        pi_hat=mixture.sample(stream.child(0)),
    )


##########################################################################
## Regret Probe
##########################################################################

def actor_regret_probe(run, mdp, comparator, h, x, mc_draws=None, stream=None):
    """
    The regret of the actor at one state of step ``h`` against a comparator
    policy, measured on the critic functions ``f^t = <phi_h, w_h^t>``::

        sum_t f^t(x, comparator(x)) - sum_t f^t(x, pi^t(x))

    Returns the regret and its bound ``eta^-1 beta^2 T + eta sqrt(d)``.
    """
    stream = check_stream(stream)
    idx = mdp.step_index(h)
    features = mdp.step_features(h)[x]

    target = policy_tables(mdp, comparator, mc_draws, stream.child(0))[idx, x]
    regret = 0.0
    for t, policy in enumerate(run.policies):
        values = features.dot(run.weights[t, idx])
        probs = policy.action_table(mdp, mc_draws, stream.child(1, t))[idx, x]
        regret += target.dot(values) - probs.dot(values)

    config = run.config
    bound = config.beta ** 2 * run.T / config.eta + config.eta * math.sqrt(mdp.dim)
    return float(regret), float(bound)


##########################################################################
## Estimator Facade
##########################################################################

class OfflineActorCritic(OfflineAlgorithm):
    """
    Offline policy optimization by an actor playing expected FTPL against
    pessimistic critics.

    Parameters
    ----------
    eps_final : float, default: 0.5
        The target suboptimality that sets the number of iterations.

    delta : float, default: 0.1
        The failure probability.

    eps_be : float, default: 0.0
        The assumed inherent Bellman error.

    bound_B : float, default: None
        Norm bound of admissible weights, ``sqrt(d)`` if None.

    t_cap : int, default: 5000
        Largest number of iterations.

    c_zeta, c_alpha : float, default: 1.0
        The constants of the linearity error and of the critic radius.

    lam : float, default: 1.0
        The ridge regularizer.

    on_infeasible : string, default: 'abort'
        What to do when a critic program is infeasible.

    return_mixture : bool, default: True
        Whether ``policy_`` is the mixture over all iterations or the sampled
        representative policy.

    params : dict, default: None
        Overrides passed to :func:`default_params`.
    """

    def __init__(self, eps_final=0.5, delta=0.1, eps_be=0.0, bound_B=None,
                 t_cap=DEFAULTS.t_cap, c_zeta=1.0, c_alpha=1.0, lam=DEFAULTS.ridge,
                 on_infeasible=ABORT, return_mixture=True, params=None):
        self.eps_final = eps_final
        self.delta = delta
        self.eps_be = eps_be
        self.bound_B = bound_B
        self.t_cap = t_cap
        self.c_zeta = c_zeta
        self.c_alpha = c_alpha
        self.lam = lam
        self.on_infeasible = on_infeasible
        self.return_mixture = return_mixture
        self.params = params

    def learn(self, dataset, mdp, stream=None):
        bound_B = self.bound_B if self.bound_B is not None else math.sqrt(mdp.dim)
        self.config_ = default_params(
            self.eps_final, self.delta, dataset.n, mdp.dim, mdp.horizon, bound_B,
            eps_be=self.eps_be, c_zeta=self.c_zeta, c_alpha=self.c_alpha,
            t_cap=self.t_cap, **(self.params or {})
        )
        self.run_ = run_actor(
            dataset, self.config_, mdp, stream=stream,
            on_infeasible=self.on_infeasible, lam=self.lam,
        )
        return self.run_.mixture if self.return_mixture else self.run_.pi_hat
