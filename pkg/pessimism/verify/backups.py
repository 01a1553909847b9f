# pessimism.verify.backups
# Linearity of Bellman backups and of Q functions under a fixed policy.
#
# Created:  Mon Mar 09 11:02:57 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Linearity of Bellman backups and of Q functions under a fixed policy.

Under a perturbed linear policy with noise ratio ``sigma`` the backup of a
linear function ``<phi_{h+1}, w>`` is within ``||w|| zeta_sigma`` of a linear
function of ``phi_h``, where ``zeta_sigma`` grows with the inherent Bellman
error and shrinks with the noise. The fits here use ordinary least squares
over every supported (state, action) pair of a step.
"""

##########################################################################
## Imports
##########################################################################

import logging
import numpy as np

from dataclasses import dataclass

from ..actor import zeta_sigma
from ..config import TOLERANCES
from ..bestfit import fit_backup, max_residual
from ..mdp import bellman_backup, exact_policy_value
from ..policies import Policy, PerturbedLinear, action_probabilities
from ..utils.random import check_stream
from ..exceptions import DimensionError, UnsupportedPolicyError


logger = logging.getLogger(__name__)


##########################################################################
## Backup Fits
##########################################################################

@dataclass
class BackupFitReport:
    """
    The least-squares fit of the backups of a set of probe weights.

    ``coef`` holds one fitted weight per probe (``d x k``), ``residuals`` the
    largest absolute residual of each probe and ``bounds`` the predicted
    bound ``eps_be + ||w|| zeta_sigma`` of each probe, or None when the
    policy is deterministic and no bound applies. ``slack`` is the
    Monte-Carlo allowance of each probe.
    """

    h: int
    coef: np.ndarray
    residuals: np.ndarray
    bounds: np.ndarray
    slack: np.ndarray
    zeta: float
    probes: str

    @property
    def residual(self):
        return float(self.residuals.max()) if len(self.residuals) else 0.0

    @property
    def checked(self):
        return self.bounds is not None

    @property
    def passed(self):
        if not self.checked:
            return None
        return bool(np.all(self.residuals <= self.bounds + self.slack + TOLERANCES.identity))


def _next_rule(policy_next, h):
    if isinstance(policy_next, Policy):
        policy_next = policy_next.rule(h + 1)
    if not isinstance(policy_next, PerturbedLinear):
        raise UnsupportedPolicyError(
            "backup fits need a perturbed linear rule at step {}".format(h + 1)
        )
    return policy_next


def fit_linear_backup(mdp, h, policy_next, w_probes, mc_budget=None, eps_be=0.0,
                      C=1.0, stream=None):
    """
    Fits the backups ``g_w(x, a) = r_h(x, a) + E_{x'}[<phi_{h+1}(x', pi(x')), w>]``
    of each probe weight against ``phi_h``.

    Parameters
    ----------
    mdp : FeatureMDP

    h : int
        The 1-based step, ``h < H``.

    policy_next : PerturbedLinear or Policy
        The rule of step ``h + 1``, or a policy to take it from.

    w_probes : array-like of shape k x d
        The probed next-step weights.

    mc_budget : int, default: None
        Perturbation draws per next state for the action probabilities;
        one-dimensional features use the exact Gaussian CDF.

    eps_be : float, default: 0.0
        The inherent Bellman error the bound is computed for.

    C : float, default: 1.0
        The constant of ``zeta_sigma``.

    stream : RandomStream or int, default: None
        State ``x`` of step ``h + 1`` draws from ``stream.child(x)``.

    Returns
    -------
    report : BackupFitReport
    """
    if not 1 <= h < mdp.horizon:
        raise DimensionError("backups are fit at steps 1..{}".format(mdp.horizon - 1), step=h)

    rule = _next_rule(policy_next, h)
    rule.check_dim(mdp.dim, step=h + 1)
    stream = check_stream(stream)

    probes = np.atleast_2d(np.asarray(w_probes, dtype=float))
    if probes.shape[1] != mdp.dim:
        raise DimensionError("probe weights must have d = {} columns".format(mdp.dim), step=h + 1)

    holder = Policy([rule] * mdp.horizon)
    probs = np.array([
        action_probabilities(mdp, holder, h + 1, x, draws=mc_budget, stream=stream.child(x))
        for x in range(mdp.n_states)
    ])

    xs, acts = mdp.supported_pairs(h)
    targets = np.column_stack([
        bellman_backup(mdp, h, probs, w)[xs, acts] for w in probes
    ])
    coef, predictions = fit_backup(mdp.features[h - 1, xs, acts], targets)
    residuals = np.array([
        max_residual(predictions[:, k], targets[:, k]) for k in range(len(probes))
    ])

    norms = np.linalg.norm(probes, axis=1)
    exact = rule.deterministic or mdp.dim == 1 or mdp.n_actions == 1
    slack = np.zeros(len(probes)) if exact else 3.0 * norms / np.sqrt(mc_budget or 20000)

    zeta = None
    bounds = None
    if not rule.deterministic:
        zeta = zeta_sigma(eps_be, mdp.dim, rule.noise_ratio, C)
        bounds = eps_be + norms * zeta

    report = BackupFitReport(
        h=h, coef=coef, residuals=residuals, bounds=bounds, slack=slack,
        zeta=zeta, probes="{} probes, max norm {:.3g}".format(len(probes), norms.max()),
    )
    logger.debug("step %d backup fit: residual %.3e", h, report.residual)
    return report


##########################################################################
## Q Linearity
##########################################################################

def qlinearity_check(mdp, policy, mc_draws=None, stream=None):
    """
    Fits the exact ``Q^pi_h`` of every step against ``phi_h`` over the
    supported pairs and returns the largest absolute residual of each step.
    """
    values = exact_policy_value(mdp, policy, mc_draws, stream)
    residuals = []
    for h in range(1, mdp.horizon + 1):
        xs, acts = mdp.supported_pairs(h)
        targets = values.Q[h - 1, xs, acts]
        _, predictions = fit_backup(mdp.features[h - 1, xs, acts], targets)
        residuals.append(max_residual(predictions[:, 0], targets))
    return residuals
