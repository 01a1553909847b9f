# pessimism.verify.smoothing
# The gradient of a Gaussian-smoothed greedy value.
#
# Created:  Mon Mar 09 14:31:20 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
The gradient of a Gaussian-smoothed greedy value.

The smoothed next-step greedy value
``F(w) = E_z E_{x'}[max_a' <phi_{h+1}(x', a'), w + z>]`` with
``z ~ N(0, sigma^2 I)`` is differentiable, and its gradient is the expected
next feature under the perturbed linear rule with mean ``w`` and scale
``sigma``. The check compares a central finite difference of ``F`` with a
direct Monte-Carlo estimate of that expected feature.
"""

##########################################################################
## Imports
##########################################################################

import numpy as np

from collections import namedtuple

from ..policies import MONTE_CARLO, PerturbedLinear
from ..utils.random import check_stream
from ..exceptions import DimensionError, PessimismValueError


# Both sides of the identity and their error relative to the feature scale
SmoothingReport = namedtuple("SmoothingReport", ("lhs", "rhs", "rel_error"))


def _smoothed_value(next_features, row, thetas):
    # E_{x'}[max_a' <phi(x', a'), theta>] for every theta: the mean over draws
    greedy = np.einsum("xad,sd->sxa", next_features, thetas).max(axis=2)
    return float(greedy.dot(row).mean())


def smoothed_gradient_check(mdp, h, x, a, w, sigma, fd_step=1e-3, mc_budget=200000, stream=None):
    """
    Compares both sides of the smoothed gradient identity at ``(h, x, a)``.

    The finite difference reuses the same perturbations at ``w + fd_step e_j``
    and ``w - fd_step e_j``, and the expectation over ``x'`` is exact. The
    expected feature is estimated from independent draws.

    Returns
    -------
    report : SmoothingReport
        ``rel_error`` is ``||lhs - rhs|| / max(||rhs||, 1)``; features lie in
        the unit ball, so this is the error relative to the feature scale.
    """
    if sigma <= 0:
        raise PessimismValueError("the smoothing scale must be positive not {}".format(sigma))
    if not 1 <= h < mdp.horizon:
        raise DimensionError("the check needs a next step, h in 1..{}".format(mdp.horizon - 1), step=h)

    w = np.asarray(w, dtype=float)
    if w.shape != (mdp.dim,):
        raise DimensionError("w must have length {}".format(mdp.dim), step=h + 1)

    stream = check_stream(stream)
    row = mdp.transitions[h - 1, x, a]
    next_features = mdp.step_features(h + 1)
    reached = np.flatnonzero(row)

    # Finite differences on common random numbers
    noise = sigma * stream.child(0).generator().standard_normal((mc_budget, mdp.dim))
    lhs = np.zeros(mdp.dim)
    for j in range(mdp.dim):
        step = np.zeros(mdp.dim)
        step[j] = fd_step
        upper = _smoothed_value(next_features[reached], row[reached], w + step + noise)
        lower = _smoothed_value(next_features[reached], row[reached], w - step + noise)
        lhs[j] = (upper - lower) / (2.0 * fd_step)

    # Expected next feature under the perturbed linear rule
    rule = PerturbedLinear(w, sigma)
    rhs = np.zeros(mdp.dim)
    for x_next in reached:
        generator = stream.child(1, int(x_next)).generator()
        probs = rule.probabilities(next_features[x_next], draws=mc_budget, generator=generator, mode=MONTE_CARLO)
        rhs += row[x_next] * probs.dot(next_features[x_next])

    rel_error = float(np.linalg.norm(lhs - rhs) / max(np.linalg.norm(rhs), 1.0))
    return SmoothingReport(lhs=lhs, rhs=rhs, rel_error=rel_error)
