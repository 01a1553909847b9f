# pessimism.utils.types
# Detection utilities for estimators and policy objects.
#
# Created:  Mon Mar 02 09:52:44 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Detection utilities for estimators and policy objects.
"""

##########################################################################
## Imports
##########################################################################

import inspect

from sklearn.base import BaseEstimator


##########################################################################
## Type checking utilities
##########################################################################

def is_estimator(model):
    """
    Determines if a model is an estimator using issubclass and isinstance.

    Parameters
    ----------
    model : class or instance
        The object to test, e.g. an offline algorithm
    """
    if inspect.isclass(model):
        return issubclass(model, BaseEstimator)

    return isinstance(model, BaseEstimator)

# Alias for closer name to isinstance and issubclass
isestimator = is_estimator


def is_policy(obj):
    """
    Returns True if the object is a Markov policy or a mixture of them.
    """
    # NOTE: This must be imported here to avoid recursive import.
    from pessimism.policies import Policy, MixturePolicy
    return isinstance(obj, (Policy, MixturePolicy))

# Alias for closer name to isinstance and issubclass
ispolicy = is_policy


def is_mixture(obj):
    """
    Returns True if the object is a mixture over Markov policies.
    """
    # NOTE: This must be imported here to avoid recursive import.
    from pessimism.policies import MixturePolicy
    return isinstance(obj, MixturePolicy)

# Alias for closer name to isinstance and issubclass
ismixture = is_mixture


def is_perturbed_linear(policy, step=None):
    """
    Returns True if the policy is perturbed linear at the given 1-based step,
    or at every step when ``step`` is None.
    """
    # NOTE: This must be imported here to avoid recursive import.
    from pessimism.policies import Policy, PerturbedLinear
    if not isinstance(policy, Policy):
        return False

    if step is None:
        return all(isinstance(rule, PerturbedLinear) for rule in policy.rules)
    return isinstance(policy.rules[step - 1], PerturbedLinear)

# Alias for closer name to isinstance and issubclass
isperturbedlinear = is_perturbed_linear
