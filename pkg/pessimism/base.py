# pessimism.base
# Abstract base class and interface for offline policy learners.
#
# Created:  Sat Mar 07 16:40:12 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Abstract base class and interface for offline policy learners.
"""

##########################################################################
## Imports
##########################################################################

from sklearn.base import BaseEstimator

from .exceptions import PessimismTypeError
from .utils import get_algorithm_name, is_policy


##########################################################################
## Base class hierarchy
##########################################################################

class OfflineAlgorithm(BaseEstimator):
    """
    The root of the offline learner hierarchy: an algorithm maps an offline
    dataset, together with the features of the MDP it was collected in, to
    a policy.

    Inherits from Scikit-Learn's BaseEstimator class, so hyperparameters are
    declared as ``__init__`` arguments and reported by ``get_params()``.

    Notes
    -----
    Algorithms must be ``fit()`` before their ``policy_`` is available.
    Only the features, support and initial state of the ``mdp`` passed to
    ``fit`` may be used; its transitions belong to the environment.
    """

    def fit(self, dataset, mdp, stream=None):
        """
        Learns a policy from the dataset.

        Parameters
        ----------
        dataset : OfflineDataset
            The offline tuples.

        mdp : FeatureMDP
            The feature map of the environment.

        stream : RandomStream or int, default: None
            The random stream of any internal randomness.

        Returns
        -------
        self : OfflineAlgorithm
            The fit method must always return self.
        """
        policy = self.learn(dataset, mdp, stream)
        if not is_policy(policy):
            raise PessimismTypeError(
                "{} returned {} instead of a policy".format(self.name, type(policy).__name__)
            )
        self.policy_ = policy
        return self

    def for_trial(self, trial):
        """
        The algorithm to run on the dataset of the given trial. Most
        algorithms are the same in every trial and return themselves.
        """
        return self

    def learn(self, dataset, mdp, stream=None):
        raise NotImplementedError(
            "offline algorithms must implement learn(dataset, mdp, stream)"
        )

    @property
    def name(self):
        return get_algorithm_name(self)

    def __call__(self, dataset, mdp, stream=None):
        return self.fit(dataset, mdp, stream).policy_
