# pessimism
# Pessimistic offline policy optimization with linear function approximation.
#
# Created:  Wed Mar 04 10:12:55 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Pessimistic offline policy optimization with linear function approximation:
an actor playing perturbed linear policies against pessimistic critics,
exact dynamic programming on finite horizon feature MDPs, numerical
certification of the structural results, and the adversarial hard
instances that bound what any offline learner can achieve.
"""

##########################################################################
## Imports
##########################################################################

import logging

# Import the version number at the top level
from .version import get_version

# Import pessimism functionality to the top level
from .mdp import FeatureMDP, ValueTable, exact_policy_value, optimal_value
from .policies import Policy, MixturePolicy
from .dataset import OfflineDataset, generate_dataset, coverage_parameter
from .critic import solve_critic
from .actor import OfflineActorCritic, run_actor
from .ftpl import ftpl_regret_harness
from .config import ExperimentConfig, TOLERANCES, DEFAULTS
from .utils.random import RandomStream

##########################################################################
## Package Version and Logging
##########################################################################

__version__ = get_version(short=True)

logging.getLogger(__name__).addHandler(logging.NullHandler())
