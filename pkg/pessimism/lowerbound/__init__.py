# pessimism.lowerbound
# The hard instance family and the adversarial gap evaluation.
#
# Created:  Wed Mar 11 09:38:44 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
The hard instance family and the adversarial gap evaluation.
"""

##########################################################################
## Imports
##########################################################################

from .instance import C_PHI, R, LowerBoundBits, LowerBoundInstance
from .instance import build_instance, reference_policy, generate_lb_dataset
from .instance import random_bits, round_eps, levels_of
from .adversary import PolicyDistributionEstimate, estimate_policy_distribution
from .adversary import adversarial_b, summarize_policies, policy_statistics
from .algorithms import ConstantPolicy, UniformPolicy, NaiveGreedy, PolicyFileAlgorithm
from .algorithms import make_algorithm
from .gap import GapReport, evaluate_gap, evaluate_gap_exact
