# pessimism.verify
# Numerical certification of the structural results behind the algorithms.
#
# Created:  Mon Mar 09 10:12:44 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Numerical certification of the structural results behind the algorithms:
approximate linearity of backups under perturbed linear policies, the
smoothed gradient identity, linearity of Q functions and the softmax
counterexample.
"""

##########################################################################
## Imports
##########################################################################

from .base import CheckResult
from .backups import BackupFitReport, fit_linear_backup, qlinearity_check
from .smoothing import SmoothingReport, smoothed_gradient_check
from .counterexample import CounterexampleReport, counterexample_mdp, softmax_counterexample
from .suite import CHECKS, run_suite
