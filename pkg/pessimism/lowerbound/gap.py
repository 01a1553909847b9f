# pessimism.lowerbound.gap
# End-to-end suboptimality of an algorithm on its adversarial instance.
#
# Created:  Thu Mar 12 13:27:50 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
End-to-end suboptimality of an algorithm on its adversarial instance.

The output distribution of the algorithm is estimated on one set of trials,
the adversarial member of the family is chosen from that estimate, and the
gap to the reference policy is measured by exact dynamic programming on a
disjoint set of held-out trials.
"""

##########################################################################
## Imports
##########################################################################

import math
import logging
import warnings
import numpy as np
import pandas as pd

from dataclasses import dataclass, field

from .adversary import adversarial_b, collect_policies, summarize_policies
from .instance import build_instance, reference_policy
from ..mdp import exact_policy_value
from ..utils.random import check_stream
from ..exceptions import PessimismValueError, RegimeWarning


logger = logging.getLogger(__name__)

# Columns of the gap report
GAP_COLUMNS = ("case", "bits", "gap", "std_err", "threshold", "passed")


@dataclass
class GapReport:
    """
    The chosen case and bits, the measured gap with its standard error, the
    threshold ``c_phi sqrt(eps) / 40`` and whether the gap reaches it within
    three standard errors.
    """

    gap: float
    std_err: float
    case: int
    bits: object
    threshold: float
    flagged: bool = False
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return bool(self.gap >= self.threshold - 3.0 * self.std_err)

    def bit_string(self):
        """
        The bits as ``b_rew b_init | b_{1,0} b_{1,1} ...``.
        """
        levels = "".join(str(int(v)) for v in self.bits.levels.ravel())
        return "{}{}|{}".format(self.bits.b_rew, self.bits.b_init, levels)

    def to_frame(self):
        row = {
            "case": self.case, "bits": self.bit_string(), "gap": self.gap,
            "std_err": self.std_err, "threshold": self.threshold, "passed": self.passed,
        }
        return pd.DataFrame([row], columns=list(GAP_COLUMNS))


def _values(instance, policies, mc_draws, stream):
    return np.array([
        exact_policy_value(instance.mdp, policy, mc_draws, stream.child(idx)).value
        for idx, policy in enumerate(policies)
    ])


def evaluate_gap(algorithm, eps, n, trials, holdout=None, stream=None, mc_draws=None, jobs=1):
    """
    Measures the suboptimality of an algorithm on the member of the family
    chosen against its own output distribution.

    Parameters
    ----------
    algorithm : OfflineAlgorithm

    eps : float
        The misspecification level; ``1 / sqrt(eps)`` must be an even
        integer (see :func:`~pessimism.lowerbound.round_eps`).

    n : int
        The dataset size of every trial.

    trials : int
        Trials used to estimate the output distribution.

    holdout : int, default: None
        Disjoint trials used to measure the gap, ``trials`` if None.

    stream : RandomStream or int, default: None
        Estimation trials use ``stream.child(0)``, held-out trials
        ``stream.child(1)`` and action probabilities ``stream.child(2)``.

    mc_draws : int, default: None
        Monte-Carlo draws for perturbed linear action probabilities.

    jobs : int, default: 1
        Trials run concurrently on this many workers.

    Returns
    -------
    report : GapReport
    """
    holdout = trials if holdout is None else holdout
    if trials < 1 or holdout < 1:
        raise PessimismValueError("both trial counts must be at least 1")

    if math.sqrt(eps) <= 1.0 / math.sqrt(n):
        warnings.warn(
            "sqrt(eps) = {:.4g} <= 1 / sqrt(n) = {:.4g}: the gap is not guaranteed "
            "in this regime".format(math.sqrt(eps), 1.0 / math.sqrt(n)),
            RegimeWarning,
        )

    stream = check_stream(stream)
    template = build_instance(eps)

    policies = collect_policies(algorithm, template, n, trials, stream.child(0), jobs)
    estimate = summarize_policies(policies, template, mc_draws, stream.child(2, 0))
    bits, case, flagged = adversarial_b(estimate, eps)

    instance = build_instance(eps, bits)
    reference = exact_policy_value(instance.mdp, reference_policy(instance)).value

    held_out = collect_policies(algorithm, template, n, holdout, stream.child(1), jobs)
    values = _values(instance, held_out, mc_draws, stream.child(2, 1))

    gap = reference - float(values.mean())
    std_err = float(values.std(ddof=1) / math.sqrt(holdout)) if holdout > 1 else 0.0

    report = GapReport(
        gap=gap, std_err=std_err, case=case, bits=bits, threshold=instance.threshold,
        flagged=flagged,
        details={
            "eps": eps, "L": instance.L, "n": n, "trials": trials, "holdout": holdout,
            "reference_value": reference, "mean_value": float(values.mean()),
            "Z0": estimate.Z0.tolist(),
        },
    )
    logger.info(
        "%s: case %d, gap %.5f +/- %.5f (threshold %.5f)",
        algorithm.name, case, gap, std_err, report.threshold,
    )
    return report


def evaluate_gap_exact(distribution, eps, mc_draws=None, stream=None):
    """
    The gap of a known output distribution, given as ``(weight, policy)``
    pairs, with the statistics and values computed exactly rather than
    from trials.
    """
    distribution = list(distribution)
    if not distribution:
        raise PessimismValueError("the output distribution is empty")

    weights = np.array([w for w, _ in distribution], dtype=float)
    if (weights < 0).any() or weights.sum() <= 0:
        raise PessimismValueError("distribution weights must be nonnegative and not all zero")
    weights = weights / weights.sum()
    policies = [policy for _, policy in distribution]

    stream = check_stream(stream)
    template = build_instance(eps)
    estimate = summarize_policies(policies, template, mc_draws, stream.child(0), weights=weights)
    bits, case, flagged = adversarial_b(estimate, eps)

    instance = build_instance(eps, bits)
    reference = exact_policy_value(instance.mdp, reference_policy(instance)).value
    values = _values(instance, policies, mc_draws, stream.child(1))

    return GapReport(
        gap=reference - float(weights.dot(values)), std_err=0.0, case=case,
        bits=bits, threshold=instance.threshold, flagged=flagged,
        details={"eps": eps, "L": instance.L, "reference_value": reference},
    )
