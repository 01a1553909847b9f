# pessimism.verify.suite
# The named checks run by the verify command.
#
# Created:  Tue Mar 10 15:44:09 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
The named checks run by the verify command.

Every check takes the ``verify`` section of the configuration and a random
stream and returns a list of :class:`~pessimism.verify.base.CheckResult`
rows. A row with ``passed`` set to None is informational.
"""

##########################################################################
## Imports
##########################################################################

import math
import logging
import numpy as np

from collections import OrderedDict

from .base import CheckResult
from .backups import fit_linear_backup, qlinearity_check
from .smoothing import smoothed_gradient_check
from .counterexample import SOFTMAX_GAP, counterexample_mdp, softmax_counterexample
from ..config import TOLERANCES
from ..instances import random_mdp, random_tabular_policy
from ..mdp import (
    BoundedBallSpec, exact_policy_value, induced_mdp, measure_inherent_bellman_error,
    performance_difference,
)
from ..dataset import coverage_terms
from ..policies import CLOSED_FORM, Policy, action_probabilities, est_feature
from ..policies import gaussian_stability_check
from ..serialize import read_mdp
from ..lowerbound import build_instance, generate_lb_dataset, levels_of, random_bits, reference_policy
from ..utils.random import check_stream
from ..exceptions import PessimismKeyError


logger = logging.getLogger(__name__)

# Misspecification levels of the lower bound checks
LOWER_BOUND_EPS = (1.0 / 16.0, 1.0 / 64.0)

# Accuracy and failure probability of the feature estimation check
FEATURE_EPS_APX = 0.05
FEATURE_DELTA = 0.05


##########################################################################
## Dynamic Programming Identities
##########################################################################

def check_induced_mdp(settings, stream):
    worst = 0.0
    for i in range(settings["instances"]):
        mdp = random_mdp(stream.child(i, 0))
        policy = random_tabular_policy(mdp, stream.child(i, 1))

        rng = stream.child(i, 2).generator()
        weights = rng.uniform(-1.0, 1.0, size=(mdp.horizon, mdp.dim)) / math.sqrt(mdp.dim)

        values = exact_policy_value(induced_mdp(mdp, weights, policy), policy)
        f = np.einsum("hxad,hd->hxa", mdp.features, weights)
        worst = max(worst, float(np.abs(values.Q - f).max()))

    return [CheckResult.compare(
        "induced-mdp-identity", worst, TOLERANCES.identity,
        "{} random instances".format(settings["instances"]),
    )]


def check_performance_difference(settings, stream):
    worst = 0.0
    for i in range(settings["instances"]):
        mdp = random_mdp(stream.child(i, 0))
        pi = random_tabular_policy(mdp, stream.child(i, 1))
        pi_prime = random_tabular_policy(mdp, stream.child(i, 2))
        lhs, rhs = performance_difference(mdp, pi, pi_prime)
        worst = max(worst, abs(lhs - rhs))

    return [CheckResult.compare(
        "performance-difference", worst, TOLERANCES.identity,
        "{} random instances".format(settings["instances"]),
    )]


##########################################################################
## Softmax Counterexample
##########################################################################

def check_softmax_counterexample(settings, stream):
    report = softmax_counterexample(ibe_samples=settings["ibe_samples"], stream=stream)
    row = CheckResult.compare(
        "softmax-counterexample", report.eps_be, TOLERANCES.identity,
        "softmax gap {:.6f}, fit residual {:.6f}".format(report.gap, report.fit_residual),
    )
    gap_ok = abs(report.gap - SOFTMAX_GAP) <= 1e-4 and report.fit_residual > 0.1
    return [row._replace(passed=row.passed and gap_ok)]


##########################################################################
## Lower Bound Family
##########################################################################

def _members(eps, count, stream):
    """
    Yields ``count`` members of the family at ``eps`` with random bits,
    each with its own stream.
    """
    L = levels_of(eps)
    for i in range(count):
        yield build_instance(eps, random_bits(L, stream.child(i, 0))), stream.child(i, 1)


def check_lower_bound_ibe(settings, stream):
    spec = BoundedBallSpec(sampling_count=settings["ibe_samples"])
    rows = []
    for k, eps in enumerate(LOWER_BOUND_EPS):
        worst = 0.0
        for instance, child in _members(eps, settings["members"], stream.child(k)):
            worst = max(worst, measure_inherent_bellman_error(instance.mdp, spec, child))

        rows.append(CheckResult.compare(
            "lower-bound-ibe", worst, 2.0 * eps + TOLERANCES.identity,
            "eps = {}, {} random members".format(eps, settings["members"]),
        ))
    return rows


def check_lower_bound_value(settings, stream):
    rows = []
    for k, eps in enumerate(LOWER_BOUND_EPS):
        worst, expected = 0.0, None
        for instance, _ in _members(eps, settings["members"], stream.child(k)):
            expected = instance.optimal_value
            value = exact_policy_value(instance.mdp, reference_policy(instance)).value
            worst = max(worst, abs(value - expected))

        rows.append(CheckResult.compare(
            "lower-bound-value", worst, TOLERANCES.identity,
            "eps = {}, reference value {:.7f}".format(eps, expected),
        ))
    return rows


def check_lower_bound_coverage(settings, stream):
    rows = []
    for k, eps in enumerate(LOWER_BOUND_EPS):
        L = levels_of(eps)
        expected = [math.sqrt(6.0), math.sqrt(3.0) * (L + 1) / (2.0 * L)]

        residual = 0.0
        for instance, child in _members(eps, settings["members"], stream.child(k)):
            dataset = generate_lb_dataset(instance, 300, child)
            terms = coverage_terms(dataset, reference_policy(instance), instance.mdp, lam=0.0)
            residual = max(residual, max(abs(t - e) for t, e in zip(terms, expected)))

        rows.append(CheckResult.compare(
            "lower-bound-coverage", residual, TOLERANCES.identity,
            "eps = {}, expected terms {:.6f}, {:.6f}".format(eps, *expected),
        ))
    return rows


##########################################################################
## Structural Results
##########################################################################

def check_backup_linearity(settings, stream):
    mdp = counterexample_mdp()
    rows = []
    for sigma in (0.25, 1.0):
        policy = Policy.perturbed_linear([[1.0], [1.0]], sigma)
        report = fit_linear_backup(
            mdp, 1, policy, np.linspace(-1.0, 1.0, 9)[:, np.newaxis], stream=stream,
        )
        bound = float((report.bounds + report.slack).max()) + TOLERANCES.identity
        rows.append(CheckResult(
            "backup-linearity", report.residual, bound, report.passed,
            "sigma = {}, {}".format(sigma, report.probes),
        ))
    return rows


def check_qlinearity(settings, stream):
    mdp = counterexample_mdp(reward=0.8)
    policy = Policy.perturbed_linear([[1.0], [-0.5]], 0.5)
    residuals = qlinearity_check(mdp, policy)
    return [CheckResult.compare(
        "q-linearity", max(residuals), TOLERANCES.identity,
        "per step {}".format(", ".join("{:.2e}".format(r) for r in residuals)),
    )]


def check_smoothed_gradient(settings, stream):
    budget = settings["mc_budget"]
    bound = 0.02 * math.sqrt(200000.0 / budget)

    worst = 0.0
    for i in range(settings["instances"]):
        mdp = random_mdp(stream.child(i, 0), n_states=4, n_actions=3, dim=2, horizon=2)
        w = stream.child(i, 1).generator().uniform(-1.0, 1.0, size=2)
        report = smoothed_gradient_check(
            mdp, 1, 0, 0, w, 0.5, mc_budget=budget, stream=stream.child(i, 2),
        )
        worst = max(worst, report.rel_error)

    return [CheckResult.compare(
        "smoothed-gradient", worst, bound,
        "{} random instances, {} draws".format(settings["instances"], budget),
    )]


def check_est_feature(settings, stream):
    """
    Counts the trials whose estimate misses the closed form mean feature by
    more than ``eps_apx``; the fraction must stay within three binomial
    standard errors of ``delta``.
    """
    mdp = random_mdp(stream.child(0), n_states=3, n_actions=3, dim=1, horizon=1)
    policy = Policy.perturbed_linear([[0.3]], 1.0)
    eps_apx, delta = FEATURE_EPS_APX, FEATURE_DELTA
    trials = settings["feature_trials"]

    truths = [
        action_probabilities(mdp, policy, 1, x, mode=CLOSED_FORM).dot(mdp.step_features(1)[x])
        for x in range(mdp.n_states)
    ]

    failures = 0
    for i in range(trials):
        x = i % mdp.n_states
        estimate = est_feature(mdp, x, policy, 1, eps_apx, delta, stream.child(1, i))
        failures += int(np.linalg.norm(estimate.phi_hat - truths[x]) > eps_apx)

    fraction = failures / float(trials)
    bound = delta + 3.0 * math.sqrt(delta * (1.0 - delta) / trials)
    return [CheckResult.compare(
        "est-feature", fraction, bound,
        "{} of {} trials off by more than eps_apx = {}, delta = {}".format(
            failures, trials, eps_apx, delta
        ),
    )]


def check_gaussian_stability(settings, stream):
    rng = stream.generator()
    worst = 0.0
    for _ in range(100):
        v = rng.standard_normal(3) * rng.uniform(0.01, 2.0)
        tv, bound = gaussian_stability_check(rng.uniform(0.1, 3.0), v)
        worst = max(worst, tv / bound)

    return [CheckResult.compare(
        "gaussian-stability", worst, 1.0, "largest ratio of distance to bound over 100 draws",
    )]


def check_mdp_file(settings, stream):
    path = settings["mdp_file"]
    if not path:
        return []

    mdp = read_mdp(path)
    spec = BoundedBallSpec(sampling_count=settings["ibe_samples"])
    eps_be = measure_inherent_bellman_error(mdp, spec, stream)
    return [CheckResult(
        "mdp-file", eps_be, float("nan"), None,
        "measured inherent Bellman error of {}".format(path),
    )]


##########################################################################
## Suite
##########################################################################

CHECKS = OrderedDict([
    ("induced-mdp-identity", check_induced_mdp),
    ("performance-difference", check_performance_difference),
    ("softmax-counterexample", check_softmax_counterexample),
    ("lower-bound-ibe", check_lower_bound_ibe),
    ("lower-bound-value", check_lower_bound_value),
    ("lower-bound-coverage", check_lower_bound_coverage),
    ("backup-linearity", check_backup_linearity),
    ("q-linearity", check_qlinearity),
    ("smoothed-gradient", check_smoothed_gradient),
    ("est-feature", check_est_feature),
    ("gaussian-stability", check_gaussian_stability),
    ("mdp-file", check_mdp_file),
])


def run_suite(config, only=None, stream=None):
    """
    Runs every check, or only the named one, and returns the report rows.

    Parameters
    ----------
    config : ExperimentConfig

    only : str, default: None
        A check name; falls back to ``verify.only`` and then to all checks.

    stream : RandomStream or int, default: None
        Check ``k`` of :data:`CHECKS` uses ``stream.child(k)``; the master
        seed of the configuration is used if None.
    """
    settings = config.section("verify")
    only = only or settings["only"]
    if only and only not in CHECKS:
        raise PessimismKeyError(
            "unknown check '{}'; choose from {}".format(only, ", ".join(CHECKS))
        )

    if stream is None:
        stream = config.get("general", "seed")
    stream = check_stream(stream)

    results = []
    for idx, (name, check) in enumerate(CHECKS.items()):
        if only and name != only:
            continue
        rows = check(settings, stream.child(idx))
        for row in rows:
            logger.info(
                "%s: residual %.3e, bound %.3e, %s", row.check, row.residual, row.bound,
                {True: "passed", False: "FAILED", None: "reported"}[row.passed],
            )
        results.extend(rows)
    return results
