# pessimism.cli
# Command line front end of the experiments.
#
# Created:  Fri Mar 13 14:31:07 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Command line front end of the experiments.

Every subcommand reads an optional configuration file, applies the command
line overrides, runs deterministically from the master seed and writes a
stamped CSV into the output directory::

    $ pessimism verify --only softmax-counterexample
    $ pessimism run-upper -c experiment.ini -s run-upper.seeds=5
    $ pessimism run-lower -s run-lower.algorithm=naive-greedy --jobs 4
    $ pessimism ftpl-bench --seed 3

Exit codes are 0 when every check passes, 1 when a check fails and 2 on
usage, configuration or file errors.
"""

##########################################################################
## Imports
##########################################################################

import sys
import math
import time
import logging
import argparse
import numpy as np
import pandas as pd

from joblib import Parallel, delayed

from .version import get_version
from .config import ExperimentConfig
from .results import result_path, write_results
from .actor import OfflineActorCritic
from .dataset import coverage_parameter, generate_dataset
from .ftpl import ftpl_regret_harness
from .instances import load_instance
from .lowerbound import evaluate_gap, make_algorithm, round_eps
from .mdp import exact_policy_value, optimal_value
from .policies import Policy
from .verify import CHECKS, run_suite
from .verify.base import report_frame
from .utils.helpers import signed_basis, slugify, sphere_samples
from .utils.random import RandomStream
from .exceptions import PessimismError


logger = logging.getLogger(__name__)

# Exit codes
EXIT_PASSED = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

UPPER_COLUMNS = ("n", "seed", "suboptimality", "coverage", "runtime")
FTPL_COLUMNS = ("adversary", "rounds", "regret", "bound", "std_err", "passed")


##########################################################################
## Upper Bound Experiment
##########################################################################

def _upper_trial(instance, section, n, seed, master):
    mdp = instance.mdp
    stream = master.child(seed, n)

    episodes = max(1, int(math.ceil(n / float(mdp.horizon))))
    dataset = generate_dataset(
        mdp, behavior=Policy.uniform(mdp), episodes=episodes, stream=stream.child(0),
    )

    algorithm = OfflineActorCritic(
        eps_final=section["eps_final"], delta=section["delta"], eps_be=section["eps_be"],
        bound_B=instance.bound_B, t_cap=section["t_cap"], c_zeta=section["c_zeta"],
        c_alpha=section["c_alpha"], lam=section["ridge"],
        on_infeasible=section["on_infeasible"],
    )

    start = time.perf_counter()
    mixture = algorithm(dataset, mdp, stream.child(1))
    runtime = time.perf_counter() - start

    optimal, pi_star = optimal_value(mdp)
    value = exact_policy_value(mdp, mixture, stream=stream.child(2)).value
    coverage = coverage_parameter(dataset, pi_star, mdp, lam=section["ridge"])

    logger.debug("n = %d, seed = %d: value %.5f of %.5f", n, seed, value, optimal.value)
    return {
        "n": n, "seed": seed, "suboptimality": optimal.value - value,
        "coverage": coverage, "runtime": runtime,
    }


def cmd_run_upper(config):
    """
    Runs the offline actor-critic on a shipped instance for every dataset
    size and seed and records the suboptimality of its mixture.
    """
    section = config["run-upper"]
    instance = load_instance(section["instance"])
    master = RandomStream(config.get("general", "seed"))

    tasks = [(n, seed) for seed in range(section["seeds"]) for n in section["n_grid"]]
    logger.info(
        "run-upper on %s: %d dataset sizes, %d seeds",
        section["instance"], len(section["n_grid"]), section["seeds"],
    )

    rows = Parallel(n_jobs=config.get("general", "jobs"))(
        delayed(_upper_trial)(instance, section, n, seed, master) for n, seed in tasks
    )

    frame = pd.DataFrame(rows, columns=list(UPPER_COLUMNS))
    frame = frame.sort_values(["seed", "n"], kind="mergesort").reset_index(drop=True)
    write_results(frame, result_path(config, "run-upper"), config)

    for n, group in frame.groupby("n"):
        logger.info("n = %d: mean suboptimality %.5f", n, group["suboptimality"].mean())
    return EXIT_PASSED


##########################################################################
## Lower Bound Experiment
##########################################################################

def cmd_run_lower(config):
    """
    Measures the gap of the configured algorithm on its adversarial member
    of the hard family. Fails when the gap misses the threshold.
    """
    section = config["run-lower"]
    eps = round_eps(section["eps"])
    if eps != section["eps"]:
        logger.warning("eps = %g rounded down to %g", section["eps"], eps)

    algorithm = make_algorithm(section["algorithm"], section)
    report = evaluate_gap(
        algorithm, eps, section["n"], section["trials"], holdout=section["holdout"],
        stream=config.get("general", "seed"), mc_draws=section["mc_draws"],
        jobs=config.get("general", "jobs"),
    )

    name = "run-lower-{}".format(slugify(section["algorithm"]))
    write_results(report.to_frame(), result_path(config, name), config)
    return EXIT_PASSED if report.passed else EXIT_FAILED


##########################################################################
## FTPL Benchmark
##########################################################################

def adversaries(rounds, dim, random_count, stream):
    """
    The reward sequences of the benchmark: all zeros, a constant unit
    reward, rewards alternating along the first axis after a half step, and
    ``random_count`` sequences of uniform unit vectors.
    """
    first = np.zeros(dim)
    first[0] = 1.0

    alternating = np.array([
        first * (0.5 if t == 0 else (-1.0) ** t) for t in range(rounds)
    ])

    sequences = [
        ("zero", np.zeros((rounds, dim))),
        ("constant", np.tile(first, (rounds, 1))),
        ("alternating", alternating),
    ]
    for idx in range(random_count):
        draws = sphere_samples(stream.child(idx).generator(), rounds, dim)
        sequences.append(("random-{}".format(idx), draws))
    return sequences


def cmd_ftpl_bench(config):
    """
    Plays expected FTPL over the signed basis against every adversary and
    compares the regret with its stability bound.
    """
    section = config["ftpl-bench"]
    master = RandomStream(config.get("general", "seed"))
    action_set = signed_basis(section["dim"])

    rows = []
    sequences = adversaries(
        section["rounds"], section["dim"], section["random_adversaries"], master.child(0),
    )
    for idx, (name, adversary) in enumerate(sequences):
        report = ftpl_regret_harness(
            action_set, adversary, omega=section["omega"], eta=section["eta"],
            mc_samples=section["mc_samples"], stream=master.child(1, idx),
        )
        rows.append({
            "adversary": name, "rounds": section["rounds"], "regret": report.regret,
            "bound": report.bound, "std_err": report.std_err,
            "passed": bool(report.regret <= report.bound + 3.0 * report.std_err),
        })
        logger.info("%s: regret %.4f, bound %.4f", name, report.regret, report.bound)

    frame = pd.DataFrame(rows, columns=list(FTPL_COLUMNS))
    write_results(frame, result_path(config, "ftpl-bench"), config)
    return EXIT_PASSED if frame["passed"].all() else EXIT_FAILED


##########################################################################
## Verification
##########################################################################

def cmd_verify(config, only=None):
    """
    Runs the structural checks; informational rows never fail the command.
    """
    results = run_suite(config, only=only)
    write_results(report_frame(results), result_path(config, "verify"), config)

    failed = [r.check for r in results if r.passed is False]
    if failed:
        logger.error("failed checks: %s", ", ".join(failed))
        return EXIT_FAILED
    return EXIT_PASSED


##########################################################################
## Argument Parsing
##########################################################################

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-c", "--config", default=None, metavar="PATH",
        help="configuration file with [section] and key = value entries",
    )
    common.add_argument(
        "-s", "--set", dest="overrides", action="append", default=[],
        metavar="SECTION.KEY=VALUE", help="override one configuration value, repeatable",
    )
    common.add_argument("--seed", type=int, default=None, help="master seed (general.seed, default 0)")
    common.add_argument("-j", "--jobs", type=int, default=None, help="worker processes (general.jobs, default 1)")
    common.add_argument("-o", "--output", default=None, help="output directory (general.output, default results)")
    common.add_argument("-v", "--verbose", action="count", default=0, help="more logging, repeatable")

    parser = argparse.ArgumentParser(
        prog="pessimism",
        description="Pessimistic offline policy optimization experiments.",
    )
    parser.add_argument("--version", action="version", version="%(prog)s " + get_version())

    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    verify = commands.add_parser("verify", parents=[common], help="run the structural checks")
    verify.add_argument("--only", choices=list(CHECKS), default=None, help="run a single named check")

    commands.add_parser("run-upper", parents=[common], help="suboptimality of the actor-critic across n")
    commands.add_parser("run-lower", parents=[common], help="gap of an algorithm on the hard family")
    commands.add_parser("ftpl-bench", parents=[common], help="FTPL regret against fixed adversaries")
    return parser


def load_config(args):
    """
    The configuration file, or the defaults, with command line overrides
    applied. The shortcut flags are applied after ``--set``.
    """
    config = ExperimentConfig.from_file(args.config) if args.config else ExperimentConfig()

    overrides = list(args.overrides)
    for key, value in (("seed", args.seed), ("jobs", args.jobs), ("output", args.output)):
        if value is not None:
            overrides.append("general.{}={}".format(key, value))
    return config.override(overrides) if overrides else config


def configure_logging(verbosity):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(
        level=level, format="%(asctime)s %(name)s %(levelname)s: %(message)s",
    )


COMMANDS = {
    "verify": lambda config, args: cmd_verify(config, only=args.only),
    "run-upper": lambda config, args: cmd_run_upper(config),
    "run-lower": lambda config, args: cmd_run_lower(config),
    "ftpl-bench": lambda config, args: cmd_ftpl_bench(config),
}


def main(argv=None):
    """
    Entry point of the ``pessimism`` script; returns the exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_PASSED

    configure_logging(args.verbose)

    try:
        config = load_config(args)
        return COMMANDS[args.command](config, args)
    except (PessimismError, OSError) as e:
        logger.error("%s", e)
        print("pessimism {}: error: {}".format(args.command, e), file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
