# pessimism.config
# Tolerances, defaults and experiment configuration files.
#
# Created:  Tue Mar 03 11:02:37 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Tolerances, defaults and experiment configuration files.

Numerical tolerances live in one frozen record, :data:`TOLERANCES`, and the
defaults of the algorithms in :data:`DEFAULTS`; modules read them from here
rather than hard coding constants.

Experiments are described by an INI-style text file with one section per
command and ``key = value`` entries::

    [general]
    seed = 7
    jobs = 4

    [run-lower]
    algorithm = builtin-actor
    eps = 0.0625

Every key has a type, a default and a documented range; unknown keys and
out of range values are rejected. The canonical text form round-trips
losslessly and its SHA-256 digest identifies the configuration in every
result file.
"""

##########################################################################
## Imports
##########################################################################

import hashlib
import configparser

from collections import OrderedDict, namedtuple
from dataclasses import dataclass

from pessimism.exceptions import ParseError, PessimismKeyError, PessimismValueError


##########################################################################
## Tolerances and Defaults
##########################################################################

@dataclass(frozen=True)
class Tolerances:
    """
    Centralized numerical tolerances (all absolute).
    """

    probability: float = 1e-12     # transition and action rows sum to one
    feature_norm: float = 1e-12    # features lie in the unit ball
    identity: float = 1e-9         # exact dynamic programming identities
    solver: float = 1e-6           # critic objective and constraint accuracy
    solver_progress: float = 1e-10 # early stop on objective progress
    span: float = 1e-9             # relative test for leaving a feature span


@dataclass(frozen=True)
class Defaults:
    """
    Default sizes and budgets of the algorithms.
    """

    ibe_samples: int = 256         # sphere samples when measuring Bellman error
    mc_draws: int = 20000          # perturbation draws for action probabilities
    ridge: float = 1.0             # regularizer of the empirical Bellman operator
    max_iter: int = 20000          # critic iteration budget
    restarts: int = 3              # critic restarts before reporting infeasible
    t_cap: int = 5000              # cap on the number of actor iterations
    inflate_factor: float = 2.0    # alpha inflation on critic infeasibility
    inflate_retries: int = 3


TOLERANCES = Tolerances()
DEFAULTS = Defaults()


##########################################################################
## Configuration Schema
##########################################################################

Field = namedtuple("Field", ("kind", "default", "check", "doc"))

def _positive(value):
    return value > 0

def _nonnegative(value):
    return value >= 0

def _unit_open(value):
    return 0 < value < 1

def _choices(*options):
    def check(value):
        return value in options
    return check

def _all(check):
    def check_all(values):
        return len(values) > 0 and all(check(v) for v in values)
    return check_all

def _anything(value):
    return True


ALGORITHMS = ("builtin-actor", "naive-greedy", "constant-pi-star", "uniform", "external")
INSTANCES = ("tabular-chain", "bandit")
INFEASIBLE_POLICIES = ("abort", "inflate")

SCHEMA = OrderedDict([
    ("general", OrderedDict([
        ("seed", Field("int", 0, _nonnegative, "master seed, >= 0")),
        ("jobs", Field("int", 1, lambda v: v == -1 or v >= 1, "worker processes, >= 1 or -1 for all cores")),
        ("output", Field("str", "results", _anything, "output directory")),
    ])),
    ("solver", OrderedDict([
        ("tol", Field("float", TOLERANCES.solver, _positive, "objective and constraint accuracy, > 0")),
        ("progress", Field("float", TOLERANCES.solver_progress, _positive, "early stop on progress, > 0")),
        ("max_iter", Field("int", DEFAULTS.max_iter, _positive, "iteration budget, > 0")),
        ("restarts", Field("int", DEFAULTS.restarts, _nonnegative, "restarts, >= 0")),
    ])),
    ("verify", OrderedDict([
        ("only", Field("str", "", _anything, "run a single named check")),
        ("instances", Field("int", 5, _positive, "random instances per identity check, > 0")),
        ("members", Field("int", 20, _positive, "random lower bound members per eps, > 0")),
        ("feature_trials", Field("int", 200, _positive, "feature estimation trials, > 0")),
        ("mc_budget", Field("int", 200000, _positive, "Monte-Carlo draws for the gradient check, > 0")),
        ("ibe_samples", Field("int", DEFAULTS.ibe_samples, _positive, "sphere samples, > 0")),
        ("mdp_file", Field("str", "", _anything, "optional MDP text container to certify")),
    ])),
    ("run-upper", OrderedDict([
        ("instance", Field("str", "tabular-chain", _choices(*INSTANCES), "shipped instance name")),
        ("n_grid", Field("intlist", [300, 1200, 4800], _all(lambda v: v >= 1), "dataset sizes, each >= 1")),
        ("seeds", Field("int", 20, _positive, "seeds per dataset size, > 0")),
        ("eps_final", Field("float", 0.5, _positive, "target suboptimality, > 0")),
        ("delta", Field("float", 0.1, _unit_open, "failure probability, in (0, 1)")),
        ("eps_be", Field("float", 0.0, _nonnegative, "assumed inherent Bellman error, >= 0")),
        ("t_cap", Field("int", 2000, _positive, "cap on actor iterations, > 0")),
        ("c_zeta", Field("float", 1.0, _positive, "constant inside zeta, > 0")),
        ("c_alpha", Field("float", 1.0, _positive, "constant inside alpha, > 0")),
        ("ridge", Field("float", DEFAULTS.ridge, _positive, "ridge regularizer, > 0")),
        ("on_infeasible", Field("str", "abort", _choices(*INFEASIBLE_POLICIES), "abort or inflate")),
    ])),
    ("run-lower", OrderedDict([
        ("algorithm", Field("str", "constant-pi-star", _choices(*ALGORITHMS), "algorithm under test")),
        ("eps", Field("float", 0.0625, _unit_open, "misspecification level, in (0, 1)")),
        ("n", Field("int", 3000, lambda v: v >= 3, "dataset size, >= 3")),
        ("trials", Field("int", 50, _positive, "estimation trials, > 0")),
        ("holdout", Field("int", 50, _positive, "held-out evaluation trials, > 0")),
        ("mc_draws", Field("int", DEFAULTS.mc_draws, _positive, "draws for action probabilities, > 0")),
        ("t_cap", Field("int", 200, _positive, "cap on actor iterations, > 0")),
        ("eps_final", Field("float", 0.5, _positive, "actor target suboptimality, > 0")),
        ("delta", Field("float", 0.1, _unit_open, "actor failure probability, in (0, 1)")),
        ("policy_files", Field("strlist", [], _anything, "policy text containers, one per trial")),
    ])),
    ("ftpl-bench", OrderedDict([
        ("rounds", Field("int", 200, _positive, "rounds T, > 0")),
        ("eta", Field("float", 1.0, _nonnegative, "perturbation scale, >= 0")),
        ("omega", Field("float", 1.0, _positive, "learning rate, > 0")),
        ("mc_samples", Field("int", 2000, _positive, "perturbation draws per round, > 0")),
        ("dim", Field("int", 2, _positive, "dimension of the action vectors, > 0")),
        ("random_adversaries", Field("int", 7, _nonnegative, "seeded random adversaries besides the fixed ones, >= 0")),
    ])),
])


##########################################################################
## Value Codecs
##########################################################################

def _parse_value(kind, text):
    text = text.strip()
    if kind == "int":
        return int(text)
    if kind == "float":
        return float(text)
    if kind == "str":
        return text
    if kind == "intlist":
        return [int(v) for v in text.split(",") if v.strip()]
    if kind == "strlist":
        return [v.strip() for v in text.split(",") if v.strip()]
    raise PessimismValueError("unknown field kind '{}'".format(kind))


def _format_value(kind, value):
    if kind == "float":
        return repr(float(value))
    if kind in ("intlist", "strlist"):
        return ", ".join(str(v) for v in value)
    return str(value)


def _coerce(kind, value):
    if isinstance(value, str):
        return _parse_value(kind, value)
    if kind == "int":
        return int(value)
    if kind == "float":
        return float(value)
    if kind == "intlist":
        return [int(v) for v in value]
    if kind == "strlist":
        return [str(v) for v in value]
    return str(value)


##########################################################################
## Experiment Configuration
##########################################################################

class ExperimentConfig(object):
    """
    Typed, validated parameters for every command of the command line
    front end.

    Parameters
    ----------
    values : dict of dicts, default: None
        Maps section names to ``{key: value}`` dictionaries that override the
        schema defaults. Values may be given as strings in file syntax.
    """

    def __init__(self, values=None):
        self._values = OrderedDict(
            (section, OrderedDict((key, field.default) for key, field in fields.items()))
            for section, fields in SCHEMA.items()
        )

        for section, entries in (values or {}).items():
            for key, value in entries.items():
                self.set(section, key, value)

        self.validate()

    ##////////////////////////////////////////////////////////////////////
    ## Access
    ##////////////////////////////////////////////////////////////////////

    @staticmethod
    def _field(section, key):
        if section not in SCHEMA:
            raise PessimismKeyError(
                "unknown section '{}'; choose from {}".format(section, ", ".join(SCHEMA))
            )
        if key not in SCHEMA[section]:
            raise PessimismKeyError(
                "unknown key '{}' in section '{}'; choose from {}".format(
                    key, section, ", ".join(SCHEMA[section])
                )
            )
        return SCHEMA[section][key]

    def get(self, section, key):
        self._field(section, key)
        return self._values[section][key]

    def set(self, section, key, value):
        field = self._field(section, key)
        try:
            self._values[section][key] = _coerce(field.kind, value)
        except ValueError:
            raise PessimismValueError(
                "cannot read {}.{} = {!r} as {}".format(section, key, value, field.kind)
            )

    def section(self, section):
        """
        Returns a copy of the values of one section.
        """
        if section not in SCHEMA:
            raise PessimismKeyError(
                "unknown section '{}'; choose from {}".format(section, ", ".join(SCHEMA))
            )
        return dict(self._values[section])

    def __getitem__(self, section):
        return self.section(section)

    def validate(self):
        """
        Checks every value against its documented range.
        """
        for section, fields in SCHEMA.items():
            for key, field in fields.items():
                value = self._values[section][key]
                if not field.check(value):
                    raise PessimismValueError(
                        "{}.{} = {!r} is out of range ({})".format(section, key, value, field.doc)
                    )

    def override(self, assignments):
        """
        Returns a new configuration with ``section.key=value`` assignments
        applied, as given on the command line.
        """
        values = OrderedDict((s, OrderedDict(v)) for s, v in self._values.items())
        for assignment in assignments:
            target, sep, value = assignment.partition("=")
            section, dot, key = target.strip().rpartition(".")
            if not sep or not dot:
                raise PessimismValueError(
                    "override '{}' is not of the form section.key=value".format(assignment)
                )
            self._field(section, key)
            values[section][key] = value
        return ExperimentConfig(values)

    ##////////////////////////////////////////////////////////////////////
    ## Text form
    ##////////////////////////////////////////////////////////////////////

    def to_text(self):
        """
        Canonical text form: every section and key in schema order.
        """
        lines = []
        for section, fields in SCHEMA.items():
            lines.append("[{}]".format(section))
            for key, field in fields.items():
                lines.append("{} = {}".format(key, _format_value(field.kind, self._values[section][key])))
            lines.append("")
        return "\n".join(lines)

    @classmethod
    def from_text(klass, text, path=None):
        parser = configparser.ConfigParser(interpolation=None)
        try:
            parser.read_string(text, source=str(path) if path else "<config>")
        except configparser.MissingSectionHeaderError as e:
            raise ParseError("expected a [section] header", path=path, lineno=e.lineno)
        except configparser.ParsingError as e:
            lineno, line = e.errors[0]
            raise ParseError("cannot parse {!r}".format(line.strip()), path=path, lineno=lineno)
        except configparser.Error as e:
            raise ParseError(str(e), path=path, lineno=getattr(e, "lineno", None))

        values = OrderedDict()
        for section in parser.sections():
            if section not in SCHEMA:
                raise ParseError("unknown section [{}]".format(section), path=path)
            values[section] = OrderedDict()
            for key, value in parser.items(section):
                if key not in SCHEMA[section]:
                    raise ParseError("unknown key '{}' in [{}]".format(key, section), path=path)
                values[section][key] = value

        try:
            return klass(values)
        except PessimismValueError as e:
            raise ParseError(str(e), path=path)

    @classmethod
    def from_file(klass, path):
        with open(path, "r", encoding="utf-8") as f:
            return klass.from_text(f.read(), path=path)

    @property
    def hash(self):
        """
        SHA-256 hex digest of the canonical text form.
        """
        return hashlib.sha256(self.to_text().encode("utf-8")).hexdigest()

    def __eq__(self, other):
        if not isinstance(other, ExperimentConfig):
            return NotImplemented
        return self.to_text() == other.to_text()

    def __repr__(self):
        return "ExperimentConfig(hash={})".format(self.hash[:12])
