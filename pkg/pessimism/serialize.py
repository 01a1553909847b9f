# pessimism.serialize
# Line-oriented text container for MDPs and policies.
#
# Created:  Wed Mar 04 16:31:45 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Line-oriented text container for MDPs and policies.

A container holds ``mdp`` and ``policy`` blocks. Numbers are written with 17
significant digits so that reading a container reproduces every float bit
for bit. Blank lines and lines starting with ``#`` are ignored::

    begin mdp
    horizon 2
    dim 2
    states 3
    actions 2
    initial 0
    name 0 s1
    support 1 0 1 2
    feature 1 0 0 0.70710678118654757 0
    transition 1 0 0 0 1 0
    reward 1 0 0
    end mdp

    begin policy
    horizon 2
    rule 1 perturbed-linear 0.5 1 -1
    rule 2 softmax 1 0 1
    end policy

A ``rewardtable h x a r`` line replaces the ``reward`` lines of MDPs with
explicit rewards, and tabular rules are written as ``rule h tabular``
followed by one ``row h x p_0 ... p_{A-1}`` line per state. Any parse
problem raises a :class:`~pessimism.exceptions.ParseError` naming the line.
"""

##########################################################################
## Imports
##########################################################################

import numpy as np

from .mdp import FeatureMDP
from .policies import Policy, PerturbedLinear, Softmax, Tabular
from .exceptions import ParseError, PessimismError, PessimismTypeError


##########################################################################
## Number Formatting
##########################################################################

def fmt(value):
    """
    Formats a float with 17 significant digits.
    """
    return "%.17g" % float(value)


def _join(values):
    return " ".join(fmt(v) for v in values)


##########################################################################
## Writers
##########################################################################

def dump_mdp(mdp):
    """
    Returns the text block of an MDP.
    """
    H, X, A, d = mdp.features.shape
    lines = [
        "begin mdp",
        "horizon {}".format(H),
        "dim {}".format(d),
        "states {}".format(X),
        "actions {}".format(A),
        "initial {}".format(mdp.initial_state),
    ]

    if mdp.state_names is not None:
        lines.extend("name {} {}".format(x, label) for x, label in enumerate(mdp.state_names))

    for h in range(H):
        states = np.flatnonzero(mdp.support[h])
        lines.append("support {} {}".format(h + 1, " ".join(str(x) for x in states)).rstrip())

    for h in range(H):
        for x in range(X):
            for a in range(A):
                lines.append("feature {} {} {} {}".format(h + 1, x, a, _join(mdp.features[h, x, a])))

    for h in range(H):
        for x in range(X):
            for a in range(A):
                lines.append("transition {} {} {} {}".format(h + 1, x, a, _join(mdp.transitions[h, x, a])))

    if mdp.reward_coeffs is not None:
        for h in range(H):
            lines.append("reward {} {}".format(h + 1, _join(mdp.reward_coeffs[h])))
    else:
        for h in range(H):
            for x in range(X):
                for a in range(A):
                    lines.append("rewardtable {} {} {} {}".format(h + 1, x, a, fmt(mdp.reward_table[h, x, a])))

    lines.append("end mdp")
    return "\n".join(lines) + "\n"


def dump_policy(policy):
    """
    Returns the text block of a Markov policy.
    """
    lines = ["begin policy", "horizon {}".format(policy.horizon)]
    for h, rule in enumerate(policy.rules, start=1):
        if isinstance(rule, PerturbedLinear):
            lines.append("rule {} perturbed-linear {} {}".format(h, fmt(rule.sigma), _join(rule.w)))
        elif isinstance(rule, Softmax):
            lines.append("rule {} softmax {} {}".format(h, fmt(rule.eta), _join(rule.w)))
        elif isinstance(rule, Tabular):
            lines.append("rule {} tabular".format(h))
            lines.extend(
                "row {} {} {}".format(h, x, _join(row)) for x, row in enumerate(rule.table)
            )
        else:
            raise PessimismTypeError("cannot serialize rule of type {}".format(type(rule)))
    lines.append("end policy")
    return "\n".join(lines) + "\n"


##########################################################################
## Parser
##########################################################################

class _Block(object):
    """
    The lines of one begin/end block, kept with their line numbers.
    """

    def __init__(self, kind, lineno, path):
        self.kind = kind
        self.lineno = lineno
        self.path = path
        self.entries = []

    def error(self, message, lineno=None):
        return ParseError(message, path=self.path, lineno=lineno or self.lineno)

    def header(self, key):
        for lineno, tokens in self.entries:
            if tokens[0] == key:
                if len(tokens) != 2:
                    raise self.error("expected '{} <int>'".format(key), lineno)
                return _int(tokens[1], self, lineno)
        raise self.error("missing '{}' header in {} block".format(key, self.kind))

    def lines(self, key):
        return [(lineno, tokens[1:]) for lineno, tokens in self.entries if tokens[0] == key]


def _int(token, block, lineno):
    try:
        return int(token)
    except ValueError:
        raise block.error("expected an integer, found '{}'".format(token), lineno)


def _floats(tokens, block, lineno, count):
    if len(tokens) != count:
        raise block.error("expected {} numbers, found {}".format(count, len(tokens)), lineno)
    try:
        return [float(t) for t in tokens]
    except ValueError:
        raise block.error("malformed number in '{}'".format(" ".join(tokens)), lineno)


def _index(tokens, block, lineno, bounds):
    values = [_int(t, block, lineno) for t in tokens[:len(bounds)]]
    if len(values) != len(bounds):
        raise block.error("too few indices", lineno)
    for value, (low, high) in zip(values, bounds):
        if not low <= value <= high:
            raise block.error("index {} is outside {}..{}".format(value, low, high), lineno)
    return values


def parse_blocks(text, path=None):
    """
    Splits a container into its blocks.
    """
    blocks = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue

        tokens = line.split()
        if tokens[0] == "begin":
            if current is not None or len(tokens) != 2:
                raise ParseError("unexpected '{}'".format(line), path=path, lineno=lineno)
            current = _Block(tokens[1], lineno, path)
        elif tokens[0] == "end":
            if current is None or tokens[1:] != [current.kind]:
                raise ParseError("unexpected '{}'".format(line), path=path, lineno=lineno)
            blocks.append(current)
            current = None
        elif current is None:
            raise ParseError("content outside of a block: '{}'".format(line), path=path, lineno=lineno)
        else:
            current.entries.append((lineno, tokens))

    if current is not None:
        raise ParseError("unterminated {} block".format(current.kind), path=path, lineno=current.lineno)
    return blocks


def _read_mdp(block):
    H, d = block.header("horizon"), block.header("dim")
    X, A = block.header("states"), block.header("actions")
    initial = block.header("initial")

    features = np.zeros((H, X, A, d))
    transitions = np.zeros((H, X, A, X))
    support = np.zeros((H, X), dtype=bool)
    coeffs, table = None, None

    seen_support = set()
    for lineno, tokens in block.lines("support"):
        h = _index(tokens, block, lineno, [(1, H)])[0]
        states = [_int(t, block, lineno) for t in tokens[1:]]
        if any(not 0 <= x < X for x in states):
            raise block.error("support state outside 0..{}".format(X - 1), lineno)
        support[h - 1, states] = True
        seen_support.add(h)
    if not seen_support:
        support[:] = True

    for lineno, tokens in block.lines("feature"):
        h, x, a = _index(tokens, block, lineno, [(1, H), (0, X - 1), (0, A - 1)])
        features[h - 1, x, a] = _floats(tokens[3:], block, lineno, d)

    for lineno, tokens in block.lines("transition"):
        h, x, a = _index(tokens, block, lineno, [(1, H), (0, X - 1), (0, A - 1)])
        transitions[h - 1, x, a] = _floats(tokens[3:], block, lineno, X)

    rewards = block.lines("reward")
    if rewards:
        coeffs = np.zeros((H, d))
        for lineno, tokens in rewards:
            h = _index(tokens, block, lineno, [(1, H)])[0]
            coeffs[h - 1] = _floats(tokens[1:], block, lineno, d)
    else:
        table = np.zeros((H, X, A))
        for lineno, tokens in block.lines("rewardtable"):
            h, x, a = _index(tokens, block, lineno, [(1, H), (0, X - 1), (0, A - 1)])
            table[h - 1, x, a] = _floats(tokens[3:], block, lineno, 1)[0]

    names = None
    named = block.lines("name")
    if named:
        names = [str(x) for x in range(X)]
        for lineno, tokens in named:
            x = _index(tokens, block, lineno, [(0, X - 1)])[0]
            if len(tokens) != 2:
                raise block.error("expected 'name <state> <label>'", lineno)
            names[x] = tokens[1]

    try:
        return FeatureMDP(
            features, transitions, reward_coeffs=coeffs, reward_table=table,
            initial_state=initial, support=support, state_names=names,
            validate=coeffs is not None,
        )
    except PessimismError as e:
        raise block.error("invalid mdp: {}".format(e))


def _read_policy(block):
    H = block.header("horizon")
    rules = [None] * H
    rows = {}

    for lineno, tokens in block.lines("rule"):
        h = _index(tokens, block, lineno, [(1, H)])[0]
        if len(tokens) < 2:
            raise block.error("expected 'rule <step> <kind> ...'", lineno)
        kind, values = tokens[1], tokens[2:]
        try:
            if kind == "perturbed-linear":
                numbers = _floats(values, block, lineno, len(values))
                rules[h - 1] = PerturbedLinear(numbers[1:], numbers[0])
            elif kind == "softmax":
                numbers = _floats(values, block, lineno, len(values))
                rules[h - 1] = Softmax(numbers[1:], numbers[0])
            elif kind == "tabular":
                rows[h] = []
            else:
                raise block.error("unknown rule kind '{}'".format(kind), lineno)
        except (PessimismError, IndexError) as e:
            if isinstance(e, ParseError):
                raise
            raise block.error("invalid rule: {}".format(e), lineno)

    for lineno, tokens in block.lines("row"):
        h = _index(tokens, block, lineno, [(1, H)])[0]
        if h not in rows:
            raise block.error("row for step {} without a tabular rule".format(h), lineno)
        x = _int(tokens[1], block, lineno) if len(tokens) > 1 else None
        if x != len(rows[h]):
            raise block.error("rows of step {} must be listed in state order".format(h), lineno)
        rows[h].append(_floats(tokens[2:], block, lineno, len(tokens) - 2))

    for h, table in rows.items():
        try:
            rules[h - 1] = Tabular(table)
        except PessimismError as e:
            raise block.error("invalid tabular rule at step {}: {}".format(h, e))

    missing = [h + 1 for h, rule in enumerate(rules) if rule is None]
    if missing:
        raise block.error("missing rules for steps {}".format(missing))
    return Policy(rules)


##########################################################################
## Loaders
##########################################################################

def _single(text, kind, path):
    blocks = [b for b in parse_blocks(text, path) if b.kind == kind]
    if len(blocks) != 1:
        raise ParseError("expected one {} block, found {}".format(kind, len(blocks)), path=path)
    return blocks[0]


def load_mdp(text, path=None):
    return _read_mdp(_single(text, "mdp", path))


def load_policy(text, path=None):
    return _read_policy(_single(text, "policy", path))


def read_mdp(path):
    with open(path, "r", encoding="utf-8") as f:
        return load_mdp(f.read(), path=path)


def read_policy(path):
    with open(path, "r", encoding="utf-8") as f:
        return load_policy(f.read(), path=path)


def write_mdp(mdp, path, policy=None):
    """
    Writes an MDP, optionally followed by a policy, to a container file.
    """
    with open(path, "w", encoding="utf-8") as f:
        f.write(dump_mdp(mdp))
        if policy is not None:
            f.write("\n")
            f.write(dump_policy(policy))


def write_policy(policy, path):
    with open(path, "w", encoding="utf-8") as f:
        f.write(dump_policy(policy))
