# pessimism.lowerbound.instance
# The two-step hard instance family, its dataset and reference policy.
#
# Created:  Wed Mar 11 09:40:05 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
The two-step hard instance family, its dataset and reference policy.

Every member has horizon 2, feature dimension 2 and four actions, and is
selected by a collection of bits: ``b_rew`` flips the sign of the step two
reward, ``b_init`` chooses which first action leads to the informative
states, and the level bits ``b_{l,e}`` shift the successors of the other
first action down by one level. With ``L = 1 / sqrt(eps)`` an even integer
the states are::

    s1, t1, s2, s2bar, q2                     fixed states
    s2^l        for l = 0..L                  level states
    t2_0^l      for l = 0..L                  shifted states, sign 0
    t2_1^l      for l = 1..L                  shifted states, sign 1

where the superscript ``l`` stands for ``zeta = l eps`` and ``t2_1^0`` is the
same state as ``t2_0^0``. States that specify fewer than four actions
repeat the features and transitions of action 0 on the remaining ones.
"""

##########################################################################
## Imports
##########################################################################

import math
import logging
import numpy as np

from collections import namedtuple
from dataclasses import dataclass

from ..dataset import generate_dataset
from ..mdp import FeatureMDP
from ..policies import Policy
from ..utils.random import check_stream
from ..exceptions import PessimismValueError, PreconditionError


logger = logging.getLogger(__name__)

# Feature scale and reward slope of the family
C_PHI = 1.0 / math.sqrt(2.0)
R = 16.0

# Indices of the fixed states
S1, T1, S2, S2BAR, Q2 = range(5)
N_ACTIONS = 4


##########################################################################
## Bits
##########################################################################

class LowerBoundBits(namedtuple("LowerBoundBits", ("b_rew", "b_init", "levels"))):
    """
    The bits selecting one member of the family. ``levels[l - 1, e]`` is
    ``b_{l,e}`` for ``l = 1..L`` and ``e`` in ``{0, 1}``.
    """

    __slots__ = ()

    def __new__(klass, b_rew, b_init, levels):
        levels = np.asarray(levels, dtype=np.int64)
        if levels.ndim != 2 or levels.shape[1] != 2:
            raise PessimismValueError("level bits must be an L x 2 array")
        if b_rew not in (0, 1) or b_init not in (0, 1) or not np.isin(levels, (0, 1)).all():
            raise PessimismValueError("bits must be 0 or 1")
        return super(LowerBoundBits, klass).__new__(klass, int(b_rew), int(b_init), levels)

    @classmethod
    def zeros(klass, L):
        return klass(0, 0, np.zeros((L, 2), dtype=np.int64))

    @property
    def L(self):
        return len(self.levels)

    def __eq__(self, other):
        if not isinstance(other, LowerBoundBits):
            return NotImplemented
        return (
            self.b_rew == other.b_rew and self.b_init == other.b_init
            and np.array_equal(self.levels, other.levels)
        )

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None


def random_bits(L, stream=None):
    """
    Draws all ``2L + 2`` bits uniformly.
    """
    rng = check_stream(stream).generator()
    b_rew, b_init = rng.integers(0, 2, size=2)
    return LowerBoundBits(int(b_rew), int(b_init), rng.integers(0, 2, size=(L, 2)))


def round_eps(eps):
    """
    The largest ``eps' <= eps`` for which ``1 / sqrt(eps')`` is an even
    integer.
    """
    if not 0 < eps < 1:
        raise PessimismValueError("eps must lie in (0, 1) not {}".format(eps))
    L = 2 * int(math.ceil(1.0 / (2.0 * math.sqrt(eps)) - 1e-9))
    return 1.0 / L ** 2


def levels_of(eps):
    """
    Returns ``L = 1 / sqrt(eps)``, which must be an even integer.
    """
    if not 0 < eps < 1:
        raise PreconditionError("eps must lie in (0, 1) not {}".format(eps))
    root = 1.0 / math.sqrt(eps)
    L = int(round(root))
    if abs(root - L) > 1e-9 * root or L % 2 != 0:
        raise PreconditionError(
            "1 / sqrt(eps) = {:.6g} is not an even integer; use round_eps".format(root)
        )
    return L


##########################################################################
## Instance
##########################################################################

@dataclass
class LowerBoundInstance:
    """
    A member of the family together with its state layout.
    """

    eps: float
    L: int
    bits: LowerBoundBits
    mdp: FeatureMDP

    def level(self, l):
        """
        The state ``s2^l``.
        """
        return 5 + l

    def shifted(self, e, l):
        """
        The state ``t2_e^l``; ``t2_1^0`` is ``t2_0^0``.
        """
        if e == 0 or l == 0:
            return 5 + (self.L + 1) + l
        return 5 + 2 * (self.L + 1) + (l - 1)

    @property
    def n_states(self):
        return 3 * self.L + 7

    @property
    def optimal_value(self):
        """
        ``c_phi (L + 1) eps / (2 R)``, the value of the reference policy.
        """
        return C_PHI * (self.L + 1) * self.eps / (2.0 * R)

    @property
    def threshold(self):
        """
        The suboptimality ``c_phi sqrt(eps) / 40`` every algorithm suffers
        on some member of the family.
        """
        return C_PHI * math.sqrt(self.eps) / 40.0


def _pad(actions):
    # Unspecified actions repeat action 0
    actions = [np.asarray(a, dtype=float) for a in actions]
    return actions + [actions[0]] * (N_ACTIONS - len(actions))


def build_instance(eps, bits=None):
    """
    Materializes the member of the family selected by ``bits`` (all zero by
    default) as a :class:`~pessimism.mdp.FeatureMDP`.

    Raises
    ------
    PreconditionError
        If ``1 / sqrt(eps)`` is not an even integer.
    """
    L = levels_of(eps)
    bits = LowerBoundBits.zeros(L) if bits is None else bits
    if bits.L != L:
        raise PessimismValueError("expected {} level bit pairs, found {}".format(L, bits.L))

    shell = LowerBoundInstance(eps=eps, L=L, bits=bits, mdp=None)
    X, c = shell.n_states, C_PHI

    # Features (identical at both steps)
    rows = [None] * X
    rows[S1] = _pad([(c, 0), (0, c)])
    rows[T1] = _pad([(c, c), (c, -c)])
    rows[S2] = _pad([(0, c), (0, -c)])
    rows[S2BAR] = _pad([(0, 0)])
    rows[Q2] = _pad([(0, 0)])
    for l in range(L + 1):
        zeta = l * eps
        rows[shell.level(l)] = _pad([(0, c * zeta), (c, 0), (0, -c * zeta), (-c, 0)])
        for e in (0, 1):
            sign = 1 - 2 * e
            rows[shell.shifted(e, l)] = _pad([(c, c * sign * zeta), (-c, -c * sign * zeta)])

    step = np.array(rows)
    features = np.stack([step, step])

    # Transitions: everything not listed moves to s2bar
    transitions = np.zeros((2, X, N_ACTIONS, X))
    transitions[:, :, :, S2BAR] = 1.0

    informative = np.zeros(X)
    informative[[shell.level(l) for l in range(1, L + 1)]] = 1.0 / L

    shifted = np.zeros(X)
    for l in range(1, L + 1):
        for e in (0, 1):
            shifted[shell.shifted(e, l - bits.levels[l - 1, e])] += 1.0 / (2 * L)

    first = np.zeros((N_ACTIONS, X))
    first[0] = informative
    first[1, S2BAR] = 1.0
    transitions[0, S1] = _pad([first[0], first[1]])

    at_t1 = {bits.b_init: informative, 1 - bits.b_init: shifted}
    transitions[0, T1] = _pad([at_t1[0], at_t1[1]])

    support = np.zeros((2, X), dtype=bool)
    support[0, [S1, T1]] = True
    support[1] = True
    support[1, [S1, T1]] = False

    names = ["s1", "t1", "s2", "s2bar", "q2"]
    names += ["s2^{}".format(l) for l in range(L + 1)]
    names += ["t2_0^{}".format(l) for l in range(L + 1)]
    names += ["t2_1^{}".format(l) for l in range(1, L + 1)]

    reward_coeffs = [[0.0, 0.0], [1.0 - 2.0 * bits.b_rew, 1.0 / R]]
    mdp = FeatureMDP(
        features, transitions, reward_coeffs=reward_coeffs, initial_state=T1,
        support=support, state_names=names,
    )
    shell.mdp = mdp
    return shell


def reference_policy(instance):
    """
    The deterministic perturbed linear policy with ``w_1 = (1, 1 - 2 b_init)``
    and ``w_2 = (0, 1)``. It plays ``b_init`` at ``t1`` and action 0 at
    every level state.
    """
    b_init = instance.bits.b_init
    return Policy.perturbed_linear([[1.0, 1.0 - 2.0 * b_init], [0.0, 1.0]], 0.0)


def generate_lb_dataset(instance, n, stream=None):
    """
    The canonical dataset: ``n // 3`` tuples each of ``(1, s1, 1)``, of
    ``(1, s1, 0)`` and of ``(2, s2^L, 0)``.
    """
    if n < 3:
        raise PreconditionError("the canonical dataset needs n >= 3, not {}".format(n))

    third = n // 3
    plan = [
        (1, S1, 1, third),
        (1, S1, 0, third),
        (2, instance.level(instance.L), 0, third),
    ]
    return generate_dataset(instance.mdp, plan=plan, stream=stream)
