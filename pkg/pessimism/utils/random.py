# pessimism.utils.random
# Counter-based, splittable random streams for reproducible experiments.
#
# Created:  Mon Mar 02 10:05:13 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Counter-based, splittable random streams for reproducible experiments.

Every stochastic operation in the library takes a :class:`RandomStream`
rather than a shared generator. A stream is an immutable ``(seed, key)``
pair; children are derived by appending integers to the key, so the draws
made for, say, ``(trial, step, state)`` only depend on the master seed and
that path::

    master = RandomStream(42)
    stream = master.child(trial, step, state)
    rng = stream.generator()

Generators are backed by ``numpy.random.Philox`` seeded through
``numpy.random.SeedSequence(entropy=seed, spawn_key=key)``.
"""

##########################################################################
## Imports
##########################################################################

import numbers
import numpy as np

from pessimism.exceptions import PessimismTypeError, PessimismValueError


##########################################################################
## Random Streams
##########################################################################

class RandomStream(object):
    """
    A named position in the tree of random streams rooted at a master seed.

    Parameters
    ----------
    seed : int or None, default: None
        The master seed. If None, fresh entropy is drawn once from the OS and
        kept, so that children of the same stream are still consistent.

    key : tuple of int, default: ()
        The derivation path of this stream below the master seed.
    """

    def __init__(self, seed=None, key=()):
        if seed is None:
            seed = np.random.SeedSequence().entropy
        if not isinstance(seed, numbers.Integral) or seed < 0:
            raise PessimismValueError(
                "stream seed must be a nonnegative integer, not {!r}".format(seed)
            )
        self.seed = int(seed)
        self.key = tuple(self._check_key(k) for k in key)

    @staticmethod
    def _check_key(value):
        if not isinstance(value, numbers.Integral) or value < 0:
            raise PessimismValueError(
                "stream keys must be nonnegative integers, not {!r}".format(value)
            )
        return int(value)

    def child(self, *keys):
        """
        Returns the sub-stream found by extending this stream's key.
        """
        return RandomStream(self.seed, self.key + tuple(keys))

    def seed_sequence(self):
        return np.random.SeedSequence(entropy=self.seed, spawn_key=self.key)

    def generator(self):
        """
        Returns a fresh generator positioned at the start of this stream.
        Calling this twice yields two generators producing identical draws.
        """
        return np.random.Generator(np.random.Philox(self.seed_sequence()))

    def integer_seed(self):
        """
        Derives a 32-bit integer seed, for collaborators that only accept
        an integer ``random_state``.
        """
        return int(self.seed_sequence().generate_state(1)[0])

    def __eq__(self, other):
        if not isinstance(other, RandomStream):
            return NotImplemented
        return self.seed == other.seed and self.key == other.key

    def __hash__(self):
        return hash((self.seed, self.key))

    def __repr__(self):
        return "RandomStream(seed={}, key={})".format(self.seed, self.key)


def check_stream(stream):
    """
    Turns ``stream`` into a :class:`RandomStream`, in the manner of
    ``sklearn.utils.check_random_state``.

    Parameters
    ----------
    stream : None, int or RandomStream
        None draws fresh entropy, an integer is used as the master seed and
        a stream is returned unchanged.
    """
    if stream is None or isinstance(stream, numbers.Integral):
        return RandomStream(stream)
    if isinstance(stream, RandomStream):
        return stream
    raise PessimismTypeError(
        "{!r} cannot be used to seed a RandomStream".format(stream)
    )
