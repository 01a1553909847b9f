# tests.test_utils.test_random
# Tests for the splittable random streams.
#
# Created:  Mon Mar 02 11:40:58 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Tests for the splittable random streams.
"""

##########################################################################
## Imports
##########################################################################

import unittest
import numpy as np

from pessimism.utils.random import *
from pessimism.exceptions import PessimismTypeError, PessimismValueError


##########################################################################
## Random Stream Tests
##########################################################################

class RandomStreamTests(unittest.TestCase):

    def test_reproducible(self):
        """
        Assert the same path always yields the same draws
        """
        first = RandomStream(42).child(3, 1).generator().standard_normal(5)
        second = RandomStream(42).child(3).child(1).generator().standard_normal(5)
        np.testing.assert_array_equal(first, second)

    def test_children_differ(self):
        master = RandomStream(42)
        first = master.child(0).generator().standard_normal(5)
        second = master.child(1).generator().standard_normal(5)
        other = RandomStream(43).child(0).generator().standard_normal(5)
        self.assertFalse(np.array_equal(first, second))
        self.assertFalse(np.array_equal(first, other))

    def test_child_does_not_consume(self):
        """
        Test deriving children leaves the parent's draws unchanged
        """
        master = RandomStream(7)
        before = master.generator().random(3)
        master.child(0).generator().random(100)
        np.testing.assert_array_equal(master.generator().random(3), before)

    def test_equality(self):
        self.assertEqual(RandomStream(1, (2, 3)), RandomStream(1).child(2, 3))
        self.assertNotEqual(RandomStream(1), RandomStream(2))
        self.assertEqual(len({RandomStream(1), RandomStream(1)}), 1)
        self.assertEqual(repr(RandomStream(1, (2,))), "RandomStream(seed=1, key=(2,))")

    def test_integer_seed(self):
        seed = RandomStream(5).child(1).integer_seed()
        self.assertEqual(seed, RandomStream(5).child(1).integer_seed())
        self.assertTrue(0 <= seed < 2 ** 32)

    def test_fresh_entropy(self):
        stream = RandomStream()
        self.assertGreaterEqual(stream.seed, 0)
        np.testing.assert_array_equal(
            stream.child(0).generator().random(2), stream.child(0).generator().random(2)
        )

    def test_invalid(self):
        with self.assertRaises(PessimismValueError):
            RandomStream(-1)
        with self.assertRaises(PessimismValueError):
            RandomStream(1.5)
        with self.assertRaises(PessimismValueError):
            RandomStream(1).child(-2)


class CheckStreamTests(unittest.TestCase):

    def test_check_stream(self):
        stream = RandomStream(9)
        self.assertIs(check_stream(stream), stream)
        self.assertEqual(check_stream(9), stream)
        self.assertIsInstance(check_stream(None), RandomStream)

    def test_invalid(self):
        with self.assertRaises(PessimismTypeError):
            check_stream(np.random.default_rng(0))
