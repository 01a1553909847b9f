# tests.test_lowerbound.test_instance
# Tests for the hard instance family and its canonical dataset.
#
# Created:  Wed Mar 11 16:24:37 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Tests for the hard instance family and its canonical dataset.
"""

##########################################################################
## Imports
##########################################################################

import math
import unittest
import numpy as np

from tests.base import PessimismTestCase

from pessimism.lowerbound.instance import *
from pessimism.mdp import exact_policy_value, optimal_value
from pessimism.exceptions import PessimismValueError, PreconditionError


EPS = 1.0 / 16.0


##########################################################################
## Level Tests
##########################################################################

class LevelTests(unittest.TestCase):

    def test_round_eps(self):
        self.assertEqual(round_eps(EPS), EPS)
        self.assertEqual(round_eps(0.07), EPS)
        self.assertEqual(round_eps(0.02), 1.0 / 64.0)
        self.assertAlmostEqual(round_eps(0.01), 0.01)
        self.assertEqual(round_eps(0.3), 0.25)

        with self.assertRaises(PessimismValueError):
            round_eps(0.0)

    def test_levels_of(self):
        self.assertEqual(levels_of(EPS), 4)
        self.assertEqual(levels_of(0.25), 2)
        with self.assertRaises(PreconditionError):
            levels_of(1.0 / 9.0)
        with self.assertRaises(PreconditionError):
            levels_of(0.07)
        with self.assertRaises(PreconditionError):
            levels_of(1.0)


class BitsTests(PessimismTestCase):

    def test_zeros(self):
        bits = LowerBoundBits.zeros(4)
        self.assertEqual(bits.L, 4)
        self.assertEqual(bits, LowerBoundBits(0, 0, np.zeros((4, 2))))
        self.assertNotEqual(bits, LowerBoundBits(1, 0, np.zeros((4, 2))))

    def test_invalid(self):
        with self.assertRaises(PessimismValueError):
            LowerBoundBits(2, 0, np.zeros((4, 2)))
        with self.assertRaises(PessimismValueError):
            LowerBoundBits(0, 0, np.zeros((4, 3)))
        with self.assertRaises(PessimismValueError):
            LowerBoundBits(0, 0, np.full((4, 2), 2))

    def test_random_bits(self):
        bits = random_bits(4, self.stream)
        self.assertEqual(bits.L, 4)
        self.assertEqual(bits, random_bits(4, self.stream))


##########################################################################
## Instance Tests
##########################################################################

class InstanceTests(PessimismTestCase):

    def test_layout(self):
        """
        Test the sizes and state layout of the eps = 1/16 member
        """
        instance = build_instance(EPS)
        mdp = instance.mdp
        self.assertEqual(instance.L, 4)
        self.assertEqual(instance.n_states, 19)
        self.assertEqual(mdp.n_states, 19)
        self.assertEqual((mdp.horizon, mdp.dim, mdp.n_actions), (2, 2, 4))
        self.assertEqual(mdp.initial_state, 1)

        self.assertEqual(mdp.state_name(instance.level(4)), "s2^4")
        self.assertEqual(mdp.state_name(instance.shifted(0, 2)), "t2_0^2")
        self.assertEqual(mdp.state_name(instance.shifted(1, 3)), "t2_1^3")
        self.assertEqual(instance.shifted(1, 0), instance.shifted(0, 0))

    def test_constants(self):
        instance = build_instance(EPS)
        self.assertAlmostEqual(instance.optimal_value, C_PHI * 5.0 / 512.0)
        self.assertAlmostEqual(instance.threshold, C_PHI / 160.0)

    def test_transitions(self):
        """
        Assert the informative first action spreads over levels 1..L
        """
        instance = build_instance(EPS)
        P = instance.mdp.transitions[0]

        levels = [instance.level(l) for l in range(1, 5)]
        self.assertAllClose(P[0, 0, levels], 0.25)
        self.assertEqual(P[0, 1, 3], 1.0)
        self.assertAllClose(P[1, 0, levels], 0.25)

        shifted = [instance.shifted(e, l) for l in range(1, 5) for e in (0, 1)]
        self.assertAllClose(P[1, 1, shifted], 0.125)

    def test_level_bits_shift_down(self):
        bits = LowerBoundBits(0, 0, [[0, 1], [0, 1], [0, 0], [0, 0]])
        instance = build_instance(EPS, bits)
        P = instance.mdp.transitions[0, 1, 1]
        self.assertAlmostEqual(P[instance.shifted(1, 0)], 0.125)
        self.assertAlmostEqual(P[instance.shifted(1, 1)], 0.125)
        self.assertAlmostEqual(P[instance.shifted(1, 4)], 0.125)
        self.assertEqual(P[instance.shifted(1, 2)], 0.0)

    def test_wrong_bits(self):
        with self.assertRaises(PessimismValueError):
            build_instance(EPS, LowerBoundBits.zeros(2))
        with self.assertRaises(PreconditionError):
            build_instance(0.07)

    def test_reference_policy_is_optimal(self):
        """
        Test the reference policy reaches the optimal value on random members
        """
        for idx in range(4):
            instance = build_instance(EPS, random_bits(4, self.stream.child(idx)))
            value = exact_policy_value(instance.mdp, reference_policy(instance)).value
            self.assertAlmostEqual(value, instance.optimal_value, places=12)
            # The comparator need not be optimal: level states pay c at action 1 or 3
            self.assertGreaterEqual(optimal_value(instance.mdp)[0].value, value)


##########################################################################
## Dataset Tests
##########################################################################

class CanonicalDatasetTests(PessimismTestCase):

    def test_counts(self):
        instance = build_instance(EPS)
        dataset = generate_lb_dataset(instance, 301, self.stream)
        self.assertEqual(dataset.n, 300)
        self.assertEqual((dataset.h == 1).sum(), 200)
        self.assertEqual((dataset.a[dataset.h == 1] == 1).sum(), 100)
        self.assertTrue((dataset.x[dataset.h == 2] == instance.level(4)).all())

    def test_bits_do_not_change_the_data(self):
        """
        Assert the dataset law does not depend on the member of the family
        """
        first = generate_lb_dataset(build_instance(EPS), 30, self.stream)
        other = build_instance(EPS, random_bits(4, self.stream))
        second = generate_lb_dataset(other, 30, self.stream)
        np.testing.assert_array_equal(first.x_next, second.x_next)

    def test_too_small(self):
        with self.assertRaises(PreconditionError):
            generate_lb_dataset(build_instance(EPS), 2)
