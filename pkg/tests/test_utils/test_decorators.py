# tests.test_utils.test_decorators
# Tests for the decorators module in pessimism utils.
#
# Created:  Mon Mar 02 11:05:40 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Tests for the decorators module in pessimism utils.
"""

##########################################################################
## Imports
##########################################################################

import unittest

from pessimism.utils.decorators import *
from pessimism.instances import tabular_chain


##########################################################################
## Decorator Tests
##########################################################################

class DecoratorTests(unittest.TestCase):
    """
    Tests for the decorator utilities.
    """

    def test_memoization(self):
        """
        Test the memoized property decorator on a class.
        """

        class Table(object):

            calls = 0

            @memoized
            def foo(self):
                Table.calls += 1
                return "bar"

        table = Table()
        self.assertFalse(hasattr(table, "_foo"))
        self.assertEqual(table.foo, "bar")
        self.assertEqual(table.foo, "bar")
        self.assertEqual(table._foo, "bar")
        self.assertEqual(Table.calls, 1)

    def test_memoized_rewards(self):
        """
        Assert the reward table of an MDP is built once
        """
        mdp = tabular_chain().mdp
        self.assertIs(mdp.rewards, mdp.rewards)
