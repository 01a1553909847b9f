# tests
# Testing package for the pessimism library.
#
# Created:  Wed Mar 04 10:20:31 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Testing package for the pessimism library.
"""

##########################################################################
## Imports
##########################################################################

import unittest


##########################################################################
## Test Constants
##########################################################################

EXPECTED_VERSION = "0.1"


##########################################################################
## Initialization Tests
##########################################################################

class InitializationTests(unittest.TestCase):

    def test_sanity(self):
        """
        Test that tests work by confirming 7-3 = 4
        """
        self.assertEqual(7-3, 4, "The world went wrong!!")

    def test_import(self):
        """
        Assert that the pessimism package can be imported.
        """
        try:
            import pessimism
        except ImportError:
            self.fail("Could not import the pessimism library!")

    def test_version(self):
        """
        Assert that the test version matches the library version.
        """
        try:
            import pessimism
            self.assertEqual(pessimism.__version__, EXPECTED_VERSION)
        except ImportError:
            self.fail("Could not import the pessimism library!")
