# tests.base
# Helper functions and cases for making assertions on numerical results.
#
# Created:  Wed Mar 04 10:24:08 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Helper functions and cases for making assertions on numerical results.
"""

##########################################################################
## Imports
##########################################################################

import os
import shutil
import tempfile
import unittest
import numpy as np

from pessimism.utils.random import RandomStream


# Long acceptance runs only execute with PESSIMISM_SLOW set
SLOW = bool(os.environ.get("PESSIMISM_SLOW"))
slow = unittest.skipUnless(SLOW, "set PESSIMISM_SLOW=1 to run long acceptance tests")


##########################################################################
## Numerical Test Case
##########################################################################

class PessimismTestCase(unittest.TestCase):
    """
    Every test gets its own seeded random stream, so failures reproduce
    regardless of the order the tests run in.
    """

    seed = 42

    def setUp(self):
        self.stream = RandomStream(self.seed)
        super(PessimismTestCase, self).setUp()

    def assertAllClose(self, actual, desired, atol=1e-9, rtol=0.0, msg=""):
        np.testing.assert_allclose(actual, desired, atol=atol, rtol=rtol, err_msg=msg)

    def assertDistribution(self, probs, atol=1e-9):
        """
        Asserts that the last axis holds probability distributions.
        """
        probs = np.asarray(probs)
        self.assertTrue((probs >= -atol).all(), "negative probability")
        np.testing.assert_allclose(probs.sum(axis=-1), 1.0, atol=atol)


class TemporaryDirectoryTestCase(PessimismTestCase):
    """
    Provides ``self.tmpdir``, removed after each test.
    """

    def setUp(self):
        super(TemporaryDirectoryTestCase, self).setUp()
        self.tmpdir = tempfile.mkdtemp(prefix="pessimism-test-")

    def tearDown(self):
        shutil.rmtree(self.tmpdir, ignore_errors=True)
        super(TemporaryDirectoryTestCase, self).tearDown()

    def path(self, *parts):
        return os.path.join(self.tmpdir, *parts)
