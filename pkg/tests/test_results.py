# tests.test_results
# Tests for the stamped CSV result files.
#
# Created:  Fri Mar 13 11:12:09 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Tests for the stamped CSV result files.
"""

##########################################################################
## Imports
##########################################################################

import os
import unittest
import pandas as pd

from tests.base import TemporaryDirectoryTestCase

from pessimism.results import *
from pessimism.config import ExperimentConfig
from pessimism.exceptions import ParseError


##########################################################################
## Result File Tests
##########################################################################

class ResultFileTests(TemporaryDirectoryTestCase):

    def setUp(self):
        super(ResultFileTests, self).setUp()
        self.config = ExperimentConfig({"general": {"output": self.path("out", "nested")}})

    def test_result_path(self):
        self.assertEqual(
            result_path(self.config, "verify"), os.path.join(self.path("out", "nested"), "verify.csv")
        )

    def test_hash_line(self):
        """
        Assert the first line stamps the hash of the configuration
        """
        frame = pd.DataFrame({"n": [1, 2], "gap": [0.5, 0.25]})
        path = write_results(frame, result_path(self.config, "demo"), self.config)

        with open(path, encoding="utf-8") as f:
            self.assertEqual(f.readline().strip(), HASH_PREFIX + self.config.hash)
            self.assertEqual(f.readline().strip(), "n,gap")

    def test_reparse_reproduces_hash(self):
        """
        Test reading a result file returns its rows and configuration hash
        """
        frame = pd.DataFrame({"check": ["a", "b"], "residual": [0.1, 1e-12], "passed": [True, False]})
        path = write_results(frame, result_path(self.config, "demo"), self.config)

        other, config_hash = read_results(path)
        self.assertEqual(config_hash, self.config.hash)
        self.assertEqual(list(other.columns), ["check", "residual", "passed"])
        self.assertEqual(other["residual"].tolist(), [0.1, 1e-12])
        self.assertEqual(other["passed"].tolist(), [True, False])

    def test_missing_hash_line(self):
        path = self.path("plain.csv")
        with open(path, "w") as f:
            f.write("n,gap\n1,0.5\n")

        with self.assertRaises(ParseError) as ctx:
            read_results(path)
        self.assertEqual(ctx.exception.lineno, 1)


if __name__ == '__main__':
    unittest.main()
