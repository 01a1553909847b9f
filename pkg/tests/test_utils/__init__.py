# tests.test_utils
# Tests for pessimism utilities
#
# Created:  Mon Mar 02 11:02:17 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Tests for pessimism utilities
"""
