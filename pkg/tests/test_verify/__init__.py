# tests.test_verify
# Tests for the numerical certification checks
#
# Created:  Mon Mar 09 16:10:32 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Tests for the numerical certification checks
"""
