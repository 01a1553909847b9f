# tests.test_lowerbound
# Tests for the hard instance family and the adversarial gap
#
# Created:  Wed Mar 11 16:20:51 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Tests for the hard instance family and the adversarial gap
"""
