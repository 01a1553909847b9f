# pessimism.utils
# Utility functions and helpers for the pessimism library.
#
# Created:  Mon Mar 02 09:31:52 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Utility functions and helpers for the pessimism library.
"""

##########################################################################
## Imports
##########################################################################

from .helpers import *
from .types import *
from .random import RandomStream, check_stream
