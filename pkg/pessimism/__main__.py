# pessimism.__main__
# Allows the command line front end to run as ``python -m pessimism``.
#
# Created:  Fri Mar 13 16:02:40 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

import sys

from .cli import main


if __name__ == "__main__":
    sys.exit(main())
