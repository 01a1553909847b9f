# pessimism.verify.base
# Rows of a verification report.
#
# Created:  Mon Mar 09 10:20:03 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Rows of a verification report.
"""

##########################################################################
## Imports
##########################################################################

import math
import pandas as pd

from collections import namedtuple


##########################################################################
## Check Results
##########################################################################

# Columns of a verification report
REPORT_COLUMNS = ("check", "residual", "bound", "passed", "detail")


class CheckResult(namedtuple("CheckResult", REPORT_COLUMNS)):
    """
    One row of a verification report: the name of the check, the measured
    residual, the bound it is compared with, whether it passed and a short
    free-form detail.
    """

    __slots__ = ()

    @classmethod
    def compare(klass, check, residual, bound, detail=""):
        """
        A row that passes when ``residual <= bound``.
        """
        residual, bound = float(residual), float(bound)
        passed = not math.isnan(residual) and residual <= bound
        return klass(check, residual, bound, passed, detail)


def report_frame(results):
    """
    The results as a DataFrame in report column order.
    """
    return pd.DataFrame([r._asdict() for r in results], columns=list(REPORT_COLUMNS))
