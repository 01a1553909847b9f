# pessimism.results
# CSV result files stamped with the hash of their configuration.
#
# Created:  Fri Mar 13 10:05:22 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
CSV result files stamped with the hash of their configuration.

Every result file starts with a comment line ``# config-hash: <hex>``
followed by a header row and the data rows, UTF-8 encoded.
"""

##########################################################################
## Imports
##########################################################################

import os
import logging
import pandas as pd

from .exceptions import ParseError


logger = logging.getLogger(__name__)

HASH_PREFIX = "# config-hash: "


def result_path(config, name):
    """
    The path of a named result file inside the configured output directory.
    """
    return os.path.join(config.get("general", "output"), "{}.csv".format(name))


def write_results(frame, path, config):
    """
    Writes a DataFrame as a stamped CSV, creating the parent directory.
    """
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)

    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write("{}{}\n".format(HASH_PREFIX, config.hash))
        frame.to_csv(f, index=False, float_format="%.17g")

    logger.info("wrote %d rows to %s", len(frame), path)
    return path


def read_results(path):
    """
    Reads a stamped CSV and returns ``(frame, config_hash)``.
    """
    with open(path, "r", encoding="utf-8") as f:
        first = f.readline().rstrip("\r\n")
        if not first.startswith(HASH_PREFIX):
            raise ParseError("missing '{}' line".format(HASH_PREFIX.strip()), path=path, lineno=1)
        frame = pd.read_csv(f)
    return frame, first[len(HASH_PREFIX):].strip()
