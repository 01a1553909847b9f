# pessimism.utils.helpers
# Helper functions and generic utilities for use in pessimism code.
#
# Created:  Mon Mar 02 09:40:26 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Helper functions and generic utilities for use in pessimism code.
"""

##########################################################################
## Imports
##########################################################################

import re
import numpy as np

from .types import is_estimator
from pessimism.exceptions import PessimismTypeError


##########################################################################
## Algorithm Information
##########################################################################

def get_algorithm_name(algorithm):
    """
    Detects the name of an offline algorithm for reports.

    Parameters
    ----------
    algorithm: estimator or callable
        If the algorithm is an estimator the class name is returned, if it is
        a plain function its ``__name__`` is returned.

    Returns
    -------
    name : string
        The name of the algorithm.
    """
    if is_estimator(algorithm):
        return algorithm.__class__.__name__

    if callable(algorithm) and hasattr(algorithm, "__name__"):
        return algorithm.__name__

    raise PessimismTypeError(
        "Cannot detect the name of non algorithm: '{}'".format(type(algorithm))
    )


##########################################################################
## Numeric Computations
##########################################################################

def div_safe(numerator, denominator):
    """
    Ufunc-extension that returns 0 instead of nan when dividing numpy arrays

    Parameters
    ----------
    numerator: array-like

    denominator: scalar or array-like that can be validly divided by the numerator

    returns a numpy array

    example: div_safe( [-1, 0, 1], 0 ) == [0, 0, 0]
    """
    if np.isscalar(numerator):
        raise ValueError("div_safe should only be used with an array-like numerator")

    with np.errstate(divide='ignore', invalid='ignore'):
        result = np.true_divide(numerator, denominator)
        result = np.asarray(result, dtype=float)
        result[~np.isfinite(result)] = 0  # -inf inf NaN
    return result


def positive_part(values):
    """
    Elementwise ``max(v, 0)``.
    """
    return np.maximum(np.asarray(values, dtype=float), 0.0)


def ellipsoid_norm(vector, matrix):
    """
    Computes the norm of a vector induced by a positive semidefinite matrix,
    ``sqrt(v' M v)``. Round off that makes the quadratic form slightly
    negative is clipped to zero.
    """
    vector = np.asarray(vector, dtype=float)
    return float(np.sqrt(max(float(vector.dot(matrix).dot(vector)), 0.0)))


def signed_basis(dim):
    """
    Returns the ``2 * dim`` signed standard basis vectors as rows, positive
    directions first.
    """
    eye = np.eye(dim)
    return np.vstack([eye, -eye])


def sphere_samples(generator, count, dim):
    """
    Draws ``count`` points uniformly from the unit sphere in ``dim``
    dimensions by normalizing standard Gaussian draws. Draws are taken row
    by row so that a prefix of a larger sample equals a smaller sample from
    the same generator state.
    """
    points = generator.standard_normal((count, dim))
    norms = np.linalg.norm(points, axis=1)
    norms[norms == 0] = 1.0
    return points / norms[:, np.newaxis]


##########################################################################
## String Computations
##########################################################################

def slugify(text):
    """
    Returns a slug of given text, normalizing unicode data for file-safe
    strings. Used for naming report files and check identifiers.

    Parameters
    ----------
    text : string
        The string to slugify

    Returns
    -------
    slug : string
        A normalized slug representation of the text
    """
    slug = re.sub(r'[^\w]+', ' ', text)
    slug = "-".join(slug.lower().replace("_", " ").strip().split())
    return slug
