# pessimism.bestfit
# Uses Scikit-Learn to fit Bellman backups against step features.
#
# Created:  Tue Mar 03 14:20:51 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Uses Scikit-Learn to fit Bellman backups against step features.

Every linearity check in the library (inherent Bellman error, backup fits
under perturbed linear policies, Q-linearity) reduces to the same question:
how well can a table of targets over (state, action) pairs be written as
``<phi(x, a), w>``? The answer is an ordinary least squares fit without
intercept, solved for many targets at once.
"""

##########################################################################
## Imports
##########################################################################

import numpy as np

from sklearn import linear_model
from pessimism.exceptions import PessimismValueError


##########################################################################
## Module Constants
##########################################################################

# Names of the fitting functions
LINEAR   = 'linear'
CONSTANT = 'constant'


##########################################################################
## Fit Backups
##########################################################################

def fit_backup(features, targets, estimator=LINEAR):
    """
    Fits one or more target columns against a feature matrix and returns
    the coefficients along with the fitted values.

    The estimator function can be one of the following:

    - ``'linear'``:   OLS without intercept, minimum norm when the features
                      are rank deficient
    - ``'constant'``: the best constant (the column mean), used to report
                      how far a backup is from any function of identical
                      features

    Parameters
    ----------
    features : ndarray of shape m x d
        One row per (state, action) pair.

    targets : ndarray of shape m or m x k
        One column per backup to fit.

    estimator : string, default: 'linear'
        The name of the fitting function.

    Returns
    -------
    coef : ndarray of shape d x k
        The fitted coefficient of each target column (for the constant
        estimator, the constant in a 1 x k array).

    predictions : ndarray of shape m x k
        The fitted values.
    """
    estimators = {
        LINEAR: fit_linear,
        CONSTANT: fit_constant,
    }

    if estimator not in estimators:
        raise PessimismValueError(
            "'{}' not a valid type of estimator; choose from {}".format(
                estimator, ", ".join(estimators.keys())
            )
        )

    features = np.asarray(features, dtype=float)
    targets = np.asarray(targets, dtype=float)
    if targets.ndim == 1:
        targets = targets[:, np.newaxis]

    if features.ndim != 2:
        raise PessimismValueError(
            "features must be an m x d array not {}".format(features.shape)
        )

    if len(features) != len(targets):
        raise PessimismValueError((
            "features and targets must have same length:"
            " features len {} doesn't match targets len {}!"
        ).format(len(features), len(targets)))

    # Nothing to fit: every coefficient reproduces the empty table.
    if len(features) == 0:
        width = 1 if estimator == CONSTANT else features.shape[1]
        return np.zeros((width, targets.shape[1])), np.zeros(targets.shape)

    return estimators[estimator](features, targets)


def fit_linear(features, targets):
    """
    Uses OLS without intercept; scipy's lstsq returns the minimum norm
    solution on rank deficient features.
    """
    model = linear_model.LinearRegression(fit_intercept=False)
    model.fit(features, targets)
    coef = np.atleast_2d(model.coef_).T
    return coef, features.dot(coef)


def fit_constant(features, targets):
    """
    Uses the mean of each target column.
    """
    coef = targets.mean(axis=0)[np.newaxis, :]
    return coef, np.repeat(coef, len(targets), axis=0)


##########################################################################
## Residuals
##########################################################################

def clip_predictions(predictions, limit):
    """
    Rescales each column of predictions so that its largest absolute value
    is at most ``limit``; the linear function it represents is rescaled by
    the same factor. Returns the rescaled predictions and the factors.
    """
    predictions = np.asarray(predictions, dtype=float)
    peak = np.abs(predictions).max(axis=0) if len(predictions) else np.zeros(predictions.shape[1])
    scale = np.ones_like(peak)
    over = peak > limit
    scale[over] = limit / peak[over]
    return predictions * scale, scale


def max_residual(predictions, targets):
    """
    The largest absolute residual over all entries, 0 for empty tables.
    """
    residuals = np.abs(np.asarray(predictions) - np.asarray(targets))
    return float(residuals.max()) if residuals.size else 0.0
