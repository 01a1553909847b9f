# pessimism.dataset
# Offline datasets, feature covariances and single-policy coverage.
#
# Created:  Thu Mar 05 11:38:10 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Offline datasets, feature covariances and single-policy coverage.

An :class:`OfflineDataset` is an ordered list of ``(h, x, a, r, x_next)``
tuples with 1-based steps. Tuples of the last step record the successor
:data:`~pessimism.mdp.TERMINAL`. Datasets are generated either from a fixed
design plan of ``(h, x, a, count)`` entries or from behavior policy
rollouts, and are read and written as CSV files with the columns
``h,x,a,r,x_next``.
"""

##########################################################################
## Imports
##########################################################################

import logging
import numpy as np
import pandas as pd

from dataclasses import dataclass
from scipy import linalg

from .config import TOLERANCES
from .mdp import TERMINAL, expected_features
from .policies import sample_action
from .utils.decorators import memoized
from .utils.random import check_stream
from .exceptions import (
    DimensionError, EmptyPlanError, InfiniteCoverageError, ParseError,
    PessimismValueError,
)


logger = logging.getLogger(__name__)

# Column names of the dataset CSV format
COLUMNS = ("h", "x", "a", "r", "x_next")


##########################################################################
## Offline Dataset
##########################################################################

class OfflineDataset(object):
    """
    An ordered collection of transitions, stored column-wise.

    Parameters
    ----------
    h, x, a, x_next : array-like of int
        1-based steps, states, actions and successor states.

    r : array-like of float
        Observed rewards.
    """

    def __init__(self, h, x, a, r, x_next):
        self.h = np.asarray(h, dtype=np.int64).reshape(-1)
        self.x = np.asarray(x, dtype=np.int64).reshape(-1)
        self.a = np.asarray(a, dtype=np.int64).reshape(-1)
        self.r = np.asarray(r, dtype=float).reshape(-1)
        self.x_next = np.asarray(x_next, dtype=np.int64).reshape(-1)

        lengths = {len(self.h), len(self.x), len(self.a), len(self.r), len(self.x_next)}
        if len(lengths) != 1:
            raise DimensionError("dataset columns must have the same length")

        for column in (self.h, self.x, self.a, self.r, self.x_next):
            column.setflags(write=False)

    @classmethod
    def from_tuples(klass, tuples):
        """
        Builds a dataset from ``(h, x, a, r, x_next)`` tuples.
        """
        tuples = list(tuples)
        if not tuples:
            return klass.empty()
        h, x, a, r, x_next = zip(*tuples)
        return klass(h, x, a, r, x_next)

    @classmethod
    def empty(klass):
        return klass([], [], [], [], [])

    @classmethod
    def concat(klass, datasets):
        datasets = list(datasets)
        if not datasets:
            return klass.empty()
        return klass(*(
            np.concatenate([getattr(d, col) for d in datasets]) for col in COLUMNS
        ))

    @property
    def n(self):
        return len(self.h)

    def __len__(self):
        return self.n

    def __iter__(self):
        for row in zip(self.h, self.x, self.a, self.r, self.x_next):
            yield (int(row[0]), int(row[1]), int(row[2]), float(row[3]), int(row[4]))

    def step_indices(self, h):
        """
        The index set of the tuples at step ``h``.
        """
        return np.flatnonzero(self.h == h)

    def subset(self, indices):
        indices = np.asarray(indices, dtype=np.int64)
        return OfflineDataset(*(getattr(self, col)[indices] for col in COLUMNS))

    def duplicate(self, times=2):
        """
        Returns the dataset with every tuple repeated ``times`` times, in
        order.
        """
        return OfflineDataset.concat([self] * times)

    def check(self, mdp):
        """
        Raises if a tuple refers to a step, state or action outside the MDP.
        """
        if self.n == 0:
            return self
        if self.h.min() < 1 or self.h.max() > mdp.horizon:
            raise DimensionError("dataset steps outside 1..{}".format(mdp.horizon))
        if self.x.min() < 0 or self.x.max() >= mdp.n_states:
            raise DimensionError("dataset states outside 0..{}".format(mdp.n_states - 1))
        if self.a.min() < 0 or self.a.max() >= mdp.n_actions:
            raise DimensionError("dataset actions outside 0..{}".format(mdp.n_actions - 1))
        if self.x_next.min() < TERMINAL or self.x_next.max() >= mdp.n_states:
            raise DimensionError("dataset successors outside the MDP")
        return self

    def features(self, mdp):
        """
        The feature ``phi_{h_i}(x_i, a_i)`` of every tuple as an n x d array.
        """
        return mdp.features[self.h - 1, self.x, self.a]

    ##////////////////////////////////////////////////////////////////////
    ## CSV
    ##////////////////////////////////////////////////////////////////////

    def to_frame(self):
        return pd.DataFrame({col: getattr(self, col) for col in COLUMNS}, columns=list(COLUMNS))

    @classmethod
    def from_frame(klass, frame, path=None):
        missing = [col for col in COLUMNS if col not in frame.columns]
        if missing:
            raise ParseError("dataset is missing columns {}".format(missing), path=path)
        try:
            return klass(*(frame[col].to_numpy() for col in COLUMNS))
        except (TypeError, ValueError) as e:
            raise ParseError("malformed dataset: {}".format(e), path=path)

    def to_csv(self, path):
        self.to_frame().to_csv(path, index=False, float_format="%.17g")

    @classmethod
    def read_csv(klass, path):
        try:
            frame = pd.read_csv(path, dtype={"h": np.int64, "x": np.int64, "a": np.int64,
                                             "r": float, "x_next": np.int64})
        except (ValueError, pd.errors.ParserError) as e:
            raise ParseError("cannot read dataset: {}".format(e), path=path)
        return klass.from_frame(frame, path=path)

    def __repr__(self):
        return "OfflineDataset(n={})".format(self.n)


##########################################################################
## Generation
##########################################################################

def _successors(mdp, h, x, a, count, generator):
    if h == mdp.horizon:
        return np.full(count, TERMINAL, dtype=np.int64)
    return generator.choice(mdp.n_states, size=count, p=mdp.transitions[h - 1, x, a])


def generate_dataset(mdp, plan=None, behavior=None, episodes=None, stream=None):
    """
    Generates an offline dataset with exact linear rewards and successors
    drawn independently given each ``(h, x, a)``.

    Parameters
    ----------
    mdp : FeatureMDP

    plan : list of (h, x, a, count), default: None
        A fixed design; entry ``i`` draws its successors from the
        sub-stream ``stream.child(0, i)``.

    behavior : Policy, default: None
        A behavior policy rolled out from the initial state for ``episodes``
        episodes, each contributing H tuples. Episode ``e`` uses the
        sub-stream ``stream.child(1, e)``.

    episodes : int, default: None
        The number of behavior rollouts.

    stream : RandomStream or int, default: None

    Returns
    -------
    dataset : OfflineDataset
    """
    stream = check_stream(stream)

    if plan is None and behavior is None:
        raise PessimismValueError("generate_dataset needs a plan or a behavior policy")

    parts = []
    if plan is not None:
        plan = list(plan)
        if not plan:
            raise EmptyPlanError("cannot generate a dataset from an empty plan")

        for idx, (h, x, a, count) in enumerate(plan):
            mdp.step_index(h)
            if not (0 <= x < mdp.n_states and 0 <= a < mdp.n_actions) or count < 0:
                raise PessimismValueError(
                    "plan entry {} refers to an invalid (h, x, a, count)".format((h, x, a, count))
                )
            if count == 0:
                continue

            generator = stream.child(0, idx).generator()
            parts.append(OfflineDataset(
                np.full(count, h), np.full(count, x), np.full(count, a),
                np.full(count, mdp.rewards[h - 1, x, a]),
                _successors(mdp, h, x, a, count, generator),
            ))

    if behavior is not None:
        if episodes is None or episodes < 1:
            raise EmptyPlanError("behavior rollouts need at least one episode")

        behavior.check(mdp)
        tuples = []
        for episode in range(episodes):
            episode_stream = stream.child(1, episode)
            generator = episode_stream.generator()
            x = mdp.initial_state
            for h in range(1, mdp.horizon + 1):
                a = sample_action(mdp, behavior, h, x, episode_stream.child(h))
                x_next = int(_successors(mdp, h, x, a, 1, generator)[0])
                tuples.append((h, x, a, mdp.rewards[h - 1, x, a], x_next))
                x = x_next
        parts.append(OfflineDataset.from_tuples(tuples))

    dataset = OfflineDataset.concat(parts)
    logger.debug("generated %d tuples", dataset.n)
    return dataset


##########################################################################
## Covariance and Coverage
##########################################################################

@dataclass
class CovarianceSummary:
    """
    ``Sigma_h = lam I + sum_{i in I_h} phi_i phi_i'`` for one step.
    """

    h: int
    matrix: np.ndarray
    lam: float
    indices: np.ndarray

    @memoized
    def inverse(self):
        """
        The inverse, or the pseudo-inverse when ``lam = 0``.
        """
        if self.lam > 0:
            return linalg.inv(self.matrix)
        return linalg.pinvh(self.matrix)

    def in_span(self, vector):
        """
        Whether ``vector`` lies in the range of the matrix, relative to the
        span tolerance.
        """
        vector = np.asarray(vector, dtype=float)
        residual = vector - self.matrix.dot(self.inverse.dot(vector))
        return np.linalg.norm(residual) <= TOLERANCES.span * max(1.0, np.linalg.norm(vector))


def covariance(dataset, h, lam, mdp):
    """
    The regularized feature covariance of step ``h``.
    """
    if lam < 0:
        raise PessimismValueError("lambda must be nonnegative not {}".format(lam))

    mdp.step_index(h)
    indices = dataset.step_indices(h)
    phi = mdp.features[h - 1, dataset.x[indices], dataset.a[indices]]
    matrix = lam * np.eye(mdp.dim) + phi.T.dot(phi)
    return CovarianceSummary(h=h, matrix=matrix, lam=float(lam), indices=indices)


def coverage_terms(dataset, policy, mdp, lam=0.0, mc_draws=None, stream=None):
    """
    The per-step terms ``||E^pi[phi_h]||_{n Sigma_h^-1}`` of the coverage
    parameter, using exact occupancy propagation for the mean features.
    At ``lam = 0`` a mean feature outside the span of the data features
    raises :class:`~pessimism.exceptions.InfiniteCoverageError`.
    """
    means = expected_features(mdp, policy, mc_draws, stream)
    terms = []
    for h in range(1, mdp.horizon + 1):
        mean = means[h - 1]
        if not mean.any():
            terms.append(0.0)
            continue

        cov = covariance(dataset, h, lam, mdp)
        if lam == 0 and not cov.in_span(mean):
            raise InfiniteCoverageError(
                "mean feature of step {} leaves the span of the data".format(h), step=h
            )

        quad = dataset.n * mean.dot(cov.inverse).dot(mean)
        terms.append(float(np.sqrt(max(quad, 0.0))))
    return terms


def coverage_parameter(dataset, policy, mdp, lam=0.0, mc_draws=None, stream=None):
    """
    The single-policy coverage ``sum_h ||E^pi[phi_h]||_{n Sigma_h^-1}``.
    """
    return float(sum(coverage_terms(dataset, policy, mdp, lam, mc_draws, stream)))
