# pessimism.critic
# The empirical Bellman operator and the pessimistic critic program.
#
# Created:  Fri Mar 06 10:22:31 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
The empirical Bellman operator and the pessimistic critic program.

Given a dataset and a perturbed linear policy ``pi``, the critic returns the
most pessimistic linear value estimate that is statistically consistent
with the data::

    minimize    <w_1, phi_1(x_1, pi_1(x_1))>
    subject to  ||w_h - T_h(w_{h+1})||_{Sigma_h} <= alpha    for every h
                ||w_h||_2 <= beta                            for every h

where ``T_h`` is the empirical Bellman operator of step ``h``. The operator
is affine, ``T_h(w) = b_h + A_h w``, with::

    b_h = Sigma_h^-1 sum_{i in I_h} phi_i r_i
    A_h = Sigma_h^-1 sum_{i in I_h} phi_i phi_hat_i'

and ``phi_hat_i`` the estimated next-step feature of tuple ``i`` under
``pi``. The slack ``xi_h = w_h - T_h(w_{h+1})`` is eliminated and the
remaining convex program in ``w`` is solved by sequential least squares
programming with analytic gradients. Every solution is certified by
recomputing its constraints independently of the solver.
"""

##########################################################################
## Imports
##########################################################################

import logging
import numpy as np
import pandas as pd

from dataclasses import dataclass, field
from scipy import linalg
from scipy.optimize import minimize

from .config import TOLERANCES, DEFAULTS
from .mdp import TERMINAL, induced_mdp, exact_policy_value, expected_features, policy_tables
from .dataset import covariance
from .policies import est_feature
from .utils.helpers import ellipsoid_norm
from .utils.random import check_stream
from .utils.types import is_perturbed_linear
from .exceptions import (
    DimensionError, InfeasibleProgramError, PessimismValueError, SolverConvergenceError,
    UnsupportedPolicyError,
)


logger = logging.getLogger(__name__)

# Status of a feasible solve that ran out of iterations
ITERATION_LIMIT = "iteration-limit"


##########################################################################
## Empirical Bellman Operator
##########################################################################

class EmpiricalBellman(object):
    """
    The affine empirical Bellman operator ``T_h(w) = b_h + A_h w`` of one
    step, fit by ridge regression on the tuples of that step.

    Parameters
    ----------
    dataset : OfflineDataset

    h : int
        The 1-based step.

    phi_hat : ndarray of shape n x d
        Estimated next-step features per tuple; rows of other steps are
        ignored.

    lam : float
        The ridge regularizer, ``lam > 0``.

    mdp : FeatureMDP
    """

    def __init__(self, dataset, h, phi_hat, lam, mdp):
        if lam <= 0:
            raise PessimismValueError("the empirical Bellman operator needs lambda > 0")

        self.h = h
        self.covariance = covariance(dataset, h, lam, mdp)
        idx = self.covariance.indices

        phi = mdp.features[h - 1, dataset.x[idx], dataset.a[idx]]
        phi_hat = np.asarray(phi_hat, dtype=float)
        if phi_hat.shape != (dataset.n, mdp.dim):
            raise DimensionError(
                "phi_hat must have shape {} not {}".format((dataset.n, mdp.dim), phi_hat.shape),
                step=h,
            )

        solve = lambda rhs: linalg.solve(self.covariance.matrix, rhs, assume_a="pos")
        self.b = solve(phi.T.dot(dataset.r[idx]))
        self.A = solve(phi.T.dot(phi_hat[idx]))

    @property
    def sigma(self):
        return self.covariance.matrix

    def apply(self, w_next):
        return self.b + self.A.dot(w_next)

    __call__ = apply


def empirical_bellman(dataset, h, w_next, phi_hat, lam, mdp):
    """
    Returns ``Sigma_h^-1 sum_{i in I_h} phi_i (r_i + <phi_hat_i, w_next>)``.
    """
    return EmpiricalBellman(dataset, h, phi_hat, lam, mdp).apply(np.asarray(w_next, dtype=float))


def estimate_next_features(mdp, dataset, policy, eps_apx, delta, stream=None, share=True):
    """
    Estimates ``phi_{h+1}(x', pi_{h+1}(x'))`` for every tuple with a
    successor inside the horizon; other rows are zero.

    With ``share`` every distinct (step, successor) pair is estimated once
    and reused by all of its tuples, otherwise each tuple gets its own
    estimate. ``delta`` is the failure probability of each estimate.
    """
    stream = check_stream(stream)
    phi_hat = np.zeros((dataset.n, mdp.dim))

    live = np.flatnonzero((dataset.h < mdp.horizon) & (dataset.x_next != TERMINAL))
    if share:
        cache = {}
        for i in live:
            key = (int(dataset.h[i]) + 1, int(dataset.x_next[i]))
            if key not in cache:
                cache[key] = est_feature(
                    mdp, key[1], policy, key[0], eps_apx, delta, stream.child(*key)
                ).phi_hat
            phi_hat[i] = cache[key]
    else:
        for i in live:
            h, x = int(dataset.h[i]) + 1, int(dataset.x_next[i])
            phi_hat[i] = est_feature(mdp, x, policy, h, eps_apx, delta, stream.child(h, x, i)).phi_hat

    return phi_hat


##########################################################################
## Critic Program
##########################################################################

@dataclass
class CriticProblem:
    """
    The data of one critic program. Use :meth:`build` to draw the feature
    estimates and fit the empirical Bellman operators.
    """

    mdp: object
    dataset: object
    policy: object
    eps_apx: float
    alpha: float
    beta: float
    delta: float
    lam: float
    phi_hat: np.ndarray
    objective_feature: np.ndarray
    operators: list

    def __post_init__(self):
        if self.alpha < 0 or self.beta <= 0:
            raise PessimismValueError(
                "critic needs alpha >= 0 and beta > 0, not alpha={} beta={}".format(self.alpha, self.beta)
            )

    @classmethod
    def build(klass, mdp, dataset, policy, eps_apx, alpha, beta, delta,
              lam=DEFAULTS.ridge, stream=None, share_estimates=True):
        """
        Draws the next-step feature estimates and the objective feature
        ``phi_1(x_1, pi_1(x_1))`` with :func:`~pessimism.policies.est_feature`
        and fits the operators. The failure probability ``delta`` is split
        evenly over all estimates.
        """
        if not is_perturbed_linear(policy):
            raise UnsupportedPolicyError("the critic needs a perturbed linear policy")

        policy.check(mdp)
        dataset.check(mdp)
        stream = check_stream(stream)

        live = (dataset.h < mdp.horizon) & (dataset.x_next != TERMINAL)
        if share_estimates:
            estimates = len(set(zip(dataset.h[live], dataset.x_next[live])))
        else:
            estimates = int(live.sum())
        delta_each = delta / (estimates + 1)

        phi_hat = estimate_next_features(
            mdp, dataset, policy, eps_apx, delta_each, stream.child(1), share=share_estimates
        )
        objective = est_feature(
            mdp, mdp.initial_state, policy, 1, eps_apx, delta_each, stream.child(0)
        ).phi_hat

        operators = [
            EmpiricalBellman(dataset, h, phi_hat, lam, mdp) for h in range(1, mdp.horizon + 1)
        ]

        return klass(
            mdp=mdp, dataset=dataset, policy=policy, eps_apx=eps_apx, alpha=alpha,
            beta=beta, delta=delta, lam=lam, phi_hat=phi_hat,
            objective_feature=objective, operators=operators,
        )

    @property
    def horizon(self):
        return len(self.operators)

    @property
    def dim(self):
        return len(self.objective_feature)

    def slacks(self, weights):
        """
        ``xi_h = w_h - T_h(w_{h+1})`` for every step, with ``w_{H+1} = 0``.
        """
        weights = np.asarray(weights, dtype=float)
        xi = np.zeros_like(weights)
        for idx, op in enumerate(self.operators):
            w_next = weights[idx + 1] if idx + 1 < self.horizon else np.zeros(self.dim)
            xi[idx] = weights[idx] - op.apply(w_next)
        return xi

    def ridge_chain(self):
        """
        The weights with zero slack, ``w_h = T_h(w_{h+1})``, each clipped to
        the ball of radius ``beta`` before the next step uses it.
        """
        weights = np.zeros((self.horizon, self.dim))
        w_next = np.zeros(self.dim)
        for idx in reversed(range(self.horizon)):
            w = self.operators[idx].apply(w_next)
            scale = np.linalg.norm(w)
            if scale > self.beta:
                w = w * (self.beta / scale)
            weights[idx] = w
            w_next = w
        return weights


@dataclass
class CriticSolution:
    """
    Per-step weights and slacks of a critic solution together with the
    residuals of its constraints (positive means violated).
    """

    w: np.ndarray
    xi: np.ndarray
    objective: float
    constraint_residuals: dict
    status: str = "optimal"
    iterations: int = 0
    trace: list = field(default_factory=list)

    @property
    def max_violation(self):
        return max(0.0, *(float(np.max(v)) for v in self.constraint_residuals.values()))

    def trace_frame(self):
        return pd.DataFrame(self.trace, columns=["iteration", "objective", "max_residual"])


def _residuals(problem, weights, xi):
    ellipsoid = np.array([
        ellipsoid_norm(xi[idx], op.sigma) - problem.alpha
        for idx, op in enumerate(problem.operators)
    ])
    ball = np.linalg.norm(weights, axis=1) - problem.beta
    return {"ellipsoid": ellipsoid, "ball": ball}


def _solution(problem, weights, status, iterations=0, trace=None):
    xi = problem.slacks(weights)
    return CriticSolution(
        w=weights, xi=xi, objective=float(weights[0].dot(problem.objective_feature)),
        constraint_residuals=_residuals(problem, weights, xi), status=status,
        iterations=iterations, trace=trace or [],
    )


##########################################################################
## Solver
##########################################################################

class _Program(object):
    """
    Objective and scaled constraints of the eliminated program over the
    stacked weights ``x = (w_1, ..., w_H)``.
    """

    def __init__(self, problem):
        self.problem = problem
        self.H, self.d = problem.horizon, problem.dim

    def unpack(self, x):
        return x.reshape(self.H, self.d)

    def objective(self, x):
        return float(x[:self.d].dot(self.problem.objective_feature))

    def objective_jac(self, x):
        jac = np.zeros_like(x)
        jac[:self.d] = self.problem.objective_feature
        return jac

    def constraints(self, x):
        # 1 - ||xi_h||^2_Sigma / alpha^2 >= 0 and 1 - ||w_h||^2 / beta^2 >= 0
        W = self.unpack(x)
        xi = self.problem.slacks(W)
        alpha2, beta2 = self.problem.alpha ** 2, self.problem.beta ** 2
        ell = [1.0 - xi[h].dot(op.sigma).dot(xi[h]) / alpha2 for h, op in enumerate(self.problem.operators)]
        ball = [1.0 - W[h].dot(W[h]) / beta2 for h in range(self.H)]
        return np.array(ell + ball)

    def constraints_jac(self, x):
        W = self.unpack(x)
        xi = self.problem.slacks(W)
        alpha2, beta2 = self.problem.alpha ** 2, self.problem.beta ** 2

        jac = np.zeros((2 * self.H, self.H * self.d))
        for h, op in enumerate(self.problem.operators):
            grad = 2.0 * op.sigma.dot(xi[h])
            jac[h, h * self.d:(h + 1) * self.d] = -grad / alpha2
            if h + 1 < self.H:
                jac[h, (h + 1) * self.d:(h + 2) * self.d] = op.A.T.dot(grad) / alpha2
            jac[self.H + h, h * self.d:(h + 1) * self.d] = -2.0 * W[h] / beta2
        return jac

    def max_residual(self, x):
        return max(0.0, float(-self.constraints(x).min()))


def _solve_equalities(problem):
    # With alpha = 0 the slacks vanish and the weights are the exact chain.
    weights = np.zeros((problem.horizon, problem.dim))
    w_next = np.zeros(problem.dim)
    for idx in reversed(range(problem.horizon)):
        weights[idx] = problem.operators[idx].apply(w_next)
        w_next = weights[idx]
    return weights


def solve_critic(problem, stream=None, tol=None, max_iter=None, progress=None,
                 restarts=None, trace_path=None):
    """
    Solves the critic program.

    Parameters
    ----------
    problem : CriticProblem

    stream : RandomStream or int, default: None
        Randomizes the starting points of restarts.

    tol : float, default: 1e-6
        Largest accepted constraint violation.

    max_iter : int, default: 20000
        Iteration budget of each solve.

    progress : float, default: 1e-10
        The solver stops once the objective improves by less than this.

    restarts : int, default: 3
        Additional solves from perturbed starting points before the program
        is reported infeasible.

    trace_path : str, default: None
        If given, the solver trace is written there as CSV with the columns
        ``iteration, objective, max_residual``.

    Returns
    -------
    solution : CriticSolution
        Only converged solves are returned, with status ``'optimal'`` or
        ``'closed-form'``.

    Raises
    ------
    SolverConvergenceError
        If every attempt stopped early at a feasible point; the last such
        point is attached with status ``'iteration-limit'``.

    InfeasibleProgramError
        If no attempt reached a feasible point.
    """
    tol = TOLERANCES.solver if tol is None else tol
    max_iter = DEFAULTS.max_iter if max_iter is None else max_iter
    progress = TOLERANCES.solver_progress if progress is None else progress
    restarts = DEFAULTS.restarts if restarts is None else restarts

    if problem.alpha == 0:
        solution = _solution(problem, _solve_equalities(problem), "closed-form")
        if solution.max_violation > tol:
            raise InfeasibleProgramError(
                "the zero-slack chain leaves the ball of radius {}".format(problem.beta),
                best_residual=solution.max_violation,
            )
        return solution

    program = _Program(problem)
    generator = check_stream(stream).generator()
    start = problem.ridge_chain().ravel()

    best, best_violation, trace, total = None, np.inf, [], 0
    unconverged = None
    for attempt in range(restarts + 1):
        if attempt == 0:
            x0 = start
        elif unconverged is not None:
            # Resume from the last feasible iterate.
            x0 = unconverged.w.ravel().copy()
            logger.warning(
                "critic restart %d after stopping unconverged at objective %.6g",
                attempt, unconverged.objective,
            )
        else:
            # Pull the last iterate toward the zero-slack chain and jitter it.
            jitter = generator.standard_normal(start.shape) * problem.beta * 1e-3
            x0 = 0.5 * (best + start) + jitter
            logger.warning(
                "critic restart %d after violation %.3e", attempt, best_violation
            )

        def record(xk):
            trace.append((len(trace) + 1, program.objective(xk), program.max_residual(xk)))

        result = minimize(
            program.objective, x0, jac=program.objective_jac, method="SLSQP",
            constraints=[{"type": "ineq", "fun": program.constraints, "jac": program.constraints_jac}],
            options={"maxiter": max_iter, "ftol": progress}, callback=record,
        )
        total += int(result.nit)

        candidate = _solution(problem, program.unpack(result.x).copy(), "optimal")
        logger.debug(
            "critic attempt %d: %s after %d iterations, objective %.6g, violation %.3e",
            attempt, result.message, result.nit, candidate.objective, candidate.max_violation,
        )

        if candidate.max_violation < best_violation:
            best, best_violation = result.x.copy(), candidate.max_violation

        if candidate.max_violation > tol:
            continue

        candidate.iterations = total
        candidate.trace = trace
        if not result.success:
            # Feasible but stopped early: the objective is not known to be minimal
            candidate.status = ITERATION_LIMIT if result.status == 9 else "unconverged"
            unconverged = candidate
            continue

        if trace_path is not None:
            candidate.trace_frame().to_csv(trace_path, index=False, float_format="%.17g")
        return candidate

    if unconverged is not None:
        raise SolverConvergenceError(
            "critic solver stopped without convergence ({}) after {} attempts".format(
                unconverged.status, restarts + 1
            ),
            solution=unconverged,
        )

    raise InfeasibleProgramError(
        "critic program infeasible within tolerance {} after {} attempts".format(tol, restarts + 1),
        best_residual=best_violation,
    )


##########################################################################
## Certification
##########################################################################

@dataclass
class CertificateReport:
    """
    Independently recomputed constraint values of a critic solution. Each
    row holds the constraint name, step, value, limit and slack
    (``limit - value``; negative slack is a violation).
    """

    rows: list
    tol: float

    @property
    def max_violation(self):
        return max([0.0] + [-row["slack"] for row in self.rows])

    @property
    def ok(self):
        return self.max_violation <= self.tol

    def violations(self):
        return [row for row in self.rows if -row["slack"] > self.tol]

    def to_frame(self):
        return pd.DataFrame(self.rows, columns=["constraint", "step", "value", "limit", "slack"])


def certify_solution(solution, problem, tol=None):
    """
    Recomputes every constraint of the critic program for a solution:
    the slack definition, the ellipsoid constraints and the ball
    constraints of each step.
    """
    tol = TOLERANCES.solver if tol is None else tol
    weights = np.asarray(solution.w, dtype=float)
    xi = np.asarray(solution.xi, dtype=float)
    slacks = problem.slacks(weights)

    rows = []
    for idx, op in enumerate(problem.operators):
        h = idx + 1
        gap = float(np.abs(slacks[idx] - xi[idx]).max())
        rows.append(dict(constraint="slack-definition", step=h, value=gap, limit=0.0, slack=-gap))

        value = ellipsoid_norm(xi[idx], op.sigma)
        rows.append(dict(constraint="ellipsoid", step=h, value=value,
                         limit=problem.alpha, slack=problem.alpha - value))

        value = float(np.linalg.norm(weights[idx]))
        rows.append(dict(constraint="ball", step=h, value=value,
                         limit=problem.beta, slack=problem.beta - value))

    return CertificateReport(rows=rows, tol=tol)


##########################################################################
## Value Deviation
##########################################################################

def policy_deviation_bound(problem, solution, comparator, zeta=0.0, mc_draws=None, stream=None):
    """
    Compares, for a comparator policy, the value of the comparator in the
    induced MDP of the critic solution with its true value. Returns the
    deviation ``|V^{f, pi'} - V^{pi'}|`` and its bound
    ``3 beta H zeta + 2 alpha sum_h ||E^{pi'}[phi_h]||_{Sigma_h^-1}``.
    """
    stream = check_stream(stream)
    mdp = problem.mdp

    probs = policy_tables(mdp, problem.policy, mc_draws, stream.child(0))
    imagined = induced_mdp(mdp, solution.w, probs)

    # The same stream for both values so Monte-Carlo tables coincide.
    deviation = abs(
        exact_policy_value(imagined, comparator, mc_draws, stream.child(1)).value
        - exact_policy_value(mdp, comparator, mc_draws, stream.child(1)).value
    )

    means = expected_features(mdp, comparator, mc_draws, stream.child(1))
    spread = sum(
        ellipsoid_norm(means[idx], op.covariance.inverse) for idx, op in enumerate(problem.operators)
    )
    bound = 3.0 * problem.beta * problem.horizon * zeta + 2.0 * problem.alpha * spread
    return float(deviation), float(bound)
