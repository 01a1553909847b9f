# pessimism.exceptions
# Exceptions and warnings hierarchy for the pessimism library.
#
# Created:  Mon Mar 02 09:20:11 2026 -0500
#
# Copyright (C) 2026 The Pessimism Developers
# For license information, see LICENSE.txt

"""
Exceptions and warnings hierarchy for the pessimism library.
"""

##########################################################################
## Exceptions Hierarchy
##########################################################################


class PessimismError(Exception):
    """
    The root exception for all pessimism related errors.
    """
    pass


class PessimismTypeError(PessimismError, TypeError):
    """
    There was an unexpected type or none for a property or input.
    """
    pass


class PessimismValueError(PessimismError, ValueError):
    """
    A bad value was passed into a function.
    """
    pass


class PessimismKeyError(PessimismError, KeyError):
    """
    An invalid key was used to look up a named component (check, command,
    instance or algorithm).
    """
    pass


class DimensionError(PessimismValueError):
    """
    Vectors or tables do not agree with the dimensions of the MDP they are
    used with. The offending step (1-based) is stored on the exception when
    it is known.
    """

    def __init__(self, message, step=None):
        super(DimensionError, self).__init__(message)
        self.step = step


class PreconditionError(PessimismValueError):
    """
    An operation was called with arguments that violate its documented
    preconditions (e.g. an odd number of lower bound levels).
    """
    pass


class UnsupportedModeError(PessimismValueError):
    """
    The requested computation mode is not available for the given input,
    e.g. closed form action probabilities with more than one feature.
    """
    pass


class UnsupportedPolicyError(PessimismTypeError):
    """
    The operation requires a different kind of policy, e.g. feature
    estimation is only defined for perturbed linear policies.
    """
    pass


class EmptyPlanError(PessimismValueError):
    """
    A dataset was requested from an empty plan.
    """
    pass


class InfeasibleProgramError(PessimismError):
    """
    The critic program could not be solved to within tolerance. The best
    constraint violation that was reached is stored as ``best_residual``.
    """

    def __init__(self, message, best_residual=None, step=None):
        super(InfeasibleProgramError, self).__init__(message)
        self.best_residual = best_residual
        self.step = step


class SolverConvergenceError(InfeasibleProgramError):
    """
    The critic solver reached a feasible point but never reported
    convergence, so its objective is not known to be minimal. The last
    feasible iterate is kept as ``solution``.
    """

    def __init__(self, message, solution=None, best_residual=0.0, step=None):
        super(SolverConvergenceError, self).__init__(message, best_residual=best_residual, step=step)
        self.solution = solution


class InfiniteCoverageError(PessimismError):
    """
    The mean feature of a policy leaves the span of the data features, so
    the policy is not covered by the dataset.
    """

    def __init__(self, message, step=None):
        super(InfiniteCoverageError, self).__init__(message)
        self.step = step


class ParseError(PessimismValueError):
    """
    A text container, dataset or configuration could not be parsed. The
    source path and the 1-based line number are kept when available.
    """

    def __init__(self, message, path=None, lineno=None):
        location = []
        if path is not None:
            location.append(str(path))
        if lineno is not None:
            location.append("line {}".format(lineno))
        if location:
            message = "{}: {}".format(", ".join(location), message)

        super(ParseError, self).__init__(message)
        self.path = path
        self.lineno = lineno


##########################################################################
## Warnings Hierarchy
##########################################################################


class PessimismWarning(UserWarning):
    """
    Warning class used to notify users of pessimism-specific issues.
    """
    pass


class DataWarning(PessimismWarning):
    """
    The supplied data has an issue that may produce unexpected results.
    """
    pass


class RegimeWarning(PessimismWarning):
    """
    An experiment was requested outside of the parameter regime in which
    its guarantee applies; it proceeds anyway.
    """
    pass


class CaseSelectionWarning(PessimismWarning):
    """
    Sampling noise made the adversarial case predicates inconclusive and
    the case with the larger margin was selected.
    """
    pass


class BoundWarning(PessimismWarning):
    """
    A measured quantity exceeded its predicted bound, for example on a user
    instance where the bound constant is not known to hold.
    """
    pass
