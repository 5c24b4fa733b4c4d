#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Exceptions raised by laguerre-lab.

Configuration problems derive from ``ParameterError`` or ``DomainError``,
numerical breakdown derives from ``NumericError``. The command line maps the
first group to exit code 2 and the second to exit code 3.
"""

from typing import Optional, Sequence

__author__ = "laguerre-lab developers"
__version__ = "0.1.0"
__license__ = "MIT"
__status__ = "Development"
__package__ = "laguerre_lab"
__date__ = "2026-10-17"

__all__ = [
    "LabError",
    "ParameterError",
    "DomainError",
    "NumericError",
    "EigenSolveError",
    "PrecisionExhaustedError",
    "IterationBreakdownError",
    "DegeneracyError",
    "SolverError",
]


class LabError(Exception):
    """Base class for all laguerre-lab errors."""


class ParameterError(LabError, ValueError):
    """Raised when parameters or options are invalid."""


class DomainError(LabError, ValueError):
    """Raised when an argument lies outside the mathematical domain."""


class NumericError(LabError, ArithmeticError):
    """Base class for numerical breakdown."""


class EigenSolveError(NumericError):
    """Raised when the tridiagonal eigen-solve does not converge."""

    def __init__(self, message: str, iterations: int):
        super().__init__(message)
        self.iterations = iterations


class PrecisionExhaustedError(NumericError):
    """Raised when the rule or precision budget is too small for degree n."""

    def __init__(self, message: str, n: int):
        super().__init__(message)
        self.n = n


class IterationBreakdownError(NumericError):
    """Raised when the difference system divides by a vanishing quantity."""

    def __init__(self, message: str, n: int, k: Optional[int] = None):
        super().__init__(message)
        self.n = n
        self.k = k


class DegeneracyError(NumericError):
    """Raised when an auxiliary denominator is below the degeneracy threshold."""


class SolverError(NumericError):
    """Raised when the endpoint solver fails to converge.

    Attributes:
        trace (Sequence[tuple]): (iteration, a, b, |F|) per Newton step.
    """

    def __init__(self, message: str, trace: Sequence[tuple] = ()):
        super().__init__(message)
        self.trace = tuple(trace)
