#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Arbitrary-precision Gauss-Laguerre quadrature.

Rules for the base weight x**alpha exp(-x) come from the Golub-Welsch
construction: the Jacobi matrix of the monic generalized Laguerre
polynomials (diagonal 2i + alpha + 1, off-diagonal sqrt(i (i + alpha)))
is diagonalised by implicit-shift QL, keeping only the first components
of the eigenvectors.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, TextIO, Tuple
import csv
import logging

import mpmath as mp

from laguerre_lab.defaults import DEFAULT_PRECISION_BITS, DEFAULT_QUAD_M, MIN_PRECISION_BITS, QL_MAX_ITERATIONS
from laguerre_lab.errors import EigenSolveError, NumericError, ParameterError
from laguerre_lab.weights import WeightParams, deformation_factor

_log = logging.getLogger(__name__)


__author__ = "laguerre-lab developers"
__version__ = "0.1.0"
__license__ = "MIT"
__status__ = "Development"
__package__ = "laguerre_lab"
__date__ = "2026-10-17"

__all__ = [
    "QuadratureRule",
    "build_rule",
    "integrate",
    "moment",
    "deformed_weights",
    "moment_refinement",
    "rule_for",
]


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Laguerre nodes and weights for x**alpha exp(-x) on [0, inf).

    Attributes:
        alpha (mpf): Generalized-Laguerre parameter.
        nodes (Tuple[mpf, ...]): Strictly increasing positive nodes.
        weights (Tuple[mpf, ...]): Positive weights, summing to Gamma(alpha+1).
        precision_bits (int): Precision the rule was built at.
    """

    alpha: mp.mpf
    nodes: Tuple[mp.mpf, ...]
    weights: Tuple[mp.mpf, ...]
    precision_bits: int

    @property
    def m(self) -> int:
        return len(self.nodes)

    def write_csv(self, stream: TextIO) -> None:
        """Write (node, weight) rows as decimal strings."""
        digits = int(self.precision_bits * 0.30103)
        writer = csv.writer(stream)
        writer.writerow(["node", "weight"])
        for x, w in zip(self.nodes, self.weights):
            writer.writerow([mp.nstr(x, digits), mp.nstr(w, digits)])


def _sign(a, b):
    return abs(a) if b >= 0 else -abs(a)


def _tridiagonal_ql(
    diag: List[mp.mpf], offdiag: List[mp.mpf], max_iterations: int
) -> Tuple[List[mp.mpf], List[mp.mpf]]:
    """Eigenvalues and first eigenvector components of a symmetric tridiagonal matrix.

    ``offdiag[i]`` couples rows i and i+1. Returns both lists sorted by
    ascending eigenvalue.
    """
    n = len(diag)
    d = list(diag)
    e = list(offdiag) + [mp.mpf(0)]
    z = [mp.mpf(1)] + [mp.mpf(0)] * (n - 1)
    eps = mp.eps

    for l in range(n):
        iterations = 0
        while True:
            m = l
            while m < n - 1:
                if abs(e[m]) <= eps * (abs(d[m]) + abs(d[m + 1])):
                    break
                m += 1
            if m == l:
                break
            if iterations >= max_iterations:
                raise EigenSolveError(
                    f"QL did not converge for eigenvalue {l} after {iterations} iterations",
                    iterations,
                )
            iterations += 1

            # implicit Wilkinson-type shift
            p = d[l]
            g = (d[l + 1] - p) / (2 * e[l])
            r = mp.hypot(g, 1)
            g = d[m] - p + e[l] / (g + _sign(r, g))
            s = c = mp.mpf(1)
            p = mp.mpf(0)
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                if abs(f) >= abs(g):
                    c = g / f
                    r = mp.hypot(c, 1)
                    e[i + 1] = f * r
                    s = 1 / r
                    c = c * s
                else:
                    s = f / g
                    r = mp.hypot(s, 1)
                    e[i + 1] = g * r
                    c = 1 / r
                    s = s * c
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                # first eigenvector components
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
            d[l] = d[l] - p
            e[l] = g
            e[m] = mp.mpf(0)
        _log.debug("eigenvalue %d converged after %d iterations", l, iterations)

    order = sorted(range(n), key=lambda i: d[i])
    return [d[i] for i in order], [z[i] for i in order]


@lru_cache(maxsize=32)
def _build_rule_cached(alpha: mp.mpf, m: int, precision_bits: int, max_iterations: int) -> QuadratureRule:
    with mp.workprec(precision_bits):
        diag = [2 * i + alpha + 1 for i in range(m)]
        offdiag = [mp.sqrt((i + 1) * (i + 1 + alpha)) for i in range(m - 1)]
        nodes, first = _tridiagonal_ql(diag, offdiag, max_iterations)
        mu0 = mp.gamma(alpha + 1)
        weights = [mu0 * v * v for v in first]

        for x0, x1 in zip(nodes, nodes[1:]):
            if not x0 < x1:
                raise NumericError("Gauss-Laguerre nodes are not strictly increasing")
        if nodes[0] <= 0:
            raise NumericError("Gauss-Laguerre node is not positive")

    _log.info("built Gauss-Laguerre rule alpha=%s m=%d at %d bits", mp.nstr(alpha, 8), m, precision_bits)
    return QuadratureRule(alpha, tuple(nodes), tuple(weights), precision_bits)


def build_rule(
    alpha,
    m: int = DEFAULT_QUAD_M,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    max_iterations: int = QL_MAX_ITERATIONS,
) -> QuadratureRule:
    """Build an m-node Gauss-Laguerre rule for x**alpha exp(-x).

    Rules are memoised per (alpha, m, precision_bits).

    Args:
        alpha (Real): Parameter, alpha > -1.
        m (int): Node count, m >= 2.
        precision_bits (int): Working precision.
        max_iterations (int): QL iteration cap per eigenvalue.

    Returns:
        QuadratureRule: The rule.

    Raises:
        ParameterError: When m < 2 or alpha <= -1.
        EigenSolveError: When the QL sweep does not converge.

    Example:
        >>> rule = build_rule(0, 2)
        >>> rule.nodes  # 2 - sqrt(2), 2 + sqrt(2)
    """
    if not isinstance(m, int) or m < 2:
        raise ParameterError(f"node count m must be an integer >= 2, got {m!r}")
    if precision_bits < MIN_PRECISION_BITS:
        raise ParameterError(f"precision_bits must be >= {MIN_PRECISION_BITS}")
    with mp.workprec(precision_bits):
        alpha = mp.mpf(alpha)
    if alpha <= -1:
        raise ParameterError(f"alpha must exceed -1, got {mp.nstr(alpha, 10)}")
    return _build_rule_cached(alpha, m, precision_bits, max_iterations)


def rule_for(params: WeightParams, m: int = DEFAULT_QUAD_M) -> QuadratureRule:
    """Rule matching the alpha and precision of ``params``."""
    return build_rule(params.alpha, m, params.precision_bits)


def integrate(rule: QuadratureRule, f: Callable[[mp.mpf], mp.mpf]) -> mp.mpf:
    """Sum of w_i f(x_i); the base weight is implicit in the rule.

    Raises:
        NumericError: When f is not finite at a node.
    """
    with mp.workprec(rule.precision_bits):
        terms = []
        for x, w in zip(rule.nodes, rule.weights):
            fx = mp.mpf(f(x))
            if mp.isnan(fx) or mp.isinf(fx):
                raise NumericError(f"integrand is not finite at node {mp.nstr(x, 15)}")
            terms.append(w * fx)
        return mp.fsum(terms)


def _check_alpha(params: WeightParams, rule: QuadratureRule) -> None:
    if params.alpha != rule.alpha:
        raise ParameterError(
            f"rule alpha {mp.nstr(rule.alpha, 10)} does not match weight alpha {mp.nstr(params.alpha, 10)}"
        )


def deformed_weights(params: WeightParams, rule: QuadratureRule) -> Tuple[mp.mpf, ...]:
    """Discrete measure w_i prod_k (x_i + t_k)**lambda_k on the rule nodes."""
    _check_alpha(params, rule)
    with mp.workprec(params.precision_bits):
        return tuple(w * deformation_factor(params, x) for x, w in zip(rule.nodes, rule.weights))


def moment(params: WeightParams, j: int, rule: QuadratureRule) -> mp.mpf:
    """mu_j = integral of x**j w(x; t) over [0, inf).

    Raises:
        ParameterError: When j < 0 or the rule alpha differs from params.alpha.
    """
    if j < 0:
        raise ParameterError(f"moment order must be non-negative, got {j}")
    _check_alpha(params, rule)
    with mp.workprec(params.precision_bits):
        return integrate(rule, lambda x: x**j * deformation_factor(params, x))


def moment_refinement(params: WeightParams, j: int, m: int = DEFAULT_QUAD_M) -> mp.mpf:
    """|mu_j(m) - mu_j(2m)|, the accuracy certificate of an m-node rule."""
    coarse = moment(params, j, rule_for(params, m))
    fine = moment(params, j, rule_for(params, 2 * m))
    with mp.workprec(params.precision_bits):
        return abs(coarse - fine)
