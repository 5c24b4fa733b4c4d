#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Monic orthogonal polynomials of the deformed Laguerre weight.

The table is built by the discretised Stieltjes procedure on the nodes of a
Gauss-Laguerre rule carrying the deformation factor:

    h_n = <P_n, P_n>,  alpha_n = <x P_n, P_n> / h_n,  beta_n = h_n / h_(n-1),
    P_(n+1) = (x - alpha_n) P_n - beta_n P_(n-1).
"""

from dataclasses import dataclass
from typing import Iterator, List, Sequence, TextIO, Tuple
import csv
import logging

import mpmath as mp

from laguerre_lab.defaults import PRECISION_BUDGET_BASE, PRECISION_BUDGET_PER_DEGREE
from laguerre_lab.errors import ParameterError, PrecisionExhaustedError
from laguerre_lab.quadrature import QuadratureRule, deformed_weights, moment
from laguerre_lab.weights import WeightParams

_log = logging.getLogger(__name__)


__author__ = "laguerre-lab developers"
__version__ = "0.1.0"
__license__ = "MIT"
__status__ = "Development"
__package__ = "laguerre_lab"
__date__ = "2026-10-17"

__all__ = [
    "OPTable",
    "build_op_table",
    "eval_poly",
    "hankel_det",
    "moment_hankel_det",
    "iter_poly_values",
    "orthogonality_defect",
    "christoffel_darboux_residual",
    "sigma_from_table",
]


@dataclass(frozen=True)
class OPTable:
    """Norms, recurrence coefficients and Hankel determinants for n <= n_max.

    Attributes:
        n_max (int): Highest degree.
        h (Tuple[mpf, ...]): Squared norms h_0..h_n_max.
        alpha_rec (Tuple[mpf, ...]): alpha_0..alpha_n_max.
        beta_rec (Tuple[mpf, ...]): beta_0..beta_n_max, with beta_0 := h_0.
        p1 (Tuple[mpf, ...]): Sub-leading coefficients p(0)..p(n_max + 1).
        D (Tuple[mpf, ...]): Hankel determinants D_0..D_(n_max + 1), D_0 = 1.
        params (WeightParams): Weight the table belongs to.
    """

    n_max: int
    h: Tuple[mp.mpf, ...]
    alpha_rec: Tuple[mp.mpf, ...]
    beta_rec: Tuple[mp.mpf, ...]
    p1: Tuple[mp.mpf, ...]
    D: Tuple[mp.mpf, ...]
    params: WeightParams

    def write_csv(self, stream: TextIO) -> None:
        """Write rows n, h, alpha_rec, beta_rec, p1, D as decimal strings."""
        digits = int(self.params.precision_bits * 0.30103)
        writer = csv.writer(stream)
        writer.writerow(["n", "h", "alpha_rec", "beta_rec", "p1", "D"])
        for n in range(self.n_max + 1):
            beta = mp.nstr(self.beta_rec[n], digits) if n else ""
            writer.writerow(
                [
                    n,
                    mp.nstr(self.h[n], digits),
                    mp.nstr(self.alpha_rec[n], digits),
                    beta,
                    mp.nstr(self.p1[n], digits),
                    mp.nstr(self.D[n], digits),
                ]
            )


def build_op_table(params: WeightParams, n_max: int, rule: QuadratureRule) -> OPTable:
    """Run the Stieltjes procedure on the deformed discrete measure.

    Args:
        params (WeightParams): Weight parameters.
        n_max (int): Highest degree, n_max >= 1.
        rule (QuadratureRule): Rule with the same alpha, 2 n_max + 2 <= 2 m - 1.

    Returns:
        OPTable: The populated table.

    Raises:
        ParameterError: When n_max is out of range for the rule.
        PrecisionExhaustedError: When a norm comes out non-positive or non-finite.
    """
    if n_max < 1:
        raise ParameterError(f"n_max must be >= 1, got {n_max}")
    if 2 * n_max + 2 > 2 * rule.m - 1:
        raise ParameterError(f"a rule with m={rule.m} nodes cannot resolve degree n_max={n_max}")
    budget = PRECISION_BUDGET_BASE + PRECISION_BUDGET_PER_DEGREE * n_max
    if params.precision_bits < budget:
        _log.warning(
            "precision %d bits is below the recommended %d bits for n_max=%d",
            params.precision_bits,
            budget,
            n_max,
        )

    weights = deformed_weights(params, rule)
    x = rule.nodes
    with mp.workprec(params.precision_bits):
        h: List[mp.mpf] = []
        alpha_rec: List[mp.mpf] = []
        beta_rec: List[mp.mpf] = []
        prev = [mp.mpf(0)] * rule.m
        cur = [mp.mpf(1)] * rule.m
        for n in range(n_max + 1):
            sq = [w * c * c for w, c in zip(weights, cur)]
            h_n = mp.fsum(sq)
            if mp.isnan(h_n) or mp.isinf(h_n) or h_n <= 0:
                raise PrecisionExhaustedError(
                    f"norm h_{n} is not positive; raise precision_bits or the node count", n
                )
            a_n = mp.fsum(s * xi for s, xi in zip(sq, x)) / h_n
            b_n = h_n / h[-1] if n else h_n
            h.append(h_n)
            alpha_rec.append(a_n)
            beta_rec.append(b_n)
            if n:
                nxt = [(xi - a_n) * c - b_n * p for xi, c, p in zip(x, cur, prev)]
            else:
                nxt = [(xi - a_n) * c for xi, c in zip(x, cur)]
            prev, cur = cur, nxt

        p1 = [mp.mpf(0)]
        D = [mp.mpf(1)]
        for n in range(n_max + 1):
            p1.append(p1[-1] - alpha_rec[n])
            D.append(D[-1] * h[n])

    _log.info("built OP table up to n=%d on %d nodes", n_max, rule.m)
    return OPTable(n_max, tuple(h), tuple(alpha_rec), tuple(beta_rec), tuple(p1), tuple(D), params)


def _check_degree(table: OPTable, n: int, upper: int = None) -> None:
    upper = table.n_max if upper is None else upper
    if not 0 <= n <= upper:
        raise ParameterError(f"degree {n} outside 0..{upper}")


def iter_poly_values(table: OPTable, points: Sequence) -> Iterator[List[mp.mpf]]:
    """Yield [P_n(x) for x in points] for n = 0..n_max."""
    with mp.workprec(table.params.precision_bits):
        prev = [mp.mpf(0)] * len(points)
        cur = [mp.mpf(1)] * len(points)
        for n in range(table.n_max + 1):
            yield cur
            a_n, b_n = table.alpha_rec[n], table.beta_rec[n]
            if n:
                nxt = [(x - a_n) * c - b_n * p for x, c, p in zip(points, cur, prev)]
            else:
                nxt = [(x - a_n) * c for x, c in zip(points, cur)]
            prev, cur = cur, nxt


def eval_poly(table: OPTable, n: int, x) -> mp.mpf:
    """Monic P_n(x) by forward recurrence from P_0 = 1, beta_0 P_(-1) = 0."""
    _check_degree(table, n)
    with mp.workprec(table.params.precision_bits):
        x = mp.mpf(x)
        prev, cur = mp.mpf(0), mp.mpf(1)
        for k in range(n):
            b_k = table.beta_rec[k] if k else mp.mpf(0)
            prev, cur = cur, (x - table.alpha_rec[k]) * cur - b_k * prev
        return cur


def hankel_det(table: OPTable, n: int) -> mp.mpf:
    """D_n = prod_(k<n) h_k, with D_0 = 1."""
    _check_degree(table, n, table.n_max + 1)
    return table.D[n]


def moment_hankel_det(params: WeightParams, n: int, rule: QuadratureRule) -> mp.mpf:
    """det(mu_(i+j))_(i,j<n) by fraction-free (Bareiss) elimination."""
    if n < 0:
        raise ParameterError(f"determinant order must be non-negative, got {n}")
    if n == 0:
        return mp.mpf(1)
    mu = [moment(params, j, rule) for j in range(2 * n - 1)]
    with mp.workprec(params.precision_bits):
        a = [[mu[i + j] for j in range(n)] for i in range(n)]
        pivot = mp.mpf(1)
        for k in range(n - 1):
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / pivot
            pivot = a[k][k]
        return a[n - 1][n - 1]


def orthogonality_defect(table: OPTable, rule: QuadratureRule) -> mp.mpf:
    """max over m != n of |<P_m, P_n>| / sqrt(h_m h_n)."""
    weights = deformed_weights(table.params, rule)
    values = list(iter_poly_values(table, rule.nodes))
    with mp.workprec(table.params.precision_bits):
        worst = mp.mpf(0)
        for i in range(len(values)):
            for j in range(i):
                ip = mp.fsum(w * p * q for w, p, q in zip(weights, values[i], values[j]))
                worst = max(worst, abs(ip) / mp.sqrt(table.h[i] * table.h[j]))
        return worst


def christoffel_darboux_residual(table: OPTable, n: int, x, y) -> mp.mpf:
    """Relative residual of the Christoffel-Darboux formula at x != y."""
    _check_degree(table, n)
    if n < 1:
        raise ParameterError("Christoffel-Darboux needs n >= 1")
    with mp.workprec(table.params.precision_bits):
        x, y = mp.mpf(x), mp.mpf(y)
        if x == y:
            raise ParameterError("Christoffel-Darboux needs x != y")
        px = list(iter_poly_values(table, [x, y]))
        lhs = mp.fsum(px[k][0] * px[k][1] / table.h[k] for k in range(n))
        rhs = (px[n][0] * px[n - 1][1] - px[n][1] * px[n - 1][0]) / (table.h[n - 1] * (x - y))
        scale = max(abs(lhs), abs(rhs), mp.mpf("1e-300"))
        return abs(lhs - rhs) / scale


def sigma_from_table(table: OPTable, n: int) -> mp.mpf:
    """sigma_n = p(n) + n (n + alpha + Lambda)."""
    _check_degree(table, n, table.n_max + 1)
    params = table.params
    with mp.workprec(params.precision_bits):
        return table.p1[n] + n * (n + params.alpha + params.total_exponent)
