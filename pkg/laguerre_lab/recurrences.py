#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Difference system for the auxiliary quantities.

Starting from R_(0,k) (by quadrature) and r_(0,k) = 0, each step n -> n + 1 uses

    r_(n+1,k) = lambda_k - (t_k + alpha_n) R_(n,k) - r_(n,k),
    beta_n    = sum_k r_(n,k)(r_(n,k) - lambda_k) / R_(n-1,k)
                + (n + sum r_n)(n + alpha + sum r_n) / (1 - sum R_(n-1)),
    R_(n,p)   = r_(n,p)(r_(n,p) - lambda_p) / (beta_n R_(n-1,p)),
    R_(n,k)   = r_k (r_k - lambda_k) / (r_p (r_p - lambda_?)) * R_(n,p) R_(n-1,p) / R_(n-1,k),

where p is the first index with lambda_p != 0. The last line is implemented
with lambda_? = lambda_k (``DE3_PRINTED``) and with lambda_? = lambda_p
(``DE3_LAMBDA1``).
"""

from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, TextIO, Tuple
import csv
import logging

import mpmath as mp

from laguerre_lab.defaults import BREAKDOWN_EXPONENT, COMPATIBILITY_TOLERANCE
from laguerre_lab.errors import DegeneracyError, IterationBreakdownError, ParameterError
from laguerre_lab.ladder import AuxTable, alpha_from_aux
from laguerre_lab.orthopoly import OPTable, sigma_from_table
from laguerre_lab.quadrature import QuadratureRule, deformed_weights
from laguerre_lab.report import ResidualReport
from laguerre_lab.weights import WeightParams

_log = logging.getLogger(__name__)


__author__ = "laguerre-lab developers"
__version__ = "0.1.0"
__license__ = "MIT"
__status__ = "Development"
__package__ = "laguerre_lab"
__date__ = "2026-10-17"

__all__ = [
    "DE3_PRINTED",
    "DE3_LAMBDA1",
    "Recurrence",
    "AuxComparison",
    "breakdown_threshold",
    "quadrature_initial_data",
    "iterate_difference_system",
    "recurrence_from_aux",
    "sigma_from_aux",
    "compare_aux",
    "sum_rule_residuals",
]

DE3_PRINTED = "printed"
DE3_LAMBDA1 = "lambda1"


class Recurrence(NamedTuple):
    alpha: mp.mpf
    beta: Optional[mp.mpf]
    p: mp.mpf


def breakdown_threshold(precision_bits: int) -> mp.mpf:
    """10**(-0.24 * bits); smaller denominators count as breakdown."""
    with mp.workprec(precision_bits):
        return mp.mpf(10) ** (-BREAKDOWN_EXPONENT * precision_bits)


def _pivot(params: WeightParams) -> Optional[int]:
    for k, lam in enumerate(params.exponents):
        if lam != 0:
            return k
    return None


def quadrature_initial_data(params: WeightParams, rule: QuadratureRule) -> Tuple[mp.mpf, ...]:
    """R_(0,k) = lambda_k / mu_0 * int w / (y + t_k) dy."""
    weights = deformed_weights(params, rule)
    with mp.workprec(params.precision_bits):
        mu0 = mp.fsum(weights)
        return tuple(
            d.lam / mu0 * mp.fsum(w / (x + d.t) for w, x in zip(weights, rule.nodes))
            for d in params.deformations
        )


def _guarded(value: mp.mpf, floor: mp.mpf, n: int, k: Optional[int], what: str) -> mp.mpf:
    if abs(value) < floor:
        raise IterationBreakdownError(f"{what} vanishes at n={n}, k={k}", n, k)
    return value


def iterate_difference_system(
    params: WeightParams,
    R0: Sequence,
    n_max: int,
    de3_variant: str = DE3_PRINTED,
    threshold=None,
) -> AuxTable:
    """Fill an AuxTable for n = 0..n_max from the difference system.

    Args:
        params (WeightParams): Weight parameters.
        R0 (Sequence[Real]): R_(0,k) from the defining integrals.
        n_max (int): Highest degree.
        de3_variant (str): ``DE3_PRINTED`` or ``DE3_LAMBDA1``.
        threshold (Real): Breakdown threshold, default ``breakdown_threshold``.

    Returns:
        AuxTable: Iterated auxiliaries, ``source == "difference"``.

    Raises:
        IterationBreakdownError: When a denominator falls below the threshold.
    """
    if de3_variant not in (DE3_PRINTED, DE3_LAMBDA1):
        raise ParameterError(f"unknown de3 variant {de3_variant!r}")
    if len(R0) != params.n_deformations:
        raise ParameterError(f"expected {params.n_deformations} initial values, got {len(R0)}")
    if n_max < 0:
        raise ParameterError(f"n_max must be non-negative, got {n_max}")
    lam = params.exponents
    t = params.shifts
    pivot = _pivot(params)
    with mp.workprec(params.precision_bits):
        floor = mp.mpf(threshold) if threshold is not None else breakdown_threshold(params.precision_bits)
        R: List[Tuple[mp.mpf, ...]] = [tuple(mp.mpf(v) if l != 0 else mp.mpf(0) for v, l in zip(R0, lam))]
        r: List[Tuple[mp.mpf, ...]] = [tuple(mp.mpf(0) for _ in lam)]
        a_prev = alpha_from_aux(params, R[0], 0)

        for n in range(1, n_max + 1):
            R_m, r_m = R[-1], r[-1]
            r_n = tuple(
                l - (tk + a_prev) * Rk - rk if l != 0 else mp.mpf(0)
                for l, tk, Rk, rk in zip(lam, t, R_m, r_m)
            )
            if pivot is None:
                R.append(tuple(mp.mpf(0) for _ in lam))
                r.append(r_n)
                a_prev = alpha_from_aux(params, R[-1], n)
                continue

            sr = mp.fsum(r_n)
            ratio = mp.mpf(0)
            for k, l in enumerate(lam):
                if l != 0:
                    ratio += r_n[k] * (r_n[k] - l) / _guarded(R_m[k], floor, n, k + 1, "R_(n-1,k)")
            denom = _guarded(1 - mp.fsum(R_m), floor, n, None, "1 - sum R_(n-1)")
            beta_n = ratio + (n + sr) * (n + params.alpha + sr) / denom

            p = pivot
            rp = r_n[p]
            R_np = rp * (rp - lam[p]) / _guarded(beta_n * R_m[p], floor, n, p + 1, "beta_n R_(n-1,p)")
            R_n = []
            for k, l in enumerate(lam):
                if k == p:
                    R_n.append(R_np)
                elif l == 0:
                    R_n.append(mp.mpf(0))
                else:
                    lam_sel = l if de3_variant == DE3_PRINTED else lam[p]
                    den = _guarded(rp * (rp - lam_sel), floor, n, k + 1, "r_(n,p)(r_(n,p) - lambda)")
                    den = den * _guarded(R_m[k], floor, n, k + 1, "R_(n-1,k)")
                    R_n.append(r_n[k] * (r_n[k] - l) / den * R_np * R_m[p])
            R.append(tuple(R_n))
            r.append(r_n)
            a_prev = alpha_from_aux(params, R[-1], n)
            _log.debug("difference system step n=%d beta_n=%s", n, mp.nstr(beta_n, 15))

    return AuxTable(n_max, tuple(R), tuple(r), params, source="difference")


def recurrence_from_aux(params: WeightParams, aux: AuxTable, n: int, threshold=None) -> Recurrence:
    """(alpha_n, beta_n, p(n)) in closed form from the auxiliaries.

    beta and p need n >= 1; at n = 0 the result is (alpha_0, None, 0).

    Raises:
        DegeneracyError: When 1 - sum R_n or a nonzero-lambda R_(n,k) is below
            the threshold.
    """
    if not 0 <= n <= aux.n_max:
        raise ParameterError(f"degree {n} outside 0..{aux.n_max}")
    with mp.workprec(params.precision_bits):
        a_n = alpha_from_aux(params, aux.R[n], n)
        if n == 0:
            return Recurrence(a_n, None, mp.mpf(0))
        floor = mp.mpf(threshold) if threshold is not None else breakdown_threshold(params.precision_bits)
        one_minus = 1 - aux.sum_R(n)
        if abs(one_minus) < floor:
            raise DegeneracyError(f"1 - sum R_(n,k) vanishes at n={n}")
        ratio = mp.mpf(0)
        for k, d in enumerate(params.deformations):
            if d.lam == 0:
                continue
            Rk, rk = aux.R[n][k], aux.r[n][k]
            if abs(Rk) < floor:
                raise DegeneracyError(f"R_(n,k) vanishes at n={n}, k={k + 1}")
            ratio += (rk * rk - d.lam * rk) / Rk
        sr = aux.sum_r(n)
        beta_n = (n + params.alpha + sr) * (n + sr) / one_minus + ratio
        p_n = -beta_n - mp.fsum(t * r for t, r in zip(params.shifts, aux.r[n]))
        return Recurrence(a_n, beta_n, p_n)


def sigma_from_aux(params: WeightParams, aux: AuxTable, n: int) -> mp.mpf:
    """sigma_n = n (n + alpha + Lambda) - sum_k t_k r_(n,k) - beta_n."""
    if n < 1:
        raise ParameterError("sigma_n from the auxiliaries needs n >= 1")
    rec = recurrence_from_aux(params, aux, n)
    with mp.workprec(params.precision_bits):
        return (
            n * (n + params.alpha + params.total_exponent)
            - mp.fsum(t * r for t, r in zip(params.shifts, aux.r[n]))
            - rec.beta
        )


@dataclass(frozen=True)
class AuxComparison:
    """Row-wise comparison of two AuxTables.

    Attributes:
        rows (Tuple[tuple, ...]): (n, k, R_iter, R_quad, r_iter, r_quad, abs_diff).
        max_R_diff (mpf): Largest |R_iter - R_quad|.
        max_r_diff (mpf): Largest |r_iter - r_quad|.
    """

    rows: Tuple[tuple, ...]
    max_R_diff: mp.mpf
    max_r_diff: mp.mpf

    @property
    def max_diff(self) -> mp.mpf:
        return max(self.max_R_diff, self.max_r_diff)

    def write_csv(self, stream: TextIO, digits: int = 30) -> None:
        writer = csv.writer(stream)
        writer.writerow(["n", "k", "R_iter", "R_quad", "r_iter", "r_quad", "abs_diff"])
        for n, k, *values in self.rows:
            writer.writerow([n, k] + [mp.nstr(v, digits) for v in values])


def compare_aux(iterated: AuxTable, reference: AuxTable) -> AuxComparison:
    """Compare iterated auxiliaries against a reference table, n <= both n_max."""
    params = reference.params
    n_top = min(iterated.n_max, reference.n_max)
    rows = []
    max_R = max_r = mp.mpf(0)
    with mp.workprec(params.precision_bits):
        for n in range(n_top + 1):
            for k in range(params.n_deformations):
                dR = abs(iterated.R[n][k] - reference.R[n][k])
                dr = abs(iterated.r[n][k] - reference.r[n][k])
                max_R, max_r = max(max_R, dR), max(max_r, dr)
                rows.append(
                    (n, k + 1, iterated.R[n][k], reference.R[n][k], iterated.r[n][k], reference.r[n][k], max(dR, dr))
                )
    if max(max_R, max_r) > 0:
        _log.info("iterated vs reference auxiliaries: max |dR| %s, max |dr| %s", mp.nstr(max_R, 5), mp.nstr(max_r, 5))
    return AuxComparison(tuple(rows), max_R, max_r)


def sum_rule_residuals(table: OPTable, aux: AuxTable, tol=COMPATIBILITY_TOLERANCE) -> ResidualReport:
    """sum_(j<n) alpha_j = beta_n + sum_k t_k r_(n,k) and the two routes to sigma_n."""
    params = aux.params
    report = ResidualReport(tolerance=tol)
    n_top = min(table.n_max, aux.n_max)
    with mp.workprec(params.precision_bits):
        for n in range(1, n_top + 1):
            partial_sum = mp.fsum(table.alpha_rec[:n])
            shift = mp.fsum(t * r for t, r in zip(params.shifts, aux.r[n]))
            report.check(f"alpha-beta[{n}]", partial_sum, table.beta_rec[n] + shift, terms=[table.beta_rec[n], shift])
            try:
                via_aux = sigma_from_aux(params, aux, n)
            except DegeneracyError as e:
                report.skip(f"sigma[{n}]", str(e))
                continue
            report.check(
                f"sigma[{n}]",
                sigma_from_table(table, n),
                via_aux,
                terms=[n * (n + params.alpha + params.total_exponent)],
            )
    return report
