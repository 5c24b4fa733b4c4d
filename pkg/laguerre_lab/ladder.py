#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Ladder-operator coefficients and the compatibility conditions.

The coefficient functions of the lowering/raising operators are rational in z
with poles at 0 and -t_k:

    A_n(z) = (1 - sum_k R_(n,k)) / z + sum_k R_(n,k) / (z + t_k),
    B_n(z) = -(n + sum_k r_(n,k)) / z + sum_k r_(n,k) / (z + t_k),

with residues

    R_(n,k) = lambda_k / h_n     * int P_n**2      w / (y + t_k) dy,
    r_(n,k) = lambda_k / h_(n-1) * int P_n P_(n-1) w / (y + t_k) dy.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple
import logging

import mpmath as mp

from laguerre_lab.defaults import BETA_GUARD, COMPATIBILITY_TOLERANCE, DEFAULT_QUAD_M
from laguerre_lab.errors import DomainError, ParameterError
from laguerre_lab.orthopoly import OPTable, iter_poly_values
from laguerre_lab.quadrature import QuadratureRule, build_rule, deformed_weights
from laguerre_lab.report import ResidualReport
from laguerre_lab.weights import WeightParams, deformation_factor

_log = logging.getLogger(__name__)


__author__ = "laguerre-lab developers"
__version__ = "0.1.0"
__license__ = "MIT"
__status__ = "Development"
__package__ = "laguerre_lab"
__date__ = "2026-10-17"

__all__ = [
    "AuxTable",
    "compute_aux",
    "eval_ladder_coeffs",
    "direct_ladder_coeffs",
    "compatibility_residuals",
    "auxiliary_identity_residuals",
    "default_z_samples",
    "alpha_from_aux",
]


@dataclass(frozen=True)
class AuxTable:
    """Auxiliary quantities R_(n,k), r_(n,k) for n = 0..n_max.

    Attributes:
        n_max (int): Highest degree.
        R (Tuple[Tuple[mpf, ...], ...]): R[n][k].
        r (Tuple[Tuple[mpf, ...], ...]): r[n][k], r[0][k] = 0.
        params (WeightParams): Weight the table belongs to.
        source (str): ``"quadrature"`` or ``"difference"``.
    """

    n_max: int
    R: Tuple[Tuple[mp.mpf, ...], ...]
    r: Tuple[Tuple[mp.mpf, ...], ...]
    params: WeightParams
    source: str = "quadrature"

    def sum_R(self, n: int) -> mp.mpf:
        return mp.fsum(self.R[n])

    def sum_r(self, n: int) -> mp.mpf:
        return mp.fsum(self.r[n])


def compute_aux(params: WeightParams, table: OPTable, rule: QuadratureRule) -> AuxTable:
    """Auxiliary quantities by quadrature on the rule that built ``table``.

    Args:
        params (WeightParams): Weight parameters.
        table (OPTable): Table built from ``params``.
        rule (QuadratureRule): Rule with the same alpha.

    Returns:
        AuxTable: R and r for n = 0..table.n_max.
    """
    if table.params != params:
        raise ParameterError("OP table was built for different weight parameters")
    weights = deformed_weights(params, rule)
    x = rule.nodes
    with mp.workprec(params.precision_bits):
        kernels = [[w / (xi + d.t) for w, xi in zip(weights, x)] for d in params.deformations]
        R: List[Tuple[mp.mpf, ...]] = []
        r: List[Tuple[mp.mpf, ...]] = []
        prev = None
        for n, cur in enumerate(iter_poly_values(table, x)):
            R_n = []
            r_n = []
            for d, kern in zip(params.deformations, kernels):
                if d.lam == 0:
                    R_n.append(mp.mpf(0))
                    r_n.append(mp.mpf(0))
                    continue
                R_n.append(d.lam / table.h[n] * mp.fsum(q * p * p for q, p in zip(kern, cur)))
                if n:
                    r_n.append(d.lam / table.h[n - 1] * mp.fsum(q * p * s for q, p, s in zip(kern, cur, prev)))
                else:
                    r_n.append(mp.mpf(0))
            R.append(tuple(R_n))
            r.append(tuple(r_n))
            prev = cur
    return AuxTable(table.n_max, tuple(R), tuple(r), params)


def _check_pole(params: WeightParams, z: mp.mpf) -> None:
    for pole in [mp.mpf(0)] + [-t for t in params.shifts]:
        if mp.almosteq(z, pole, mp.eps * 16, mp.eps * 16):
            raise DomainError(f"z = {mp.nstr(z, 15)} is a pole of the ladder coefficients")


def _v_prime(params: WeightParams, z: mp.mpf) -> mp.mpf:
    return 1 - params.alpha / z - mp.fsum(d.lam / (z + d.t) for d in params.deformations)


def _check_range(aux: AuxTable, n: int) -> None:
    if not 0 <= n <= aux.n_max:
        raise ParameterError(f"degree {n} outside 0..{aux.n_max}")


def eval_ladder_coeffs(aux: AuxTable, n: int, z) -> Tuple[mp.mpf, mp.mpf]:
    """(A_n(z), B_n(z)) from the partial-fraction forms.

    Raises:
        DomainError: When z is 0 or -t_k.
        ParameterError: When n is out of range.
    """
    _check_range(aux, n)
    params = aux.params
    with mp.workprec(params.precision_bits):
        z = mp.mpf(z)
        _check_pole(params, z)
        A = (1 - aux.sum_R(n)) / z + mp.fsum(R / (z + t) for R, t in zip(aux.R[n], params.shifts))
        B = -(n + aux.sum_r(n)) / z + mp.fsum(r / (z + t) for r, t in zip(aux.r[n], params.shifts))
        return A, B


def direct_ladder_coeffs(
    params: WeightParams, table: OPTable, n: int, z, m: int = DEFAULT_QUAD_M
) -> Tuple[mp.mpf, mp.mpf]:
    """A_n(z), B_n(z) from their defining integrals.

    The kernel (v'(z) - v'(y)) / (z - y) = alpha/(z y) + sum lambda_k/((z+t_k)(y+t_k))
    carries a 1/y pole which a Gauss-Laguerre rule with parameter alpha - 1
    absorbs exactly.
    """
    if not 0 <= n <= table.n_max:
        raise ParameterError(f"degree {n} outside 0..{table.n_max}")
    with mp.workprec(params.precision_bits):
        shifted_alpha = params.alpha - 1
    rule = build_rule(shifted_alpha, m, params.precision_bits)
    y = rule.nodes
    with mp.workprec(params.precision_bits):
        z = mp.mpf(z)
        _check_pole(params, z)
        weights = [w * deformation_factor(params, yi) for w, yi in zip(rule.weights, y)]
        kernel = [
            params.alpha / z + mp.fsum(d.lam * yi / ((z + d.t) * (yi + d.t)) for d in params.deformations)
            for yi in y
        ]
        values = list(iter_poly_values(table, y))
        p_n = values[n]
        A = mp.fsum(w * k * p * p for w, k, p in zip(weights, kernel, p_n)) / table.h[n]
        if n == 0:
            return A, mp.mpf(0)
        p_m = values[n - 1]
        B = mp.fsum(w * k * p * q for w, k, p, q in zip(weights, kernel, p_n, p_m)) / table.h[n - 1]
        return A, B


def default_z_samples(params: WeightParams, n: int) -> List[mp.mpf]:
    """Midpoints -t_k/2 between the poles, then 1, n and 10 n."""
    with mp.workprec(params.precision_bits):
        poles = {mp.mpf(0)} | {-t for t in params.shifts}
        samples: List[mp.mpf] = []
        for z in [-t / 2 for t in params.shifts] + [mp.mpf(1), mp.mpf(n), mp.mpf(10 * n)]:
            if z not in poles and z not in samples:
                samples.append(z)
        return samples


def compatibility_residuals(
    table: OPTable, aux: AuxTable, n: int, z, tol=COMPATIBILITY_TOLERANCE
) -> ResidualReport:
    """Residuals of (S1), (S2), (S2') at (n, z) and of their coefficient equations.

    Args:
        table (OPTable): Recurrence coefficients.
        aux (AuxTable): Auxiliary quantities of the same weight.
        n (int): Degree, 1 <= n <= n_max - 1.
        z (Real): Sample point off the pole set.
        tol (Real): Tolerance of every entry.

    Returns:
        ResidualReport: Entries S1, S2, S2p, S1.1, S1.2[k], S2.1, S2.2[k],
        S2p1 and S2p2[k].
    """
    if not 1 <= n <= min(table.n_max, aux.n_max) - 1:
        raise ParameterError(f"compatibility needs 1 <= n <= n_max - 1, got n={n}")
    params = aux.params
    report = ResidualReport(tolerance=tol)
    with mp.workprec(params.precision_bits):
        z = mp.mpf(z)
        _check_pole(params, z)
        alpha = params.alpha
        a_n = table.alpha_rec[n]
        beta_n, beta_n1 = table.beta_rec[n], table.beta_rec[n + 1]
        A = {j: eval_ladder_coeffs(aux, j, z)[0] for j in range(0, n + 2)}
        B = {j: eval_ladder_coeffs(aux, j, z)[1] for j in (n, n + 1)}
        vp = _v_prime(params, z)

        report.check("S1", B[n + 1] + B[n], (z - a_n) * A[n] - vp, terms=[B[n], vp])
        report.check(
            "S2",
            1 + (z - a_n) * (B[n + 1] - B[n]),
            beta_n1 * A[n + 1] - beta_n * A[n - 1],
            terms=[beta_n * A[n - 1]],
        )
        sum_A = mp.fsum(A[j] for j in range(n))
        report.check(
            "S2p",
            B[n] ** 2 + vp * B[n] + sum_A,
            beta_n * A[n] * A[n - 1],
            terms=[B[n] ** 2, vp * B[n], sum_A],
        )

        R_m, R_n, R_p = aux.R[n - 1], aux.R[n], aux.R[n + 1]
        r_n, r_p = aux.r[n], aux.r[n + 1]
        sR = mp.fsum(R_n)
        sr = mp.fsum(r_n)
        report.check("S1.1", 2 * n + 1 + mp.fsum(r_p) + sr, a_n * (1 - sR) - alpha, terms=[a_n])
        diff = mp.fsum(r_p) - sr
        jump = mp.fsum(beta_n1 * R_p[k] - beta_n * R_m[k] for k in range(len(R_n)))
        report.check("S2.1", a_n + a_n * diff, beta_n1 - beta_n - jump, terms=[beta_n1, beta_n])
        report.check(
            "S2p1",
            (n + alpha + sr) * (n + sr),
            beta_n * (1 - sR) * (1 - mp.fsum(R_m)),
            terms=[beta_n],
        )
        for k, d in enumerate(params.deformations):
            report.check(f"S1.2[{k + 1}]", r_p[k] + r_n[k], d.lam - (d.t + a_n) * R_n[k], terms=[d.lam])
            report.check(
                f"S2.2[{k + 1}]",
                -(d.t + a_n) * (r_p[k] - r_n[k]),
                beta_n1 * R_p[k] - beta_n * R_m[k],
                terms=[beta_n * R_m[k]],
            )
            report.check(
                f"S2p2[{k + 1}]",
                r_n[k] ** 2 - d.lam * r_n[k],
                beta_n * R_n[k] * R_m[k],
                terms=[d.lam * r_n[k]],
            )
    return report


def alpha_from_aux(params: WeightParams, R_n: Sequence[mp.mpf], n: int) -> mp.mpf:
    """alpha_n = 2n + 1 + alpha + sum_k (lambda_k - t_k R_(n,k))."""
    with mp.workprec(params.precision_bits):
        return 2 * n + 1 + params.alpha + mp.fsum(d.lam - d.t * R for d, R in zip(params.deformations, R_n))


def auxiliary_identity_residuals(table: OPTable, aux: AuxTable, tol=COMPATIBILITY_TOLERANCE) -> ResidualReport:
    """alpha_n, beta_n and p(n) in terms of the auxiliaries, plus S2'2, for all n.

    The beta_n entry is skipped when 1 - sum R_n or a nonzero-lambda R_(n,k)
    is below the guard in magnitude.
    """
    params = aux.params
    guard = mp.mpf(BETA_GUARD)
    report = ResidualReport(tolerance=tol)
    n_top = min(table.n_max, aux.n_max)
    with mp.workprec(params.precision_bits):
        for n in range(n_top + 1):
            report.check(f"alpha_n[{n}]", table.alpha_rec[n], alpha_from_aux(params, aux.R[n], n))
            if n == 0:
                continue
            beta_n = table.beta_rec[n]
            sr = aux.sum_r(n)
            one_minus = 1 - aux.sum_R(n)
            small = [
                k for k, d in enumerate(params.deformations) if d.lam != 0 and abs(aux.R[n][k]) < guard
            ]
            if abs(one_minus) < guard or small:
                report.skip(f"beta_n[{n}]", "auxiliary denominator below guard")
            else:
                ratio = mp.fsum(
                    (r * r - d.lam * r) / R if d.lam != 0 else mp.mpf(0)
                    for d, R, r in zip(params.deformations, aux.R[n], aux.r[n])
                )
                report.check(
                    f"beta_n[{n}]",
                    beta_n,
                    (n + params.alpha + sr) * (n + sr) / one_minus + ratio,
                    terms=[ratio],
                )
            report.check(
                f"p[{n}]",
                table.p1[n],
                -beta_n - mp.fsum(t * r for t, r in zip(params.shifts, aux.r[n])),
                terms=[beta_n],
            )
            for k, d in enumerate(params.deformations):
                r = aux.r[n][k]
                report.check(
                    f"S2p2[{n}][{k + 1}]",
                    r * r - d.lam * r,
                    beta_n * aux.R[n][k] * aux.R[n - 1][k],
                    terms=[d.lam * r],
                )
    return report
