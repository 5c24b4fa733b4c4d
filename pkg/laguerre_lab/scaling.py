#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Double scaling at the hard edge.

With s_k = 4 n t_k held fixed, sigma_n(s / 4n), R_(n,k) and r_(n,k) / n are
sampled along increasing n and extrapolated to n -> infinity. The limiting
fields are then differentiated in s and substituted into the scaled PDEs.
Every verdict here is empirical: its tolerance is derived from the spread
between the extrapolant with and without the last sample.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, TextIO, Tuple
import csv
import logging

import mpmath as mp

from laguerre_lab.calculus import FDConfig, TPointEvaluator, delta, delta2, partial, second_partial
from laguerre_lab.defaults import (
    DEFAULT_QUAD_M,
    DIFFERENTIAL_TOLERANCE,
    SCALING_FD_STEP,
    SCALING_FLOOR,
    SCALING_N_LIST,
    SCALING_SAFETY,
)
from laguerre_lab.errors import LabError, ParameterError
from laguerre_lab.ladder import compute_aux
from laguerre_lab.orthopoly import build_op_table, sigma_from_table
from laguerre_lab.quadrature import QuadratureRule, build_rule
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
    "ScalingSequence",
    "Extrapolation",
    "ScaledPoint",
    "build_scaling_sequence",
    "extrapolate_values",
    "extrapolate",
    "scaled_point",
    "scaled_pde_residuals",
    "delta_covariance_residual",
]

_MAX_ORDER = 4
_LOW_CONFIDENCE_INFLATION = 10


@dataclass
class ScalingSequence:
    """Finite-n samples of the scaled fields at fixed s.

    Missing entries (failed builds) are None and listed in ``failures``.

    Attributes:
        s (Tuple[mpf, ...]): Scaled variables s_k = 4 n t_k.
        n_list (Tuple[int, ...]): Increasing degrees.
        sigma_values (List[mpf | None]): sigma_n(s / 4n).
        R_scaled (List[Tuple[mpf, ...] | None]): R_(n,k)(s / 4n).
        r_over_n (List[Tuple[mpf, ...] | None]): r_(n,k)(s / 4n) / n.
        params (WeightParams): Base weight; its shifts are ignored.
        failures (Dict[int, str]): n -> error message.
    """

    s: Tuple[mp.mpf, ...]
    n_list: Tuple[int, ...]
    sigma_values: List[Optional[mp.mpf]]
    R_scaled: List[Optional[Tuple[mp.mpf, ...]]]
    r_over_n: List[Optional[Tuple[mp.mpf, ...]]]
    params: WeightParams
    failures: Dict[int, str] = field(default_factory=dict)

    def usable(self) -> List[int]:
        """Indices of the n entries that were built."""
        return [i for i, v in enumerate(self.sigma_values) if v is not None]

    def write_csv(self, stream: TextIO, digits: int = 30) -> None:
        """Rows n, sigma, R_k..., r_k/n... for external plotting."""
        N = len(self.s)
        writer = csv.writer(stream)
        writer.writerow(
            ["n", "sigma"] + [f"R{k + 1}" for k in range(N)] + [f"r{k + 1}_over_n" for k in range(N)]
        )
        for i, n in enumerate(self.n_list):
            if self.sigma_values[i] is None:
                writer.writerow([n, "nan"] + ["nan"] * 2 * N)
                continue
            writer.writerow(
                [n, mp.nstr(self.sigma_values[i], digits)]
                + [mp.nstr(v, digits) for v in self.R_scaled[i]]
                + [mp.nstr(v, digits) for v in self.r_over_n[i]]
            )


@dataclass(frozen=True)
class Extrapolation:
    """Limit estimate of a sequence in n.

    Attributes:
        limit (mpf): Extrapolant from all samples.
        previous (mpf): Extrapolant without the last sample.
        error (mpf): |limit - previous|, or the last difference when
            ``low_confidence``.
        order (int): Fitted leading order p of the n**-p correction.
        low_confidence (bool): The tail was not contracting.
    """

    limit: mp.mpf
    previous: mp.mpf
    error: mp.mpf
    order: int
    low_confidence: bool = False


def _fit_limit(ns: Sequence[int], values: Sequence[mp.mpf], order: int) -> mp.mpf:
    """L of the exact interpolant L + sum_j c_j n**-(order + j)."""
    size = len(ns)
    if size == 1:
        return values[0]
    A = mp.matrix(size, size)
    for i, n in enumerate(ns):
        A[i, 0] = 1
        for j in range(1, size):
            A[i, j] = mp.mpf(n) ** (-(order + j - 1))
    return mp.lu_solve(A, mp.matrix(list(values)))[0]


def extrapolate_values(n_list: Sequence[int], values: Sequence, precision_bits: int) -> Extrapolation:
    """Generalized Richardson extrapolation of values(n) as n -> infinity.

    The leading order is fitted from the last three samples and clamped to
    1..4; higher corrections step by one.

    Raises:
        ParameterError: With fewer than three usable samples.

    Example:
        >>> e = extrapolate_values([8, 16, 32], [1 + mp.mpf(1) / n for n in (8, 16, 32)], 333)
        >>> e.limit  # 1, error 0
    """
    pairs = [(n, v) for n, v in zip(n_list, values) if v is not None]
    if len(pairs) < 3:
        raise ParameterError(f"extrapolation needs at least 3 usable samples, got {len(pairs)}")
    ns = [n for n, _ in pairs]
    with mp.workprec(precision_bits):
        vs = [mp.mpf(v) for _, v in pairs]
        diffs = [b - a for a, b in zip(vs, vs[1:])]
        if all(d == 0 for d in diffs):
            return Extrapolation(vs[-1], vs[-1], mp.mpf(0), 0)
        d1, d2 = diffs[-1], diffs[-2]
        if abs(d2) < abs(d1) or d1 == 0:
            _log.warning("non-contracting tail %s, %s; returning the last sample", mp.nstr(d2, 5), mp.nstr(d1, 5))
            return Extrapolation(vs[-1], vs[-2], abs(d1), 0, low_confidence=True)
        ratio = mp.log(abs(d2 / d1)) / mp.log(mp.mpf(ns[-1]) / ns[-2])
        order = min(max(int(mp.nint(ratio)), 1), _MAX_ORDER)
        limit = _fit_limit(ns, vs, order)
        previous = _fit_limit(ns[:-1], vs[:-1], order)
        _log.debug("extrapolated order %d limit %s", order, mp.nstr(limit, 15))
        return Extrapolation(limit, previous, abs(limit - previous), order)


def build_scaling_sequence(
    base: WeightParams,
    s: Sequence,
    n_list: Sequence[int] = SCALING_N_LIST,
    rule: Optional[QuadratureRule] = None,
    m: Optional[int] = None,
) -> ScalingSequence:
    """Sample sigma_n, R_(n,k) and r_(n,k) / n at t = s / 4n for each n.

    Args:
        base (WeightParams): alpha, lambda_k and precision; shifts are replaced.
        s (Sequence[Real]): Positive scaled variables, one per deformation.
        n_list (Sequence[int]): Strictly increasing degrees >= 1.
        rule (QuadratureRule): Shared rule; default has max(200, 2 max n) nodes.
        m (int): Node count when no rule is given.

    Returns:
        ScalingSequence: Samples, with gaps where a build failed.
    """
    n_list = tuple(int(n) for n in n_list)
    if not n_list or n_list[0] < 1 or any(a >= b for a, b in zip(n_list, n_list[1:])):
        raise ParameterError(f"n_list must be strictly increasing positive degrees, got {n_list}")
    if len(s) != base.n_deformations:
        raise ParameterError(f"expected {base.n_deformations} scaled variables, got {len(s)}")
    bits = base.precision_bits
    with mp.workprec(bits):
        s = tuple(mp.mpf(x) for x in s)
    if any(x <= 0 for x in s):
        raise ParameterError("scaled variables s_k must be positive")
    if rule is None:
        m = m or max(DEFAULT_QUAD_M, 2 * n_list[-1])
        rule = build_rule(base.alpha, m, bits)

    seq = ScalingSequence(s, n_list, [], [], [], base)
    for n in n_list:
        try:
            with mp.workprec(bits):
                params = base.with_shifts([x / (4 * n) for x in s])
            table = build_op_table(params, n, rule)
            aux = compute_aux(params, table, rule)
            with mp.workprec(bits):
                sigma = sigma_from_table(table, n)
                R = aux.R[n]
                r = tuple(v / n for v in aux.r[n])
        except LabError as e:
            _log.warning("scaling build at n=%d failed: %s", n, e)
            seq.failures[n] = str(e)
            sigma, R, r = None, None, None
        else:
            _log.debug("n=%d sigma_n=%s", n, mp.nstr(sigma, 15))
        seq.sigma_values.append(sigma)
        seq.R_scaled.append(R)
        seq.r_over_n.append(r)
    return seq


def extrapolate(seq: ScalingSequence) -> Extrapolation:
    """Limit of sigma_n(s / 4n)."""
    return extrapolate_values(seq.n_list, seq.sigma_values, seq.params.precision_bits)


@dataclass(frozen=True)
class ScaledPoint:
    """Extrapolated sigma, R_k and r_k / n at one s."""

    s: Tuple[mp.mpf, ...]
    sigma: Extrapolation
    R: Tuple[Extrapolation, ...]
    r_over_n: Tuple[Extrapolation, ...]
    sequence: ScalingSequence

    @property
    def low_confidence(self) -> bool:
        return any(e.low_confidence for e in (self.sigma,) + self.R + self.r_over_n)


def scaled_point(
    base: WeightParams,
    s: Sequence,
    n_list: Sequence[int] = SCALING_N_LIST,
    rule: Optional[QuadratureRule] = None,
    m: Optional[int] = None,
) -> ScaledPoint:
    """Build the sequence at s and extrapolate every scaled field."""
    seq = build_scaling_sequence(base, s, n_list, rule, m)
    bits = base.precision_bits
    N = base.n_deformations

    def column(rows, k):
        return [row[k] if row is not None else None for row in rows]

    return ScaledPoint(
        seq.s,
        extrapolate(seq),
        tuple(extrapolate_values(seq.n_list, column(seq.R_scaled, k), bits) for k in range(N)),
        tuple(extrapolate_values(seq.n_list, column(seq.r_over_n, k), bits) for k in range(N)),
        seq,
    )


class _ScaledEvaluator:
    """Memoised ScaledPoints over s-space with one shared rule."""

    def __init__(self, base: WeightParams, n_list: Sequence[int], m: Optional[int]):
        self.base = base
        self.n_list = tuple(n_list)
        self.rule = build_rule(base.alpha, m or max(DEFAULT_QUAD_M, 2 * max(self.n_list)), base.precision_bits)
        self._cache: Dict[Tuple[mp.mpf, ...], ScaledPoint] = {}

    def point(self, s) -> ScaledPoint:
        key = tuple(s)
        p = self._cache.get(key)
        if p is None:
            p = scaled_point(self.base, key, self.n_list, self.rule)
            self._cache[key] = p
        return p

    def field(self, getter: Callable[[ScaledPoint], Extrapolation], use_previous: bool) -> Callable:
        if use_previous:
            return lambda s: getter(self.point(s)).previous
        return lambda s: getter(self.point(s)).limit

    @property
    def low_confidence(self) -> bool:
        return any(p.low_confidence for p in self._cache.values())


def _scaled_R_rhs(base: WeightParams, s, R, D, k) -> mp.mpf:
    alpha = base.alpha
    lam = base.exponents
    Lam = base.total_exponent
    S_R = mp.fsum(R)
    S_D = mp.fsum(D)
    Rk = R[k]

    def split(j):
        return mp.mpf(0) if lam[j] == 0 else (D[j] ** 2 - lam[j] ** 2) / (2 * R[j])

    return (
        split(k)
        - Rk * mp.fsum(split(j) for j in range(len(R)))
        + Lam**2 * (1 - S_R) * Rk / 2
        + Rk / (2 * (S_R - 1)) * ((S_D - Lam * S_R + Lam) ** 2 - alpha**2)
        + Lam * Rk * S_D
        + Rk / 2 * (s[k] - mp.fsum(sj * Rj for sj, Rj in zip(s, R)))
    )


def _scaled_sigma_value(base: WeightParams, s, sigma, g, H, d_sigma) -> mp.mpf:
    alpha = base.alpha
    lam = base.exponents
    Lam = base.total_exponent
    N = len(s)
    cross = mp.fsum(s[k] * H[k][k] for k in range(N)) + mp.fsum(
        (s[j] + s[k]) * H[j][k] for k in range(N) for j in range(k)
    )
    total = (16 * cross**2 - alpha**2) / (4 * mp.fsum(g) - 1)
    for k in range(N):
        if lam[k] == 0:
            continue
        inner = mp.fsum(s[j] * H[j][k] for j in range(N))
        total -= (16 * inner**2 - lam[k] ** 2) / (4 * g[k])
    return total + 4 * d_sigma - 4 * sigma - (alpha + Lam) ** 2


def _sigma_jet_s(sigma, s, cfg):
    N = len(s)
    g = [partial(sigma, s, k, cfg) for k in range(N)]
    H = [[second_partial(sigma, s, j, k, cfg) for k in range(N)] for j in range(N)]
    return sigma(s), g, H


def scaled_pde_residuals(
    base: WeightParams,
    s: Sequence,
    cfg: Optional[FDConfig] = None,
    n_list: Sequence[int] = SCALING_N_LIST,
    m: Optional[int] = None,
    safety=SCALING_SAFETY,
    floor=SCALING_FLOOR,
) -> ResidualReport:
    """Residuals of the scaled PDEs at s with empirical tolerances.

    Each residual is evaluated on the fields extrapolated from all samples
    and on those without the last sample; the tolerance is
    safety * |difference| + floor, inflated tenfold when any stencil point
    had a non-contracting tail.

    Entries: ``scaled-R[k]``, ``scaled-sigma``, ``limr+limR[k]``,
    ``limR-grad[k]``; for N = 1 also ``sigma-piii`` and ``pv-Y``.
    Info: ``limR-sign[k]``.
    """
    cfg = cfg or FDConfig(step=SCALING_FD_STEP, order=4)
    cfg.validate(base.precision_bits)
    report = ResidualReport(tolerance=floor)
    N = base.n_deformations
    with mp.workprec(base.precision_bits):
        s = tuple(mp.mpf(x) for x in s)
        floor = mp.mpf(floor)
        if all(lam == 0 for lam in base.exponents):
            for name in ["scaled-sigma"] + [f"scaled-R[{k + 1}]" for k in range(N)]:
                report.skip(name, "all scaled fields vanish for lambda = 0")
            return report

        ev = _ScaledEvaluator(base, n_list, m)
        values: Dict[str, List[mp.mpf]] = {}
        scales: Dict[str, List[mp.mpf]] = {}

        def record(name, value, *terms):
            values.setdefault(name, []).append(value)
            scales.setdefault(name, list(terms))

        for use_previous in (False, True):
            sigma = ev.field(lambda p: p.sigma, use_previous)
            R_fields = [ev.field(lambda p, k=k: p.R[k], use_previous) for k in range(N)]
            R = [f(s) for f in R_fields]
            D = [delta(f, s, cfg) for f in R_fields]
            for k in range(N):
                if base.exponents[k] == 0:
                    continue
                rhs = _scaled_R_rhs(base, s, R, D, k)
                record(f"scaled-R[{k + 1}]", delta2(R_fields[k], s, cfg) - rhs, rhs, R[k])

            value, g, H = _sigma_jet_s(sigma, s, cfg)
            d_sigma = mp.fsum(sk * gk for sk, gk in zip(s, g))
            record(
                "scaled-sigma",
                _scaled_sigma_value(base, s, value, g, H, d_sigma),
                (base.alpha + base.total_exponent) ** 2,
                4 * value,
            )
            for k in range(N):
                record(f"limR-grad[{k + 1}]", R[k] - 4 * g[k], R[k])

            if N == 1:
                t = s[0] / 4
                lam = base.exponents[0]
                d1, d2 = 4 * g[0], 16 * H[0][0]
                lhs = (t * d2) ** 2
                rhs = 4 * d1 * (value - t * d1) * (d1 - 1) + ((base.alpha + lam) * d1 - lam) ** 2
                record("sigma-piii", lhs - rhs, lhs, rhs)

                R1 = R[0]
                dR = partial(R_fields[0], s, 0, cfg)
                ddR = second_partial(R_fields[0], s, 0, 0, cfg)
                Y = R1 / (R1 - 1)
                dY = -dR / (R1 - 1) ** 2
                ddY = -ddR / (R1 - 1) ** 2 + 2 * dR**2 / (R1 - 1) ** 3
                x = s[0]
                rhs = (
                    (1 / (2 * Y) + 1 / (Y - 1)) * dY**2
                    - dY / x
                    + (Y - 1) ** 2 / x**2 * (base.alpha**2 * Y / 2 - lam**2 / (2 * Y))
                    + Y / (2 * x)
                )
                record("pv-Y", ddY - rhs, ddY, rhs)

        inflation = _LOW_CONFIDENCE_INFLATION if ev.low_confidence else 1
        note = "low-confidence extrapolation" if inflation > 1 else ""
        for name, (full, prev) in values.items():
            tol = (safety * abs(full - prev) + floor) * inflation
            report.check(name, full, 0, tolerance=tol, terms=scales[name], empirical=True, note=note)

        centre = ev.point(s)
        for k in range(N):
            R_k, r_k = centre.R[k], centre.r_over_n[k]
            tol = (safety * (R_k.error + r_k.error) + floor) * inflation
            report.check(f"limr+limR[{k + 1}]", r_k.limit + R_k.limit, 0, tolerance=tol, terms=[R_k.limit], empirical=True, note=note)
            report.record_info(f"limR-sign[{k + 1}]", mp.sign(R_k.limit))
        report.record_info("sigma-limit", centre.sigma.limit)
        report.record_info("sigma-error", centre.sigma.error)
    return report


def delta_covariance_residual(
    base: WeightParams,
    s: Sequence,
    n: int,
    cfg: Optional[FDConfig] = None,
    tol=DIFFERENTIAL_TOLERANCE,
    m: int = DEFAULT_QUAD_M,
) -> ResidualReport:
    """sum_k t_k d/dt_k sigma_n equals sum_k s_k d/ds_k sigma_n(s / 4n).

    The t-side uses ``cfg``; the s-side uses the same stencil with
    Richardson refinement, so the two sides sample different points.
    """
    if n < 1:
        raise ParameterError(f"degree must be >= 1, got {n}")
    cfg = cfg or FDConfig()
    cfg.validate(base.precision_bits)
    s_cfg = FDConfig(step=cfg.step, order=cfg.order, richardson=not cfg.richardson)
    report = ResidualReport(tolerance=tol)
    with mp.workprec(base.precision_bits):
        s = tuple(mp.mpf(x) for x in s)
        t = tuple(x / (4 * n) for x in s)
        ev = TPointEvaluator(base.with_shifts(t), n, m=m)
        sigma_t = ev.field(lambda q: sigma_from_table(q.table, n))

        def sigma_s(point):
            return sigma_t(tuple(x / (4 * n) for x in point))

        lhs = delta(sigma_t, t, cfg)
        rhs = delta(sigma_s, s, s_cfg)
        report.check("delta-covariance", lhs, rhs, terms=[1])
    return report
