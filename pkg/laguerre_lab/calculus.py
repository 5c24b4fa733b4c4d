#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Finite-difference calculus in the shifts t and the differential identities.

Every field (ln h_n, p(n), beta_n, alpha_n, R_(n,k), r_(n,k), sigma_n) is a
function of the t-vector obtained from a fresh OP table on one fixed rule.
``TPointEvaluator`` memoises those snapshots so that all stencils of a suite
share their evaluations.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple
import logging

import mpmath as mp

from laguerre_lab.defaults import (
    DEFAULT_QUAD_M,
    DIFFERENTIAL_TOLERANCE,
    FD_ORDER,
    FD_SHRINK,
    FD_STEP,
    PDE_TOLERANCE,
    SIGN_GUARD,
)
from laguerre_lab.errors import DegeneracyError, DomainError, ParameterError
from laguerre_lab.ladder import AuxTable, compute_aux
from laguerre_lab.orthopoly import OPTable, build_op_table, sigma_from_table
from laguerre_lab.quadrature import QuadratureRule, rule_for
from laguerre_lab.recurrences import breakdown_threshold
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
    "FDConfig",
    "SigmaJet",
    "Snapshot",
    "TPointEvaluator",
    "partial",
    "second_partial",
    "stencil_weights",
    "delta",
    "delta2",
    "sigma_jet",
    "differential_relation_residuals",
    "toda_residuals",
    "riccati_residuals",
    "pde_residual_R",
    "sigma_pde_residual",
    "lattice_points",
    "lattice_residuals",
]

Point = Tuple[mp.mpf, ...]
Field = Callable[[Point], mp.mpf]

# central stencils: offset -> exact weight, converted at the working precision per call
_FIRST = {
    2: {-1: Fraction(-1, 2), 1: Fraction(1, 2)},
    4: {-2: Fraction(1, 12), -1: Fraction(-2, 3), 1: Fraction(2, 3), 2: Fraction(-1, 12)},
}
_SECOND = {
    2: {-1: Fraction(1), 0: Fraction(-2), 1: Fraction(1)},
    4: {-2: Fraction(-1, 12), -1: Fraction(4, 3), 0: Fraction(-5, 2), 1: Fraction(4, 3), 2: Fraction(-1, 12)},
}


def stencil_weights(order: int, derivative: int = 1) -> Dict[int, mp.mpf]:
    """Central stencil {offset: weight} at the current mpmath precision.

    Raises:
        ParameterError: For an order other than 2, 4 or a derivative other than 1, 2.
    """
    tables = {1: _FIRST, 2: _SECOND}
    if derivative not in tables or order not in tables[derivative]:
        raise ParameterError(f"no central stencil for derivative {derivative!r} of order {order!r}")
    return {a: mp.mpf(w.numerator) / w.denominator for a, w in tables[derivative][order].items()}


@dataclass(frozen=True)
class FDConfig:
    """Central finite-difference settings.

    Attributes:
        step (mpf): Relative step; the absolute step along t_k is step * t_k.
        order (int): 2 or 4.
        richardson (bool): Combine steps h and h/2.
    """

    step: mp.mpf = mp.mpf(FD_STEP)
    order: int = FD_ORDER
    richardson: bool = False

    def __post_init__(self):
        object.__setattr__(self, "step", mp.mpf(self.step))
        if self.order not in (2, 4):
            raise ParameterError(f"FD order must be 2 or 4, got {self.order!r}")
        if self.step <= 0:
            raise ParameterError("FD step must be positive")

    def validate(self, precision_bits: int) -> None:
        """Check the step lies in (10**(-0.4 digits), 1e-2), digits = 0.3 bits."""
        digits = 0.3 * precision_bits
        with mp.workprec(precision_bits):
            lower = mp.mpf(10) ** (-0.4 * digits)
            if not lower < self.step < mp.mpf("1e-2"):
                raise ParameterError(
                    f"FD step {mp.nstr(self.step, 5)} outside ({mp.nstr(lower, 5)}, 1e-2) at {precision_bits} bits"
                )


def _shift(t: Point, moves: Dict[int, mp.mpf]) -> Point:
    return tuple(x + moves[i] if i in moves else x for i, x in enumerate(t))


def _step(t: Point, k: int, cfg: FDConfig) -> mp.mpf:
    if not 0 <= k < len(t):
        raise ParameterError(f"direction {k} outside 0..{len(t) - 1}")
    reach = 1 if cfg.order == 2 else 2
    h = cfg.step * abs(t[k])
    if t[k] - reach * h <= 0:
        h = h / FD_SHRINK
        _log.warning("FD stencil along t_%d left the domain; step shrunk to %s", k + 1, mp.nstr(h, 5))
        if t[k] - reach * h <= 0:
            raise DomainError(f"FD stencil along t_{k + 1} leaves t > 0")
    return h


def _richardson(stencil: Callable[[mp.mpf], mp.mpf], h: mp.mpf, cfg: FDConfig) -> mp.mpf:
    coarse = stencil(h)
    if not cfg.richardson:
        return coarse
    fine = stencil(h / 2)
    factor = mp.mpf(2) ** cfg.order
    return (factor * fine - coarse) / (factor - 1)


def partial(f: Field, t: Sequence, k: int, cfg: FDConfig = FDConfig()) -> mp.mpf:
    """Central-difference estimate of df/dt_k at t (k is 0-based).

    Raises:
        DomainError: When the stencil leaves t > 0 even after one shrink.
    """
    t = tuple(mp.mpf(x) for x in t)
    h = _step(t, k, cfg)
    weights = stencil_weights(cfg.order, 1)

    def stencil(hh):
        return mp.fsum(w * f(_shift(t, {k: a * hh})) for a, w in weights.items()) / hh

    return _richardson(stencil, h, cfg)


def second_partial(f: Field, t: Sequence, j: int, k: int, cfg: FDConfig = FDConfig()) -> mp.mpf:
    """d2f/dt_j dt_k; tensor product of first-derivative stencils for j != k."""
    t = tuple(mp.mpf(x) for x in t)
    if j == k:
        h = _step(t, k, cfg)
        weights = stencil_weights(cfg.order, 2)

        def stencil(hh):
            return mp.fsum(w * f(_shift(t, {k: a * hh})) for a, w in weights.items()) / (hh * hh)

        return _richardson(stencil, h, cfg)

    hj, hk = _step(t, j, cfg), _step(t, k, cfg)
    weights = stencil_weights(cfg.order, 1)
    ratio = hk / hj

    def stencil(hh):
        hh_k = hh * ratio
        return mp.fsum(
            wa * wb * f(_shift(t, {j: a * hh, k: b * hh_k}))
            for (a, wa), (b, wb) in product(weights.items(), weights.items())
        ) / (hh * hh_k)

    return _richardson(stencil, hj, cfg)


def delta(f: Field, t: Sequence, cfg: FDConfig = FDConfig()) -> mp.mpf:
    """delta f = sum_k t_k df/dt_k."""
    t = tuple(mp.mpf(x) for x in t)
    return mp.fsum(t[k] * partial(f, t, k, cfg) for k in range(len(t)))


def delta2(f: Field, t: Sequence, cfg: FDConfig = FDConfig()) -> mp.mpf:
    """delta(delta f) = sum t_j^2 f_jj + 2 sum_(k<j) t_k t_j f_kj + delta f."""
    t = tuple(mp.mpf(x) for x in t)
    n = len(t)
    diag = mp.fsum(t[j] ** 2 * second_partial(f, t, j, j, cfg) for j in range(n))
    mixed = mp.fsum(
        2 * t[k] * t[j] * second_partial(f, t, k, j, cfg) for j in range(n) for k in range(j)
    )
    return diag + mixed + delta(f, t, cfg)


@dataclass(frozen=True)
class Snapshot:
    """OP and auxiliary tables at one t-point."""

    params: WeightParams
    table: OPTable
    aux: AuxTable


class TPointEvaluator:
    """Memoised (OPTable, AuxTable) builds over t-space on one rule.

    Args:
        params (WeightParams): Base parameters; only the shifts vary.
        n_max (int): Highest degree every snapshot carries.
        rule (QuadratureRule): Shared rule, default ``rule_for(params, m)``.
        m (int): Node count when no rule is given.
    """

    def __init__(self, params: WeightParams, n_max: int, rule: Optional[QuadratureRule] = None, m: int = DEFAULT_QUAD_M):
        self.params = params
        self.n_max = n_max
        self.rule = rule if rule is not None else rule_for(params, m)
        self._cache: Dict[Point, Snapshot] = {}

    def snapshot(self, t: Sequence) -> Snapshot:
        key = tuple(mp.mpf(x) for x in t)
        snap = self._cache.get(key)
        if snap is None:
            params = self.params.with_shifts(key) if key != self.params.shifts else self.params
            table = build_op_table(params, self.n_max, self.rule)
            snap = Snapshot(params, table, compute_aux(params, table, self.rule))
            self._cache[key] = snap
        return snap

    def field(self, getter: Callable[[Snapshot], mp.mpf]) -> Field:
        return lambda t: getter(self.snapshot(t))

    def __len__(self) -> int:
        return len(self._cache)


@dataclass
class SigmaJet:
    """sigma_n with its gradient and Hessian in t.

    Attributes:
        value (mpf): sigma_n.
        grad (List[mpf]): d sigma_n / dt_k.
        hess (List[List[mpf]]): d2 sigma_n / dt_j dt_k.
        t (Point): Evaluation point.
    """

    value: mp.mpf
    grad: List[mp.mpf]
    hess: List[List[mp.mpf]]
    t: Point = field(default_factory=tuple)

    @property
    def delta(self) -> mp.mpf:
        return mp.fsum(tk * g for tk, g in zip(self.t, self.grad))


def sigma_jet(evaluator: TPointEvaluator, n: int, t: Sequence, cfg: FDConfig = FDConfig()) -> SigmaJet:
    """Value, gradient and Hessian of sigma_n at t by finite differences."""
    t = tuple(mp.mpf(x) for x in t)
    sigma = evaluator.field(lambda s: sigma_from_table(s.table, n))
    N = len(t)
    grad = [partial(sigma, t, k, cfg) for k in range(N)]
    hess = [[mp.mpf(0)] * N for _ in range(N)]
    for j in range(N):
        for k in range(j, N):
            hess[j][k] = second_partial(sigma, t, j, k, cfg)
            hess[k][j] = second_partial(sigma, t, k, j, cfg) if j != k else hess[j][k]
    return SigmaJet(sigma(t), grad, hess, t)


def _prepare(params: WeightParams, n: int, n_max: int, cfg: Optional[FDConfig], rule, m) -> Tuple[FDConfig, TPointEvaluator]:
    if n < 1:
        raise ParameterError(f"degree must be >= 1, got {n}")
    cfg = cfg or FDConfig()
    cfg.validate(params.precision_bits)
    return cfg, TPointEvaluator(params, n_max, rule, m)


def differential_relation_residuals(
    params: WeightParams,
    n: int,
    cfg: Optional[FDConfig] = None,
    tol=DIFFERENTIAL_TOLERANCE,
    rule: Optional[QuadratureRule] = None,
    m: int = DEFAULT_QUAD_M,
) -> ResidualReport:
    """Residuals of the four first-order relations between t-derivatives and auxiliaries.

    Per k: d ln h_n = R_(n,k) (dr1), d p(n) = -r_(n,k) (dr2),
    d ln beta_n = R_(n,k) - R_(n-1,k) (dr3), d alpha_n = r_(n+1,k) - r_(n,k) (dr4),
    and d ln D_n = sum_(j<n) R_(j,k) (lnD).
    """
    cfg, ev = _prepare(params, n, n + 1, cfg, rule, m)
    report = ResidualReport(tolerance=tol)
    t0 = params.shifts
    with mp.workprec(params.precision_bits):
        s = ev.snapshot(t0)
        ln_h = ev.field(lambda q: mp.log(q.table.h[n]))
        p_n = ev.field(lambda q: q.table.p1[n])
        ln_beta = ev.field(lambda q: mp.log(q.table.beta_rec[n]))
        a_n = ev.field(lambda q: q.table.alpha_rec[n])
        ln_D = ev.field(lambda q: mp.log(q.table.D[n]))
        R, r = s.aux.R, s.aux.r
        for k in range(params.n_deformations):
            i = k + 1
            report.check(f"dr1[{i}]", partial(ln_h, t0, k, cfg), R[n][k], terms=[1])
            report.check(f"dr2[{i}]", partial(p_n, t0, k, cfg), -r[n][k], terms=[1])
            report.check(f"dr3[{i}]", partial(ln_beta, t0, k, cfg), R[n][k] - R[n - 1][k], terms=[1])
            report.check(f"dr4[{i}]", partial(a_n, t0, k, cfg), r[n + 1][k] - r[n][k], terms=[1])
            report.check(f"lnD[{i}]", partial(ln_D, t0, k, cfg), mp.fsum(R[j][k] for j in range(n)), terms=[1])
    return report


def toda_residuals(
    params: WeightParams,
    n: int,
    cfg: Optional[FDConfig] = None,
    tol=DIFFERENTIAL_TOLERANCE,
    rule: Optional[QuadratureRule] = None,
    m: int = DEFAULT_QUAD_M,
) -> ResidualReport:
    """te1: delta ln beta_n = alpha_(n-1) - alpha_n + 2; te2: (delta - 1) alpha_n = beta_n - beta_(n+1)."""
    cfg, ev = _prepare(params, n, n + 1, cfg, rule, m)
    report = ResidualReport(tolerance=tol)
    t0 = params.shifts
    with mp.workprec(params.precision_bits):
        tab = ev.snapshot(t0).table
        ln_beta = ev.field(lambda q: mp.log(q.table.beta_rec[n]))
        a_n = ev.field(lambda q: q.table.alpha_rec[n])
        report.check(
            "te1",
            delta(ln_beta, t0, cfg),
            tab.alpha_rec[n - 1] - tab.alpha_rec[n] + 2,
            terms=[tab.alpha_rec[n]],
        )
        report.check(
            "te2",
            delta(a_n, t0, cfg) - tab.alpha_rec[n],
            tab.beta_rec[n] - tab.beta_rec[n + 1],
            terms=[tab.alpha_rec[n], tab.beta_rec[n + 1]],
        )
    return report


def _ratio(r: mp.mpf, lam: mp.mpf, R: mp.mpf, floor: mp.mpf, n: int, k: int) -> mp.mpf:
    """(r^2 - lambda r) / R, zero when lambda = 0."""
    if lam == 0:
        return mp.mpf(0)
    if abs(R) < floor:
        raise DegeneracyError(f"R_(n,k) vanishes at n={n}, k={k + 1}")
    return (r * r - lam * r) / R


def riccati_residuals(
    params: WeightParams,
    n: int,
    cfg: Optional[FDConfig] = None,
    tol=DIFFERENTIAL_TOLERANCE,
    rule: Optional[QuadratureRule] = None,
    m: int = DEFAULT_QUAD_M,
) -> ResidualReport:
    """Residuals of the Riccati pair re1/re2 per k, with re5, the quadratic-root
    identity qae and, for N >= 2, the mixed-partial symmetries of R and r.

    Raises:
        DegeneracyError: When 1 - sum R_n or a nonzero-lambda R_(n,k) vanishes.
    """
    cfg, ev = _prepare(params, n, n, cfg, rule, m)
    report = ResidualReport(tolerance=tol)
    t0 = params.shifts
    N = params.n_deformations
    with mp.workprec(params.precision_bits):
        floor = breakdown_threshold(params.precision_bits)
        s = ev.snapshot(t0)
        R, r = s.aux.R[n], s.aux.r[n]
        beta_n = s.table.beta_rec[n]
        lam = params.exponents
        one_minus = 1 - mp.fsum(R)
        if abs(one_minus) < floor:
            raise DegeneracyError(f"1 - sum R_(n,k) vanishes at n={n}")
        sr = mp.fsum(r)
        core = (n + params.alpha + sr) * (n + sr) / one_minus
        ratios = [_ratio(r[k], lam[k], R[k], floor, n, k) for k in range(N)]
        bracket = 2 * n + params.alpha + mp.fsum(l - t * Rj for l, t, Rj in zip(lam, t0, R))

        R_fields = [ev.field(lambda q, k=k: q.aux.R[n][k]) for k in range(N)]
        r_fields = [ev.field(lambda q, k=k: q.aux.r[n][k]) for k in range(N)]
        for k in range(N):
            i = k + 1
            dR = delta(R_fields[k], t0, cfg)
            dr = delta(r_fields[k], t0, cfg)
            report.check(f"re1[{i}]", dR, (bracket + t0[k]) * R[k] + 2 * r[k] - lam[k], terms=[lam[k], r[k]])
            report.check(
                f"re2[{i}]",
                dr,
                ratios[k] - R[k] * core - R[k] * mp.fsum(ratios),
                terms=[ratios[k], R[k] * core],
            )
            report.check(f"re5[{i}]", dr, ratios[k] - beta_n * R[k], terms=[ratios[k]])
            report.check(
                f"qae[{i}]",
                beta_n * R[k] ** 2 + dr * R[k],
                r[k] * (r[k] - lam[k]),
                terms=[beta_n * R[k] ** 2],
            )
        for j in range(N):
            for k in range(j + 1, N):
                report.check(
                    f"re3[{j + 1},{k + 1}]",
                    partial(R_fields[k], t0, j, cfg),
                    partial(R_fields[j], t0, k, cfg),
                    terms=[1],
                )
                report.check(
                    f"re4[{j + 1},{k + 1}]",
                    partial(r_fields[k], t0, j, cfg),
                    partial(r_fields[j], t0, k, cfg),
                    terms=[1],
                )
    return report


def _pde_rhs(params: WeightParams, n: int, R: Sequence, D: Sequence, k: int) -> mp.mpf:
    """Right-hand side of the second-order PDE for R_(n,k) given R and D = delta R."""
    alpha = params.alpha
    t = params.shifts
    lam = params.exponents
    Lam = params.total_exponent
    T = mp.fsum(tj * Rj for tj, Rj in zip(t, R))
    S_R = mp.fsum(R)
    S_D = mp.fsum(D)
    Rk = R[k]

    def split(j):
        return mp.mpf(0) if lam[j] == 0 else (D[j] ** 2 - lam[j] ** 2) / (2 * R[j])

    m_ = 2 * n + alpha - T
    return (
        (t[k] - T) * Rk
        + split(k)
        - Rk * mp.fsum(split(j) for j in range(len(R)))
        + Rk / 2 * ((t[k] + Lam) ** 2 - mp.fsum(Rj * (tj + Lam) ** 2 for Rj, tj in zip(R, t)))
        + Lam * Rk * S_D
        + m_ * Rk * (t[k] - T)
        + Rk / (2 * (S_R - 1)) * ((S_D - Lam * S_R + Lam) ** 2 - alpha**2)
    )


def pde_residual_R(
    params: WeightParams,
    n: int,
    cfg: Optional[FDConfig] = None,
    tol=PDE_TOLERANCE,
    rule: Optional[QuadratureRule] = None,
    m: int = DEFAULT_QUAD_M,
) -> ResidualReport:
    """Residual of the second-order PDE for each R_(n,k), entries ``pde-R[k]``.

    For N = 1 the report also holds ``pv-y``, the Painleve V form of
    y_n = R_(n,1) / (R_(n,1) - 1). Entries with lambda_k = 0 are skipped.
    """
    cfg, ev = _prepare(params, n, n, cfg, rule, m)
    report = ResidualReport(tolerance=tol)
    t0 = params.shifts
    N = params.n_deformations
    with mp.workprec(params.precision_bits):
        R = ev.snapshot(t0).aux.R[n]
        R_fields = [ev.field(lambda q, k=k: q.aux.R[n][k]) for k in range(N)]
        D = [delta(f, t0, cfg) for f in R_fields]
        for k, d in enumerate(params.deformations):
            if d.lam == 0:
                report.skip(f"pde-R[{k + 1}]", "zero field for lambda_k = 0")
                continue
            if abs(R[k]) < mp.mpf(SIGN_GUARD) or abs(mp.fsum(R) - 1) < mp.mpf(SIGN_GUARD):
                raise DegeneracyError(f"PDE denominators vanish at n={n}, k={k + 1}")
            report.check(f"pde-R[{k + 1}]", delta2(R_fields[k], t0, cfg), _pde_rhs(params, n, R, D, k), terms=[R[k]])

        if N == 1 and params.exponents[0] != 0:
            t = t0[0]
            lam = params.exponents[0]
            a = params.alpha
            R1 = R[0]
            dR = partial(R_fields[0], t0, 0, cfg)
            ddR = second_partial(R_fields[0], t0, 0, 0, cfg)
            y = R1 / (R1 - 1)
            dy = -dR / (R1 - 1) ** 2
            ddy = -ddR / (R1 - 1) ** 2 + 2 * dR**2 / (R1 - 1) ** 3
            rhs = (
                (1 / (2 * y) + 1 / (y - 1)) * dy**2
                - dy / t
                + (y - 1) ** 2 / t**2 * (a**2 * y / 2 - lam**2 / (2 * y))
                + (2 * n + a + 1 + lam) * y / t
                - y * (y + 1) / (2 * (y - 1))
            )
            report.check("pv-y", ddy, rhs, terms=[ddy, (2 * n + a + 1 + lam) * y / t])
    return report


def _sign(value: mp.mpf, guard: mp.mpf) -> int:
    if abs(value) < guard:
        return 0
    return 1 if value > 0 else -1


def _sigma_pde_value(B, U, S, n, alpha, sumM) -> mp.mpf:
    return (2 * B - U) ** 2 - 4 * B * (n + alpha - S) * (n - S) - sumM**2


def sigma_pde_residual(
    params: WeightParams,
    n: int,
    cfg: Optional[FDConfig] = None,
    tol=PDE_TOLERANCE,
    rule: Optional[QuadratureRule] = None,
    m: int = DEFAULT_QUAD_M,
    guard=SIGN_GUARD,
) -> ResidualReport:
    """Residual of the second-order PDE for sigma_n and its intermediate identities.

    Entries: ``sigma-pde``; ``r-sigma[k]`` (r_(n,k) = -d sigma_n/dt_k);
    ``beta-sigma``; ``R-sigma[k]`` (the root of the quadratic selected by the
    sign of R_(n,k) + R_(n-1,k) reproduces R_(n,k)). For N = 1 also
    ``sigma-pv`` and ``sigma-pv-jimbo``; for N = 2 ``sigma-n2``.
    Info values: ``R-sigma-opposite[k]`` (error of the other root) and
    ``R-sigma-printed[k]`` (error of the root with -sum t_j sigma_jk).
    """
    cfg, ev = _prepare(params, n, n, cfg, rule, m)
    report = ResidualReport(tolerance=tol)
    t0 = params.shifts
    N = params.n_deformations
    lam = params.exponents
    with mp.workprec(params.precision_bits):
        guard = mp.mpf(guard)
        alpha = params.alpha
        Lam = params.total_exponent
        s = ev.snapshot(t0)
        R_n, R_m, r_n = s.aux.R[n], s.aux.R[n - 1], s.aux.r[n]
        beta_n = s.table.beta_rec[n]
        jet = sigma_jet(ev, n, t0, cfg)
        sigma, g, H = jet.value, jet.grad, jet.hess

        B = -sigma + jet.delta + n * (n + alpha + Lam)
        M = [mp.fsum(t0[j] * H[j][k] for j in range(N)) for k in range(N)]
        Delta = [M[k] ** 2 + 4 * B * g[k] * (g[k] + lam[k]) for k in range(N)]
        for k in range(N):
            if Delta[k] < 0:
                _log.debug("Delta_%d = %s clipped at 0", k + 1, mp.nstr(Delta[k], 5))
        root = [mp.sqrt(max(d, mp.mpf(0))) for d in Delta]
        signs = [_sign(R_n[k] + R_m[k], guard) for k in range(N)]
        S = mp.fsum(g)

        report.check("beta-sigma", B, beta_n, terms=[beta_n])
        for k in range(N):
            report.check(f"r-sigma[{k + 1}]", -g[k], r_n[k], terms=[1])

        if any(sk == 0 for sk in signs):
            ambiguous = [k + 1 for k, sk in enumerate(signs) if sk == 0]
            _log.warning("sign of R_(n,k) + R_(n-1,k) ambiguous for k=%s", ambiguous)
            for choice in product((1, -1), repeat=len(ambiguous)):
                trial = list(signs)
                for k, c in zip(ambiguous, choice):
                    trial[k - 1] = c
                U = mp.fsum(sk * rt for sk, rt in zip(trial, root))
                report.record_info(f"sigma-pde{tuple(trial)}", _sigma_pde_value(B, U, S, n, alpha, mp.fsum(M)))
            report.skip("sigma-pde", f"sign of R_(n,k) + R_(n-1,k) ambiguous for k={ambiguous}")
        else:
            U = mp.fsum(sk * rt for sk, rt in zip(signs, root))
            report.check(
                "sigma-pde",
                _sigma_pde_value(B, U, S, n, alpha, mp.fsum(M)),
                0,
                terms=[(2 * B - U) ** 2, 4 * B * (n + alpha - S) * (n - S)],
            )

        for k in range(N):
            if lam[k] == 0:
                report.skip(f"R-sigma[{k + 1}]", "zero field for lambda_k = 0")
                continue
            sk = signs[k] if signs[k] else 1
            chosen = (M[k] + sk * root[k]) / (2 * B)
            report.check(f"R-sigma[{k + 1}]", chosen, R_n[k], terms=[R_n[k]])
            report.record_info(f"R-sigma-opposite[{k + 1}]", abs((M[k] - sk * root[k]) / (2 * B) - R_n[k]))
            report.record_info(f"R-sigma-printed[{k + 1}]", abs((-M[k] + sk * root[k]) / (2 * B) - R_n[k]))

        if N == 1:
            t = t0[0]
            l = lam[0]
            d1, d2 = g[0], H[0][0]
            lhs = (t * d1 - sigma + n * l + (2 * n + alpha + l) * d1) ** 2
            rhs = (t * d2) ** 2 + 4 * (t * d1 - sigma + n * (n + alpha + l)) * (d1**2 + l * d1)
            report.check("sigma-pv", lhs, rhs, terms=[lhs, rhs])
            h = sigma - n * l
            jimbo = (h - t * d1 + 2 * d1**2 + (l - 2 * n - alpha) * d1) ** 2 - 4 * d1 * (l + d1) * (d1 - n) * (
                d1 - n - alpha
            )
            report.check("sigma-pv-jimbo", (t * d2) ** 2, jimbo, terms=[jimbo])
        elif N == 2 and all(signs):
            u1, u2 = g
            s1, s2 = signs
            rhs = (
                -2 * u1 * u2
                + mp.fsum((2 * n + alpha + t0[k] + lam[k]) * g[k] for k in range(2))
                + n * Lam
                - (s1 * root[0] + s2 * root[1])
                - (M[0] * M[1] - s1 * s2 * root[0] * root[1]) / (2 * B)
            )
            report.check("sigma-n2", sigma, rhs, terms=[B, root[0], root[1]])
    return report


def lattice_points(t: Sequence, spread="0.1", per_axis: int = 3) -> List[Point]:
    """Product lattice of per_axis values t_k (1 + c spread), c centred on 0."""
    if per_axis < 1:
        raise ParameterError("per_axis must be >= 1")
    spread = mp.mpf(spread)
    offsets = [mp.mpf(i) - mp.mpf(per_axis - 1) / 2 for i in range(per_axis)]
    axes = [[tk * (1 + c * spread) for c in offsets] for tk in (mp.mpf(x) for x in t)]
    return [tuple(p) for p in product(*axes)]


def lattice_residuals(
    fn: Callable[..., ResidualReport],
    params: WeightParams,
    n: int,
    cfg: Optional[FDConfig] = None,
    per_axis: int = 3,
    spread="0.1",
    **kwargs,
) -> ResidualReport:
    """Run a residual suite at every lattice point around params.shifts.

    Entries are prefixed ``@i:`` with i the lattice index.
    """
    report = ResidualReport()
    with mp.workprec(params.precision_bits):
        points = lattice_points(params.shifts, spread, per_axis)
    for i, p in enumerate(points):
        report.merge(fn(params.with_shifts(p), n, cfg, **kwargs), prefix=f"@{i}:")
    return report
