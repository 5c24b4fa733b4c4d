#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Coulomb-fluid equilibrium density for lambda_k >= 0.

For a convex potential v(x) = x - alpha ln x - sum lambda_k ln(x + t_k) the
n-particle equilibrium density lives on one interval (a, b). The endpoints
solve

    alpha / sqrt(a b) + sum lambda_k / sqrt((a + t_k)(b + t_k)) = 1,
    (a + b) / 2 = 2 n + alpha + Lambda - sum lambda_k t_k / sqrt((a + t_k)(b + t_k)),

and the density is

    psi(x) = sqrt((b - x)(x - a)) / (2 pi)
             * (alpha / (x sqrt(a b)) + sum lambda_k / ((x + t_k) sqrt((a + t_k)(b + t_k)))).

Integrals against 1 / sqrt((b - x)(x - a)) use Chebyshev-Gauss nodes
x_i = c + h cos((2 i - 1) pi / 2M), each with weight pi / M.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple
import logging

import mpmath as mp

from laguerre_lab.defaults import (
    CHEBYSHEV_NODES,
    COULOMB_TOLERANCE,
    DENSITY_SAMPLES,
    LOG_KERNEL_NODES,
    NEWTON_DAMPING,
    NEWTON_MAX_ITERATIONS,
)
from laguerre_lab.errors import DomainError, ParameterError, SolverError
from laguerre_lab.report import ResidualReport
from laguerre_lab.weights import (
    Deformation,
    WeightParams,
    eval_potential,
    eval_potential_derivative,
    potential_divided_difference,
)

_log = logging.getLogger(__name__)


__author__ = "laguerre-lab developers"
__version__ = "0.1.0"
__license__ = "MIT"
__status__ = "Development"
__package__ = "laguerre_lab"
__date__ = "2026-10-17"

__all__ = [
    "SupportInterval",
    "endpoint_residuals",
    "solve_endpoints",
    "density",
    "density_from_integral",
    "lagrange_multiplier",
    "log_potential",
    "check_density",
    "integral_identity_residuals",
    "density_limit_profile",
]

_CONTINUATION_STEPS = 4
_MAX_HALVINGS = 60
_RESTART_FACTORS = (("0.25", "1"), ("1", "4"), ("4", "4"), ("0.5", "0.5"))


@dataclass
class SupportInterval:
    """Support (a, b) of the equilibrium density of n particles.

    Attributes:
        a (mpf): Left endpoint, a > 0.
        b (mpf): Right endpoint, b > a.
        n (int): Particle number.
        params (WeightParams): Weight with every lambda_k >= 0.
        iterations (int): Newton iterations of the last continuation stage.
        trace (List[tuple]): (iteration, a, b, |F|) of the last stage.
        alternate_solutions (List[Tuple[mpf, mpf]]): Other roots found by
            multi-start search.
    """

    a: mp.mpf
    b: mp.mpf
    n: int
    params: WeightParams
    iterations: int = 0
    trace: List[tuple] = field(default_factory=list)
    alternate_solutions: List[Tuple[mp.mpf, mp.mpf]] = field(default_factory=list)

    def __post_init__(self):
        if not 0 < self.a < self.b:
            raise DomainError(f"support needs 0 < a < b, got a={mp.nstr(self.a, 10)}, b={mp.nstr(self.b, 10)}")

    @property
    def centre(self) -> mp.mpf:
        return (self.a + self.b) / 2

    @property
    def half_width(self) -> mp.mpf:
        return (self.b - self.a) / 2

    def as_dict(self, digits: int = 30) -> dict:
        return {
            "a": mp.nstr(self.a, digits),
            "b": mp.nstr(self.b, digits),
            "n": self.n,
            "iterations": self.iterations,
            "alternate_solutions": [[mp.nstr(a, digits), mp.nstr(b, digits)] for a, b in self.alternate_solutions],
        }


def _check_params(params: WeightParams, n: int) -> None:
    if n < 1:
        raise ParameterError(f"particle number must be >= 1, got {n}")
    if not params.is_convex:
        raise ParameterError(
            "the Coulomb-fluid density assumes lambda_k >= 0 (convex potential, single interval)"
        )


def _g(a, b, t=0):
    return 1 / mp.sqrt((a + t) * (b + t))


def endpoint_residuals(params: WeightParams, n: int, a, b) -> Tuple[mp.mpf, mp.mpf]:
    """The two endpoint equations F1(a, b), F2(a, b)."""
    with mp.workprec(params.precision_bits):
        a, b = mp.mpf(a), mp.mpf(b)
        g = [_g(a, b, d.t) for d in params.deformations]
        f1 = params.alpha * _g(a, b) + mp.fsum(d.lam * gk for d, gk in zip(params.deformations, g)) - 1
        f2 = (
            2 * n
            + params.alpha
            + params.total_exponent
            - mp.fsum(d.lam * d.t * gk for d, gk in zip(params.deformations, g))
            - (a + b) / 2
        )
        return f1, f2


def _jacobian(params: WeightParams, a, b):
    g0 = _g(a, b)
    j11 = -params.alpha * g0**3 * b / 2
    j12 = -params.alpha * g0**3 * a / 2
    j21 = j22 = -mp.mpf(1) / 2
    for d in params.deformations:
        gk3 = _g(a, b, d.t) ** 3
        j11 -= d.lam * gk3 * (b + d.t) / 2
        j12 -= d.lam * gk3 * (a + d.t) / 2
        j21 += d.lam * d.t * gk3 * (b + d.t) / 2
        j22 += d.lam * d.t * gk3 * (a + d.t) / 2
    return j11, j12, j21, j22


def _norm(f):
    return max(abs(f[0]), abs(f[1]))


def _newton(params: WeightParams, n: int, a, b, tol, max_iterations: int):
    damping = mp.mpf(NEWTON_DAMPING)
    f = endpoint_residuals(params, n, a, b)
    trace = [(0, a, b, _norm(f))]
    for it in range(1, max_iterations + 1):
        if _norm(f) < tol:
            return a, b, it - 1, trace
        j11, j12, j21, j22 = _jacobian(params, a, b)
        det = j11 * j22 - j12 * j21
        if det == 0:
            raise SolverError("singular endpoint Jacobian", trace)
        da = (-f[0] * j22 + f[1] * j12) / det
        db = (-f[1] * j11 + f[0] * j21) / det
        step = mp.mpf(1)
        for _ in range(_MAX_HALVINGS):
            a_new, b_new = a + step * da, b + step * db
            if 0 < a_new < b_new:
                f_new = endpoint_residuals(params, n, a_new, b_new)
                if _norm(f_new) <= _norm(f) or _norm(f) < tol * 1e3:
                    break
            step *= damping
        else:
            raise SolverError(f"no admissible Newton step at iteration {it}", trace)
        a, b, f = a_new, b_new, f_new
        trace.append((it, a, b, _norm(f)))
        _log.debug("Newton %d: a=%s b=%s |F|=%s", it, mp.nstr(a, 15), mp.nstr(b, 15), mp.nstr(_norm(f), 5))
    if _norm(f) < tol:
        return a, b, max_iterations, trace
    raise SolverError(f"endpoint Newton did not converge in {max_iterations} iterations", trace)


def _scaled(params: WeightParams, tau) -> WeightParams:
    return WeightParams(
        params.alpha,
        tuple(Deformation(d.t, d.lam * tau) for d in params.deformations),
        params.precision_bits,
    )


def solve_endpoints(
    params: WeightParams,
    n: int,
    tol=None,
    max_iterations: int = NEWTON_MAX_ITERATIONS,
    multistart: bool = True,
) -> SupportInterval:
    """Solve the endpoint equations by damped Newton.

    The solution is continued from the lambda = 0 closed form
    a, b = alpha + 2n -/+ 2 sqrt(n (n + alpha)) by scaling every lambda_k
    from 0 to its value in equal steps.

    Args:
        params (WeightParams): Weight with lambda_k >= 0.
        n (int): Particle number >= 1.
        tol (Real): Residual tolerance, default 2**(-0.8 bits).
        max_iterations (int): Newton cap per continuation stage.
        multistart (bool): Restart Newton from scaled guesses to look for other roots.

    Returns:
        SupportInterval: The converged support.

    Raises:
        ParameterError: For n < 1 or a negative lambda_k.
        SolverError: When Newton does not converge; carries the trace.
    """
    _check_params(params, n)
    with mp.workprec(params.precision_bits):
        tol = mp.mpf(tol) if tol is not None else mp.mpf(2) ** (-int(0.8 * params.precision_bits))
        a = params.alpha + 2 * n - 2 * mp.sqrt(n * (n + params.alpha))
        b = params.alpha + 2 * n + 2 * mp.sqrt(n * (n + params.alpha))
        iterations, trace = 0, []
        if params.total_exponent != 0:
            for step in range(1, _CONTINUATION_STEPS + 1):
                stage = _scaled(params, mp.mpf(step) / _CONTINUATION_STEPS)
                a, b, iterations, trace = _newton(stage, n, a, b, tol, max_iterations)
        else:
            a, b, iterations, trace = _newton(params, n, a, b, tol, max_iterations)
        interval = SupportInterval(a, b, n, params, iterations, trace)
        _log.info("endpoints a=%s b=%s after %d iterations", mp.nstr(a, 20), mp.nstr(b, 20), iterations)

        if multistart:
            for fa, fb in _RESTART_FACTORS:
                a0, b0 = a * mp.mpf(fa), b * mp.mpf(fb)
                if not 0 < a0 < b0:
                    continue
                try:
                    a1, b1, _, _ = _newton(params, n, a0, b0, tol, max_iterations)
                except SolverError:
                    continue
                known = [(a, b)] + interval.alternate_solutions
                if all(abs(a1 - x) > tol * 1e6 * (1 + abs(x)) or abs(b1 - y) > tol * 1e6 * (1 + abs(y)) for x, y in known):
                    _log.warning("second endpoint solution a=%s b=%s", mp.nstr(a1, 15), mp.nstr(b1, 15))
                    interval.alternate_solutions.append((a1, b1))
        return interval


def _bracket(interval: SupportInterval, x) -> mp.mpf:
    params = interval.params
    a, b = interval.a, interval.b
    return params.alpha / (x * mp.sqrt(a * b)) + mp.fsum(
        d.lam * _g(a, b, d.t) / (x + d.t) for d in params.deformations
    )


def density(interval: SupportInterval, x) -> mp.mpf:
    """psi(x) on [a, b], zero at the endpoints.

    Raises:
        DomainError: When x lies outside [a, b].
    """
    with mp.workprec(interval.params.precision_bits):
        x = mp.mpf(x)
        a, b = interval.a, interval.b
        if not a <= x <= b:
            raise DomainError(f"density is supported on [{mp.nstr(a, 10)}, {mp.nstr(b, 10)}], got {mp.nstr(x, 10)}")
        if x == a or x == b:
            return mp.mpf(0)
        return mp.sqrt((b - x) * (x - a)) / (2 * mp.pi) * _bracket(interval, x)


def _chebyshev_nodes(interval: SupportInterval, M: int) -> List[mp.mpf]:
    c, h = interval.centre, interval.half_width
    return [c + h * mp.cos((2 * i - 1) * mp.pi / (2 * M)) for i in range(1, M + 1)]


def density_from_integral(interval: SupportInterval, x, nodes: int = CHEBYSHEV_NODES) -> mp.mpf:
    """psi(x) from the principal-value representation.

    The principal value is removed with the divided difference of v', so
    psi(x) = sqrt((b - x)(x - a)) / (2 pi**2) * (pi / M) sum_i (v'(x) - v'(y_i)) / (x - y_i).
    """
    params = interval.params
    with mp.workprec(params.precision_bits):
        x = mp.mpf(x)
        a, b = interval.a, interval.b
        if not a < x < b:
            raise DomainError(f"principal-value density needs a < x < b, got {mp.nstr(x, 10)}")
        ys = _chebyshev_nodes(interval, nodes)
        integral = mp.pi / nodes * mp.fsum(potential_divided_difference(params, x, y) for y in ys)
        return mp.sqrt((b - x) * (x - a)) / (2 * mp.pi**2) * integral


def lagrange_multiplier(interval: SupportInterval) -> mp.mpf:
    """Closed-form Lagrange multiplier A of the equilibrium problem."""
    params = interval.params
    with mp.workprec(params.precision_bits):
        a, b, n = interval.a, interval.b, interval.n
        return (
            (a + b) / 2
            - params.alpha * mp.log((a + b + 2 * mp.sqrt(a * b)) / 4)
            - 2 * n * mp.log((b - a) / 4)
            - mp.fsum(
                d.lam * mp.log((a + b + 2 * d.t + 2 * mp.sqrt((a + d.t) * (b + d.t))) / 4)
                for d in params.deformations
            )
        )


class _LogKernel:
    """Chebyshev expansion of psi(y) sqrt((b - y)(y - a)) for the log potential."""

    def __init__(self, interval: SupportInterval, nodes: int):
        self.interval = interval
        M = nodes
        thetas = [(2 * i - 1) * mp.pi / (2 * M) for i in range(1, M + 1)]
        c, h = interval.centre, interval.half_width
        values = []
        for th in thetas:
            y = c + h * mp.cos(th)
            values.append((interval.b - y) * (y - interval.a) * _bracket(interval, y) / (2 * mp.pi))
        self.coeffs = [
            2 * mp.fsum(v * mp.cos(k * th) for v, th in zip(values, thetas)) / M for k in range(M)
        ]

    def __call__(self, x) -> mp.mpf:
        c, h = self.interval.centre, self.interval.half_width
        X = (x - c) / h
        tail = mp.mpf(0)
        t_prev, t_cur = mp.mpf(1), X
        for k in range(1, len(self.coeffs)):
            tail += self.coeffs[k] * t_cur / k
            t_prev, t_cur = t_cur, 2 * X * t_cur - t_prev
        return (mp.log(h) - mp.log(2)) * mp.pi * self.coeffs[0] / 2 - mp.pi * tail


def log_potential(interval: SupportInterval, x, nodes: int = LOG_KERNEL_NODES) -> mp.mpf:
    """integral over (a, b) of ln|x - y| psi(y) dy for a <= x <= b."""
    with mp.workprec(interval.params.precision_bits):
        x = mp.mpf(x)
        if not interval.a <= x <= interval.b:
            raise DomainError("log potential is evaluated on the support only")
        return _LogKernel(interval, nodes)(x)


def _sample_points(interval: SupportInterval, samples: int) -> List[mp.mpf]:
    a, b = interval.a, interval.b
    return [a + (b - a) * (i + 1) / (samples + 1) for i in range(samples)]


def check_density(
    interval: SupportInterval,
    samples: int = DENSITY_SAMPLES,
    nodes: int = CHEBYSHEV_NODES,
    log_nodes: int = LOG_KERNEL_NODES,
    tol=COULOMB_TOLERANCE,
) -> ResidualReport:
    """Residuals of the conditions defining the equilibrium density.

    Entries: ``endpoint-1``, ``endpoint-2``, ``normalization`` (integral of
    psi equals n), ``condition1`` (integral of v' / sqrt((b-x)(x-a)) is 0),
    ``condition2`` (integral of x v' / sqrt((b-x)(x-a)) is 2 n pi) and
    ``constancy[i]`` (v(x_i) - 2 integral ln|x_i - y| psi(y) dy equals A).
    """
    params = interval.params
    report = ResidualReport(tolerance=tol)
    with mp.workprec(params.precision_bits):
        a, b, n = interval.a, interval.b, interval.n
        f1, f2 = endpoint_residuals(params, n, a, b)
        report.check("endpoint-1", f1, 0, terms=[1])
        report.check("endpoint-2", f2, 0, terms=[(a + b) / 2])

        xs = _chebyshev_nodes(interval, nodes)
        mass = mp.fsum((b - x) * (x - a) * _bracket(interval, x) for x in xs) / (2 * nodes)
        report.check("normalization", mass, n)
        v1 = [eval_potential_derivative(params, x) for x in xs]
        report.check("condition1", mp.pi / nodes * mp.fsum(v1), 0, terms=[1])
        report.check("condition2", mp.pi / nodes * mp.fsum(x * d for x, d in zip(xs, v1)), 2 * n * mp.pi)

        A = lagrange_multiplier(interval)
        kernel = _LogKernel(interval, log_nodes)
        for i, x in enumerate(_sample_points(interval, samples)):
            value = eval_potential(params, x) - 2 * kernel(x)
            report.check(f"constancy[{i}]", value, A, terms=[A, eval_potential(params, x)])
        report.record_info("A", A)
    return report


def integral_identity_residuals(a, b, t, y=None, precision_bits: int = 333, tol="1e-20") -> ResidualReport:
    """Verify the closed-form integrals used for the density by tanh-sinh quadrature.

    Integrals over (a, b) against 1 / sqrt((b - x)(x - a)) are mapped to
    (0, pi) with x = c + h cos(theta). ``y`` is an interior point for the
    log-kernel identity, default the centre.
    """
    report = ResidualReport(tolerance=tol)
    with mp.workprec(precision_bits):
        a, b, t = mp.mpf(a), mp.mpf(b), mp.mpf(t)
        if not 0 < a < b or t <= 0:
            raise ParameterError("identities need 0 < a < b and t > 0")
        c, h = (a + b) / 2, (b - a) / 2
        y = c if y is None else mp.mpf(y)
        if not a < y < b:
            raise ParameterError("log-kernel point must lie in (a, b)")

        def arc(f, splits=()):
            return mp.quad(lambda th: f(c + h * mp.cos(th)), [0] + list(splits) + [mp.pi])

        report.check("reciprocal", arc(lambda x: 1 / x), mp.pi / mp.sqrt(a * b))
        report.check("reciprocal-shift", arc(lambda x: 1 / (x + t)), mp.pi / mp.sqrt((a + t) * (b + t)))
        report.check("linear", arc(lambda x: x), mp.pi * (a + b) / 2)
        report.check("log", arc(mp.log), 2 * mp.pi * mp.log((mp.sqrt(a) + mp.sqrt(b)) / 2))
        report.check(
            "log-shift",
            arc(lambda x: mp.log(x + t)),
            2 * mp.pi * mp.log((mp.sqrt(a + t) + mp.sqrt(b + t)) / 2),
        )
        theta0 = mp.acos((y - c) / h)
        report.check("log-kernel", arc(lambda x: mp.log(abs(x - y)), [theta0]), mp.pi * mp.log((b - a) / 4))
        # S = sin(phi / 2)**2 maps (0, 1) to (0, pi) with dS / sqrt(S (1 - S)) = dphi
        report.check("arcsine", mp.quad(lambda S: 1 / mp.sqrt(S * (1 - S)), [0, 1]), mp.pi)
        # 1 - S = sin(u)**2 with u = (pi - phi) / 2; the log argument never cancels to 0
        report.check(
            "arcsine-log",
            4 * mp.quad(lambda u: mp.log(mp.sin(u)), [0, mp.pi / 2]),
            -2 * mp.pi * mp.log(2),
        )
    return report


def density_limit_profile(y) -> mp.mpf:
    """sqrt((1 - y) / y) / (2 pi), the lambda = 0 limit of psi(4 n y) on (0, 1]."""
    y = mp.mpf(y)
    if not 0 < y <= 1:
        raise DomainError(f"limit profile is defined on (0, 1], got {mp.nstr(y, 10)}")
    return mp.sqrt((1 - y) / y) / (2 * mp.pi)
