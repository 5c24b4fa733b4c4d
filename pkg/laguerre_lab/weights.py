#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Deformed Laguerre weight and its potential.

The weight is

    w(x; t) = x**alpha * exp(-x) * prod_k (x + t_k)**lambda_k,  x >= 0,

and the potential is v(x) = -ln w(x) = x - alpha ln x - sum_k lambda_k ln(x + t_k).
"""

from dataclasses import dataclass
from typing import Sequence, Tuple, Union
import json
import logging

import mpmath as mp

from laguerre_lab.defaults import DEFAULT_PRECISION_BITS, MIN_PRECISION_BITS, PRESETS
from laguerre_lab.errors import DomainError, ParameterError

_log = logging.getLogger(__name__)


__author__ = "laguerre-lab developers"
__version__ = "0.1.0"
__license__ = "MIT"
__status__ = "Development"
__package__ = "laguerre_lab"
__date__ = "2026-10-17"

__all__ = [
    "Deformation",
    "WeightParams",
    "preset",
    "eval_weight",
    "eval_potential",
    "eval_potential_derivative",
    "potential_divided_difference",
    "deformation_factor",
]

Real = Union[int, str, float, mp.mpf]


@dataclass(frozen=True)
class Deformation:
    """One factor (x + t)**lam of the weight.

    Attributes:
        t (mpf): Positive shift.
        lam (mpf): Real exponent.
    """

    t: mp.mpf
    lam: mp.mpf


@dataclass(frozen=True)
class WeightParams:
    """Deformation data (alpha, t_k, lambda_k) and the working precision.

    Reals may be given as decimal strings, ints or mpf values; they are
    converted at ``precision_bits``.

    Args:
        alpha (Real): Exponent of x, alpha > 0.
        deformations (Sequence[Deformation | tuple]): One or more (t_k, lambda_k) pairs
            with pairwise distinct positive t_k.
        precision_bits (int): Working precision, at least 64 bits.

    Raises:
        ParameterError: When any of the above constraints is violated.

    Example:
        >>> params = WeightParams("1", [("1", "1")])
        >>> params.total_exponent
        mpf('1.0')
    """

    alpha: mp.mpf
    deformations: Tuple[Deformation, ...] = ()
    precision_bits: int = DEFAULT_PRECISION_BITS

    def __post_init__(self):
        if not isinstance(self.precision_bits, int) or self.precision_bits < MIN_PRECISION_BITS:
            raise ParameterError(
                f"precision_bits must be an integer >= {MIN_PRECISION_BITS}, got {self.precision_bits!r}"
            )
        with mp.workprec(self.precision_bits):
            alpha = _to_mpf(self.alpha, "alpha")
            deformations = []
            for d in self.deformations:
                t, lam = (d.t, d.lam) if isinstance(d, Deformation) else d
                deformations.append(Deformation(_to_mpf(t, "t"), _to_mpf(lam, "lambda")))

        if not deformations:
            raise ParameterError("at least one deformation (t_k, lambda_k) is required; use lambda_k = 0 for the classical weight")
        if alpha <= 0:
            raise ParameterError(f"alpha must be positive, got {mp.nstr(alpha, 10)}")
        shifts = [d.t for d in deformations]
        for t in shifts:
            if t <= 0:
                raise ParameterError(f"shifts t_k must be positive, got {mp.nstr(t, 10)}")
        if len(set(shifts)) != len(shifts):
            raise ParameterError("shifts t_k must be pairwise distinct")

        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "deformations", tuple(deformations))

    @property
    def n_deformations(self) -> int:
        return len(self.deformations)

    @property
    def shifts(self) -> Tuple[mp.mpf, ...]:
        return tuple(d.t for d in self.deformations)

    @property
    def exponents(self) -> Tuple[mp.mpf, ...]:
        return tuple(d.lam for d in self.deformations)

    @property
    def total_exponent(self) -> mp.mpf:
        """Lambda = sum_k lambda_k."""
        with mp.workprec(self.precision_bits):
            return mp.fsum(self.exponents)

    @property
    def is_convex(self) -> bool:
        """True when every lambda_k >= 0, which makes v convex on x > 0."""
        return all(lam >= 0 for lam in self.exponents)

    def with_shifts(self, shifts: Sequence[Real]) -> "WeightParams":
        """Copy of the parameters with the t-vector replaced."""
        if len(shifts) != self.n_deformations:
            raise ParameterError(
                f"expected {self.n_deformations} shifts, got {len(shifts)}"
            )
        return WeightParams(
            self.alpha,
            tuple(Deformation(t, d.lam) for t, d in zip(shifts, self.deformations)),
            self.precision_bits,
        )

    def with_precision(self, precision_bits: int) -> "WeightParams":
        return WeightParams(self.alpha, self.deformations, precision_bits)

    def as_dict(self) -> dict:
        digits = int(self.precision_bits * 0.30103) + 1
        return {
            "alpha": mp.nstr(self.alpha, digits),
            "deformations": [
                {"t": mp.nstr(d.t, digits), "lambda": mp.nstr(d.lam, digits)}
                for d in self.deformations
            ],
            "precision_bits": self.precision_bits,
        }

    @classmethod
    def from_dict(cls, d: dict, precision_bits: int = None) -> "WeightParams":
        try:
            alpha = d["alpha"]
            deformations = [(e["t"], e["lambda"]) for e in d.get("deformations", [])]
        except (KeyError, TypeError) as e:
            raise ParameterError(f"malformed weight parameters: {e}") from e
        bits = precision_bits or d.get("precision_bits", DEFAULT_PRECISION_BITS)
        return cls(alpha, tuple(deformations), bits)

    def to_json(self) -> str:
        return json.dumps(self.as_dict())

    @classmethod
    def from_json(cls, s: str) -> "WeightParams":
        try:
            d = json.loads(s)
        except json.JSONDecodeError as e:
            raise ParameterError(f"weight parameters are not valid JSON: {e}") from e
        return cls.from_dict(d)


def _to_mpf(value: Real, name: str) -> mp.mpf:
    if isinstance(value, float):
        # binary floats are accepted but logged, decimal strings keep precision
        _log.debug("%s given as binary float %r", name, value)
    try:
        return mp.mpf(value)
    except (TypeError, ValueError) as e:
        raise ParameterError(f"{name} is not a real number: {value!r}") from e


def preset(name: str, precision_bits: int = DEFAULT_PRECISION_BITS) -> WeightParams:
    """Named reference parameter set (``N1``, ``N2`` or ``classical``)."""
    try:
        d = PRESETS[name]
    except KeyError:
        raise ParameterError(f"unknown preset {name!r}, choose from {sorted(PRESETS)}") from None
    return WeightParams.from_dict(d, precision_bits)


def _log_factor(params: WeightParams, x: mp.mpf) -> mp.mpf:
    return mp.fsum(d.lam * mp.log(x + d.t) for d in params.deformations)


def deformation_factor(params: WeightParams, x: Real) -> mp.mpf:
    """prod_k (x + t_k)**lambda_k for x >= 0."""
    with mp.workprec(params.precision_bits):
        x = mp.mpf(x)
        if x < 0:
            raise DomainError(f"deformation factor needs x >= 0, got {mp.nstr(x, 10)}")
        return mp.exp(_log_factor(params, x))


def eval_weight(params: WeightParams, x: Real) -> mp.mpf:
    """Evaluate w(x; t).

    Args:
        params (WeightParams): Weight parameters.
        x (Real): Non-negative abscissa.

    Returns:
        mpf: w(x), exactly zero at x = 0.

    Raises:
        DomainError: When x < 0.
    """
    with mp.workprec(params.precision_bits):
        x = mp.mpf(x)
        if x < 0:
            raise DomainError(f"weight is supported on x >= 0, got {mp.nstr(x, 10)}")
        if x == 0:
            return mp.mpf(0)
        return mp.exp(params.alpha * mp.log(x) - x + _log_factor(params, x))


def eval_potential(params: WeightParams, x: Real) -> mp.mpf:
    """v(x) = x - alpha ln x - sum_k lambda_k ln(x + t_k) for x > 0."""
    with mp.workprec(params.precision_bits):
        x = mp.mpf(x)
        if x <= 0:
            raise DomainError(f"potential needs x > 0, got {mp.nstr(x, 10)}")
        return x - params.alpha * mp.log(x) - _log_factor(params, x)


def eval_potential_derivative(params: WeightParams, x: Real, order: int = 1) -> mp.mpf:
    """First or second derivative of the potential.

    Args:
        params (WeightParams): Weight parameters.
        x (Real): Positive abscissa.
        order (int): 1 or 2.

    Returns:
        mpf: v'(x) = 1 - alpha/x - sum lambda_k/(x+t_k) or
        v''(x) = alpha/x**2 + sum lambda_k/(x+t_k)**2.

    Raises:
        DomainError: When x <= 0.
        ParameterError: When order is not 1 or 2.
    """
    if order not in (1, 2):
        raise ParameterError(f"order must be 1 or 2, got {order!r}")
    with mp.workprec(params.precision_bits):
        x = mp.mpf(x)
        if x <= 0:
            raise DomainError(f"potential derivative needs x > 0, got {mp.nstr(x, 10)}")
        if order == 1:
            return 1 - params.alpha / x - mp.fsum(d.lam / (x + d.t) for d in params.deformations)
        return params.alpha / x**2 + mp.fsum(d.lam / (x + d.t) ** 2 for d in params.deformations)


def potential_divided_difference(params: WeightParams, x: Real, y: Real) -> mp.mpf:
    """(v'(x) - v'(y)) / (x - y) in closed form.

    Equals alpha/(x y) + sum_k lambda_k / ((x + t_k)(y + t_k)); smooth at x = y.
    """
    with mp.workprec(params.precision_bits):
        x, y = mp.mpf(x), mp.mpf(y)
        if x <= 0 or y <= 0:
            raise DomainError("divided difference needs x > 0 and y > 0")
        return params.alpha / (x * y) + mp.fsum(
            d.lam / ((x + d.t) * (y + d.t)) for d in params.deformations
        )
