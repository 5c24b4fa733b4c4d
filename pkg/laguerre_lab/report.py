#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Residual bookkeeping shared by every check.

A ResidualReport maps identity names to Residual entries, each holding the
absolute and relative residual and the tolerance it was judged against.
Reports merge under a prefix such as ``n=3:`` and serialise to decimal strings.
"""

from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, Iterator, List, Optional
import json
import logging

import mpmath as mp

_log = logging.getLogger(__name__)


__author__ = "laguerre-lab developers"
__version__ = "0.1.0"
__license__ = "MIT"
__status__ = "Development"
__package__ = "laguerre_lab"
__date__ = "2026-10-17"

__all__ = ["Residual", "ResidualReport", "decimal"]


_SCALE_FLOOR = mp.mpf("1e-300")


def decimal(x, digits: int = 20) -> str:
    """Format a real as a decimal string.

    Args:
        x (mpf | int | None): Value to format.
        digits (int): Significant digits.

    Returns:
        str: Decimal string, ``"nan"`` for None.
    """
    if x is None:
        return "nan"
    return mp.nstr(mp.mpf(x), digits)


@dataclass
class Residual:
    """Residual of one named identity.

    Attributes:
        name (str): Identity name, e.g. ``"S1"`` or ``"dr3[1]"``.
        absolute (mpf): |LHS - RHS|.
        relative (mpf): absolute scaled by the largest term magnitude.
        tolerance (mpf): Tolerance the verdict was taken against.
        passed (bool): absolute <= tolerance or relative <= tolerance.
        skipped (bool): Entry could not be evaluated, see note.
        empirical (bool): Tolerance is data driven, not fixed.
        note (str): Free-form remark.
    """

    name: str
    absolute: Optional[mp.mpf] = None
    relative: Optional[mp.mpf] = None
    tolerance: Optional[mp.mpf] = None
    passed: bool = True
    skipped: bool = False
    empirical: bool = False
    note: str = ""

    def as_dict(self) -> dict:
        if self.skipped:
            return {"skipped": True, "pass": True, "note": self.note}
        d = {
            "absolute": decimal(self.absolute),
            "relative": decimal(self.relative),
            "tolerance": decimal(self.tolerance, 6),
            "pass": self.passed,
        }
        if self.empirical:
            d["empirical"] = True
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class ResidualReport:
    """Named identity -> residual map with a tolerance verdict.

    Args:
        tolerance (mpf | str): Default tolerance of ``check``.

    Example:
        >>> report = ResidualReport(tolerance="1e-30")
        >>> report.check("S1", lhs, rhs)
        >>> report.passed
        True
    """

    tolerance: Optional[object] = None
    entries: Dict[str, Residual] = field(default_factory=dict)
    info: Dict[str, mp.mpf] = field(default_factory=dict)

    def check(
        self,
        name: str,
        lhs,
        rhs=0,
        tolerance=None,
        terms: Iterable = (),
        empirical: bool = False,
        note: str = "",
    ) -> Residual:
        """Record |lhs - rhs| under ``name``.

        The relative residual is scaled by the largest of |lhs|, |rhs| and
        |term| for every supplied term.
        """
        tol = tolerance if tolerance is not None else self.tolerance
        assert tol is not None, f"No tolerance given for {name}."
        tol = mp.mpf(tol)
        absolute = abs(mp.mpf(lhs) - mp.mpf(rhs))
        scale = max([abs(mp.mpf(lhs)), abs(mp.mpf(rhs))] + [abs(mp.mpf(t)) for t in terms])
        relative = absolute / max(scale, _SCALE_FLOOR)
        passed = bool(absolute <= tol or relative <= tol)
        res = Residual(name, absolute, relative, tol, passed, False, empirical, note)
        self.entries[name] = res
        if not passed:
            _log.debug("%s failed: absolute %s, relative %s", name, decimal(absolute, 5), decimal(relative, 5))
        return res

    def skip(self, name: str, note: str) -> Residual:
        res = Residual(name, skipped=True, note=note)
        self.entries[name] = res
        return res

    def record_info(self, name: str, value) -> None:
        self.info[name] = mp.mpf(value)

    def merge(self, other: "ResidualReport", prefix: str = "") -> "ResidualReport":
        for name, res in other.entries.items():
            self.entries[prefix + name] = replace(res, name=prefix + res.name) if prefix else res
        for name, value in other.info.items():
            self.info[prefix + name] = value
        return self

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.entries.values() if not r.skipped)

    def failures(self) -> List[Residual]:
        return [r for r in self.entries.values() if not r.skipped and not r.passed]

    def worst(self) -> Optional[Residual]:
        """Entry with the largest relative residual, skipped entries ignored."""
        checked = [r for r in self.entries.values() if not r.skipped]
        if not checked:
            return None
        return max(checked, key=lambda r: r.relative)

    def __getitem__(self, name: str) -> Residual:
        return self.entries[name]

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def __iter__(self) -> Iterator[Residual]:
        return iter(self.entries.values())

    def __len__(self) -> int:
        return len(self.entries)

    def as_dict(self) -> dict:
        d = {name: r.as_dict() for name, r in self.entries.items()}
        if self.info:
            d["info"] = {name: decimal(v) for name, v in self.info.items()}
        return d

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)
