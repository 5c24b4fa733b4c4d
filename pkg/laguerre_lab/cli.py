#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Command-line entry point of laguerre-lab.

Subcommands: table, aux, iterate, verify, residuals, scale, density. Every
run writes one machine-readable report (JSON, or CSV with a JSON header
line) and prints a summary table to standard output. Log records go to
standard error.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, TextIO, Tuple
import argparse
import csv
import io
import json
import logging
import sys

import mpmath as mp
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from laguerre_lab.calculus import (
    FDConfig,
    differential_relation_residuals,
    lattice_residuals,
    pde_residual_R,
    riccati_residuals,
    sigma_pde_residual,
    toda_residuals,
)
from laguerre_lab.coulomb import check_density, density, lagrange_multiplier, solve_endpoints
from laguerre_lab.defaults import (
    COMPATIBILITY_TOLERANCE,
    DEFAULT_QUAD_M,
    DENSITY_SAMPLES,
    DIFFERENTIAL_TOLERANCE,
    EXIT_CHECK_FAILED,
    EXIT_CONFIG_ERROR,
    EXIT_NUMERIC_ERROR,
    EXIT_OK,
    FD_ORDER,
    FD_STEP,
    PDE_TOLERANCE,
    PRESETS,
    REPORT_SCHEMA,
    SCALING_DEEP_N_LIST,
    SCALING_N_LIST,
)
from laguerre_lab.errors import DomainError, NumericError, ParameterError
from laguerre_lab.ladder import (
    auxiliary_identity_residuals,
    compatibility_residuals,
    compute_aux,
    default_z_samples,
)
from laguerre_lab.orthopoly import build_op_table, orthogonality_defect
from laguerre_lab.quadrature import rule_for
from laguerre_lab.recurrences import (
    DE3_LAMBDA1,
    DE3_PRINTED,
    compare_aux,
    iterate_difference_system,
    quadrature_initial_data,
    sum_rule_residuals,
)
from laguerre_lab.report import ResidualReport, decimal
from laguerre_lab.scaling import build_scaling_sequence, scaled_pde_residuals, scaled_point
from laguerre_lab.weights import WeightParams, preset

_log = logging.getLogger(__name__)


__author__ = "laguerre-lab developers"
__version__ = "0.1.0"
__license__ = "MIT"
__status__ = "Development"
__package__ = "laguerre_lab"
__date__ = "2026-10-17"

__all__ = ["RunConfig", "build_parser", "run", "main"]

COMMANDS = ("table", "aux", "iterate", "verify", "residuals", "scale", "density")
IDENTITIES = ("s1", "s2", "s2p", "lemma", "sum")
RESIDUAL_SETS = ("dr", "toda", "riccati", "pde-r", "pde-sigma")
SCALE_CHECKS = ("piii", "pde-r", "pde-sigma")

_SUITES: Dict[str, Tuple[Callable, str]] = {
    "dr": (differential_relation_residuals, DIFFERENTIAL_TOLERANCE),
    "toda": (toda_residuals, DIFFERENTIAL_TOLERANCE),
    "riccati": (riccati_residuals, DIFFERENTIAL_TOLERANCE),
    "pde-r": (pde_residual_R, PDE_TOLERANCE),
    "pde-sigma": (sigma_pde_residual, PDE_TOLERANCE),
}
_SCALE_ENTRIES = {"piii": ("sigma-piii", "pv-Y"), "pde-r": ("scaled-R",), "pde-sigma": ("scaled-sigma",)}


def _csv_list(value: str) -> List[str]:
    return [v.strip() for v in value.split(",") if v.strip()]


def _json_reals(value: str) -> List[str]:
    """JSON list of reals, kept as decimal strings."""
    try:
        items = json.loads(value, parse_float=str, parse_int=str)
    except json.JSONDecodeError as e:
        raise ParameterError(f"not a JSON list: {value!r}") from e
    if not isinstance(items, list):
        items = [items]
    return [str(v) for v in items]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="laguerre-lab",
        description="High-precision checks for orthogonal polynomials of the deformed Laguerre weight.",
    )
    parser.add_argument("--config", metavar="FILE", help="JSON file with the weight parameters")
    parser.add_argument("--preset", choices=sorted(PRESETS), default=None, help="named parameter set (default N1)")
    parser.add_argument("--precision-bits", metavar="BITS", type=int, default=None, help="working precision")
    parser.add_argument("--quad-m", metavar="M", type=int, default=DEFAULT_QUAD_M, help="Gauss-Laguerre node count")
    parser.add_argument("--out", metavar="PATH", default=None, help="report path")
    parser.add_argument("--format", choices=("csv", "json"), default="json", help="report format")
    parser.add_argument("--tol", metavar="TOL", default=None, help="override the tolerance (decimal string)")
    parser.add_argument(
        "-l", "--loglevel", metavar="LOGLEVEL", required=False, type=str, default="WARNING", help="log level"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="recurrence coefficients and Hankel determinants")
    p.add_argument("--nmax", type=int, default=10)

    p = sub.add_parser("aux", help="auxiliary quantities R_(n,k), r_(n,k)")
    p.add_argument("--nmax", type=int, default=10)

    p = sub.add_parser("iterate", help="run the difference system from the n = 0 data")
    p.add_argument("--nmax", type=int, default=8)
    p.add_argument("--compare-quadrature", action="store_true", help="compare with quadrature auxiliaries")
    p.add_argument("--de3-lambda1", action="store_true", help="weight the de3 update with lambda_1")

    p = sub.add_parser("verify", help="ladder compatibility and recurrence identities")
    p.add_argument("--identities", type=_csv_list, default=["s1", "s2", "s2p"])
    p.add_argument("--n", type=int, default=None, help="single degree, default 1..nmax-1")
    p.add_argument("--nmax", type=int, default=8)
    p.add_argument("--z", type=_csv_list, default=None, help="comma separated z samples")

    p = sub.add_parser("residuals", help="finite-difference checks of the t-derivative identities")
    p.add_argument("--set", type=_csv_list, default=["dr", "toda", "riccati"])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--point", type=_json_reals, default=None, help="JSON t-vector")
    p.add_argument("--fd-step", default=FD_STEP)
    p.add_argument("--fd-order", type=int, choices=(2, 4), default=FD_ORDER)
    p.add_argument("--richardson", action="store_true")
    p.add_argument("--lattice", type=int, default=0, metavar="PER_AXIS", help="repeat on a product lattice")

    p = sub.add_parser("scale", help="double-scaling sequence and limits")
    p.add_argument("--s", type=_json_reals, required=True, help="JSON s-vector")
    p.add_argument("--nlist", type=lambda v: [int(x) for x in _csv_list(v)], default=None)
    p.add_argument("--check", choices=SCALE_CHECKS, default=None)
    p.add_argument("--deep", action="store_true", help="extend the degree list to 128")

    p = sub.add_parser("density", help="Coulomb-fluid equilibrium density")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--samples", type=int, default=DENSITY_SAMPLES)
    return parser


@dataclass
class RunConfig:
    """Resolved configuration of one run.

    Attributes:
        command (str): Subcommand.
        params (WeightParams): Weight at the working precision.
        quad_m (int): Node count.
        out (str): Report path.
        fmt (str): ``csv`` or ``json``.
        tol (str | None): Tolerance override.
        options (dict): Subcommand options.
    """

    command: str
    params: WeightParams
    quad_m: int = DEFAULT_QUAD_M
    out: Optional[str] = None
    fmt: str = "json"
    tol: Optional[str] = None
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.out is None:
            self.out = f"laguerre-lab-{self.command}.{self.fmt}"

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        if args.config:
            try:
                with open(args.config) as f:
                    params = WeightParams.from_json(f.read())
            except OSError as e:
                raise ParameterError(f"cannot read config {args.config}: {e}") from e
            if args.precision_bits:
                params = params.with_precision(args.precision_bits)
        else:
            name = args.preset or "N1"
            params = preset(name, args.precision_bits) if args.precision_bits else preset(name)
        skip = {"config", "preset", "precision_bits", "quad_m", "out", "format", "tol", "loglevel", "command"}
        options = {k: v for k, v in vars(args).items() if k not in skip}
        config = cls(args.command, params, args.quad_m, args.out, args.format, args.tol, options)
        config.validate()
        return config

    def validate(self) -> None:
        """Check the subcommand options before any computation."""
        o = self.options
        if self.command not in COMMANDS:
            raise ParameterError(f"unknown command {self.command!r}")
        if self.quad_m < 2:
            raise ParameterError("--quad-m must be >= 2")
        if self.tol is not None:
            try:
                mp.mpf(self.tol)
            except (TypeError, ValueError):
                raise ParameterError(f"--tol is not a real number: {self.tol!r}") from None
        if "nmax" in o and o["nmax"] < 1:
            raise ParameterError("--nmax must be >= 1")
        if self.command == "verify":
            unknown = set(o["identities"]) - set(IDENTITIES)
            if unknown:
                raise ParameterError(f"unknown identities {sorted(unknown)}, choose from {IDENTITIES}")
            if o["n"] is not None and o["n"] < 1:
                raise ParameterError("--n must be >= 1")
        if self.command == "residuals":
            unknown = set(o["set"]) - set(RESIDUAL_SETS)
            if unknown:
                raise ParameterError(f"unknown residual sets {sorted(unknown)}, choose from {RESIDUAL_SETS}")
            if o["point"] is not None and len(o["point"]) != self.params.n_deformations:
                raise ParameterError("--point must have one entry per deformation")
            FDConfig(o["fd_step"], o["fd_order"], o["richardson"]).validate(self.params.precision_bits)
        if self.command == "scale":
            if len(o["s"]) != self.params.n_deformations:
                raise ParameterError("--s must have one entry per deformation")
            if o["nlist"] is not None and len(o["nlist"]) < 3:
                raise ParameterError("--nlist needs at least three degrees")
        if self.command == "density":
            if not self.params.is_convex:
                raise ParameterError(
                    "the Coulomb-fluid density assumes lambda_k >= 0 (convex potential, single interval)"
                )
            if o["n"] < 1 or o["samples"] < 1:
                raise ParameterError("--n and --samples must be >= 1")

    def as_dict(self) -> dict:
        options = {k: v for k, v in self.options.items()}
        return {
            "command": self.command,
            "params": self.params.as_dict(),
            "quad_m": self.quad_m,
            "format": self.fmt,
            "tol": self.tol,
            "options": options,
        }


@dataclass
class _Result:
    report: ResidualReport
    columns: List[str]
    rows: List[List[str]]


def _rows_from(write_csv: Callable[[TextIO], None]) -> Tuple[List[str], List[List[str]]]:
    buf = io.StringIO()
    write_csv(buf)
    rows = list(csv.reader(io.StringIO(buf.getvalue())))
    return rows[0], rows[1:]


def _tol(config: RunConfig, default) -> str:
    return config.tol if config.tol is not None else default


def _cmd_table(config: RunConfig) -> _Result:
    params = config.params
    rule = rule_for(params, config.quad_m)
    table = build_op_table(params, config.options["nmax"], rule)
    report = ResidualReport(tolerance=_tol(config, COMPATIBILITY_TOLERANCE))
    report.check("orthogonality", orthogonality_defect(table, rule), 0)
    return _Result(report, *_rows_from(table.write_csv))


def _aux_rows(aux) -> Tuple[List[str], List[List[str]]]:
    digits = int(aux.params.precision_bits * 0.30103)
    rows = []
    for n in range(aux.n_max + 1):
        for k in range(aux.params.n_deformations):
            rows.append([str(n), str(k + 1), decimal(aux.R[n][k], digits), decimal(aux.r[n][k], digits)])
    return ["n", "k", "R", "r"], rows


def _cmd_aux(config: RunConfig) -> _Result:
    params = config.params
    rule = rule_for(params, config.quad_m)
    table = build_op_table(params, config.options["nmax"], rule)
    aux = compute_aux(params, table, rule)
    tol = _tol(config, COMPATIBILITY_TOLERANCE)
    report = auxiliary_identity_residuals(table, aux, tol)
    report.merge(sum_rule_residuals(table, aux, tol))
    return _Result(report, *_aux_rows(aux))


def _cmd_iterate(config: RunConfig) -> _Result:
    params = config.params
    o = config.options
    rule = rule_for(params, config.quad_m)
    variant = DE3_LAMBDA1 if o["de3_lambda1"] else DE3_PRINTED
    iterated = iterate_difference_system(params, quadrature_initial_data(params, rule), o["nmax"], variant)
    report = ResidualReport(tolerance=_tol(config, "1e-20"))
    if not o["compare_quadrature"]:
        return _Result(report, *_aux_rows(iterated))
    table = build_op_table(params, o["nmax"], rule)
    comparison = compare_aux(iterated, compute_aux(params, table, rule))
    report.check("max-diff", comparison.max_diff, 0, note=f"de3 variant {variant}")
    return _Result(report, *_rows_from(comparison.write_csv))


def _select(report: ResidualReport, identities: Sequence[str]) -> ResidualReport:
    prefixes = {"s1": ("S1",), "s2": ("S2.", "S2["), "s2p": ("S2p",)}
    kept = ResidualReport(tolerance=report.tolerance)
    for name, entry in report.entries.items():
        for ident in identities:
            exact = {"s1": "S1", "s2": "S2", "s2p": "S2p"}.get(ident)
            if name == exact or name.startswith(prefixes.get(ident, ())):
                kept.entries[name] = entry
    return kept


def _report_rows(report: ResidualReport) -> Tuple[List[str], List[List[str]]]:
    rows = []
    for entry in report:
        d = entry.as_dict()
        rows.append([entry.name, d.get("absolute", ""), d.get("relative", ""), str(d["pass"]).lower()])
    return ["identity", "absolute", "relative", "pass"], rows


def _cmd_verify(config: RunConfig) -> _Result:
    params = config.params
    o = config.options
    n_values = [o["n"]] if o["n"] is not None else list(range(1, o["nmax"]))
    n_max = max(o["nmax"], max(n_values) + 1)
    rule = rule_for(params, config.quad_m)
    table = build_op_table(params, n_max, rule)
    aux = compute_aux(params, table, rule)
    tol = _tol(config, COMPATIBILITY_TOLERANCE)
    report = ResidualReport(tolerance=tol)
    compat = [i for i in o["identities"] if i in ("s1", "s2", "s2p")]
    if compat:
        for n in n_values:
            with mp.workprec(params.precision_bits):
                zs = [mp.mpf(z) for z in o["z"]] if o["z"] else default_z_samples(params, n)
            for z in zs:
                sub = compatibility_residuals(table, aux, n, z, tol)
                report.merge(_select(sub, compat), prefix=f"n={n},z={mp.nstr(z, 8)}:")
    if "lemma" in o["identities"]:
        report.merge(auxiliary_identity_residuals(table, aux, tol))
    if "sum" in o["identities"]:
        report.merge(sum_rule_residuals(table, aux, tol))
    return _Result(report, *_report_rows(report))


def _cmd_residuals(config: RunConfig) -> _Result:
    o = config.options
    params = config.params
    if o["point"] is not None:
        params = params.with_shifts(o["point"])
    cfg = FDConfig(o["fd_step"], o["fd_order"], o["richardson"])
    rule = rule_for(params, config.quad_m)
    report = ResidualReport()
    for name in o["set"]:
        fn, default_tol = _SUITES[name]
        tol = _tol(config, default_tol)
        if o["lattice"]:
            sub = lattice_residuals(fn, params, o["n"], cfg, per_axis=o["lattice"], tol=tol, rule=rule)
        else:
            sub = fn(params, o["n"], cfg, tol=tol, rule=rule)
        report.merge(sub, prefix=f"{name}:")
    return _Result(report, *_report_rows(report))


def _cmd_scale(config: RunConfig) -> _Result:
    o = config.options
    params = config.params
    n_list = o["nlist"] or (SCALING_DEEP_N_LIST if o["deep"] else SCALING_N_LIST)
    seq = build_scaling_sequence(params, o["s"], n_list)
    if o["check"]:
        full = scaled_pde_residuals(params, o["s"], n_list=n_list)
        report = ResidualReport(tolerance=full.tolerance, info=dict(full.info))
        wanted = _SCALE_ENTRIES[o["check"]] + ("limr+limR", "limR-grad")
        for name, entry in full.entries.items():
            if name.startswith(wanted):
                report.entries[name] = entry
    else:
        point = scaled_point(params, o["s"], n_list)
        report = ResidualReport()
        for k, (R, r) in enumerate(zip(point.R, point.r_over_n)):
            tol = 10 * (R.error + r.error) + mp.mpf("1e-8")
            report.check(f"limr+limR[{k + 1}]", r.limit + R.limit, 0, tolerance=tol, empirical=True)
        report.record_info("sigma-limit", point.sigma.limit)
        report.record_info("sigma-error", point.sigma.error)
    return _Result(report, *_rows_from(seq.write_csv))


def _cmd_density(config: RunConfig) -> _Result:
    o = config.options
    params = config.params
    interval = solve_endpoints(params, o["n"])
    report = check_density(interval, samples=o["samples"], tol=_tol(config, "1e-15"))
    report.record_info("a", interval.a)
    report.record_info("b", interval.b)
    report.record_info("A", lagrange_multiplier(interval))
    rows = []
    with mp.workprec(params.precision_bits):
        width = interval.b - interval.a
        for i in range(o["samples"] + 2):
            x = interval.a + width * i / (o["samples"] + 1)
            rows.append([decimal(x, 30), decimal(density(interval, x), 30)])
    return _Result(report, ["x", "psi"], rows)


_COMMANDS = {
    "table": _cmd_table,
    "aux": _cmd_aux,
    "iterate": _cmd_iterate,
    "verify": _cmd_verify,
    "residuals": _cmd_residuals,
    "scale": _cmd_scale,
    "density": _cmd_density,
}


def _write(config: RunConfig, result: _Result) -> None:
    header = {"schema": REPORT_SCHEMA, "command": config.command, "config": config.as_dict(), "report": result.report.as_dict()}
    with open(config.out, "w", newline="") as f:
        if config.fmt == "json":
            header["data"] = {"columns": result.columns, "rows": result.rows}
            json.dump(header, f, indent=2, sort_keys=True)
            f.write("\n")
        else:
            f.write("# " + json.dumps(header, sort_keys=True) + "\n")
            writer = csv.writer(f)
            writer.writerow(result.columns)
            writer.writerows(result.rows)


def _summary(config: RunConfig, result: _Result, console: Console) -> None:
    report = result.report
    table = Table(title=f"laguerre-lab {config.command}")
    table.add_column("identity")
    table.add_column("absolute", justify="right")
    table.add_column("relative", justify="right")
    table.add_column("tolerance", justify="right")
    table.add_column("pass")
    for entry in report:
        d = entry.as_dict()
        if entry.skipped:
            table.add_row(entry.name, "", "", "", f"[yellow]skipped[/yellow] {entry.note}")
            continue
        verdict = "[green]ok[/green]" if entry.passed else "[red]FAIL[/red]"
        if entry.empirical:
            verdict += " (empirical)"
        table.add_row(entry.name, d["absolute"], d["relative"], d["tolerance"], verdict)
    for name, value in report.info.items():
        table.add_row(f"[dim]{name}[/dim]", decimal(value), "", "", "info")
    console.print(table)
    console.print(f"report written to {config.out}")


def run(config: RunConfig, console: Optional[Console] = None) -> int:
    """Execute one configured command, write its report and return the exit code."""
    console = console or Console()
    result = _COMMANDS[config.command](config)
    _write(config, result)
    _summary(config, result, console)
    if not result.report.passed:
        names = ", ".join(e.name for e in result.report.failures())
        _log.error("failed checks: %s", names)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _configure_logging(loglevel: str) -> None:
    level = logging.getLevelName(loglevel.upper())
    if not isinstance(level, int):
        raise ParameterError(f"unknown log level {loglevel!r}")
    logging.basicConfig(
        level=level,
        format="%(module)s %(funcName)s:%(lineno)d %(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_time=False, show_path=False)],
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _configure_logging(args.loglevel)
        config = RunConfig.from_args(args)
    except (ParameterError, DomainError) as e:
        _log.error("configuration error: %s", e)
        print(f"configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    try:
        return run(config)
    except (ParameterError, DomainError) as e:
        _log.error("configuration error: %s", e)
        print(f"configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except NumericError as e:
        _log.error("numeric breakdown: %s", e)
        print(f"numeric breakdown: {e}", file=sys.stderr)
        return EXIT_NUMERIC_ERROR


if __name__ == "__main__":
    sys.exit(main())
