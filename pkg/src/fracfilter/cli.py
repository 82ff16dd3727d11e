"""Command-line front end: ``fracfilter {steady,sweep,verify}``.

CSV goes to standard output and diagnostics to standard error. Exit codes:
0 ok, 1 usage, 2 uncovered regime, 3 numerical failure, 4 verification
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from . import closed_form as cf
from . import gauss_oracle as go
from .errors import DomainError, FracFilterError, RegimeError
from .params import ModelParams
from .verification import SUITES, run_suite

__all__ = ["SweepSpec", "main", "build_parser", "EXIT_OK", "EXIT_USAGE", "EXIT_REGIME", "EXIT_NUMERICAL", "EXIT_VERIFY"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_REGIME = 2
EXIT_NUMERICAL = 3
EXIT_VERIFY = 4

STEADY_HEADER = ("h1", "h2", "beta", "mu", "eps", "method", "p_infinity", "quad_err")


def fmt(x: float, digits: int = 12) -> str:
    """Locale-independent fixed-precision formatting."""
    return f"{x:.{digits}g}"


@dataclass(frozen=True)
class SweepSpec:
    """A one-parameter sweep over the horizon ``T`` or the noise level ``eps``."""

    variable: str
    start: float
    stop: float
    points: int
    spacing: str = "log"

    def __post_init__(self):
        if self.variable not in ("T", "eps"):
            raise DomainError("sweep variable must be T or eps")
        if self.spacing not in ("log", "linear"):
            raise DomainError("spacing must be log or linear")
        if self.points < 2:
            raise DomainError("a sweep needs at least 2 points")
        if not (self.start > 0 and self.stop > 0):
            raise DomainError("sweep bounds must be positive")
        if not self.start < self.stop:
            raise DomainError("sweep requires from < to")

    def values(self) -> np.ndarray:
        if self.spacing == "log":
            return np.logspace(math.log10(self.start), math.log10(self.stop), self.points)
        return np.linspace(self.start, self.stop, self.points)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    for name in ("h1", "h2", "beta", "mu", "eps"):
        p.add_argument(f"--{name}", type=float, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fracfilter", description="Steady-state filtering errors for fractional linear models.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    steady = sub.add_parser("steady", help="evaluate P_inf at one parameter point")
    _add_model_flags(steady)
    steady.add_argument("--method", choices=("auto",) + cf.METHODS, default="auto")
    steady.add_argument("--tol", type=float, default=None)

    sweep = sub.add_parser("sweep", help="sweep the horizon or the noise level")
    _add_model_flags(sweep)
    sweep.add_argument("--var", choices=("T", "eps"), required=True)
    sweep.add_argument("--from", dest="start", type=float, required=True)
    sweep.add_argument("--to", dest="stop", type=float, required=True)
    sweep.add_argument("--points", type=int, required=True)
    sweep.add_argument("--spacing", choices=("log", "linear"), default="log")
    sweep.add_argument("--method", choices=("auto",) + cf.METHODS, default="auto")
    sweep.add_argument("--with-oracle", action="store_true")
    sweep.add_argument("--grid", type=int, default=1024, help="finest oracle grid; runs use N/4, N/2, N")
    sweep.add_argument("--horizon", type=float, default=1.0, help="oracle horizon for eps sweeps")

    verify = sub.add_parser("verify", help="run self-verification suites")
    verify.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")
    verify.add_argument("--tol-scale", type=float, default=1.0)
    return parser


def _params(ns) -> ModelParams:
    return ModelParams(ns.h1, ns.h2, ns.beta, ns.mu, ns.eps)


def _writer(buf):
    return csv.writer(buf, lineterminator="\n")


def cmd_steady(ns, out) -> int:
    params = _params(ns)
    if ns.tol is not None and not ns.tol > 0:
        raise DomainError("--tol must be positive")
    res = cf.p_infinity(params, ns.method, tol=ns.tol)
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(STEADY_HEADER)
    w.writerow(
        [fmt(params.h1), fmt(params.h2), fmt(params.beta), fmt(params.mu), fmt(params.eps),
         res.method, fmt(res.p_infinity), fmt(res.quad_error)]
    )
    out.write(buf.getvalue())
    return EXIT_OK


def _slope(x: Sequence[float], y: Sequence[float]) -> float:
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


def cmd_sweep(ns, out) -> int:
    params = _params(ns)
    spec = SweepSpec(ns.var, ns.start, ns.stop, ns.points, ns.spacing)
    if ns.with_oracle:
        if ns.grid < 32:
            raise DomainError("--grid must be at least 32")
        if not ns.horizon > 0:
            raise DomainError("--horizon must be positive")
    grid = (ns.grid // 4, ns.grid // 2, ns.grid)
    rows: List[List[str]] = []
    closed, oracle = [], []
    for v in spec.values():
        v = float(v)
        p = params.replace(eps=v) if spec.variable == "eps" else params
        pc = cf.p_infinity(p, ns.method).p_infinity
        closed.append(pc)
        row = [fmt(v), fmt(pc)]
        if ns.with_oracle:
            horizon = v if spec.variable == "T" else ns.horizon
            po = go.oracle_run(p, horizon, grid).extrapolated
            oracle.append(po)
            row += [fmt(po), fmt(abs(po - pc) / pc)]
        rows.append(row)
    buf = io.StringIO()
    w = _writer(buf)
    header = [spec.variable, "p_closed"] + (["p_oracle", "rel_diff"] if ns.with_oracle else [])
    w.writerow(header)
    w.writerows(rows)
    if spec.variable == "eps":
        w.writerow(["slope", fmt(_slope(spec.values(), closed), 6)])
        if ns.with_oracle:
            w.writerow(["slope_oracle", fmt(_slope(spec.values(), oracle), 6)])
    out.write(buf.getvalue())
    return EXIT_OK


def cmd_verify(ns, out) -> int:
    if not ns.tol_scale > 0:
        raise DomainError("--tol-scale must be positive")
    checks = run_suite(ns.suite, ns.tol_scale)
    for c in checks:
        out.write(c.line() + "\n")
    failed = sum(not c.passed for c in checks)
    out.write(f"{len(checks) - failed}/{len(checks)} checks passed\n")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


COMMANDS = {"steady": cmd_steady, "sweep": cmd_sweep, "verify": cmd_verify}


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except _UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    try:
        return COMMANDS[ns.command](ns, out)
    except RegimeError as exc:
        err.write(f"uncovered regime: {exc}\n")
        return EXIT_REGIME
    except DomainError as exc:
        err.write(f"invalid input: {exc}\n")
        return EXIT_USAGE
    except (FracFilterError, ArithmeticError, np.linalg.LinAlgError) as exc:
        err.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
