"""Command-line front end producing plot-ready CSV / JSON.

Usage::

    nmentangle evolve|partitions|quasimode|criteria|verify [options]
    nmentangle figure <id> [options]

Exit codes: 0 success, 1 I/O or argument error, 2 domain error (invalid
parameters, or weak coupling where strong is required), 2 + k when k
verification suites fail.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .amplitudes import CouplingRegimeError, PhysicalParams, c1_closed, c2_closed, quasimode_populations
from .criteria import criteria_report
from .entanglement import (
    concurrence_atom_reservoir_closed,
    concurrence_atoms_closed,
    concurrence_cross_pair,
    concurrence_reservoirs_closed,
    fig3_measures,
)
from .verification import run_suites

EXIT_IO = 1
EXIT_DOMAIN = 2
EXIT_VERIFY_BASE = 2
MAX_EXIT = 99

DEFAULT_LAMBDA_OVER_W = 0.1
DEFAULT_ALPHA = 1 / math.sqrt(10)

# (command, lambda/W, alpha) per figure panel
FIGURES = {
    "1a": ("evolve", 0.2, 1 / math.sqrt(2)),
    "1b": ("evolve", 0.2, math.sqrt(10) / 5),
    "1c": ("evolve", 0.2, 1 / 4),
    "1d": ("evolve", 0.1, 2 * math.sqrt(2) / 5),
    "1e": ("evolve", 0.1, 1 / math.sqrt(5)),
    "1f": ("evolve", 0.1, math.sqrt(3) / 5),
    "2": ("evolve", 0.1, 1 / math.sqrt(10)),
    "3": ("partitions", 0.2, 1 / math.sqrt(10)),
    "4": ("quasimode", 0.1, DEFAULT_ALPHA),
}

EVOLVE_HEADER = ["tau", "wt", "c1_sq", "c2_sq", "C_a1a2", "C_r1r2", "C_a1r1", "C_a1r2"]
PARTITIONS_HEADER = ["tau", "I", "II", "III", "IV", "V", "VI"]
QUASIMODE_HEADER = ["tau", "pa", "pm", "pr"]


class CLIError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    lambda_over_w: float = DEFAULT_LAMBDA_OVER_W
    alpha: float = DEFAULT_ALPHA
    tau_max: float = 10.0
    samples: int = 2001
    out: str | None = None

    def __post_init__(self):
        if not (self.tau_max > 0 and math.isfinite(self.tau_max)):
            raise ValueError("tau_max must be positive")
        if self.samples < 2:
            raise ValueError("samples must be >= 2")

    @property
    def params(self) -> PhysicalParams:
        return PhysicalParams.from_ratio(self.lambda_over_w, self.alpha)

    def grid(self):
        """(tau, t) with W = 1, so t is measured in units of 1/W."""
        tau = np.linspace(0.0, self.tau_max, self.samples)
        return tau, tau / self.lambda_over_w


def evolve_table(config: RunConfig):
    p = config.params
    tau, t = config.grid()
    c1_sq = np.abs(c1_closed(p, t)) ** 2
    c2_sq = c2_closed(p, t) ** 2
    cols = [
        tau,
        t * p.W,
        c1_sq,
        c2_sq,
        concurrence_atoms_closed(p, t),
        concurrence_reservoirs_closed(p, t),
        concurrence_atom_reservoir_closed(p, t),
        concurrence_cross_pair(p, t),
    ]
    return EVOLVE_HEADER, np.column_stack(cols)


def partitions_table(config: RunConfig):
    tau, t = config.grid()
    measures = fig3_measures(config.params, t)
    return PARTITIONS_HEADER, np.column_stack([tau] + [measures[k] for k in PARTITIONS_HEADER[1:]])


def quasimode_table(config: RunConfig):
    tau, t = config.grid()
    pops = quasimode_populations(config.params, t)
    return QUASIMODE_HEADER, np.column_stack([tau, pops.pa, pops.pm, pops.pr])


def format_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["%.11e" % (x + 0.0) for x in row])  # no "-0"
    return buf.getvalue()


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise CLIError(f"cannot write {out}: {exc}", EXIT_IO) from exc


def cmd_evolve(config: RunConfig):
    _emit(format_csv(*evolve_table(config)), config.out)


def cmd_partitions(config: RunConfig):
    _emit(format_csv(*partitions_table(config)), config.out)


def cmd_quasimode(config: RunConfig):
    _emit(format_csv(*quasimode_table(config)), config.out)


def cmd_criteria(config: RunConfig):
    report = criteria_report(config.params)
    _emit(json.dumps(report.to_dict(), indent=2) + "\n", config.out)


def cmd_verify(lambda_list, out=None) -> int:
    results = run_suites(lambda_list)
    lines = [r.line() for r in results]
    failed = sum(r.failed for r in results)
    lines.append(f"{len(results) - failed} of {len(results)} suites passed or skipped, {failed} failed")
    _emit("\n".join(lines) + "\n", out)
    return 0 if failed == 0 else min(EXIT_VERIFY_BASE + failed, MAX_EXIT)


COMMANDS = {
    "evolve": cmd_evolve,
    "partitions": cmd_partitions,
    "quasimode": cmd_quasimode,
    "criteria": cmd_criteria,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="nmentangle", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, with_lambda=True):
        if with_lambda:
            p.add_argument("--lambda-over-w", type=float, default=None, help="reservoir width over coupling")
        p.add_argument("--alpha", type=float, default=None, help="initial weight of |gg>")
        p.add_argument("--tau-max", type=float, default=10.0, help="final dimensionless time lambda*t")
        p.add_argument("--samples", type=int, default=2001, help="number of time samples")
        p.add_argument("--out", default=None, help="output path (default: stdout)")

    for name in COMMANDS:
        common(sub.add_parser(name))
    fig = sub.add_parser("figure", help="reproduce the data behind one figure panel")
    fig.add_argument("figure_id", choices=sorted(FIGURES))
    common(fig)
    ver = sub.add_parser("verify", help="run the self-verification suites")
    ver.add_argument(
        "--lambda-over-w", type=float, action="append", default=None,
        help="ratio to check (repeatable; default 0.1 and 0.2)",
    )
    ver.add_argument("--out", default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args.lambda_over_w or [0.1, 0.2], args.out)

        command = args.command
        lam_w = DEFAULT_LAMBDA_OVER_W if args.lambda_over_w is None else args.lambda_over_w
        alpha = DEFAULT_ALPHA if args.alpha is None else args.alpha
        if command == "figure":
            command, fig_lam, fig_alpha = FIGURES[args.figure_id]
            lam_w = fig_lam if args.lambda_over_w is None else args.lambda_over_w
            alpha = fig_alpha if args.alpha is None else args.alpha
        try:
            config = RunConfig(lam_w, alpha, args.tau_max, args.samples, args.out)
            config.params  # validate before doing any work
        except ValueError as exc:
            raise CLIError(f"invalid parameters: {exc}", EXIT_DOMAIN) from exc
        COMMANDS[command](config)
    except CouplingRegimeError as exc:
        print(f"nmentangle: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except CLIError as exc:
        print(f"nmentangle: {exc}", file=sys.stderr)
        return exc.code
    return 0


if __name__ == "__main__":
    sys.exit(main())
