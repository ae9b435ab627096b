"""Command-line entry point: ``qeigen --experiment sweep --L 10 --out sweep.csv``.

Exit codes: 0 success, 1 a ``--assert`` threshold failed, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from .errors import QEError
from .experiments import EXPERIMENTS, SAMPLERS, ExperimentConfig, Table, run, tomllib, write_table

ACCURACY = 5e-3
MIN_OVERLAP = 0.99

# CLI flag -> dotted config key
FLAG_KEYS = {
    "experiment": "experiment",
    "L": "lattice.L",
    "t1": "lattice.t1",
    "t2": "lattice.t2",
    "delta": "lattice.delta",
    "mu": "lattice.mu",
    "sampler": "sampler.kind",
    "seed": "seed",
    "out": "out",
    "t2_min": "sweep.t2_min",
    "t2_max": "sweep.t2_max",
    "steps": "sweep.steps",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qeigen", description="Run eigensolver experiments on the ionic t1-t2 chain."
    )
    parser.add_argument("--config", help="TOML config file; flags override its keys")
    parser.add_argument("--experiment", choices=EXPERIMENTS)
    parser.add_argument("--L", type=int)
    parser.add_argument("--t1", type=float)
    parser.add_argument("--t2", type=float)
    parser.add_argument("--delta", type=float)
    parser.add_argument("--mu", type=float)
    parser.add_argument("--sampler", choices=SAMPLERS)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out", help="output CSV path (default: stdout)")
    parser.add_argument("--t2-min", type=float)
    parser.add_argument("--t2-max", type=float)
    parser.add_argument("--steps", type=int)
    parser.add_argument("--assert", dest="check", action="store_true",
                        help=f"exit 1 unless results are within {ACCURACY:g} of exact")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def check_table(experiment: str, table: Table) -> list[str]:
    """Threshold violations for ``--assert``; empty when everything passes."""
    failures = []
    if experiment == "sweep":
        dev = np.abs(table.column("E_qe") - table.column("E_exact"))
        if np.any(dev >= ACCURACY):
            failures.append(f"max |E_qe - E_exact| = {dev.max():.3g} >= {ACCURACY:g}")
        cos = table.column("cos_qe")
        if np.any(cos < MIN_OVERLAP):
            failures.append(f"min cos_qe = {cos.min():.6f} < {MIN_OVERLAP}")
    elif experiment == "converge":
        final = table.column("D")[-1]
        if final >= ACCURACY:
            failures.append(f"final D = {final:.3g} >= {ACCURACY:g}")
    else:
        worst = table.column("abs_diff").max()
        if worst >= ACCURACY:
            failures.append(f"max abs_diff = {worst:.3g} >= {ACCURACY:g}")
    return failures


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    overrides = {key: getattr(args, flag) for flag, key in FLAG_KEYS.items()}
    try:
        doc = {}
        if args.config:
            with open(args.config, "rb") as fh:
                doc = tomllib.load(fh)
        cfg = ExperimentConfig.from_mapping(doc, overrides)
        table = run(cfg)
        text = write_table(table, cfg.out)
    except (QEError, ValueError, TypeError, OSError, tomllib.TOMLDecodeError) as exc:
        print(f"qeigen: error: {exc}", file=sys.stderr)
        return 2
    if cfg.out is None:
        sys.stdout.write(text)
    if args.check:
        failures = check_table(cfg.experiment, table)
        for msg in failures:
            print(f"qeigen: assertion failed: {msg}", file=sys.stderr)
        if failures:
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
