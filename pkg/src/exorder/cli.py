"""Command-line interface.

Subcommands:

* ``verify --config cfg.json``   — run the configured checks, print the
  JSON report, exit 0 iff every check holds.
* ``curves --config cfg.json --out DIR`` — write the per-check curve
  tables (CSV) used for plotting.
* ``tau --n N [--i I]``          — print the exact Kendall tau of
  (Y_{1:n}, Y_{i:n}) for an i.i.d. continuous sample.
* ``selftest --seed S [--max-n N]`` — cross-validate the exact spacing
  construction against its independent oracles.

The flags ``--grid``, ``--samples``, ``--seed``, ``--tolerance`` override
the corresponding configuration fields.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import ConfigError, ExperimentConfig
from .dependence import exact_tau_min_pair
from .runner import emit_curves, run_experiment, selftest

__all__ = ["main", "build_parser"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exorder",
        description="Verification toolkit for order statistics of heterogeneous exponential samples.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid", type=int, default=None, help="override grid_points")
    common.add_argument("--samples", type=int, default=None, help="override monte_carlo_m")
    common.add_argument("--seed", type=int, default=None, help="override master_seed")
    common.add_argument(
        "--tolerance",
        type=float,
        default=None,
        help="override the tolerance of every requested check",
    )

    p_verify = sub.add_parser("verify", parents=[common], help="run the configured checks")
    p_verify.add_argument("--config", required=True, type=Path, help="JSON configuration file")
    p_verify.add_argument("--out", type=Path, default=None, help="write the JSON report here")
    p_verify.set_defaults(func=_cmd_verify)

    p_curves = sub.add_parser("curves", parents=[common], help="write curve tables as CSV")
    p_curves.add_argument("--config", required=True, type=Path, help="JSON configuration file")
    p_curves.add_argument("--out", required=True, type=Path, help="output directory")
    p_curves.set_defaults(func=_cmd_curves)

    p_tau = sub.add_parser("tau", help="exact Kendall tau of (min, i-th order statistic)")
    p_tau.add_argument("--n", required=True, type=int, help="sample size")
    p_tau.add_argument("--i", type=int, default=None, help="order-statistic index (default: all)")
    p_tau.set_defaults(func=_cmd_tau)

    p_self = sub.add_parser("selftest", help="cross-validate exact constructions")
    p_self.add_argument("--max-n", type=int, default=6, help="largest sample size (<= 9)")
    p_self.add_argument("--seed", required=True, type=int, help="master seed")
    p_self.add_argument("--instances", type=int, default=50, help="number of random instances")
    p_self.set_defaults(func=_cmd_selftest)

    return parser


def _load_config(args) -> ExperimentConfig:
    try:
        text = args.config.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    config = ExperimentConfig.from_json(text)
    overrides = {}
    if args.grid is not None:
        overrides["grid_points"] = args.grid
    if args.samples is not None:
        overrides["monte_carlo_m"] = args.samples
    if args.seed is not None:
        overrides["master_seed"] = args.seed
    if args.tolerance is not None:
        overrides["tolerances"] = {c: args.tolerance for c in config.checks}
    return config.override(**overrides) if overrides else config


def _cmd_verify(args) -> int:
    config = _load_config(args)
    report = run_experiment(config)
    text = report.to_json()
    if args.out is not None:
        args.out.write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    for check, outcome in report.results.items():
        state = "holds" if outcome["holds"] else "FAILED"
        print(f"check {check}: {state}", file=sys.stderr)
    if not report.passed:
        print(f"FAIL: {report.failed_checks[0]}", file=sys.stderr)
        return 1
    return 0


def _cmd_curves(args) -> int:
    config = _load_config(args)
    written = emit_curves(config, args.out)
    for path in written:
        print(path)
    return 0


def _cmd_tau(args) -> int:
    if args.n < 2:
        print("tau: need --n at least 2", file=sys.stderr)
        return 2
    if args.i is not None:
        print(f"{exact_tau_min_pair(args.n, args.i):.15g}")
        return 0
    for i in range(2, args.n + 1):
        print(f"n={args.n} i={i} tau={exact_tau_min_pair(args.n, i):.15g}")
    return 0


def _cmd_selftest(args) -> int:
    outcome = selftest(args.max_n, seed=args.seed, instances=args.instances)
    print(json.dumps(outcome, indent=2, sort_keys=True))
    return 0 if outcome["passed"] else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
