"""Command-line driver: ``qwalk run``, ``qwalk sweep``, ``qwalk oracle-check``.

Exit codes: 0 success, 1 failed check or runtime error, 2 usage error.
Values given as flags override values read from ``--config``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import oracle
from .config import (
    FORMATS,
    INTERACTIONS,
    SweepConfig,
    default_theta_grid,
    parse_angle,
    read_config_file,
    run_config_from,
)
from .errors import InvalidArgumentError, QWalkError
from .export import write_table
from .simulation import joint_rows, marginal_rows, simulate, sweep

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

ORACLE_TOL = 1e-12
ORACLE_UNITARITY_TOL = 1e-10

_RUN_KEYS = {
    "steps", "theta_plus", "theta_minus", "interaction", "h_matrix", "u_matrix",
    "coin1", "coin2", "x1", "x2", "record_every", "out", "output_dir", "format",
    "output_format",
}
_SWEEP_KEYS = {"thetas", "theta_points", "parallelism"}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="file of 'key = value' lines")
    p.add_argument("--steps", type=int)
    p.add_argument("--theta-plus", help="radians, or multiples of pi such as 0.5pi")
    p.add_argument("--theta-minus", help="radians, or multiples of pi")
    p.add_argument("--interaction", choices=INTERACTIONS)
    p.add_argument("--h-matrix", nargs=16, metavar="H", help="16 reals h_ij, row-major")
    p.add_argument("--u-matrix", nargs=16, metavar="O", help="16 complex entries, row-major")
    p.add_argument("--coin1", help="plus, minus, up, down or 'a,b' amplitudes")
    p.add_argument("--coin2")
    p.add_argument("--x1", type=int)
    p.add_argument("--x2", type=int)
    p.add_argument("--record-every", type=int)
    p.add_argument("--out", type=Path, help="output directory")
    p.add_argument("--format", choices=FORMATS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qwalk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="evolve one configuration and export observables")
    _add_common(run)

    sw = sub.add_parser("sweep", help="final-step observables over a grid of theta_plus")
    _add_common(sw)
    sw.add_argument("--thetas", help="comma-separated angles, e.g. '0,0.25pi,pi'")
    sw.add_argument("--theta-points", type=int, help="evenly spaced grid over [0, 2pi)")
    sw.add_argument("--parallelism", type=int)

    oc = sub.add_parser("oracle-check", help="cross-check the engine against dense matrices")
    oc.add_argument("--seed", type=int, help="overrides QWALK_SEED")
    oc.add_argument("--cases", type=int, default=24)
    return parser


def _merged_values(args: argparse.Namespace, allowed: set[str]) -> dict:
    values = {}
    if args.config is not None:
        for key, value in read_config_file(args.config).items():
            if key not in allowed:
                raise InvalidArgumentError(f"unknown config key {key!r} in {args.config}")
            values[key] = value
    for key, value in vars(args).items():
        if key in allowed and value is not None:
            values[key] = value
    if "interaction" not in values and "h_matrix" in values:
        values["interaction"] = "hermitian"
    if "interaction" not in values and "u_matrix" in values:
        values["interaction"] = "unitary"
    return values


def _prepare_out(path: Path) -> Path:
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {path}: {exc.strerror}") from None
    return path


def cmd_run(args: argparse.Namespace) -> int:
    config = run_config_from(_merged_values(args, _RUN_KEYS)).validate()
    out = _prepare_out(config.output_dir)
    result = simulate(config)
    fmt = config.output_format
    write_table(out, "joint", ("x1", "x2", "p"), joint_rows(result.joint), fmt)
    write_table(out, "marginal", ("x", "n"), marginal_rows(result.marginal), fmt)
    write_table(
        out,
        "zones",
        ("t", "pA", "pB", "pC", "pD"),
        [(s.time, *s.zones.as_tuple()) for s in result.snapshots],
        fmt,
    )
    write_table(out, "entropy", ("t", "entropy"), [(s.time, s.entropy) for s in result.snapshots], fmt)
    print(f"wrote {fmt} output for t={result.final.time} to {out}")
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    values = _merged_values(args, _RUN_KEYS | _SWEEP_KEYS)
    base = run_config_from(values)
    if "thetas" in values:
        raw = values["thetas"]
        grid = [parse_angle(t) for t in raw.split(",") if t.strip()] if isinstance(raw, str) else list(raw)
    else:
        points = int(values.get("theta_points", 64))
        if points < 1:
            raise InvalidArgumentError("theta-points must be >= 1")
        grid = default_theta_grid(points)
    config = SweepConfig(base=base, theta_grid=grid, parallelism=int(values.get("parallelism", 1)))
    config.validate()
    out = _prepare_out(base.output_dir)
    rows = sweep(config)
    fmt = base.output_format
    write_table(
        out,
        "zones_vs_theta",
        ("theta", "pA", "pB", "pC", "pD"),
        [(r.theta, *r.zones.as_tuple()) for r in rows],
        fmt,
    )
    write_table(out, "entropy_vs_theta", ("theta", "entropy"), [(r.theta, r.entropy) for r in rows], fmt)
    print(f"wrote {len(rows)} sweep points to {out}")
    return EXIT_OK


def cmd_oracle_check(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else oracle.seed_from_env()
    cases = oracle.run_oracle_suite(seed=seed, count=args.cases)
    failed = []
    print(f"oracle check: {len(cases)} cases, seed {seed}")
    for c in cases:
        ok = c.deviation <= ORACLE_TOL and c.unitarity_error <= ORACLE_UNITARITY_TOL
        flag = "ok  " if ok else "FAIL"
        print(f"  {flag} L={c.num_sites:2d} steps={c.steps} dev={c.deviation:.3e} "
              f"unitarity={c.unitarity_error:.3e} {c.label}")
        if not ok:
            failed.append(c)
    worst = max(c.deviation for c in cases)
    print(f"max deviation {worst:.3e} (tolerance {ORACLE_TOL:g})")
    if failed:
        for c in failed:
            print(f"offending spec: {c.label}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


COMMANDS = {"run": cmd_run, "sweep": cmd_sweep, "oracle-check": cmd_oracle_check}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InvalidArgumentError as exc:
        print(f"qwalk {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (QWalkError, OSError) as exc:
        print(f"qwalk {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
