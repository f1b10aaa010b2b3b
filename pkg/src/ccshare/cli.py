"""Command-line front end.

Subcommands:
  run       execute one of the experiment pipelines E1..E6
  measures  print every measure for a named fixture state or amplitude CSV
  selftest  run the built-in oracle fixtures and invariant spot-checks

Exit codes: 0 success, 1 runtime failure, 2 usage error.  Diagnostics go
to stderr; stdout carries data and output paths only.  Configuration is
fully determined by argv plus an optional key=value config file (flags
override the file); environment variables are never read.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import measures as m
from .experiments import ConfigError, ExperimentConfig, run_experiment
from .linalg import NumericalValidityError, PureState
from .records import compute_record
from .selftest import run_selftest
from .states import named_fixture

CONFIG_KEYS = {
    "experiment": str,
    "qubits": int,
    "samples": int,
    "seed": int,
    "binsize": float,
    "out": str,
    "threads": int,
    "emitrecords": lambda v: v.lower() in ("1", "true", "yes"),
    "quiet": lambda v: v.lower() in ("1", "true", "yes"),
}


def _read_config_file(path: str) -> dict:
    values = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, raw = line.partition("=")
        key = key.strip().replace("-", "").replace("_", "")
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = CONFIG_KEYS[key](raw.strip())
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccshare",
        description="Monte Carlo statistics of classical-correlation shareability "
        "in random multiqubit states",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    run_p = sub.add_parser("run", help="run an experiment pipeline")
    run_p.add_argument("--experiment", choices=["E1", "E2", "E3", "E4", "E5", "E6"])
    run_p.add_argument("--qubits", type=int, help="number of qubits, 3..6")
    run_p.add_argument("--samples", type=int, help="number of Haar-random states")
    run_p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    run_p.add_argument("--bin-size", type=float, help="histogram/profile bin width")
    run_p.add_argument("--out", help="output directory (default results/)")
    run_p.add_argument("--threads", type=int, default=0, help="worker count, 0 = auto")
    run_p.add_argument("--emit-records", action="store_true", help="write per-sample CSV")
    run_p.add_argument("--config", help="key=value config file; flags override it")
    run_p.add_argument("--quiet", action="store_true", help="suppress progress output")

    meas_p = sub.add_parser("measures", help="print all measures for one state")
    meas_p.add_argument(
        "state",
        help="named fixture (ghz3, ghz4, w3, product4, plus3, ...) or an amplitude CSV path",
    )

    sub.add_parser("selftest", help="run oracle fixtures and invariant spot-checks")
    return parser


def _load_state(spec: str) -> PureState:
    path = Path(spec)
    if path.suffix == ".csv" or path.exists():
        rows = list(csv.reader(path.read_text(encoding="utf-8").splitlines()))
        amps = np.array(
            [complex(float(r[0]), float(r[1]) if len(r) > 1 else 0.0) for r in rows if r]
        )
        n = int(np.log2(len(amps)))
        if 2**n != len(amps):
            raise ConfigError(f"{spec}: amplitude count {len(amps)} is not a power of 2")
        amps = amps / np.linalg.norm(amps)
        return PureState(n, amps)
    try:
        return named_fixture(spec)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _cmd_measures(spec: str) -> int:
    psi = _load_state(spec)
    rec = compute_record(psi, 0, {"cxx", "cyy", "czz", "cqd", "clw", "cmi", "ggm", "monogamy"})
    n = psi.num_qubits
    print(f"state: {spec}  qubits: {n}")
    header = "measure   " + "".join(f"   pair 1-{i}" for i in range(2, n + 1)) + "        sum"
    print(header)
    for name in ("cxx", "cyy", "czz", "cqd", "clw", "cmi"):
        vals = getattr(rec, name)
        cells = "".join(f"  {v:9.6f}" for v in vals)
        print(f"{name:<10}{cells}  {sum(vals):9.6f}")
    print(f"ggm        {rec.ggm:9.6f}")
    print(f"czz_1:rest {rec.czz_one_rest:9.6f}   delta {rec.delta_czz:9.6f}")
    print(f"cqd_1:rest {rec.cqd_one_rest:9.6f}   delta {rec.delta_cqd:9.6f}")
    print(f"clw_1:rest {rec.clw_one_rest:9.6f}   delta {rec.delta_clw:9.6f}")
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    file_values = _read_config_file(args.config) if args.config else {}
    merged = {
        "experiment": args.experiment or file_values.get("experiment"),
        "qubits": args.qubits if args.qubits is not None else file_values.get("qubits"),
        "samples": args.samples if args.samples is not None else file_values.get("samples"),
        "seed": args.seed if args.seed != 0 else file_values.get("seed", 0),
        "binsize": args.bin_size if args.bin_size is not None else file_values.get("binsize"),
        "out": args.out or file_values.get("out", "results"),
        "threads": args.threads if args.threads != 0 else file_values.get("threads", 0),
        "emitrecords": args.emit_records or file_values.get("emitrecords", False),
        "quiet": args.quiet or file_values.get("quiet", False),
    }
    for required in ("experiment", "qubits", "samples"):
        if merged[required] is None:
            raise ConfigError(f"missing required option --{required}")
    cfg = ExperimentConfig(
        experiment=merged["experiment"],
        n_qubits=merged["qubits"],
        samples=merged["samples"],
        master_seed=merged["seed"],
        out_dir=Path(merged["out"]),
        bin_size=merged["binsize"],
        workers=merged["threads"],
        emit_records=merged["emitrecords"],
        quiet=merged["quiet"],
    )
    for path in run_experiment(cfg):
        print(path)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.subcommand == "run":
            return _cmd_run(args)
        if args.subcommand == "measures":
            return _cmd_measures(args.state)
        return run_selftest()
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NumericalValidityError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
