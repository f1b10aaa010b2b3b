"""The six experiment pipelines over a deterministic parallel sample stream.

E1  unconstrained frequency distributions and summaries per measure
E2  incompatibility sweep: max of a mixed-direction correlator pair vs theta
E3  profile of sum C^yy binned by sum C^xx
E4  profiles of sum C^xx / C^D / C^LW binned by genuine multipartite
    entanglement
E5  profile of sum C^D binned by sum C^LW (two bin widths)
E6  monogamy-score histograms, percentages, and the entanglement scatter

Samples are keyed by (master_seed, sample_index), so results do not
depend on worker count or scheduling; floating aggregates are reduced in
index order.
"""

from __future__ import annotations

import csv
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .linalg import reduce_pair
from .measures import incompatibility_bound
from .optimize import OptimizerSettings
from .records import (
    SampleRecord,
    compute_records,
    record_columns,
    record_row,
)
from .sampling import SampleSeed, haar_random_pure
from .stats import (
    build_histogram,
    conditional_profile,
    nonnegative_fraction,
    summarize,
)

EXPERIMENTS = ("E1", "E2", "E3", "E4", "E5", "E6")

DEFAULT_BIN_SIZE = {"E1": 0.01, "E2": 0.01, "E3": 0.1, "E4": 0.05, "E5": 0.1, "E6": 0.01}

DEFAULT_MEASURES = {
    "E1": {"cxx", "cxx_cov", "cxx_sq", "cqd", "clw", "cmi"},
    "E2": set(),
    "E3": {"cxx", "cyy"},
    "E4": {"cxx", "cqd", "clw", "ggm"},
    "E5": {"cqd", "clw"},
    "E6": {"monogamy", "ggm"},
}


class ConfigError(ValueError):
    """Invalid experiment configuration."""


@dataclass
class ExperimentConfig:
    experiment: str
    n_qubits: int
    samples: int
    master_seed: int = 0
    out_dir: Path = Path("results")
    bin_size: float | None = None
    theta_grid: list[float] | None = None
    measures: set[str] | None = None
    workers: int = 0
    emit_records: bool = False
    quiet: bool = False
    settings: OptimizerSettings = field(default_factory=OptimizerSettings)

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"experiment must be one of {EXPERIMENTS}, got {self.experiment!r}")
        if not 3 <= self.n_qubits <= 6:
            raise ConfigError(f"n_qubits must be in [3, 6], got {self.n_qubits}")
        if self.samples < 100:
            raise ConfigError(f"samples must be >= 100, got {self.samples}")
        if self.bin_size is not None and self.bin_size <= 0:
            raise ConfigError(f"bin_size must be positive, got {self.bin_size}")
        if self.experiment == "E2":
            if self.n_qubits != 3:
                raise ConfigError("the incompatibility sweep requires n_qubits = 3")
            if self.theta_grid is None:
                self.theta_grid = list(np.linspace(0.0, np.pi / 2, 10))
            if not self.theta_grid:
                raise ConfigError("theta_grid must be non-empty")
        if self.bin_size is None:
            self.bin_size = DEFAULT_BIN_SIZE[self.experiment]
        if self.measures is None:
            self.measures = set(DEFAULT_MEASURES[self.experiment])
        self.out_dir = Path(self.out_dir)

    @property
    def effective_workers(self) -> int:
        return self.workers if self.workers > 0 else (os.cpu_count() or 1)


def _progress(cfg: ExperimentConfig, done: int):
    if cfg.quiet:
        return
    step = max(1, cfg.samples // 20)
    if done % step < _CHUNK or done == cfg.samples:
        pct = 100.0 * done / cfg.samples
        print(f"[{cfg.experiment}] {done}/{cfg.samples} samples ({pct:.0f}%)", file=sys.stderr)


_CHUNK = 500


def _record_chunk(args) -> list[SampleRecord]:
    n_qubits, master_seed, start, count, measure_set, settings = args
    return compute_records(n_qubits, master_seed, start, count, measure_set, settings)


def compute_record_stream(cfg: ExperimentConfig, measure_set: set[str]) -> list[SampleRecord]:
    """All SampleRecords for the run, in sample-index order."""
    chunks = [
        (cfg.n_qubits, cfg.master_seed, start, min(_CHUNK, cfg.samples - start), measure_set, cfg.settings)
        for start in range(0, cfg.samples, _CHUNK)
    ]
    records: list[SampleRecord] = []
    if cfg.effective_workers == 1 or len(chunks) == 1:
        for chunk in chunks:
            records.extend(_record_chunk(chunk))
            _progress(cfg, len(records))
    else:
        with ProcessPoolExecutor(max_workers=cfg.effective_workers) as pool:
            done = 0
            # map() preserves submission order, so the stream stays sorted.
            for part in pool.map(_record_chunk, chunks):
                records.extend(part)
                done += len(part)
                _progress(cfg, done)
    return records


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)


def _write_csv(path: Path, header: list[str], rows) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    return path


def write_histogram_csv(path: Path, hist) -> Path:
    rows = [
        (edge, edge + hist.bin_size, int(count), count / hist.total)
        for edge, count in zip(hist.edges, hist.counts)
    ]
    return _write_csv(path, ["bin_lower", "bin_upper", "count", "fraction"], rows)


def write_summary_csv(path: Path, rows, with_pct: bool = False) -> Path:
    header = ["measure", "n_qubits", "samples", "mean", "sd", "max", "min"]
    if with_pct:
        header.append("monogamous_pct")
    return _write_csv(path, header, rows)


def write_profile_csv(path: Path, profile) -> Path:
    rows = [(b.lower, b.count, b.avg, b.max) for b in profile.bins]
    return _write_csv(path, ["constraint_bin_lower", "count", "target_avg", "target_max"], rows)


def write_records_csv(path: Path, records: list[SampleRecord], n_qubits: int) -> Path:
    return _write_csv(path, record_columns(n_qubits), (record_row(r) for r in records))


def write_manifest(cfg: ExperimentConfig, elapsed: float) -> Path:
    path = cfg.out_dir / f"{cfg.experiment}_N{cfg.n_qubits}_manifest.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "experiment": cfg.experiment,
        "n_qubits": cfg.n_qubits,
        "samples": cfg.samples,
        "master_seed": cfg.master_seed,
        "bin_size": cfg.bin_size,
        "versions": {"ccshare": __version__, "numpy": np.__version__},
        "elapsed_seconds": elapsed,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    return path


def _prefix(cfg: ExperimentConfig) -> str:
    return f"{cfg.experiment}_N{cfg.n_qubits}"


def _maybe_emit_records(cfg: ExperimentConfig, records, paths: list[Path]):
    if cfg.emit_records:
        paths.append(
            write_records_csv(cfg.out_dir / f"{_prefix(cfg)}_records.csv", records, cfg.n_qubits)
        )


def run_unconstrained(cfg: ExperimentConfig) -> list[Path]:
    """E1: histogram + summary of the pairwise-measure sums."""
    records = compute_record_stream(cfg, cfg.measures)
    paths: list[Path] = []
    summary_rows = []
    for name in sorted(cfg.measures - {"ggm", "monogamy"}):
        sums = [r.pair_sum(name) for r in records]
        hist = build_histogram(sums, cfg.bin_size)
        paths.append(write_histogram_csv(cfg.out_dir / f"{_prefix(cfg)}_hist_{name}.csv", hist))
        s = summarize(sums)
        summary_rows.append((name, cfg.n_qubits, cfg.samples, s.mean, s.sd, s.max, s.min))
    paths.append(write_summary_csv(cfg.out_dir / f"{_prefix(cfg)}_summary.csv", summary_rows))
    _maybe_emit_records(cfg, records, paths)
    return paths


def _sweep_chunk(args) -> np.ndarray:
    master_seed, start, count = args
    out = np.empty((count, 3))
    for k, idx in enumerate(range(start, start + count)):
        psi = haar_random_pure(3, SampleSeed(master_seed, idx))
        r12 = reduce_pair(psi, 1, 2).matrix
        r13 = reduce_pair(psi, 1, 3).matrix
        sx = np.array([[0, 1], [1, 0]], dtype=np.complex128)
        sy = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
        xx = np.kron(sx, sx)
        yx = np.kron(sy, sx)
        out[k, 0] = np.trace(r12 @ xx).real
        out[k, 1] = np.trace(r12 @ yx).real
        out[k, 2] = abs(np.trace(r13 @ xx).real)
    return out


def run_incompatibility_sweep(cfg: ExperimentConfig) -> list[Path]:
    """E2: per-theta empirical max/mean/sd of the mixed-direction pair sum.

    Only the two correlator components vary with theta, so each state is
    reduced once and the theta grid is applied vectorially.
    """
    chunks = [
        (cfg.master_seed, start, min(_CHUNK, cfg.samples - start))
        for start in range(0, cfg.samples, _CHUNK)
    ]
    parts = []
    if cfg.effective_workers == 1 or len(chunks) == 1:
        for chunk in chunks:
            parts.append(_sweep_chunk(chunk))
            _progress(cfg, sum(p.shape[0] for p in parts))
    else:
        with ProcessPoolExecutor(max_workers=cfg.effective_workers) as pool:
            for part in pool.map(_sweep_chunk, chunks):
                parts.append(part)
                _progress(cfg, sum(p.shape[0] for p in parts))
    data = np.concatenate(parts)
    thetas = np.asarray(cfg.theta_grid)
    # value(theta) = |cos(t) <xx> + sin(t) <yx>|_12 + |<xx>|_13
    values = (
        np.abs(np.cos(thetas)[:, None] * data[:, 0] + np.sin(thetas)[:, None] * data[:, 1])
        + data[:, 2]
    )
    rows = []
    for t, vals in zip(thetas, values):
        s = summarize(vals)
        rows.append((t, s.max, s.mean, s.sd, incompatibility_bound(float(t))))
    path = _write_csv(
        cfg.out_dir / f"{_prefix(cfg)}_sweep.csv",
        ["theta", "empirical_max", "mean", "sd", "bound"],
        rows,
    )
    return [path]


def run_constrained_ccc(cfg: ExperimentConfig) -> list[Path]:
    """E3: profile of sum C^yy over bins of sum C^xx."""
    records = compute_record_stream(cfg, cfg.measures | {"cxx", "cyy"})
    profile = conditional_profile(
        [r.pair_sum("cxx") for r in records],
        [r.pair_sum("cyy") for r in records],
        cfg.bin_size,
    )
    paths = [write_profile_csv(cfg.out_dir / f"{_prefix(cfg)}_profile_cyy_vs_cxx.csv", profile)]
    _maybe_emit_records(cfg, records, paths)
    return paths


def run_constrained_ggm(cfg: ExperimentConfig) -> list[Path]:
    """E4: profiles of the measure sums over bins of the entanglement content."""
    records = compute_record_stream(cfg, cfg.measures | {"ggm"})
    paths = []
    for name in sorted((cfg.measures | {"cxx", "cqd", "clw"}) - {"ggm", "monogamy"}):
        profile = conditional_profile(
            [r.ggm for r in records],
            [r.pair_sum(name) for r in records],
            cfg.bin_size,
        )
        paths.append(
            write_profile_csv(cfg.out_dir / f"{_prefix(cfg)}_profile_{name}_vs_ggm.csv", profile)
        )
    _maybe_emit_records(cfg, records, paths)
    return paths


def run_cqd_vs_lw(cfg: ExperimentConfig) -> list[Path]:
    """E5: profile of sum C^D over bins of sum C^LW, at two bin widths."""
    records = compute_record_stream(cfg, cfg.measures | {"cqd", "clw"})
    constraint = [r.pair_sum("clw") for r in records]
    target = [r.pair_sum("cqd") for r in records]
    paths = []
    for width in sorted({cfg.bin_size, 0.01, 0.1}):
        profile = conditional_profile(constraint, target, width)
        tag = f"{width:g}".replace(".", "p")
        paths.append(
            write_profile_csv(
                cfg.out_dir / f"{_prefix(cfg)}_profile_cqd_vs_clw_bin{tag}.csv", profile
            )
        )
    _maybe_emit_records(cfg, records, paths)
    return paths


def run_monogamy(cfg: ExperimentConfig) -> list[Path]:
    """E6: monogamy-score histograms, summaries with percentages, scatter."""
    records = compute_record_stream(cfg, cfg.measures | {"monogamy", "ggm"})
    paths = []
    summary_rows = []
    for name in ("delta_czz", "delta_cqd", "delta_clw"):
        scores = [getattr(r, name) for r in records]
        hist = build_histogram(scores, cfg.bin_size)
        paths.append(write_histogram_csv(cfg.out_dir / f"{_prefix(cfg)}_hist_{name}.csv", hist))
        s = summarize(scores)
        pct = nonnegative_fraction(scores)
        summary_rows.append((name, cfg.n_qubits, cfg.samples, s.mean, s.sd, s.max, s.min, pct))
    paths.append(
        write_summary_csv(cfg.out_dir / f"{_prefix(cfg)}_summary.csv", summary_rows, with_pct=True)
    )
    scatter_rows = ((r.ggm, r.delta_cqd, r.delta_clw) for r in records)
    paths.append(
        _write_csv(
            cfg.out_dir / f"{_prefix(cfg)}_ggm_scatter.csv",
            ["ggm", "delta_cqd", "delta_clw"],
            scatter_rows,
        )
    )
    _maybe_emit_records(cfg, records, paths)
    return paths


_RUNNERS = {
    "E1": run_unconstrained,
    "E2": run_incompatibility_sweep,
    "E3": run_constrained_ccc,
    "E4": run_constrained_ggm,
    "E5": run_cqd_vs_lw,
    "E6": run_monogamy,
}


def run_experiment(cfg: ExperimentConfig) -> list[Path]:
    """Dispatch one experiment; returns the written file paths (manifest last)."""
    t0 = time.monotonic()
    paths = _RUNNERS[cfg.experiment](cfg)
    paths.append(write_manifest(cfg, time.monotonic() - t0))
    return paths
