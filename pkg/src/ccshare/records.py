"""Per-state bundles of measure values (SampleRecord) and their computation.

Every experiment consumes the same record stream for a given
(master_seed, n_qubits), so the dominant cost (the optimized measures)
is paid once per state.  Fields not requested stay None.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import measures
from .linalg import PureState, reduce_pair
from .optimize import OptimizerSettings
from .sampling import SampleSeed, haar_random_pure

# Record measure tokens, superset of the pairwise measure names.
RECORD_MEASURES = (
    "cxx",
    "cyy",
    "czz",
    "cqd",
    "clw",
    "cmi",
    "cxx_cov",
    "cxx_sq",
    "ggm",
    "monogamy",
)

# Fixed column order for the records CSV (per-pair columns expand to
# <name>_2..<name>_N at write time).
PAIR_FIELDS = ("cxx", "cyy", "czz", "cqd", "clw", "cmi", "cxx_cov", "cxx_sq")
SCALAR_FIELDS = (
    "ggm",
    "czz_one_rest",
    "cqd_one_rest",
    "clw_one_rest",
    "delta_czz",
    "delta_cqd",
    "delta_clw",
)


@dataclass
class SampleRecord:
    """All requested measure values for one sampled state."""

    n_qubits: int
    sample_index: int
    cxx: list[float] | None = None
    cyy: list[float] | None = None
    czz: list[float] | None = None
    cqd: list[float] | None = None
    clw: list[float] | None = None
    cmi: list[float] | None = None
    cxx_cov: list[float] | None = None
    cxx_sq: list[float] | None = None
    ggm: float | None = None
    czz_one_rest: float | None = None
    cqd_one_rest: float | None = None
    clw_one_rest: float | None = None
    delta_czz: float | None = None
    delta_cqd: float | None = None
    delta_clw: float | None = None

    def pair_sum(self, name: str) -> float:
        values = getattr(self, name)
        if values is None:
            raise ValueError(f"measure {name!r} was not computed for this record")
        return float(sum(values))


_VARIANT_FIELDS = {"cxx_cov": ("cxx", "covariance"), "cxx_sq": ("cxx", "squared")}


def compute_record(
    psi: PureState,
    sample_index: int,
    measure_set: set[str],
    settings: OptimizerSettings = OptimizerSettings(),
) -> SampleRecord:
    """Evaluate the requested measures on one state."""
    unknown = measure_set - set(RECORD_MEASURES)
    if unknown:
        raise ValueError(f"unknown measures: {sorted(unknown)}")
    wanted = set(measure_set)
    if "monogamy" in wanted:
        wanted |= {"czz", "cqd", "clw"}
    rec = SampleRecord(psi.num_qubits, sample_index)

    pair_rhos = None
    pair_names = [m for m in PAIR_FIELDS if m in wanted]
    if pair_names:
        pair_rhos = [reduce_pair(psi, 1, i) for i in range(2, psi.num_qubits + 1)]
    for name in pair_names:
        base, variant = _VARIANT_FIELDS.get(name, (name, "absolute"))
        setattr(
            rec,
            name,
            [measures.pair_measure(r, base, settings, variant) for r in pair_rhos],
        )

    if "ggm" in wanted:
        rec.ggm = measures.ggm(psi)
    if "monogamy" in wanted:
        rec.czz_one_rest = measures.czz_one_rest(psi)
        rec.cqd_one_rest = measures.cc_one_rest_pure(psi, "cqd")
        rec.clw_one_rest = measures.cc_one_rest_pure(psi, "clw")
        rec.delta_czz = measures.monogamy_score(rec.czz_one_rest, rec.pair_sum("czz"))
        rec.delta_cqd = measures.monogamy_score(rec.cqd_one_rest, rec.pair_sum("cqd"))
        rec.delta_clw = measures.monogamy_score(rec.clw_one_rest, rec.pair_sum("clw"))
    return rec


def compute_records(
    n_qubits: int,
    master_seed: int,
    start: int,
    count: int,
    measure_set: set[str],
    settings: OptimizerSettings = OptimizerSettings(),
) -> list[SampleRecord]:
    """Records for sample indices start .. start+count-1, in index order."""
    out = []
    for idx in range(start, start + count):
        psi = haar_random_pure(n_qubits, SampleSeed(master_seed, idx))
        out.append(compute_record(psi, idx, measure_set, settings))
    return out


def record_columns(n_qubits: int) -> list[str]:
    """Column names for the records CSV, in fixed documented order."""
    cols = ["sample_index"]
    for name in PAIR_FIELDS:
        cols.extend(f"{name}_{i}" for i in range(2, n_qubits + 1))
        cols.append(f"sum_{name}")
    cols.extend(SCALAR_FIELDS)
    return cols


def record_row(rec: SampleRecord) -> list:
    """Flatten a record into the record_columns order (None for missing)."""
    row: list = [rec.sample_index]
    for name in PAIR_FIELDS:
        values = getattr(rec, name)
        if values is None:
            row.extend([None] * (rec.n_qubits - 1) + [None])
        else:
            row.extend(values)
            row.append(sum(values))
    row.extend(getattr(rec, name) for name in SCALAR_FIELDS)
    return row
