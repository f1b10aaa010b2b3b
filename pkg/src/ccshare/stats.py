"""Frequency distributions, summary statistics, and conditional profiles.

Bins are half-open on the left, (alpha, alpha + bin], matching the
fraction-of-states definition used throughout; a value exactly on the
global origin lands in the first bin.  Accumulators are mergeable so
parallel workers can aggregate independently and combine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class DataError(ValueError):
    """Bad input data (non-finite sample, empty stream, length mismatch)."""


def _bin_index(values: np.ndarray, bin_size: float) -> np.ndarray:
    # (alpha, alpha + bin] with alpha = k * bin_size; ceil(v/bin) - 1.
    return np.ceil(values / bin_size - 1e-12).astype(np.int64) - 1


@dataclass
class Histogram:
    """Fixed-width counting histogram anchored to a multiple of bin_size."""

    bin_size: float
    origin: float
    counts: np.ndarray
    total: int

    @property
    def fractions(self) -> np.ndarray:
        return self.counts / self.total

    @property
    def edges(self) -> np.ndarray:
        """Lower edges of each bin."""
        return self.origin + self.bin_size * np.arange(len(self.counts))

    def merge(self, other: "Histogram") -> "Histogram":
        if not math.isclose(self.bin_size, other.bin_size):
            raise ValueError("cannot merge histograms with different bin sizes")
        k0 = round(self.origin / self.bin_size)
        k1 = round(other.origin / other.bin_size)
        lo = min(k0, k1)
        hi = max(k0 + len(self.counts), k1 + len(other.counts))
        counts = np.zeros(hi - lo, dtype=np.int64)
        counts[k0 - lo : k0 - lo + len(self.counts)] += self.counts
        counts[k1 - lo : k1 - lo + len(other.counts)] += other.counts
        return Histogram(self.bin_size, lo * self.bin_size, counts, self.total + other.total)


def build_histogram(values, bin_size: float) -> Histogram:
    """Bin a stream of finite values into half-open bins of width bin_size."""
    if bin_size <= 0:
        raise ValueError(f"bin_size must be positive, got {bin_size}")
    values = np.asarray(list(values), dtype=np.float64)
    if values.size == 0:
        raise DataError("no samples")
    bad = ~np.isfinite(values)
    if np.any(bad):
        raise DataError(f"non-finite value at sample index {int(np.argmax(bad))}")
    idx = _bin_index(values, bin_size)
    lo, hi = int(idx.min()), int(idx.max())
    counts = np.bincount(idx - lo, minlength=hi - lo + 1).astype(np.int64)
    return Histogram(bin_size, lo * bin_size, counts, int(values.size))


@dataclass(frozen=True)
class SummaryStats:
    mean: float
    sd: float
    max: float
    min: float
    count: int


@dataclass
class RunningSummary:
    """Streamed mean/sd/extrema with compensated summation; mergeable."""

    count: int = 0
    _sum: float = 0.0
    _sum_c: float = 0.0
    _sumsq: float = 0.0
    _sumsq_c: float = 0.0
    _min: float = math.inf
    _max: float = -math.inf

    def add(self, x: float):
        if not math.isfinite(x):
            raise DataError(f"non-finite value at sample index {self.count}")
        self.count += 1
        for attr_s, attr_c, v in (("_sum", "_sum_c", x), ("_sumsq", "_sumsq_c", x * x)):
            s = getattr(self, attr_s)
            c = getattr(self, attr_c)
            y = v - c
            t = s + y
            setattr(self, attr_c, (t - s) - y)
            setattr(self, attr_s, t)
        self._min = min(self._min, x)
        self._max = max(self._max, x)

    def merge(self, other: "RunningSummary") -> "RunningSummary":
        out = RunningSummary(
            count=self.count + other.count,
            _sum=self._sum + other._sum,
            _sum_c=self._sum_c + other._sum_c,
            _sumsq=self._sumsq + other._sumsq,
            _sumsq_c=self._sumsq_c + other._sumsq_c,
            _min=min(self._min, other._min),
            _max=max(self._max, other._max),
        )
        return out

    def result(self) -> SummaryStats:
        if self.count < 2:
            raise DataError(f"need at least 2 values, got {self.count}")
        mean = self._sum / self.count
        var = max(self._sumsq / self.count - mean * mean, 0.0)
        return SummaryStats(mean, math.sqrt(var), self._max, self._min, self.count)


def summarize(values) -> SummaryStats:
    """Mean, population standard deviation, max, min of a batch of values."""
    acc = RunningSummary()
    for v in values:
        acc.add(float(v))
    return acc.result()


@dataclass
class ProfileBin:
    lower: float
    count: int
    avg: float | None
    max: float | None


@dataclass
class BinnedProfile:
    """Per-constraint-bin average and maximum of a target quantity."""

    bin_size: float
    bins: list[ProfileBin] = field(default_factory=list)


def conditional_profile(constraint_values, target_values, bin_size: float) -> BinnedProfile:
    """Profile the target stream over bins of the constraint stream.

    Empty bins inside the populated range are reported with count 0 and no
    avg/max rather than dropped.
    """
    if bin_size <= 0:
        raise ValueError(f"bin_size must be positive, got {bin_size}")
    cons = np.asarray(list(constraint_values), dtype=np.float64)
    targ = np.asarray(list(target_values), dtype=np.float64)
    if cons.shape != targ.shape:
        raise DataError(f"length mismatch: {cons.size} constraint vs {targ.size} target values")
    if cons.size == 0:
        raise DataError("no samples")
    idx = _bin_index(cons, bin_size)
    lo, hi = int(idx.min()), int(idx.max())
    profile = BinnedProfile(bin_size)
    for k in range(lo, hi + 1):
        sel = targ[idx == k]
        if sel.size:
            profile.bins.append(
                ProfileBin(k * bin_size, int(sel.size), float(sel.mean()), float(sel.max()))
            )
        else:
            profile.bins.append(ProfileBin(k * bin_size, 0, None, None))
    return profile


def nonnegative_fraction(scores) -> float:
    """Percentage of scores >= 0 (a zero score counts as monogamous)."""
    scores = np.asarray(list(scores), dtype=np.float64)
    if scores.size == 0:
        raise DataError("no samples")
    return 100.0 * float(np.count_nonzero(scores >= 0)) / scores.size
