import numpy as np
import pytest

from ccshare.stats import (
    DataError,
    RunningSummary,
    build_histogram,
    conditional_profile,
    nonnegative_fraction,
    summarize,
)


class TestHistogram:
    def test_half_open_binning(self):
        # 0.005 and 0.015 land in (0, 0.01] and (0.01, 0.02].
        hist = build_histogram([0.005, 0.015], 0.01)
        assert hist.origin == pytest.approx(0.0)
        assert list(hist.counts) == [1, 1]

    def test_value_on_upper_edge_stays_in_bin(self):
        hist = build_histogram([0.01], 0.01)
        assert hist.origin == pytest.approx(0.0)
        assert list(hist.counts) == [1]

    def test_negative_values(self):
        hist = build_histogram([-0.25, 0.15], 0.1)
        assert hist.origin == pytest.approx(-0.3)
        assert len(hist.counts) == 5
        assert hist.counts[0] == 1 and hist.counts[-1] == 1

    def test_fractions_sum_to_one(self):
        rng = np.random.default_rng(3)
        hist = build_histogram(rng.uniform(-1, 2, 1000), 0.05)
        assert hist.total == 1000
        assert abs(hist.fractions.sum() - 1.0) < 1e-12

    def test_empty_stream_raises(self):
        with pytest.raises(DataError):
            build_histogram([], 0.01)

    def test_non_finite_raises_with_index(self):
        with pytest.raises(DataError, match="index 2"):
            build_histogram([0.1, 0.2, np.nan], 0.01)

    def test_bad_bin_size(self):
        with pytest.raises(ValueError):
            build_histogram([0.1], 0.0)

    def test_merge_is_count_additive(self):
        rng = np.random.default_rng(4)
        values = rng.uniform(-0.5, 1.5, 400)
        whole = build_histogram(values, 0.1)
        merged = build_histogram(values[:150], 0.1).merge(build_histogram(values[150:], 0.1))
        assert merged.total == whole.total
        assert merged.origin == pytest.approx(whole.origin)
        assert np.array_equal(merged.counts, whole.counts)

    def test_merge_rejects_mismatched_bins(self):
        with pytest.raises(ValueError):
            build_histogram([0.1], 0.1).merge(build_histogram([0.1], 0.05))


class TestSummaries:
    def test_hand_values(self):
        s = summarize([1.0, 2.0, 3.0])
        assert s.mean == pytest.approx(2.0)
        assert s.sd == pytest.approx(np.sqrt(2 / 3))  # population sd
        assert s.max == 3.0 and s.min == 1.0 and s.count == 3

    def test_constant_stream(self):
        s = summarize([1.0, 1.0, 1.0])
        assert s.mean == 1.0 and s.sd == 0.0

    def test_requires_two_values(self):
        acc = RunningSummary()
        acc.add(0.5)
        with pytest.raises(DataError):
            acc.result()

    def test_rejects_non_finite(self):
        acc = RunningSummary()
        with pytest.raises(DataError):
            acc.add(float("inf"))

    def test_streamed_matches_batch(self):
        rng = np.random.default_rng(5)
        values = rng.normal(0.3, 1.7, 10_000)
        s = summarize(values)
        assert s.mean == pytest.approx(values.mean(), abs=1e-9)
        assert s.sd == pytest.approx(values.std(), abs=1e-9)

    def test_merge_matches_single_pass(self):
        rng = np.random.default_rng(6)
        values = rng.normal(size=1000)
        left = RunningSummary()
        right = RunningSummary()
        for v in values[:400]:
            left.add(float(v))
        for v in values[400:]:
            right.add(float(v))
        merged = left.merge(right).result()
        whole = summarize(values)
        assert merged.mean == pytest.approx(whole.mean, abs=1e-12)
        assert merged.sd == pytest.approx(whole.sd, abs=1e-12)
        assert merged.count == whole.count


class TestConditionalProfile:
    def test_basic_profile(self):
        cons = [0.05, 0.08, 0.15, 0.15]
        targ = [1.0, 3.0, 5.0, 7.0]
        profile = conditional_profile(cons, targ, 0.1)
        assert len(profile.bins) == 2
        b0, b1 = profile.bins
        assert b0.lower == pytest.approx(0.0) and b0.count == 2
        assert b0.avg == pytest.approx(2.0) and b0.max == pytest.approx(3.0)
        assert b1.count == 2 and b1.avg == pytest.approx(6.0)

    def test_empty_interior_bin_is_reported(self):
        profile = conditional_profile([0.05, 0.25], [1.0, 2.0], 0.1)
        assert len(profile.bins) == 3
        middle = profile.bins[1]
        assert middle.count == 0 and middle.avg is None and middle.max is None

    def test_length_mismatch(self):
        with pytest.raises(DataError):
            conditional_profile([0.1, 0.2], [1.0], 0.1)

    def test_empty_input(self):
        with pytest.raises(DataError):
            conditional_profile([], [], 0.1)


def test_nonnegative_fraction():
    assert nonnegative_fraction([-1.0, 0.0, 1.0]) == pytest.approx(200 / 3)
    assert nonnegative_fraction([0.5, 0.1]) == 100.0
    with pytest.raises(DataError):
        nonnegative_fraction([])
