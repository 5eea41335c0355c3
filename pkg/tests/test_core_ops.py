"""Operation-level tests with independently computed expected values."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zsort.core import (
    DegenerateSpreadError,
    FirstPassStats,
    MappingParams,
    all_equal,
    build_mapping_params,
    build_partition_plan,
    cluster_count,
    counting_sort_stable,
    estimated_mean,
    fallback_sort_stable,
    first_pass,
    insertion_sort_stable,
    map_to_cluster,
    stable_scatter,
)

from conftest import stable_sort_oracle

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


def params_for(keys, k):
    keys = np.asarray(keys, dtype=np.int64)
    return build_mapping_params(keys, first_pass(keys), k)


class TestFirstPass:
    def test_small_segment(self):
        stats = first_pass([10, 20, 30, 40])
        assert stats == FirstPassStats(sum=100, min_key=10, max_key=40)

    def test_single_element(self):
        assert first_pass([7]) == FirstPassStats(sum=7, min_key=7, max_key=7)

    def test_extreme_bounds_sum_is_exact(self):
        stats = first_pass([INT64_MIN, INT64_MAX])
        assert stats.sum == -1
        assert stats.min_key == INT64_MIN
        assert stats.max_key == INT64_MAX

    def test_exactness_against_python_ints(self):
        rng = np.random.default_rng(1)
        keys = rng.integers(INT64_MIN, INT64_MAX, size=4096, dtype=np.int64)
        keys[:8] = [INT64_MIN, INT64_MAX, INT64_MIN, INT64_MIN,
                    INT64_MAX, 0, -1, 1]
        stats = first_pass(keys)
        assert stats.sum == sum(int(x) for x in keys)
        assert stats.min_key == int(keys.min())
        assert stats.max_key == int(keys.max())

    def test_empty_segment_rejected(self):
        with pytest.raises(ValueError):
            first_pass([])


class TestAllEqual:
    def test_equal_detected_from_identity(self):
        assert all_equal(FirstPassStats(sum=100, min_key=25, max_key=25), 4)

    def test_unequal(self):
        assert not all_equal(FirstPassStats(sum=100, min_key=10, max_key=40), 4)

    def test_negative_keys(self):
        keys = [-4, -4, -4]
        assert all(k == keys[0] for k in keys)  # brute-force scan agrees
        assert all_equal(first_pass(keys), 3)

    @given(st.lists(st.integers(INT64_MIN, INT64_MAX), min_size=1, max_size=64))
    def test_matches_brute_force_scan(self, keys):
        expected = all(k == keys[0] for k in keys)
        assert all_equal(first_pass(keys), len(keys)) == expected


class TestBuildMappingParams:
    def test_four_key_segment(self):
        # Exact rational arithmetic: mean 25, variance 500/4 = 125.
        keys = [10, 20, 30, 40]
        var = Fraction(sum((k - 25) ** 2 for k in keys), 4)
        assert var == 125
        p = params_for(keys, 4)
        assert p.mean == 25.0
        assert p.std == pytest.approx(math.sqrt(125), rel=1e-15)
        assert p.std == pytest.approx(11.18034, rel=1e-6)
        assert p.zmin == pytest.approx(15 / math.sqrt(125), rel=1e-15)
        assert p.zmin == pytest.approx(1.341641, rel=1e-6)
        assert p.scale == 1.0
        assert p.k == 4

    def test_binary_segment(self):
        p = params_for([0, 0, 0, 1], 2)
        assert p.mean == 0.25
        assert p.std == pytest.approx(math.sqrt(0.1875), rel=1e-15)
        assert p.std == pytest.approx(0.433013, rel=1e-6)
        assert p.zmin == pytest.approx(0.25 / math.sqrt(0.1875), rel=1e-15)
        assert p.zmin == pytest.approx(0.577350, rel=1e-6)
        assert p.scale == 0.5

    def test_degenerate_spread_raises(self):
        # Unequal keys whose float64 images coincide: variance underflows.
        keys = np.full(1000, 2**62, dtype=np.int64)
        keys[::2] += 1
        stats = first_pass(keys)
        assert not all_equal(stats, keys.size)
        with pytest.raises(DegenerateSpreadError):
            build_mapping_params(keys, stats, 8)

    def test_permutation_invariance(self):
        # The exact integer sum makes the mean order-independent; std/zmin come
        # from a sequential float pass, so they agree to rounding noise only.
        rng = np.random.default_rng(7)
        keys = rng.integers(-10**15, 10**15, size=2000, dtype=np.int64)
        base = params_for(keys, 32)
        for seed in range(3):
            shuffled = keys.copy()
            np.random.default_rng(seed).shuffle(shuffled)
            p = params_for(shuffled, 32)
            assert p.mean == base.mean
            assert p.k == base.k and p.scale == base.scale
            assert p.std == pytest.approx(base.std, rel=1e-12)
            assert p.zmin == pytest.approx(base.zmin, rel=1e-12)


class TestMapToCluster:
    def test_minimum_maps_to_zero(self):
        p = params_for([10, 20, 30, 40], 4)
        assert map_to_cluster(10, p) == 0

    def test_interior_key(self):
        # h(40) = ((40-25)/std + zmin) * 1 = 2.683..., floor 2.
        p = params_for([10, 20, 30, 40], 4)
        h = ((40 - p.mean) / p.std + p.zmin) * p.scale
        assert math.floor(h) == 2
        assert map_to_cluster(40, p) == 2

    def test_upper_clamp(self):
        p = MappingParams(mean=0.0, std=2.0, zmin=0.5, scale=0.5, k=2)
        h = ((100 - p.mean) / p.std + p.zmin) * p.scale
        assert math.floor(h) >= p.k
        assert map_to_cluster(100, p) == 1

    def test_lower_clamp(self):
        p = MappingParams(mean=0.0, std=2.0, zmin=0.5, scale=0.5, k=2)
        assert map_to_cluster(-100, p) == 0

    def test_monotone_in_key(self):
        rng = np.random.default_rng(3)
        keys = np.sort(rng.integers(-10**18, 10**18, size=500, dtype=np.int64))
        p = params_for(keys, 16)
        buckets = [map_to_cluster(int(x), p) for x in keys]
        assert all(b0 <= b1 for b0, b1 in zip(buckets, buckets[1:]))
        assert all(0 <= b < p.k for b in buckets)


class TestPartitionPlan:
    def test_four_key_plan(self):
        keys = [10, 20, 30, 40]
        p = params_for(keys, 4)
        plan = build_partition_plan(keys, p)
        assert plan.counts.tolist() == [2, 1, 1, 0]
        assert plan.offsets.tolist() == [0, 2, 3, 4]

    def test_single_key(self):
        keys = [123]
        p = MappingParams(mean=0.0, std=1.0, zmin=0.0, scale=0.5, k=2)
        plan = build_partition_plan(keys, p)
        assert plan.counts.sum() == 1
        assert plan.offsets[0] == 0

    def test_counts_match_scalar_mapping(self):
        rng = np.random.default_rng(11)
        keys = rng.integers(-10**12, 10**12, size=777, dtype=np.int64)
        p = params_for(keys, 9)
        plan = build_partition_plan(keys, p)
        expected = np.zeros(9, np.int64)
        for x in keys:
            expected[map_to_cluster(int(x), p)] += 1
        assert np.array_equal(plan.counts, expected)
        assert int(plan.counts.sum()) == keys.size
        assert np.array_equal(
            plan.offsets, np.concatenate(([0], np.cumsum(plan.counts)[:-1]))
        )


class TestStableScatter:
    def test_equal_keys_keep_input_order(self):
        src_keys = np.array([10, 40, 10, 30], np.int64)
        src_payload = np.array([0, 1, 2, 3], np.int64)
        p = params_for([10, 20, 30, 40], 4)
        plan = build_partition_plan(src_keys, p)
        out_k, out_p = stable_scatter(src_keys, plan, p, src_payload)
        assert out_k.tolist() == [10, 10, 30, 40]
        assert out_p.tolist() == [0, 2, 3, 1]

    def test_bucket_ordered_input_is_identity(self):
        keys = np.array([10, 20, 30, 40], np.int64)
        p = params_for(keys, 4)
        plan = build_partition_plan(keys, p)
        out_k, out_p = stable_scatter(keys, plan, p, np.arange(4))
        assert out_k.tolist() == keys.tolist()
        assert out_p.tolist() == [0, 1, 2, 3]

    def test_single_bucket_is_identity(self):
        keys = np.array([5, 3, 4, 3], np.int64)
        p = MappingParams(mean=0.0, std=1e12, zmin=0.0, scale=0.25, k=2)
        plan = build_partition_plan(keys, p)
        assert plan.counts.tolist() == [4, 0]
        out_k, out_p = stable_scatter(keys, plan, p, np.arange(4))
        assert out_k.tolist() == keys.tolist()
        assert out_p.tolist() == [0, 1, 2, 3]


class TestEstimatedMean:
    def test_four_key_params(self):
        p = params_for([10, 20, 30, 40], 4)
        expected = (1.5 / p.scale - p.zmin) * p.std + p.mean
        assert expected == pytest.approx(26.7705, abs=1e-4)
        assert estimated_mean(1, p) == pytest.approx(expected, rel=1e-15)

    def test_zero_midpoint(self):
        p = MappingParams(mean=0.0, std=2.0, zmin=0.5, scale=1.0, k=4)
        assert estimated_mean(0, p) == 0.0

    def test_inverse_property_on_generated_params(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            keys = rng.integers(-10**17, 10**17, size=200, dtype=np.int64)
            k = int(rng.integers(2, 64))
            p = params_for(keys, k)
            for i in range(k):
                est = estimated_mean(i, p)
                h = ((est - p.mean) / p.std + p.zmin) * p.scale
                assert h == pytest.approx(i + 0.5, rel=1e-9)

    def test_bucket_out_of_range_rejected(self):
        p = params_for([10, 20, 30, 40], 4)
        with pytest.raises(ValueError):
            estimated_mean(4, p)


class TestSmallSorts:
    def test_insertion_sort_stability(self):
        keys = np.array([3, 1, 3], np.int64)
        out_k, out_p = insertion_sort_stable(keys, np.array([0, 1, 2]))
        assert out_k.tolist() == [1, 3, 3]
        assert out_p.tolist() == [1, 0, 2]

    def test_insertion_sorted_input_unchanged(self):
        keys = np.arange(50, dtype=np.int64)
        out_k, _ = insertion_sort_stable(keys)
        assert np.array_equal(out_k, keys)

    def test_counting_sort_small(self):
        keys = np.array([2, 0, 2, 1], np.int64)
        out_k, out_p = counting_sort_stable(keys, 0, 2, np.array([0, 1, 2, 3]))
        assert out_k.tolist() == [0, 1, 2, 2]
        assert out_p.tolist() == [1, 3, 0, 2]

    def test_counting_sort_negative_keys(self):
        keys = np.array([-3, -1, -3], np.int64)
        out_k, out_p = counting_sort_stable(keys, -3, -1, np.array([0, 1, 2]))
        assert out_k.tolist() == [-3, -3, -1]
        assert out_p.tolist() == [0, 2, 1]

    def test_counting_sort_range_precondition(self):
        keys = np.array([0, 70000], np.int64)
        with pytest.raises(ValueError):
            counting_sort_stable(keys, 0, 70000)

    @given(st.lists(st.integers(-40, 40), max_size=200))
    def test_counting_sort_matches_oracle(self, data):
        keys = np.array(data, np.int64)
        payload = np.arange(keys.size)
        out_k, out_p = counting_sort_stable(keys, -40, 40, payload)
        exp_k, exp_p = stable_sort_oracle(keys, payload)
        assert np.array_equal(out_k, exp_k)
        assert np.array_equal(out_p, exp_p)

    @given(st.lists(st.integers(INT64_MIN, INT64_MAX), max_size=96))
    def test_insertion_sort_matches_oracle(self, data):
        keys = np.array(data, np.int64)
        payload = np.arange(keys.size)
        out_k, out_p = insertion_sort_stable(keys, payload)
        exp_k, exp_p = stable_sort_oracle(keys, payload)
        assert np.array_equal(out_k, exp_k)
        assert np.array_equal(out_p, exp_p)

    @given(st.lists(st.integers(-5, 5) | st.integers(INT64_MIN, INT64_MAX),
                    max_size=300))
    def test_fallback_sort_matches_oracle(self, data):
        keys = np.array(data, np.int64)
        payload = np.arange(keys.size)
        out_k, out_p = fallback_sort_stable(keys, payload)
        exp_k, exp_p = stable_sort_oracle(keys, payload)
        assert np.array_equal(out_k, exp_k)
        assert np.array_equal(out_p, exp_p)

    def test_fallback_sorted_input_identity(self):
        keys = np.arange(1000, dtype=np.int64)
        out_k, _ = fallback_sort_stable(keys)
        assert np.array_equal(out_k, keys)

    def test_fallback_two_element_inversion(self):
        out_k, _ = fallback_sort_stable(np.array([9, 1], np.int64))
        assert out_k.tolist() == [1, 9]


class TestClusterCount:
    def test_default_alpha(self):
        assert cluster_count(10**6, 0.6) == 600

    def test_floor_at_two(self):
        assert cluster_count(4, 0.6) == 2
