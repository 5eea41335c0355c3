"""Checker semantics, including the localized stability violation index."""

import numpy as np
import pytest

from zsort import (
    DistributionSpec,
    SortConfig,
    check_key_permutation,
    check_sorted,
    check_stable_permutation,
    depth_probe,
    generate,
    merge_sort_stable,
)


class TestCheckSorted:
    def test_nondecreasing(self):
        assert check_sorted([1, 2, 2, 3]) == (True, None)

    def test_violation_index(self):
        assert check_sorted([2, 1]) == (False, 1)

    def test_empty(self):
        assert check_sorted([]) == (True, None)


class TestCheckStablePermutation:
    def test_inverted_equal_pair(self):
        report = check_stable_permutation([5, 5], [0, 1], [5, 5], [1, 0])
        assert report.sorted and report.permutation
        assert not report.stable
        assert report.first_violation_index == 1

    def test_oracle_output_passes(self):
        keys = np.array([3, 1, 3, 1, 2], np.int64)
        payload = np.arange(5)
        out_k, out_p = merge_sort_stable(keys, payload)
        report = check_stable_permutation(keys, payload, out_k, out_p)
        assert report.sorted and report.permutation and report.stable
        assert report.first_violation_index is None

    def test_missing_record(self):
        report = check_stable_permutation([1, 2, 3], [0, 1, 2], [1, 2], [0, 1])
        assert not report.permutation
        assert not report.stable

    def test_wrong_multiset_same_size(self):
        report = check_stable_permutation([1, 2], [0, 1], [1, 1], [0, 1])
        assert report.sorted
        assert not report.permutation

    def test_unsorted_output(self):
        report = check_stable_permutation([2, 1], [0, 1], [2, 1], [0, 1])
        assert not report.sorted
        assert report.permutation
        assert report.first_violation_index == 1

    def test_payload_collision_rejected(self):
        with pytest.raises(ValueError):
            check_stable_permutation([1, 2], [0, 0], [1, 2], [0, 0])

    def test_non_sequence_payload_rejected(self):
        with pytest.raises(ValueError):
            check_stable_permutation([1, 2], [1, 0], [1, 2], [1, 0])

    def test_stable_implies_sorted_and_permutation(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            keys = rng.integers(-4, 4, size=int(rng.integers(0, 40)), dtype=np.int64)
            payload = np.arange(keys.size)
            perm = rng.permutation(keys.size)
            report = check_stable_permutation(keys, payload, keys[perm], payload[perm])
            if report.stable:
                assert report.sorted and report.permutation


class TestCheckKeyPermutation:
    def test_multiset_equality(self):
        assert check_key_permutation([3, 1, 2], [2, 3, 1])
        assert not check_key_permutation([3, 1, 2], [3, 1, 1])
        assert not check_key_permutation([1], [1, 1])


class TestDepthProbe:
    def test_oracle_consistency_across_generators(self):
        for kind in ("uniform", "normal", "skewed", "nearly_sorted",
                     "high_duplicate"):
            keys, payload = generate(DistributionSpec(kind=kind, size=4000, seed=2))
            out_k, out_p = merge_sort_stable(keys, payload)
            report = check_stable_permutation(keys, payload, out_k, out_p)
            assert report.stable, kind

    def test_uniform_depth_bound(self):
        keys, _ = generate(DistributionSpec(kind="uniform", size=10**5, seed=1))
        stats = depth_probe(keys)
        assert stats.max_depth_reached <= 3
        assert stats.fallback_invocations == 0

    def test_all_equal_depth_zero(self):
        stats = depth_probe(np.full(5000, 3, np.int64))
        assert stats.max_depth_reached == 0

    def test_small_input_no_scatter(self):
        stats = depth_probe(np.array([3, 1, 2], np.int64))
        assert stats.total_scatter_passes == 0
        assert stats.insertion_sort_invocations == 1

    def test_accepts_custom_config(self):
        keys, _ = generate(DistributionSpec(kind="uniform", size=5000, seed=9))
        stats = depth_probe(keys, SortConfig(alpha=1.2))
        assert stats.max_depth_reached >= 1
