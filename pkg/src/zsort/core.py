"""Stable z-score distribution sort for signed 64-bit integer keys.

The sorter normalizes each key to a z-score against the segment's mean and
standard deviation, shifts the scores nonnegative, scales them to a bucket
index, and scatters records into bucket order with a histogram/prefix-offset
pass. Buckets are refined with further partition levels whose segment means
are estimated from bucket-range midpoints instead of being recomputed, and
small or narrow-range buckets finish in insertion or counting sort. Every
pass reads records strictly in scan order, so equal keys keep their input
order (stability) unconditionally.

Keys travel with one opaque 64-bit payload word. Any equal-length numpy
payload array may be attached: 8-byte dtypes move in the compiled kernels,
anything else is reordered by index after the sort.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as _k

__all__ = [
    "DegenerateSpreadError",
    "FirstPassStats",
    "MappingParams",
    "PartitionPlan",
    "SortConfig",
    "SortStats",
    "all_equal",
    "build_mapping_params",
    "build_partition_plan",
    "cluster_count",
    "counting_sort_stable",
    "estimated_mean",
    "fallback_sort_stable",
    "first_pass",
    "insertion_sort_stable",
    "map_to_cluster",
    "stable_scatter",
    "zsort",
    "zsort_rec",
]

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

# Exact two-limb summation in the first pass bounds the segment size.
_MAX_SEGMENT = 2**31 - 1


class DegenerateSpreadError(ValueError):
    """Standard deviation underflowed to zero on a segment with unequal keys.

    Possible when near-identical huge keys collapse to one float64 value;
    callers route such segments to :func:`fallback_sort_stable`.
    """


@dataclass(frozen=True)
class SortConfig:
    """Tuning knobs for :func:`zsort`.

    ``alpha`` scales the bucket count ``k = max(2, round(alpha * sqrt(n)))``.
    Segments at or below ``insertion_threshold`` finish in insertion sort;
    buckets whose exact key range is below ``counting_range_threshold`` finish
    in counting sort. ``depth_guard`` caps partition levels before the merge
    fallback takes over. ``collect_stats`` marks tracing intent; the compiled
    driver maintains its counters unconditionally because they are free.
    """

    alpha: float = 0.6
    insertion_threshold: int = 96
    counting_range_threshold: int = 65000
    depth_guard: int = 32
    collect_stats: bool = False

    def __post_init__(self):
        if not (0 < self.alpha <= 2):
            raise ValueError(f"alpha must be in (0, 2], got {self.alpha}")
        if self.insertion_threshold < 1:
            raise ValueError("insertion_threshold must be >= 1")
        if self.counting_range_threshold < 1:
            raise ValueError("counting_range_threshold must be >= 1")
        if self.depth_guard < 3:
            raise ValueError("depth_guard must be >= 3")


@dataclass(frozen=True)
class FirstPassStats:
    """Exact key sum (arbitrary-precision), minimum, and maximum of a segment."""

    sum: int
    min_key: int
    max_key: int


@dataclass(frozen=True)
class MappingParams:
    """Parameters of the bucket mapping for one segment.

    ``scale`` is ``k / 4`` buckets per z-unit, so roughly the +/-2 sigma band
    of a normal-ish segment spans the full bucket range.
    """

    mean: float
    std: float
    zmin: float
    scale: float
    k: int

    def __post_init__(self):
        if not (self.std > 0):
            raise ValueError("std must be positive")
        if self.zmin < 0:
            raise ValueError("zmin must be nonnegative")
        if not (self.scale > 0):
            raise ValueError("scale must be positive")
        if self.k < 2:
            raise ValueError("k must be >= 2")


@dataclass(frozen=True)
class PartitionPlan:
    """Per-bucket occupancy and exclusive prefix offsets for one scatter."""

    k: int
    counts: np.ndarray
    offsets: np.ndarray


@dataclass
class SortStats:
    """Counters from one sort: partition depth and fallback activity."""

    max_depth_reached: int = 0
    fallback_invocations: int = 0
    counting_sort_invocations: int = 0
    insertion_sort_invocations: int = 0
    total_scatter_passes: int = 0


def cluster_count(n: int, alpha: float) -> int:
    """Bucket count for a top-level segment of ``n`` records."""
    return max(2, int(round(alpha * math.sqrt(n))))


def _coerce_keys(keys) -> np.ndarray:
    arr = np.asarray(keys)
    if arr.ndim != 1:
        raise ValueError("keys must be one-dimensional")
    if arr.size == 0:
        return np.empty(0, np.int64)
    if arr.dtype == np.int64:
        return np.ascontiguousarray(arr)
    if arr.dtype.kind == "i":
        return arr.astype(np.int64)
    if arr.dtype.kind == "u" and arr.dtype.itemsize < 8:
        return arr.astype(np.int64)
    raise TypeError(
        f"keys must be signed 64-bit integers, got dtype {arr.dtype}"
    )


def _prepare_carry(payload, n: int):
    """Build the int64 carry column and a function mapping it back to payload."""
    if payload is None:
        return np.arange(n, dtype=np.int64), lambda carry: None
    arr = np.asanyarray(payload)
    if arr.shape != (n,):
        raise ValueError(
            f"payload must have shape ({n},), got {arr.shape}"
        )
    if arr.dtype.hasobject or arr.dtype.itemsize != 8 or arr.dtype.names:
        source = arr
        return np.arange(n, dtype=np.int64), lambda carry: source[carry]
    flat = np.ascontiguousarray(arr)
    return flat.view(np.int64), lambda carry: carry.view(flat.dtype)


def first_pass(keys) -> FirstPassStats:
    """Exact sum, min, and max of the keys in one sequential pass.

    The sum is exact for any int64 data (accumulated in 32-bit limbs and
    recombined as a Python int), which the all-equal test depends on.
    """
    arr = _coerce_keys(keys)
    if arr.size == 0:
        raise ValueError("first_pass requires a nonempty segment")
    if arr.size > _MAX_SEGMENT:
        raise ValueError("segment too large for exact two-limb summation")
    hi, lo, mn, mx = _k.first_pass(arr, 0, arr.size)
    return FirstPassStats(sum=(int(hi) << 32) + int(lo), min_key=int(mn),
                          max_key=int(mx))


def all_equal(stats: FirstPassStats, size: int) -> bool:
    """True iff every key in the summarized segment is identical.

    Since all keys are >= min, the exact identity ``sum == min * size`` holds
    only when each key equals the minimum. Arbitrary-precision integers make
    the test immune to float rounding.
    """
    if size < 1:
        raise ValueError("size must be >= 1")
    return stats.sum == stats.min_key * size


def build_mapping_params(keys, stats: FirstPassStats, k: int) -> MappingParams:
    """Derive the bucket mapping for a segment from its first-pass stats.

    The variance is a second sequential pass in float64 around the exact
    mean; rounding there only nudges bucket boundaries, which are clamped.
    Raises :class:`DegenerateSpreadError` if the deviation underflows to zero
    for a segment that is not all-equal.
    """
    arr = _coerce_keys(keys)
    if arr.size == 0:
        raise ValueError("cannot build mapping parameters for an empty segment")
    if k < 2:
        raise ValueError("k must be >= 2")
    size = arr.size
    mean = stats.sum / size
    var = float(_k.variance_pass(arr, 0, size, mean))
    std = math.sqrt(var)
    if not (std > 0.0) or not math.isfinite(std):
        raise DegenerateSpreadError(
            "standard deviation underflowed to zero; segment cannot be bucketed"
        )
    zmin = abs((stats.min_key - mean) / std)
    return MappingParams(mean=mean, std=std, zmin=zmin, scale=k / 4, k=k)


def map_to_cluster(key: int, params: MappingParams) -> int:
    """Bucket index of one key under ``params``, clamped to [0, k-1].

    The lower clamp matters: ``zmin`` is computed from the segment minimum,
    so the minimum key lands exactly at zero up to float rounding, which can
    dip a hair negative.
    """
    return int(_k.bucket_of(np.int64(key), params.mean, params.std,
                            params.zmin, params.scale, np.int64(params.k)))


def build_partition_plan(keys, params: MappingParams) -> PartitionPlan:
    """Histogram the segment into ``params.k`` buckets with prefix offsets."""
    arr = _coerce_keys(keys)
    counts = np.zeros(params.k, np.int64)
    _k.histogram_pass(arr, 0, arr.size, params.mean, params.std, params.zmin,
                      params.scale, np.int64(params.k), counts)
    offsets = np.empty(params.k, np.int64)
    _k.exclusive_offsets(counts, offsets)
    return PartitionPlan(k=params.k, counts=counts, offsets=offsets)


def stable_scatter(keys, plan: PartitionPlan, params: MappingParams,
                   payload=None):
    """Reorder the segment into bucket order, preserving input order per bucket.

    Records are read strictly front-to-back and placed at each bucket's next
    free offset. Returns ``(keys, payload)`` as new arrays.
    """
    arr = _coerce_keys(keys)
    if int(plan.counts.sum()) != arr.size:
        raise ValueError("partition plan does not match segment size")
    carry, restore = _prepare_carry(payload, arr.size)
    dst_keys = np.empty(arr.size, np.int64)
    dst_carry = np.empty(arr.size, np.int64)
    cursors = plan.offsets.copy()
    _k.scatter_pass(arr, carry, 0, arr.size, params.mean, params.std,
                    params.zmin, params.scale, np.int64(params.k), cursors,
                    dst_keys, dst_carry, 0)
    return dst_keys, restore(dst_carry)


def estimated_mean(bucket: int, params: MappingParams) -> float:
    """Center estimate for a bucket: the key whose unfloored bucket coordinate
    is ``bucket + 0.5``, i.e. the midpoint of the bucket's value range."""
    if not (0 <= bucket < params.k):
        raise ValueError(f"bucket must be in [0, {params.k}), got {bucket}")
    return float(_k.estimated_center(np.int64(bucket), params.scale,
                                     params.zmin, params.std, params.mean))


def insertion_sort_stable(keys, payload=None):
    """Stable insertion sort; meant for segments at or below the insertion
    threshold. Returns ``(keys, payload)`` as new arrays."""
    arr = _coerce_keys(keys)
    carry, restore = _prepare_carry(payload, arr.size)
    out_k = arr.copy()
    out_c = carry.copy()
    _k.insertion_sort_range(out_k, out_c, 0, out_k.size)
    return out_k, restore(out_c)


def counting_sort_stable(keys, min_key: int, max_key: int, payload=None,
                         range_threshold: int = SortConfig.counting_range_threshold):
    """Stable counting sort over the exact key range [min_key, max_key].

    The range is checked with arbitrary-precision integers; a range at or
    above ``range_threshold`` is a caller routing bug and raises ValueError.
    """
    arr = _coerce_keys(keys)
    span = int(max_key) - int(min_key)
    if span < 0:
        raise ValueError("max_key must be >= min_key")
    if span >= range_threshold:
        raise ValueError(
            f"key range {span} is not below the counting threshold {range_threshold}"
        )
    carry, restore = _prepare_carry(payload, arr.size)
    out_k = np.empty(arr.size, np.int64)
    out_c = np.empty(arr.size, np.int64)
    if arr.size:
        mn, mx = _k.minmax_pass(arr, 0, arr.size)
        if int(mn) < min_key or int(mx) > max_key:
            raise ValueError("keys fall outside [min_key, max_key]")
        _k.counting_sort_range(arr, carry, 0, arr.size, np.int64(min_key),
                               np.int64(span + 1), out_k, out_c, 0)
    return out_k, restore(out_c)


def fallback_sort_stable(keys, payload=None):
    """Stable bottom-up merge sort; the unconditional termination path."""
    arr = _coerce_keys(keys)
    carry, restore = _prepare_carry(payload, arr.size)
    out_k = arr.copy()
    out_c = carry.copy()
    aux_k = np.empty(arr.size, np.int64)
    aux_c = np.empty(arr.size, np.int64)
    _k.merge_sort_range(out_k, out_c, 0, out_k.size, aux_k, aux_c)
    return out_k, restore(out_c)


def _stats_from(counters: np.ndarray) -> SortStats:
    return SortStats(
        max_depth_reached=int(counters[_k.STAT_MAX_DEPTH]),
        fallback_invocations=int(counters[_k.STAT_FALLBACKS]),
        counting_sort_invocations=int(counters[_k.STAT_COUNTING]),
        insertion_sort_invocations=int(counters[_k.STAT_INSERTION]),
        total_scatter_passes=int(counters[_k.STAT_SCATTERS]),
    )


def zsort(keys, payload=None, config: SortConfig | None = None):
    """Stably sort records by key; returns ``(keys, payload, stats)``.

    The input arrays are never modified. Segments at or below the insertion
    threshold are insertion sorted outright; all-equal inputs are detected
    with the exact sum identity and copied through. Otherwise the bucket
    count is fixed from the top-level size and kept constant across all
    partition levels, and degenerate segments (zero spread, single-bucket
    stalls, excessive depth) finish in the merge fallback, so termination and
    stability hold for every input.
    """
    cfg = config if config is not None else SortConfig()
    arr = _coerce_keys(keys)
    n = arr.size
    carry, restore = _prepare_carry(payload, n)
    counters = np.zeros(_k.STAT_SLOTS, np.int64)
    if n == 0:
        return arr.copy(), restore(carry.copy()), _stats_from(counters)

    out_k = np.empty(n, np.int64)
    out_c = np.empty(n, np.int64)
    if n <= cfg.insertion_threshold:
        out_k[:] = arr
        out_c[:] = carry
        _k.insertion_sort_range(out_k, out_c, 0, n)
        counters[_k.STAT_INSERTION] = 1
        return out_k, restore(out_c), _stats_from(counters)

    stats = first_pass(arr)
    if all_equal(stats, n):
        out_k[:] = arr
        out_c[:] = carry
        return out_k, restore(out_c), _stats_from(counters)

    try:
        params = build_mapping_params(arr, stats, cluster_count(n, cfg.alpha))
    except DegenerateSpreadError:
        out_k[:] = arr
        out_c[:] = carry
        aux_k = np.empty(n, np.int64)
        aux_c = np.empty(n, np.int64)
        _k.merge_sort_range(out_k, out_c, 0, n, aux_k, aux_c)
        counters[_k.STAT_FALLBACKS] = 1
        return out_k, restore(out_c), _stats_from(counters)

    scr_k = np.empty(n, np.int64)
    scr_c = np.empty(n, np.int64)
    _k.zsort_driver(arr, carry, out_k, out_c, scr_k, scr_c,
                    np.int64(params.k), params.scale, params.mean, params.std,
                    params.zmin, np.int64(cfg.insertion_threshold),
                    np.int64(cfg.counting_range_threshold),
                    np.int64(cfg.depth_guard), counters)
    return out_k, restore(out_c), _stats_from(counters)


def zsort_rec(keys, k: int, scale: float, mean_est: float, depth: int = 1,
              payload=None, config: SortConfig | None = None):
    """Recursive-phase sort of one segment given an estimated mean.

    The pipeline matches :func:`zsort` except the mean is not recomputed:
    one fused pass gathers min, max, and the squared deviation around
    ``mean_est``. All-equal segments copy through; a one-bucket scatter or
    the depth guard routes to the merge fallback. Returns
    ``(keys, payload, stats)``.
    """
    cfg = config if config is not None else SortConfig()
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if k < 2:
        raise ValueError("k must be >= 2")
    if not (scale > 0):
        raise ValueError("scale must be positive")
    arr = _coerce_keys(keys)
    n = arr.size
    if n <= cfg.insertion_threshold:
        raise ValueError(
            "zsort_rec requires a segment larger than the insertion threshold"
        )
    carry, restore = _prepare_carry(payload, n)
    counters = np.zeros(_k.STAT_SLOTS, np.int64)
    out_k = np.empty(n, np.int64)
    out_c = np.empty(n, np.int64)
    scr_k = np.empty(n, np.int64)
    scr_c = np.empty(n, np.int64)
    _k.zsort_rec_driver(arr, carry, out_k, out_c, scr_k, scr_c,
                        np.int64(k), float(scale), float(mean_est),
                        np.int64(depth + 1), np.int64(cfg.insertion_threshold),
                        np.int64(cfg.counting_range_threshold),
                        np.int64(cfg.depth_guard), counters)
    return out_k, restore(out_c), _stats_from(counters)
