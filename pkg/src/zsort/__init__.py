"""Stable z-score distribution sort with workload generators and a benchmark
harness for 64-bit signed integer keys."""

from .bench import (
    BenchSpec,
    TrialResult,
    VerificationError,
    flush_cache,
    lsd_radix_sort_stable,
    merge_sort_stable,
    register_algorithm,
    run_alpha_sweep,
    run_suite,
    run_trial,
)
from .core import (
    DegenerateSpreadError,
    FirstPassStats,
    MappingParams,
    PartitionPlan,
    SortConfig,
    SortStats,
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
    zsort,
    zsort_rec,
)
from .datagen import (
    DISTRIBUTIONS,
    DatasetSummary,
    DistributionSpec,
    distribution_stats,
    generate,
    read_keys,
    write_keys,
)
from .verify import (
    VerifyReport,
    check_key_permutation,
    check_sorted,
    check_stable_permutation,
    depth_probe,
)

__version__ = "0.1.0"

__all__ = [
    "BenchSpec",
    "DISTRIBUTIONS",
    "DatasetSummary",
    "DegenerateSpreadError",
    "DistributionSpec",
    "FirstPassStats",
    "MappingParams",
    "PartitionPlan",
    "SortConfig",
    "SortStats",
    "TrialResult",
    "VerificationError",
    "VerifyReport",
    "all_equal",
    "build_mapping_params",
    "build_partition_plan",
    "check_key_permutation",
    "check_sorted",
    "check_stable_permutation",
    "cluster_count",
    "counting_sort_stable",
    "depth_probe",
    "distribution_stats",
    "estimated_mean",
    "fallback_sort_stable",
    "first_pass",
    "flush_cache",
    "generate",
    "insertion_sort_stable",
    "lsd_radix_sort_stable",
    "map_to_cluster",
    "merge_sort_stable",
    "read_keys",
    "register_algorithm",
    "run_alpha_sweep",
    "run_suite",
    "run_trial",
    "stable_scatter",
    "write_keys",
    "zsort",
    "zsort_rec",
]
