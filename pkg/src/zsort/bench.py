"""Cold-cache benchmark harness with verified-only timing.

Protocol per trial: generate the workload once, then for each repetition
copy the input fresh, flush the cache by traversing and mutating a buffer
larger than last-level cache, time the sort alone on a monotonic clock, and
verify the output (sortedness, permutation, stability). A repetition that
fails verification aborts the whole trial; timings of wrong output are never
reported.

Algorithms are looked up in a registry so platform sorts can be benchmarked
through the same protocol: ``register_algorithm(name, fn)`` with
``fn(keys, payload, config) -> (keys, payload)`` (the arrays passed in are
fresh copies the adapter may mutate).
"""

from __future__ import annotations

import csv
import json
import statistics
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _kernels as _k
from .core import SortConfig, fallback_sort_stable, zsort
from .datagen import DistributionSpec, generate
from .verify import check_stable_permutation

__all__ = [
    "ALGORITHM_NAMES",
    "BenchSpec",
    "CSV_COLUMNS",
    "TrialResult",
    "VerificationError",
    "build_matrix",
    "flush_cache",
    "lsd_radix_sort_stable",
    "merge_sort_stable",
    "register_algorithm",
    "run_alpha_sweep",
    "run_suite",
    "run_trial",
]

CSV_COLUMNS = [
    "algorithm", "distribution", "size", "seed", "repetitions",
    "mean_ms", "median_ms", "min_ms", "stddev_ms", "verified",
]

ALPHA_CSV_COLUMNS = [
    "alpha", "size", "seed", "repetitions",
    "mean_ms", "median_ms", "min_ms", "stddev_ms", "verified",
]

DEFAULT_FLUSH_BYTES = 128 * 2**20


class VerificationError(RuntimeError):
    """A benchmark repetition produced output that failed verification."""


@dataclass(frozen=True)
class BenchSpec:
    """One benchmark cell: algorithm x workload x repetition protocol."""

    algorithm: str
    distribution: DistributionSpec
    repetitions: int = 100
    flush_bytes: int = DEFAULT_FLUSH_BYTES
    sort_config: SortConfig = field(default_factory=SortConfig)

    def __post_init__(self):
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if self.flush_bytes < 1:
            raise ValueError("flush_bytes must be >= 1")


@dataclass(frozen=True)
class TrialResult:
    """Timing statistics of one verified benchmark cell (milliseconds)."""

    algorithm: str
    distribution: str
    size: int
    seed: int
    repetitions: int
    mean_ms: float
    median_ms: float
    min_ms: float
    stddev_ms: float
    verified: bool

    def row(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "distribution": self.distribution,
            "size": self.size,
            "seed": self.seed,
            "repetitions": self.repetitions,
            "mean_ms": round(self.mean_ms, 6),
            "median_ms": round(self.median_ms, 6),
            "min_ms": round(self.min_ms, 6),
            "stddev_ms": round(self.stddev_ms, 6),
            "verified": str(self.verified).lower(),
        }


def merge_sort_stable(keys, payload=None):
    """Stable bottom-up merge sort baseline; O(n log n), O(n) auxiliary.

    Doubles as the verification oracle and as the sorter's own fallback (the
    same compiled routine backs both).
    """
    return fallback_sort_stable(keys, payload)


def lsd_radix_sort_stable(keys, payload=None):
    """Stable LSD radix sort, 8-bit digits: exactly 8 distribution passes on
    64-bit keys regardless of data. Returns ``(keys, payload, passes)``.

    Signed order comes from XOR-flipping the sign bit during digit
    extraction only; stored keys are untouched.
    """
    arr = np.ascontiguousarray(np.asarray(keys, dtype=np.int64))
    if payload is None:
        carry = np.arange(arr.size, dtype=np.int64)
        out_k, _, passes = _k.lsd_radix_sort(arr, carry)
        return out_k, None, int(passes)
    parr = np.ascontiguousarray(np.asarray(payload, dtype=np.int64))
    if parr.shape != arr.shape:
        raise ValueError("payload length must match keys")
    out_k, out_c, passes = _k.lsd_radix_sort(arr, parr)
    return out_k, out_c, int(passes)


def _zsort_adapter(keys, payload, config):
    out_k, out_p, _ = zsort(keys, payload, config)
    return out_k, out_p


def _merge_adapter(keys, payload, config):
    return merge_sort_stable(keys, payload)


def _radix_adapter(keys, payload, config):
    out_k, out_p, _ = lsd_radix_sort_stable(keys, payload)
    return out_k, out_p


_ALGORITHMS: dict[str, Callable] = {
    "zsort": _zsort_adapter,
    "merge": _merge_adapter,
    "radix": _radix_adapter,
}

ALGORITHM_NAMES = tuple(_ALGORITHMS)


def register_algorithm(name: str, adapter: Callable) -> None:
    """Register an external sort under ``name`` for benchmarking.

    The adapter receives fresh copies ``(keys, payload, sort_config)`` and
    must return the sorted ``(keys, payload)``; its output is verified like
    any built-in algorithm.
    """
    _ALGORITHMS[name] = adapter


_flush_buffers: dict[int, np.ndarray] = {}
_flush_sink = 0


def flush_cache(flush_bytes: int = DEFAULT_FLUSH_BYTES) -> None:
    """Evict prior data from the CPU caches.

    A buffer of ``flush_bytes`` (allocated once per size and reused) is
    traversed with one mutation per 64-byte line; the write-allocate traffic
    displaces whatever was cached before. One element is read back so the
    effect is observable.
    """
    global _flush_sink
    if flush_bytes < 1:
        raise ValueError("flush_bytes must be >= 1")
    buf = _flush_buffers.get(flush_bytes)
    if buf is None:
        buf = np.zeros(max(1, flush_bytes // 8), np.int64)
        _flush_buffers[flush_bytes] = buf
    buf[::8] += 1
    _flush_sink = int(buf[-1])


def run_trial(spec: BenchSpec) -> TrialResult:
    """Execute one benchmark cell and return verified timing statistics."""
    try:
        adapter = _ALGORITHMS[spec.algorithm]
    except KeyError:
        raise ValueError(
            f"unknown algorithm {spec.algorithm!r}; registered: {sorted(_ALGORITHMS)}"
        ) from None
    keys, payload = generate(spec.distribution)
    times_ms = []
    for rep in range(spec.repetitions):
        work_keys = keys.copy()
        work_payload = payload.copy()
        flush_cache(spec.flush_bytes)
        t0 = time.perf_counter_ns()
        out_keys, out_payload = adapter(work_keys, work_payload, spec.sort_config)
        t1 = time.perf_counter_ns()
        report = check_stable_permutation(keys, payload, out_keys, out_payload)
        if not report.stable:
            raise VerificationError(
                f"{spec.algorithm} failed verification on "
                f"{spec.distribution.kind}/{spec.distribution.size} "
                f"(rep {rep}): {report}"
            )
        times_ms.append((t1 - t0) / 1e6)
    return TrialResult(
        algorithm=spec.algorithm,
        distribution=spec.distribution.kind,
        size=spec.distribution.size,
        seed=spec.distribution.seed,
        repetitions=spec.repetitions,
        mean_ms=statistics.fmean(times_ms),
        median_ms=statistics.median(times_ms),
        min_ms=min(times_ms),
        stddev_ms=statistics.stdev(times_ms) if len(times_ms) > 1 else 0.0,
        verified=True,
    )


def build_matrix(algorithms, distributions, sizes, repetitions=100,
                 seed=42, flush_bytes=DEFAULT_FLUSH_BYTES,
                 sort_config: SortConfig | None = None,
                 **dist_params) -> list[BenchSpec]:
    """Cross algorithms x distributions x sizes into a list of cells.

    Every cell with the same distribution and size shares one seed, so
    algorithms are always compared on identical inputs.
    """
    cfg = sort_config if sort_config is not None else SortConfig()
    specs = []
    for dist in distributions:
        for size in sizes:
            dspec = DistributionSpec(kind=dist, size=size, seed=seed, **dist_params)
            for algo in algorithms:
                specs.append(BenchSpec(algorithm=algo, distribution=dspec,
                                       repetitions=repetitions,
                                       flush_bytes=flush_bytes,
                                       sort_config=cfg))
    return specs


def _csv_writer(target):
    if target is None:
        return None, None
    if hasattr(target, "write"):
        return csv.writer(target), None
    fh = open(target, "w", newline="")
    return csv.writer(fh), fh


def run_suite(specs, csv_out=None, json_out=None):
    """Run cells sequentially (never concurrently; timing fidelity), streaming
    CSV rows as each completes.

    Returns ``(results, failures)`` where failures pairs each failed spec
    with its exception; remaining cells still run. ``csv_out`` may be a path
    or an open stream; ``json_out`` a path for the JSON mirror.
    """
    specs = list(specs)
    if not specs:
        raise ValueError("benchmark matrix is empty")
    writer, fh = _csv_writer(csv_out)
    if writer is not None:
        writer.writerow(CSV_COLUMNS)
        if fh is not None:
            fh.flush()
    results: list[TrialResult] = []
    failures: list[tuple[BenchSpec, Exception]] = []
    try:
        for spec in specs:
            try:
                result = run_trial(spec)
            except Exception as exc:  # noqa: BLE001 - cell isolation is the point
                failures.append((spec, exc))
                continue
            results.append(result)
            if writer is not None:
                row = result.row()
                writer.writerow([row[c] for c in CSV_COLUMNS])
                if fh is not None:
                    fh.flush()
    finally:
        if fh is not None:
            fh.close()
    if json_out is not None:
        with open(json_out, "w") as jf:
            json.dump([r.row() for r in results], jf, indent=2)
            jf.write("\n")
    return results, failures


def run_alpha_sweep(alphas, size=1_000_000, seed=42, repetitions=20,
                    flush_bytes=DEFAULT_FLUSH_BYTES):
    """Time the z-score sorter on one uniform workload across alpha values.

    The workload is regenerated from the same seed for every alpha, so all
    rows see identical inputs. Returns TrialResult-like dict rows keyed by
    ``ALPHA_CSV_COLUMNS``.
    """
    rows = []
    for alpha in alphas:
        cfg = SortConfig(alpha=alpha)
        spec = BenchSpec(
            algorithm="zsort",
            distribution=DistributionSpec(kind="uniform", size=size, seed=seed),
            repetitions=repetitions,
            flush_bytes=flush_bytes,
            sort_config=cfg,
        )
        result = run_trial(spec)
        rows.append({
            "alpha": alpha,
            "size": size,
            "seed": seed,
            "repetitions": repetitions,
            "mean_ms": round(result.mean_ms, 6),
            "median_ms": round(result.median_ms, 6),
            "min_ms": round(result.min_ms, 6),
            "stddev_ms": round(result.stddev_ms, 6),
            "verified": "true",
        })
    return rows
