"""Seedable synthetic workloads of signed 64-bit integer keys.

Five families cover the benchmark protocol: full-range uniform keys, rounded
Gaussian keys, power-law (Pareto) keys for heavy-tailed skew, nearly sorted
sequences (sorted, then a fixed fraction of random index-pair swaps), and
high-duplicate keys drawn from a narrow value range. All randomness comes
from the 64-bit Mersenne Twister in :mod:`zsort._mt19937`, so a spec is a
pure description: same spec, same keys, bit for bit.

The distribution parameters the protocol leaves open (Gaussian mu/sigma,
Pareto exponent, swap fraction, duplicate range width) are explicit fields
with documented defaults rather than hard-coded constants.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _kernels as _k
from ._mt19937 import fill_raw

__all__ = [
    "DISTRIBUTIONS",
    "DatasetSummary",
    "DistributionSpec",
    "distribution_stats",
    "generate",
    "read_keys",
    "write_keys",
]

DISTRIBUTIONS = ("uniform", "normal", "skewed", "nearly_sorted", "high_duplicate")

_TWO_POW_MINUS_53 = 1.0 / 9007199254740992.0
# Largest float64 below 2**63; clamping here keeps int64 casts in range.
_INT64_MAX_F = 9223372036854774784.0
_INT64_MIN_F = -9223372036854775808.0

# Inversion counting in distribution_stats is exact but O(n log n); cap it.
_INVERSION_LIMIT = 100_000


@dataclass(frozen=True)
class DistributionSpec:
    """One reproducible workload: family, size, seed, and family parameters."""

    kind: str
    size: int
    seed: int = 1
    normal_mu: float = 0.0
    normal_sigma: float = 1e9
    pareto_alpha: float = 1.5
    pareto_xm: float = 1.0
    swap_fraction: float = 0.01
    dup_range: int = 1000

    def __post_init__(self):
        if self.kind not in DISTRIBUTIONS:
            raise ValueError(
                f"unknown distribution {self.kind!r}; expected one of {DISTRIBUTIONS}"
            )
        if self.size < 1:
            raise ValueError("size must be >= 1")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        if not (self.normal_sigma > 0):
            raise ValueError("normal_sigma must be positive")
        if not (self.pareto_alpha > 0):
            raise ValueError("pareto_alpha must be positive")
        if not (self.pareto_xm > 0):
            raise ValueError("pareto_xm must be positive")
        if not (0 <= self.swap_fraction <= 1):
            raise ValueError("swap_fraction must be in [0, 1]")
        if self.dup_range < 1:
            raise ValueError("dup_range must be >= 1")


@dataclass(frozen=True)
class DatasetSummary:
    """Self-check summary of one key array."""

    min_key: int
    max_key: int
    distinct: int
    inversions: int | None


def _unit_open_closed(raw: np.ndarray) -> np.ndarray:
    # (0, 1]: 53-bit mantissa draw shifted off zero for log/power transforms.
    return ((raw >> np.uint64(11)) + np.uint64(1)).astype(np.float64) * _TWO_POW_MINUS_53


def _unit_closed_open(raw: np.ndarray) -> np.ndarray:
    # [0, 1)
    return (raw >> np.uint64(11)).astype(np.float64) * _TWO_POW_MINUS_53


def _to_int64(x: np.ndarray) -> np.ndarray:
    return np.clip(x, _INT64_MIN_F, _INT64_MAX_F).astype(np.int64)


def _gen_uniform(spec: DistributionSpec) -> np.ndarray:
    return fill_raw(spec.seed, spec.size).view(np.int64).copy()


def _gen_normal(spec: DistributionSpec) -> np.ndarray:
    # Box-Muller on paired draws; first half feeds the radius, second the angle.
    pairs = (spec.size + 1) // 2
    raw = fill_raw(spec.seed, 2 * pairs)
    u1 = _unit_open_closed(raw[:pairs])
    u2 = _unit_closed_open(raw[pairs:])
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = (2.0 * np.pi) * u2
    z = np.empty(2 * pairs, np.float64)
    z[0::2] = radius * np.cos(angle)
    z[1::2] = radius * np.sin(angle)
    x = spec.normal_mu + spec.normal_sigma * z[: spec.size]
    return _to_int64(np.rint(x))


def _gen_skewed(spec: DistributionSpec) -> np.ndarray:
    u = _unit_open_closed(fill_raw(spec.seed, spec.size))
    x = np.floor(spec.pareto_xm * u ** (-1.0 / spec.pareto_alpha))
    return _to_int64(x)


def _gen_nearly_sorted(spec: DistributionSpec) -> np.ndarray:
    swaps = int(spec.swap_fraction * spec.size)
    raw = fill_raw(spec.seed, spec.size + 2 * swaps)
    keys = np.sort(raw[: spec.size].view(np.int64))
    if swaps:
        idx = (raw[spec.size:] % np.uint64(spec.size)).astype(np.int64)
        _k.apply_index_swaps(keys, idx.reshape(swaps, 2))
    return keys


def _gen_high_duplicate(spec: DistributionSpec) -> np.ndarray:
    raw = fill_raw(spec.seed, spec.size)
    return (raw % np.uint64(spec.dup_range)).astype(np.int64)


_GENERATORS = {
    "uniform": _gen_uniform,
    "normal": _gen_normal,
    "skewed": _gen_skewed,
    "nearly_sorted": _gen_nearly_sorted,
    "high_duplicate": _gen_high_duplicate,
}


def generate(spec: DistributionSpec):
    """Generate ``(keys, payload)`` for a workload; payload is the 0-based index.

    Pure function of its argument: repeated calls return bit-identical arrays.
    """
    keys = _GENERATORS[spec.kind](spec)
    payload = np.arange(spec.size, dtype=np.int64)
    return keys, payload


def distribution_stats(keys) -> DatasetSummary:
    """Exact min/max/distinct of a key array; exact inversion count for
    arrays up to 10**5 elements (None beyond that)."""
    arr = np.ascontiguousarray(np.asarray(keys), dtype=np.int64)
    if arr.size == 0:
        raise ValueError("distribution_stats requires a nonempty array")
    inversions = None
    if arr.size <= _INVERSION_LIMIT:
        inversions = int(_k.count_inversions(arr))
    return DatasetSummary(
        min_key=int(arr.min()),
        max_key=int(arr.max()),
        distinct=int(np.unique(arr).size),
        inversions=inversions,
    )


def write_keys(path, keys) -> None:
    """Write keys to ``path``: little-endian int64 for ``.bin``, one decimal
    integer per line for ``.txt``."""
    p = Path(path)
    arr = np.ascontiguousarray(np.asarray(keys), dtype=np.int64)
    if p.suffix == ".bin":
        arr.astype("<i8").tofile(p)
    elif p.suffix == ".txt":
        with open(p, "w") as fh:
            for v in arr.tolist():
                fh.write(f"{v}\n")
    else:
        raise ValueError(f"unsupported key file extension {p.suffix!r}; use .bin or .txt")


def read_keys(path) -> np.ndarray:
    """Read a key file written by :func:`write_keys` (format by extension)."""
    p = Path(path)
    if p.suffix == ".bin":
        nbytes = os.path.getsize(p)
        if nbytes % 8 != 0:
            raise ValueError(f"{p}: size {nbytes} is not a multiple of 8 bytes")
        return np.fromfile(p, dtype="<i8").astype(np.int64)
    if p.suffix == ".txt":
        values = []
        with open(p) as fh:
            for line in fh:
                line = line.strip()
                if line:
                    values.append(int(line))
        return np.array(values, dtype=np.int64)
    raise ValueError(f"unsupported key file extension {p.suffix!r}; use .bin or .txt")
