"""Correctness oracles: sortedness, permutation, and stability checkers.

Stability is checked structurally: payloads must be sequence numbers
assigned in input order, so within every equal-key run of the output the
payloads must be strictly increasing. A violation therefore localizes to an
output index instead of only falling out of an oracle diff.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as _k
from .core import SortConfig, SortStats, zsort

__all__ = [
    "VerifyReport",
    "check_key_permutation",
    "check_sorted",
    "check_stable_permutation",
    "depth_probe",
]


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of the three record checks; stable implies the other two."""

    sorted: bool
    permutation: bool
    stable: bool
    first_violation_index: int | None = None


def check_sorted(keys):
    """Return ``(ok, first_violation_index)``; ok iff keys are nondecreasing."""
    arr = np.ascontiguousarray(np.asarray(keys, dtype=np.int64))
    if arr.size == 0:
        return True, None
    idx = int(_k.sorted_violation(arr))
    return (True, None) if idx < 0 else (False, idx)


def check_key_permutation(input_keys, output_keys) -> bool:
    """Multiset equality of two key arrays (payload-free permutation check)."""
    a = np.asarray(input_keys, dtype=np.int64)
    b = np.asarray(output_keys, dtype=np.int64)
    if a.size != b.size:
        return False
    return bool(np.array_equal(np.sort(a), np.sort(b)))


def check_stable_permutation(input_keys, input_payload,
                             output_keys, output_payload) -> VerifyReport:
    """Full record check of output against input.

    ``input_payload`` must hold distinct sequence numbers assigned in input
    order (strictly increasing); anything else raises ValueError. Permutation
    is multiset equality of (key, payload) pairs; stability is payload
    monotonicity within equal-key output runs.
    """
    in_k = np.ascontiguousarray(np.asarray(input_keys, dtype=np.int64))
    in_p = np.ascontiguousarray(np.asarray(input_payload, dtype=np.int64))
    out_k = np.ascontiguousarray(np.asarray(output_keys, dtype=np.int64))
    out_p = np.ascontiguousarray(np.asarray(output_payload, dtype=np.int64))
    if in_k.shape != in_p.shape or out_k.shape != out_p.shape:
        raise ValueError("keys and payloads must have matching lengths")
    if in_p.size and not bool(_k.strictly_increasing(in_p)):
        raise ValueError(
            "input payloads must be distinct sequence numbers in input order"
        )

    violation = None

    sorted_idx = int(_k.sorted_violation(out_k)) if out_k.size else -1
    is_sorted = sorted_idx < 0
    if not is_sorted:
        violation = sorted_idx

    if in_k.size != out_k.size:
        permutation = False
        if violation is None:
            violation = min(in_k.size, out_k.size)
    else:
        order = np.argsort(out_p, kind="stable")
        permutation = bool(
            np.array_equal(out_p[order], in_p)
            and np.array_equal(out_k[order], in_k)
        )
        if not permutation and violation is None:
            mism = np.flatnonzero(
                (out_p[order] != in_p) | (out_k[order] != in_k)
            )
            violation = int(order[mism[0]]) if mism.size else 0

    stable_idx = int(_k.stability_violation(out_k, out_p)) if out_k.size else -1
    runs_stable = stable_idx < 0
    if not runs_stable and violation is None:
        violation = stable_idx

    return VerifyReport(
        sorted=is_sorted,
        permutation=permutation,
        stable=runs_stable and is_sorted and permutation,
        first_violation_index=violation,
    )


def depth_probe(keys, config: SortConfig | None = None) -> SortStats:
    """Run the sorter on a copy of ``keys`` and return its counters."""
    cfg = config if config is not None else SortConfig()
    if not cfg.collect_stats:
        cfg = SortConfig(alpha=cfg.alpha,
                         insertion_threshold=cfg.insertion_threshold,
                         counting_range_threshold=cfg.counting_range_threshold,
                         depth_guard=cfg.depth_guard,
                         collect_stats=True)
    _, _, stats = zsort(keys, config=cfg)
    return stats
