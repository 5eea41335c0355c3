"""Compiled inner loops shared by the sorting, benchmarking, and verification layers.

Every kernel operates on parallel ``int64`` arrays: one for keys, one for the
payload word that travels with each key. Buffers are preallocated by the
callers; kernels never resize anything. The bucket mapping is evaluated with
identical floating-point expressions everywhere (histogram, scatter, and the
scalar entry point), so bucket decisions cannot diverge between passes.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# Slot layout of the counter array threaded through the driver.
STAT_MAX_DEPTH = 0
STAT_FALLBACKS = 1
STAT_COUNTING = 2
STAT_INSERTION = 3
STAT_SCATTERS = 4
STAT_SLOTS = 5

_LOW32 = np.int64(0xFFFFFFFF)
_SIGN_BIT = np.uint64(0x8000000000000000)
_BYTE = np.uint64(0xFF)


@njit(cache=True)
def first_pass(keys, lo, hi):
    """One sequential pass: exact key sum (as two int64 limbs), min, and max.

    The sum is returned as ``(hi_limb, lo_limb)`` where the true value is
    ``hi_limb * 2**32 + lo_limb``; both limbs stay inside int64 for segment
    sizes below 2**31.
    """
    sum_hi = np.int64(0)
    sum_lo = np.int64(0)
    mn = keys[lo]
    mx = keys[lo]
    for i in range(lo, hi):
        k = keys[i]
        sum_hi += k >> 32
        sum_lo += k & _LOW32
        if k < mn:
            mn = k
        elif k > mx:
            mx = k
    return sum_hi, sum_lo, mn, mx


@njit(cache=True)
def minmax_pass(keys, lo, hi):
    mn = keys[lo]
    mx = keys[lo]
    for i in range(lo + 1, hi):
        k = keys[i]
        if k < mn:
            mn = k
        elif k > mx:
            mx = k
    return mn, mx


@njit(cache=True)
def variance_pass(keys, lo, hi, mean):
    """Mean squared deviation around ``mean``, accumulated in float64."""
    acc = 0.0
    for i in range(lo, hi):
        d = keys[i] - mean
        acc += d * d
    return acc / np.float64(hi - lo)


@njit(cache=True)
def fused_stats_pass(keys, lo, hi, center):
    """Min, max, and mean squared deviation around ``center`` in one sweep."""
    mn = keys[lo]
    mx = keys[lo]
    acc = 0.0
    for i in range(lo, hi):
        k = keys[i]
        if k < mn:
            mn = k
        elif k > mx:
            mx = k
        d = k - center
        acc += d * d
    return mn, mx, acc / np.float64(hi - lo)


@njit(cache=True)
def bucket_of(key, mean, std, zmin, scale, k):
    """Map one key to a bucket index in [0, k)."""
    h = ((key - mean) / std + zmin) * scale
    f = np.floor(h)
    if not (f > 0.0):
        return np.int64(0)
    if f >= np.float64(k):
        return k - np.int64(1)
    return np.int64(f)


@njit(cache=True)
def estimated_center(bucket, scale, zmin, std, mean):
    """Key value whose unfloored bucket coordinate is ``bucket + 0.5``."""
    return ((np.float64(bucket) + 0.5) / scale - zmin) * std + mean


@njit(cache=True)
def histogram_pass(keys, lo, hi, mean, std, zmin, scale, k, counts):
    for i in range(lo, hi):
        counts[bucket_of(keys[i], mean, std, zmin, scale, k)] += 1


@njit(cache=True)
def exclusive_offsets(counts, offsets):
    total = np.int64(0)
    for i in range(counts.size):
        offsets[i] = total
        total += counts[i]
    return total


@njit(cache=True)
def scatter_pass(keys, carry, lo, hi, mean, std, zmin, scale, k,
                 cursors, dst_keys, dst_carry, dst_lo):
    """Move [lo, hi) into bucket order at dst_lo, front-to-back (stable)."""
    for i in range(lo, hi):
        b = bucket_of(keys[i], mean, std, zmin, scale, k)
        pos = dst_lo + cursors[b]
        cursors[b] += 1
        dst_keys[pos] = keys[i]
        dst_carry[pos] = carry[i]


@njit(cache=True)
def copy_segment(src_keys, src_carry, src_lo, dst_keys, dst_carry, dst_lo, n):
    for i in range(n):
        dst_keys[dst_lo + i] = src_keys[src_lo + i]
        dst_carry[dst_lo + i] = src_carry[src_lo + i]


@njit(cache=True)
def insertion_sort_range(keys, carry, lo, hi):
    """In-place stable insertion sort of [lo, hi); equal keys never move past
    each other because only strictly greater neighbours shift."""
    for i in range(lo + 1, hi):
        kv = keys[i]
        cv = carry[i]
        j = i - 1
        while j >= lo and keys[j] > kv:
            keys[j + 1] = keys[j]
            carry[j + 1] = carry[j]
            j -= 1
        keys[j + 1] = kv
        carry[j + 1] = cv


@njit(cache=True)
def counting_sort_range(src_keys, src_carry, src_lo, n, mn, bins,
                        dst_keys, dst_carry, dst_lo):
    """Stable counting sort of an n-element segment into a distinct buffer.

    ``bins`` must equal ``max - mn + 1``; the subtraction is done in uint64 so
    extreme int64 values cannot overflow.
    """
    counts = np.zeros(bins, np.int64)
    for i in range(src_lo, src_lo + n):
        counts[np.int64(np.uint64(src_keys[i]) - np.uint64(mn))] += 1
    total = np.int64(0)
    for b in range(bins):
        c = counts[b]
        counts[b] = total
        total += c
    for i in range(src_lo, src_lo + n):
        slot = np.int64(np.uint64(src_keys[i]) - np.uint64(mn))
        pos = dst_lo + counts[slot]
        counts[slot] += 1
        dst_keys[pos] = src_keys[i]
        dst_carry[pos] = src_carry[i]


@njit(cache=True)
def merge_sort_range(keys, carry, lo, n, aux_keys, aux_carry):
    """Bottom-up stable merge sort of keys[lo:lo+n]; result lands in ``keys``.

    ``aux_*`` provide scratch for the same index range and are clobbered.
    """
    if n <= 1:
        return
    src_k, src_c = keys, carry
    dst_k, dst_c = aux_keys, aux_carry
    in_place = True
    width = np.int64(1)
    while width < n:
        start = np.int64(0)
        while start < n:
            mid = min(start + width, n)
            stop = min(start + 2 * width, n)
            p = start
            q = mid
            o = start
            while p < mid and q < stop:
                if src_k[lo + q] < src_k[lo + p]:
                    dst_k[lo + o] = src_k[lo + q]
                    dst_c[lo + o] = src_c[lo + q]
                    q += 1
                else:
                    dst_k[lo + o] = src_k[lo + p]
                    dst_c[lo + o] = src_c[lo + p]
                    p += 1
                o += 1
            while p < mid:
                dst_k[lo + o] = src_k[lo + p]
                dst_c[lo + o] = src_c[lo + p]
                p += 1
                o += 1
            while q < stop:
                dst_k[lo + o] = src_k[lo + q]
                dst_c[lo + o] = src_c[lo + q]
                q += 1
                o += 1
            start = stop
        src_k, dst_k = dst_k, src_k
        src_c, dst_c = dst_c, src_c
        in_place = not in_place
        width *= 2
    if not in_place:
        for i in range(n):
            keys[lo + i] = src_k[lo + i]
            carry[lo + i] = src_c[lo + i]


@njit(cache=True)
def lsd_radix_sort(keys, carry):
    """Stable LSD radix sort with 8-bit digits: always 8 distribution passes.

    Signed order falls out of flipping the key's sign bit before digit
    extraction. Returns (sorted_keys, sorted_carry, pass_count).
    """
    n = keys.size
    a_k = keys.copy()
    a_c = carry.copy()
    passes = 0
    if n == 0:
        return a_k, a_c, passes
    b_k = np.empty(n, np.int64)
    b_c = np.empty(n, np.int64)
    for p in range(8):
        shift = np.uint64(8 * p)
        counts = np.zeros(256, np.int64)
        for i in range(n):
            d = np.int64(((np.uint64(a_k[i]) ^ _SIGN_BIT) >> shift) & _BYTE)
            counts[d] += 1
        total = np.int64(0)
        for b in range(256):
            c = counts[b]
            counts[b] = total
            total += c
        for i in range(n):
            d = np.int64(((np.uint64(a_k[i]) ^ _SIGN_BIT) >> shift) & _BYTE)
            pos = counts[d]
            counts[d] += 1
            b_k[pos] = a_k[i]
            b_c[pos] = a_c[i]
        a_k, b_k = b_k, a_k
        a_c, b_c = b_c, a_c
        passes += 1
    return a_k, a_c, passes


@njit(cache=True)
def _fallback_to_out(out_k, out_c, scr_k, scr_c, base, n, in_scratch, counters):
    # Terminal stable merge sort into the output buffer; the opposite buffer
    # region is dead at this point and serves as merge scratch.
    if in_scratch:
        copy_segment(scr_k, scr_c, base, out_k, out_c, base, n)
    merge_sort_range(out_k, out_c, base, n, scr_k, scr_c)
    counters[STAT_FALLBACKS] += 1


@njit(cache=True)
def _dispatch_large_bucket(buf_k, buf_c, in_scratch, base, n, bucket,
                           mean, std, zmin, scale, k, level,
                           counting_limit,
                           out_k, out_c, scr_k, scr_c, counters,
                           st_base, st_cnt, st_mean, st_level, st_scratch, top):
    """Finish one above-threshold bucket or queue it for another level.

    Narrow-range buckets are counting sorted; everything else is pushed onto
    the worklist with the estimated center of its bucket range. Returns the
    new stack top. (Small buckets are insertion sorted inline by the callers;
    they are far too numerous to pay a call this wide for each.)
    """
    bmn, bmx = minmax_pass(buf_k, base, base + n)
    spread = np.uint64(bmx) - np.uint64(bmn)
    if spread < np.uint64(counting_limit):
        bins = np.int64(spread) + 1
        if in_scratch:
            counting_sort_range(buf_k, buf_c, base, n, bmn, bins,
                                out_k, out_c, base)
        else:
            # Placement must read from a distinct buffer; stage via scratch.
            copy_segment(buf_k, buf_c, base, scr_k, scr_c, base, n)
            counting_sort_range(scr_k, scr_c, base, n, bmn, bins,
                                out_k, out_c, base)
        counters[STAT_COUNTING] += 1
        return top
    if top < st_base.size:
        st_base[top] = base
        st_cnt[top] = n
        st_mean[top] = estimated_center(bucket, scale, zmin, std, mean)
        st_level[top] = level + 1
        st_scratch[top] = 1 if in_scratch else 0
        return top + 1
    # Unreachable with the depth_guard * k sizing, kept as a safety valve.
    _fallback_to_out(out_k, out_c, scr_k, scr_c, base, n, in_scratch, counters)
    return top


@njit(cache=True)
def _run_worklist(out_k, out_c, scr_k, scr_c, k, scale,
                  insertion_limit, counting_limit, depth_guard, counters,
                  st_base, st_cnt, st_mean, st_level, st_scratch, top):
    while top > 0:
        top -= 1
        base = st_base[top]
        n = st_cnt[top]
        center = st_mean[top]
        level = st_level[top]
        in_scratch = st_scratch[top] == 1
        cur_k = scr_k if in_scratch else out_k
        cur_c = scr_c if in_scratch else out_c
        if level > depth_guard:
            _fallback_to_out(out_k, out_c, scr_k, scr_c, base, n,
                             in_scratch, counters)
            continue
        mn, mx, var = fused_stats_pass(cur_k, base, base + n, center)
        if mn == mx:
            # Identical keys: already sorted, just land them in the output.
            if in_scratch:
                copy_segment(cur_k, cur_c, base, out_k, out_c, base, n)
            continue
        std = np.sqrt(var)
        if not (std > 0.0) or not np.isfinite(std):
            _fallback_to_out(out_k, out_c, scr_k, scr_c, base, n,
                             in_scratch, counters)
            continue
        zmin = abs((mn - center) / std)
        counts = np.zeros(k, np.int64)
        histogram_pass(cur_k, base, base + n, center, std, zmin, scale, k, counts)
        occupied = 0
        for b in range(k):
            if counts[b] > 0:
                occupied += 1
        if occupied <= 1:
            # The mapping failed to split this segment; another level would
            # see the same data again, so finish it outright.
            _fallback_to_out(out_k, out_c, scr_k, scr_c, base, n,
                             in_scratch, counters)
            continue
        offsets = np.empty(k, np.int64)
        exclusive_offsets(counts, offsets)
        cursors = offsets.copy()
        dst_k = out_k if in_scratch else scr_k
        dst_c = out_c if in_scratch else scr_c
        scatter_pass(cur_k, cur_c, base, base + n, center, std, zmin, scale, k,
                     cursors, dst_k, dst_c, base)
        counters[STAT_SCATTERS] += 1
        if counters[STAT_MAX_DEPTH] < level:
            counters[STAT_MAX_DEPTH] = level
        dst_in_scratch = not in_scratch
        for b in range(k):
            cnt = counts[b]
            if cnt == 0:
                continue
            gbase = base + offsets[b]
            if cnt <= insertion_limit:
                if dst_in_scratch:
                    copy_segment(dst_k, dst_c, gbase, out_k, out_c, gbase, cnt)
                insertion_sort_range(out_k, out_c, gbase, gbase + cnt)
                counters[STAT_INSERTION] += 1
            else:
                top = _dispatch_large_bucket(dst_k, dst_c, dst_in_scratch,
                                             gbase, cnt, b,
                                             center, std, zmin, scale, k, level,
                                             counting_limit,
                                             out_k, out_c, scr_k, scr_c,
                                             counters, st_base, st_cnt, st_mean,
                                             st_level, st_scratch, top)


@njit(cache=True)
def zsort_driver(src_k, src_c, out_k, out_c, scr_k, scr_c,
                 k, scale, mean, std, zmin,
                 insertion_limit, counting_limit, depth_guard, counters):
    """Full distribution sort of ``src`` into ``out``.

    Top-level statistics arrive precomputed (exact mean path); this kernel
    performs the level-1 histogram/scatter into scratch, then drains the
    bucket worklist, alternating segments between scratch and output so every
    record only ever moves forward in scan order.
    """
    n = src_k.size
    counts = np.zeros(k, np.int64)
    histogram_pass(src_k, 0, n, mean, std, zmin, scale, k, counts)
    occupied = 0
    for b in range(k):
        if counts[b] > 0:
            occupied += 1
    if occupied <= 1:
        copy_segment(src_k, src_c, 0, out_k, out_c, 0, n)
        merge_sort_range(out_k, out_c, 0, n, scr_k, scr_c)
        counters[STAT_FALLBACKS] += 1
        return
    offsets = np.empty(k, np.int64)
    exclusive_offsets(counts, offsets)
    cursors = offsets.copy()
    scatter_pass(src_k, src_c, 0, n, mean, std, zmin, scale, k,
                 cursors, scr_k, scr_c, 0)
    counters[STAT_SCATTERS] += 1
    if counters[STAT_MAX_DEPTH] < 1:
        counters[STAT_MAX_DEPTH] = 1

    cap = depth_guard * k + 64
    st_base = np.empty(cap, np.int64)
    st_cnt = np.empty(cap, np.int64)
    st_mean = np.empty(cap, np.float64)
    st_level = np.empty(cap, np.int64)
    st_scratch = np.empty(cap, np.uint8)
    top = 0
    for b in range(k):
        cnt = counts[b]
        if cnt == 0:
            continue
        gbase = offsets[b]
        if cnt <= insertion_limit:
            copy_segment(scr_k, scr_c, gbase, out_k, out_c, gbase, cnt)
            insertion_sort_range(out_k, out_c, gbase, gbase + cnt)
            counters[STAT_INSERTION] += 1
        else:
            top = _dispatch_large_bucket(scr_k, scr_c, True, gbase, cnt, b,
                                         mean, std, zmin, scale, k, np.int64(1),
                                         counting_limit,
                                         out_k, out_c, scr_k, scr_c, counters,
                                         st_base, st_cnt, st_mean, st_level,
                                         st_scratch, top)
    _run_worklist(out_k, out_c, scr_k, scr_c, k, scale,
                  insertion_limit, counting_limit, depth_guard, counters,
                  st_base, st_cnt, st_mean, st_level, st_scratch, top)


@njit(cache=True)
def zsort_rec_driver(src_k, src_c, out_k, out_c, scr_k, scr_c,
                     k, scale, center, level,
                     insertion_limit, counting_limit, depth_guard, counters):
    """Recursive-phase entry: sort ``src`` given an estimated center only."""
    n = src_k.size
    copy_segment(src_k, src_c, 0, scr_k, scr_c, 0, n)
    cap = depth_guard * k + 64
    st_base = np.empty(cap, np.int64)
    st_cnt = np.empty(cap, np.int64)
    st_mean = np.empty(cap, np.float64)
    st_level = np.empty(cap, np.int64)
    st_scratch = np.empty(cap, np.uint8)
    st_base[0] = 0
    st_cnt[0] = n
    st_mean[0] = center
    st_level[0] = level
    st_scratch[0] = 1
    _run_worklist(out_k, out_c, scr_k, scr_c, k, scale,
                  insertion_limit, counting_limit, depth_guard, counters,
                  st_base, st_cnt, st_mean, st_level, st_scratch, 1)


@njit(cache=True)
def sorted_violation(keys):
    """Index of the first descent, or -1 if keys are nondecreasing."""
    for i in range(1, keys.size):
        if keys[i] < keys[i - 1]:
            return i
    return np.int64(-1)


@njit(cache=True)
def stability_violation(keys, seq):
    """First index whose equal-key predecessor has a larger sequence number."""
    for i in range(1, keys.size):
        if keys[i] == keys[i - 1] and seq[i] <= seq[i - 1]:
            return i
    return np.int64(-1)


@njit(cache=True)
def strictly_increasing(values):
    for i in range(1, values.size):
        if values[i] <= values[i - 1]:
            return False
    return True


@njit(cache=True)
def count_inversions(keys):
    """Exact inversion count via merge counting; input is not modified."""
    n = keys.size
    a = keys.copy()
    b = np.empty(n, np.int64)
    total = np.int64(0)
    width = np.int64(1)
    while width < n:
        start = np.int64(0)
        while start < n:
            mid = min(start + width, n)
            stop = min(start + 2 * width, n)
            p = start
            q = mid
            o = start
            while p < mid and q < stop:
                if a[q] < a[p]:
                    total += mid - p
                    b[o] = a[q]
                    q += 1
                else:
                    b[o] = a[p]
                    p += 1
                o += 1
            while p < mid:
                b[o] = a[p]
                p += 1
                o += 1
            while q < stop:
                b[o] = a[q]
                q += 1
                o += 1
            start = stop
        a, b = b, a
        width *= 2
    return total


@njit(cache=True)
def apply_index_swaps(keys, pairs):
    """Swap keys[i] <-> keys[j] for each (i, j) row, in order."""
    for r in range(pairs.shape[0]):
        i = pairs[r, 0]
        j = pairs[r, 1]
        t = keys[i]
        keys[i] = keys[j]
        keys[j] = t
