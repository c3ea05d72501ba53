"""Profiles of binary strings.

Three interchangeable backends compute the same profile:

* naive_profile      sliding-window extrema per length, the O(n^2) reference
* blocked_profile    block decomposition with cross-block min/max tables
* recursive_profile  midpoint halving; boundary windows via convolutions

plus the anchored variant (windows through one fixed position) and the
weighted maximum-sum generalization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .minplus import (
    FINITE_BOUND,
    INF,
    NEG_INF,
    max_plus_convolution_auto,
    max_plus_product,
    min_plus_convolution_auto,
    min_plus_product,
    snap_max,
    snap_min,
)
from .profiles import Profile

RECURSION_CUTOFF = 64


class BinaryString:
    """A {0,1} string with precomputed prefix 1-counts."""

    __slots__ = ("bits", "prefix_ones")

    def __init__(self, bits):
        if isinstance(bits, str):
            if not bits or bits.strip("01"):
                raise ValueError("string form must be non-empty and contain only '0'/'1'")
            arr = np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")
        else:
            arr = np.ascontiguousarray(bits, dtype=np.uint8)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("need a non-empty one-dimensional bit sequence")
        if arr.max() > 1:
            raise ValueError("bits must be 0 or 1")
        self.bits = arr
        self.prefix_ones = np.concatenate([np.zeros(1, dtype=np.int64),
                                           np.cumsum(arr, dtype=np.int64)])

    def __len__(self) -> int:
        return int(self.bits.size)

    def ones(self, lo: int, hi: int) -> int:
        """1s in positions [lo, hi)."""
        return int(self.prefix_ones[hi] - self.prefix_ones[lo])


def _as_string(s) -> BinaryString:
    return s if isinstance(s, BinaryString) else BinaryString(s)


def naive_profile(s: BinaryString) -> Profile:
    s = _as_string(s)
    n = len(s)
    pref = s.prefix_ones
    mins = np.empty(n, dtype=np.int64)
    maxs = np.empty(n, dtype=np.int64)
    for w in range(1, n + 1):
        sums = pref[w:] - pref[:n + 1 - w]
        mins[w - 1] = sums.min()
        maxs[w - 1] = sums.max()
    return Profile(mins, maxs)


@dataclass(frozen=True)
class BlockPartition:
    """Consecutive blocks T_0..T_{m-1} of length b (the last may be short)."""

    string: BinaryString
    b: int
    bounds: np.ndarray = field(init=False)  # block k spans [bounds[k], bounds[k+1])

    def __post_init__(self):
        if self.b < 1:
            raise ValueError("block length must be >= 1")
        n = len(self.string)
        m = -(-n // self.b)
        object.__setattr__(self, "bounds",
                           np.minimum(np.arange(m + 1, dtype=np.int64) * self.b, n))

    @property
    def m(self) -> int:
        return int(self.bounds.size - 1)

    def block_len(self, k: int) -> int:
        return int(self.bounds[k + 1] - self.bounds[k])

    def interior_ones(self, i: int, j: int) -> int:
        """1s in the full blocks strictly between block i and block j (i < j)."""
        return self.string.ones(int(self.bounds[i + 1]), int(self.bounds[j]))


def make_block_partition(s, b: int) -> BlockPartition:
    return BlockPartition(_as_string(s), b)


def _edge_tables(p: BlockPartition, length: int):
    """The A/B operand pair for one suffix+prefix length, both semirings.

    A[i,k] counts 1s in a suffix of block i, B[k,j] in a prefix of block j;
    row/column k fixes the split so that suffix+prefix = length. Splits
    exceeding a donor block's true length are sentinels.
    """
    pref = p.string.prefix_ones
    b, m = p.b, p.m
    lens = p.bounds[1:] - p.bounds[:-1]
    if length <= b:
        k = np.arange(length + 1, dtype=np.int64)
        suffix_len = k[None, :]              # m x (length+1)
        prefix_len = (length - k)[:, None]   # (length+1) x m
    else:
        k = np.arange(2 * b - length + 1, dtype=np.int64)
        suffix_len = (k + length - b)[None, :]
        prefix_len = (b - k)[:, None]
    ends = p.bounds[1:][:, None]
    starts = p.bounds[:-1][None, :]
    suf_ok = suffix_len <= lens[:, None]
    pre_ok = prefix_len <= lens[None, :]
    suf = pref[ends] - pref[ends - np.where(suf_ok, suffix_len, 0)]
    pre = pref[starts + np.where(pre_ok, prefix_len, 0)] - pref[starts]
    a_min = np.where(suf_ok, suf, INF)
    b_min = np.where(pre_ok, pre, INF)
    a_max = np.where(suf_ok, suf, NEG_INF)
    b_max = np.where(pre_ok, pre, NEG_INF)
    return a_min, b_min, a_max, b_max


def _cross_tables_for_length(p: BlockPartition, length: int, kernel=None, max_kernel=None):
    """(min table, max table) of spanning-substring 1-counts for one length."""
    a_min, b_min, a_max, b_max = _edge_tables(p, length)
    kmin = kernel or min_plus_product
    kmax = max_kernel or max_plus_product
    pref = p.string.prefix_ones
    i_idx = np.arange(p.m)
    spanning = i_idx[:, None] < i_idx[None, :]
    # interior[i, j] = 1s in the full blocks strictly between i and j
    interior = pref[p.bounds[i_idx]][None, :] - pref[p.bounds[i_idx + 1]][:, None]
    cmin = snap_min(kmin(a_min, b_min) + np.where(spanning, interior, INF))
    cmax = snap_max(kmax(a_max, b_max) + np.where(spanning, interior, NEG_INF))
    return cmin, cmax


@dataclass(frozen=True)
class CrossBlockTables:
    """C_l[i,j]: extreme 1-count of a suffix of block i, the interior blocks,
    and a prefix of block j, with suffix+prefix length l; finite only i < j."""

    partition: BlockPartition
    min_tables: dict
    max_tables: dict

    def min_table(self, length: int) -> np.ndarray:
        return self.min_tables[length]

    def max_table(self, length: int) -> np.ndarray:
        return self.max_tables[length]


def build_cross_tables(p: BlockPartition, kernel=None, max_kernel=None) -> CrossBlockTables:
    min_tables, max_tables = {}, {}
    for length in range(1, 2 * p.b + 1):
        cmin, cmax = _cross_tables_for_length(p, length, kernel, max_kernel)
        min_tables[length] = cmin
        max_tables[length] = cmax
    return CrossBlockTables(p, min_tables, max_tables)


def _intra_block_extrema(p: BlockPartition, mins: np.ndarray, maxs: np.ndarray) -> None:
    n = len(p.string)
    pref = p.string.prefix_ones
    pos = np.arange(n, dtype=np.int64)
    offset = pos % p.b
    for w in range(1, min(p.b, n) + 1):
        inside = (offset[:n + 1 - w] + w <= p.b)
        if not inside.any():
            continue
        sums = (pref[w:] - pref[:n + 1 - w])[inside]
        mins[w - 1] = min(mins[w - 1], int(sums.min()))
        maxs[w - 1] = max(maxs[w - 1], int(sums.max()))


def blocked_profile(s: BinaryString, b=None, kernel=None, max_kernel=None) -> Profile:
    s = _as_string(s)
    n = len(s)
    if b is None:
        b = math.isqrt(n - 1) + 1 if n > 1 else 1
    p = make_block_partition(s, b)
    if p.m == 1:
        return naive_profile(s)
    mins = np.full(n, INF, dtype=np.int64)
    maxs = np.full(n, NEG_INF, dtype=np.int64)
    _intra_block_extrema(p, mins, maxs)
    for length in range(1, 2 * b + 1):
        if length > n:
            break
        cmin, cmax = _cross_tables_for_length(p, length, kernel, max_kernel)
        max_gap = (n - length) // b
        for gap in range(0, min(max_gap, p.m - 2) + 1):
            size = length + gap * b
            lo = np.diagonal(cmin, offset=gap + 1).min()
            hi = np.diagonal(cmax, offset=gap + 1).max()
            if lo < INF:
                mins[size - 1] = min(mins[size - 1], int(lo))
            if hi > NEG_INF:
                maxs[size - 1] = max(maxs[size - 1], int(hi))
    return Profile(mins, maxs)


def _fold_range_naive(pref: np.ndarray, lo: int, hi: int, mins: np.ndarray, maxs: np.ndarray) -> None:
    for w in range(1, hi - lo + 1):
        sums = pref[lo + w:hi + 1] - pref[lo:hi + 1 - w]
        mins[w - 1] = min(mins[w - 1], int(sums.min()))
        maxs[w - 1] = max(maxs[w - 1], int(sums.max()))


def recursive_profile(s: BinaryString, kernel=None, max_kernel=None,
                      cutoff: int = RECURSION_CUTOFF) -> Profile:
    s = _as_string(s)
    n = len(s)
    pref = s.prefix_ones
    mins = np.full(n, INF, dtype=np.int64)
    maxs = np.full(n, NEG_INF, dtype=np.int64)
    # explicit stack; deep inputs must not hit the interpreter limit
    stack = [(0, n)]
    while stack:
        lo, hi = stack.pop()
        if hi - lo <= cutoff:
            _fold_range_naive(pref, lo, hi, mins, maxs)
            continue
        mid = (lo + hi) // 2
        stack.append((lo, mid))
        stack.append((mid, hi))
        # windows crossing mid: a characters to the left, c to the right
        u = (pref[mid] - pref[mid - np.arange(mid - lo + 1)]).astype(np.int64)
        v = (pref[mid + np.arange(hi - mid + 1)] - pref[mid]).astype(np.int64)
        conv_lo = min_plus_convolution_auto(u, v, kernel=kernel)
        conv_hi = max_plus_convolution_auto(u, v, kernel=max_kernel)
        span = conv_lo.size - 1
        np.minimum(mins[:span], conv_lo[1:], out=mins[:span])
        np.maximum(maxs[:span], conv_hi[1:], out=maxs[:span])
    return Profile(mins, maxs)


def anchored_min_profile(u, v, anchor_weight: int, kernel=None) -> np.ndarray:
    """result[t] = extremum over windows of size t+1 made of a left part
    costed by u, the anchor itself, and a right part costed by v."""
    conv = min_plus_convolution_auto(u, v, kernel=kernel)
    return snap_min(conv + int(anchor_weight))


def anchored_max_profile(u, v, anchor_weight: int, kernel=None) -> np.ndarray:
    conv = max_plus_convolution_auto(u, v, kernel=kernel)
    return snap_max(conv + int(anchor_weight))


def _check_weight_scale(weights: np.ndarray) -> None:
    if weights.size and int(np.abs(weights).max()) * weights.size > FINITE_BOUND:
        raise ValueError("weight magnitudes too large for exact arithmetic")


def naive_weighted_max_sums(weights) -> np.ndarray:
    weights = np.asarray(weights, dtype=np.int64)
    if weights.ndim != 1 or weights.size < 1:
        raise ValueError("need a non-empty weight sequence")
    _check_weight_scale(weights)
    pref = np.concatenate([np.zeros(1, dtype=np.int64), np.cumsum(weights, dtype=np.int64)])
    n = weights.size
    out = np.empty(n, dtype=np.int64)
    for w in range(1, n + 1):
        out[w - 1] = (pref[w:] - pref[:n + 1 - w]).max()
    return out


def weighted_max_sums(weights, kernel=None, cutoff: int = RECURSION_CUTOFF) -> np.ndarray:
    """Maximum total weight over length-i windows, i = 1..n."""
    weights = np.asarray(weights, dtype=np.int64)
    if weights.ndim != 1 or weights.size < 1:
        raise ValueError("need a non-empty weight sequence")
    _check_weight_scale(weights)
    n = weights.size
    pref = np.concatenate([np.zeros(1, dtype=np.int64), np.cumsum(weights, dtype=np.int64)])
    out = np.full(n, NEG_INF, dtype=np.int64)
    stack = [(0, n)]
    while stack:
        lo, hi = stack.pop()
        if hi - lo <= cutoff:
            for w in range(1, hi - lo + 1):
                best = (pref[lo + w:hi + 1] - pref[lo:hi + 1 - w]).max()
                out[w - 1] = max(out[w - 1], int(best))
            continue
        mid = (lo + hi) // 2
        stack.append((lo, mid))
        stack.append((mid, hi))
        u = (pref[mid] - pref[mid - np.arange(mid - lo + 1)]).astype(np.int64)
        v = (pref[mid + np.arange(hi - mid + 1)] - pref[mid]).astype(np.int64)
        conv = max_plus_convolution_auto(u, v, kernel=kernel)
        span = conv.size - 1
        np.maximum(out[:span], conv[1:], out=out[:span])
    return out
