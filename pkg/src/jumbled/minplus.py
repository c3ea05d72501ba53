"""Tropical-semiring kernels: min-plus / max-plus matrix products and
vector convolutions, plus the blocked convolution that evaluates a
convolution through small matrix products.

Cost model
----------
All entries are int64. Finite costs must satisfy |x| <= FINITE_BOUND; the
sentinels INF (min side) and NEG_INF (max side) mark infeasible cells.
Additions never overflow (2 * INF = 2^61 < 2^63) and are re-saturated
after every kernel: a sum lands beyond the snap threshold iff one of its
operands was a sentinel, because finite + finite <= 2^53 < INF - FINITE_BOUND.
"""

from __future__ import annotations

import math

import numpy as np

FINITE_BOUND = 1 << 52
INF = 1 << 60
NEG_INF = -(1 << 60)

_SNAP_HI = INF - FINITE_BOUND
_SNAP_LO = NEG_INF + FINITE_BOUND

# element budget for broadcast temporaries (~32 MiB of int64)
_CHUNK_ELEMS = 1 << 22

# operands at or below this length use the direct convolution
NAIVE_CONV_CUTOFF = 64


def snap_min(a: np.ndarray) -> np.ndarray:
    """Re-saturate after additions on the min side (in place)."""
    a[a >= _SNAP_HI] = INF
    return a


def snap_max(a: np.ndarray) -> np.ndarray:
    a[a <= _SNAP_LO] = NEG_INF
    return a


def _as_operand(x, ndim: int, what: str) -> np.ndarray:
    a = np.asarray(x, dtype=np.int64)
    if a.ndim != ndim:
        raise ValueError(f"{what} must be {ndim}-dimensional, got shape {a.shape}")
    if a.size:
        ok = (np.abs(a) <= FINITE_BOUND) | (a == INF) | (a == NEG_INF)
        if not ok.all():
            raise ValueError(f"{what} has entries outside the finite bound that are not sentinels")
    return a


def _check_dims(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} x {b.shape}")


def _product(a: np.ndarray, b: np.ndarray, maximize: bool) -> np.ndarray:
    p, q = a.shape
    r = b.shape[1]
    sentinel = NEG_INF if maximize else INF
    out = np.full((p, r), sentinel, dtype=np.int64)
    if q == 0 or p == 0 or r == 0:
        return out
    reduce_ = np.max if maximize else np.min
    step = max(1, _CHUNK_ELEMS // max(1, q * r))
    for lo in range(0, p, step):
        hi = min(p, lo + step)
        sums = a[lo:hi, :, None] + b[None, :, :]
        out[lo:hi] = reduce_(sums, axis=1)
    return snap_max(out) if maximize else snap_min(out)


def min_plus_product(a, b) -> np.ndarray:
    """C[i,j] = min_k A[i,k] + B[k,j], saturating at INF."""
    a = _as_operand(a, 2, "left matrix")
    b = _as_operand(b, 2, "right matrix")
    _check_dims(a, b)
    return _product(a, b, maximize=False)


def max_plus_product(a, b) -> np.ndarray:
    a = _as_operand(a, 2, "left matrix")
    b = _as_operand(b, 2, "right matrix")
    _check_dims(a, b)
    return _product(a, b, maximize=True)


def min_plus_product_tiled(a, b, tile: int = 64) -> np.ndarray:
    """Cache-tiled variant; bitwise identical to min_plus_product."""
    a = _as_operand(a, 2, "left matrix")
    b = _as_operand(b, 2, "right matrix")
    _check_dims(a, b)
    if tile < 1:
        raise ValueError("tile must be >= 1")
    p, q = a.shape
    r = b.shape[1]
    out = np.full((p, r), INF, dtype=np.int64)
    for k0 in range(0, q, tile):
        k1 = min(q, k0 + tile)
        for i0 in range(0, p, tile):
            i1 = min(p, i0 + tile)
            ablk = a[i0:i1, k0:k1]
            for j0 in range(0, r, tile):
                j1 = min(r, j0 + tile)
                sums = ablk[:, :, None] + b[None, k0:k1, j0:j1]
                np.minimum(out[i0:i1, j0:j1], sums.min(axis=1), out=out[i0:i1, j0:j1])
    return snap_min(out)


def _as_vectors(u, v):
    u = _as_operand(u, 1, "left vector")
    v = _as_operand(v, 1, "right vector")
    if u.size == 0 or v.size == 0:
        raise ValueError("convolution operands must be non-empty")
    return u, v


def _conv_direct(u: np.ndarray, v: np.ndarray, maximize: bool) -> np.ndarray:
    if u.size > v.size:
        u, v = v, u
    sentinel = NEG_INF if maximize else INF
    fold = np.maximum if maximize else np.minimum
    out = np.full(u.size + v.size - 1, sentinel, dtype=np.int64)
    for k in range(u.size):
        fold(out[k:k + v.size], u[k] + v, out=out[k:k + v.size])
    return snap_max(out) if maximize else snap_min(out)


def min_plus_convolution(u, v) -> np.ndarray:
    """w[i] = min over k of u[k] + v[i-k] (0-based, len |u|+|v|-1)."""
    u, v = _as_vectors(u, v)
    return _conv_direct(u, v, maximize=False)


def max_plus_convolution(u, v) -> np.ndarray:
    u, v = _as_vectors(u, v)
    return _conv_direct(u, v, maximize=True)


def _conv_blocked(u: np.ndarray, v: np.ndarray, maximize: bool, kernel) -> np.ndarray:
    # Segment both vectors into t = ceil(sqrt(|v|)) pieces; each residue class
    # q of the output is one (P x t) by (t x C) product, whose anti-diagonals
    # are the output cells i = (p + c) * t + q.
    if u.size > v.size:
        u, v = v, u
    lu, lv = u.size, v.size
    sentinel = NEG_INF if maximize else INF
    t = math.isqrt(lv - 1) + 1 if lv > 1 else 1
    np_reduce = np.max if maximize else np.min

    num_p = -(-lu // t)
    num_c = -(-lv // t) + 1
    x = np.full(num_p * t, sentinel, dtype=np.int64)
    x[:lu] = u
    x = x.reshape(num_p, t)

    out = np.full(lu + lv - 1, sentinel, dtype=np.int64)
    base_j = np.arange(num_c)[None, :] * t - np.arange(t)[:, None]
    width = num_p + num_c - 1
    flat_idx = np.arange(num_p)[:, None] * (width + 1) + np.arange(num_c)[None, :]
    positions = np.arange(width) * t
    stage = np.empty((num_p, width), dtype=np.int64)
    for q in range(t):
        j = base_j + q
        valid = (j >= 0) & (j < lv)
        z = np.where(valid, v[np.clip(j, 0, lv - 1)], sentinel)
        m = kernel(x, z)
        stage.fill(sentinel)
        stage.flat[flat_idx] = m
        diag = np_reduce(stage, axis=0)
        pos = positions + q
        keep = pos < out.size
        out[pos[keep]] = diag[keep]
    return out


def min_plus_convolution_blocked(u, v, kernel=None) -> np.ndarray:
    """Same output as min_plus_convolution, evaluated through an MPM kernel."""
    u, v = _as_vectors(u, v)
    return _conv_blocked(u, v, maximize=False, kernel=kernel or min_plus_product)


def max_plus_convolution_blocked(u, v, kernel=None) -> np.ndarray:
    u, v = _as_vectors(u, v)
    return _conv_blocked(u, v, maximize=True, kernel=kernel or max_plus_product)


def min_plus_convolution_auto(u, v, kernel=None) -> np.ndarray:
    """Direct convolution for short operands, blocked otherwise."""
    u, v = _as_vectors(u, v)
    if min(u.size, v.size) <= NAIVE_CONV_CUTOFF:
        return _conv_direct(u, v, maximize=False)
    return _conv_blocked(u, v, maximize=False, kernel=kernel or min_plus_product)


def max_plus_convolution_auto(u, v, kernel=None) -> np.ndarray:
    u, v = _as_vectors(u, v)
    if min(u.size, v.size) <= NAIVE_CONV_CUTOFF:
        return _conv_direct(u, v, maximize=True)
    return _conv_blocked(u, v, maximize=True, kernel=kernel or max_plus_product)
