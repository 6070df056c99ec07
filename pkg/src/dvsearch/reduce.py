"""Reproducible reductions.

All sums over amplitude arrays go through a fixed summation tree: the input is
cut into leaf blocks of ``BLOCK`` consecutive elements, each block is summed
left to right, and block partials are then combined by adjacent pairs, level
by level. The tree depends only on the array length, so the result is
bitwise-identical no matter how the leaves are scheduled or partitioned.
"""
import numpy as np
from numba import njit

BLOCK = 64


@njit(cache=True)
def _combine(buf, m):
    # Adjacent-pair levels; an odd trailing partial is carried up unchanged.
    while m > 1:
        h = m // 2
        for i in range(h):
            buf[i] = buf[2 * i] + buf[2 * i + 1]
        if m % 2 == 1:
            buf[h] = buf[m - 1]
            m = h + 1
        else:
            m = h
    return buf[0]


@njit(cache=True)
def _leaf_sums(x, out):
    n = x.size
    nblocks = out.size
    for b in range(nblocks):
        lo = b * BLOCK
        hi = min(lo + BLOCK, n)
        s = x[lo] * 0
        for i in range(lo, hi):
            s += x[i]
        out[b] = s


@njit(cache=True)
def _pairwise_sum(x):
    n = x.size
    nblocks = (n + BLOCK - 1) // BLOCK
    buf = np.empty(nblocks, dtype=x.dtype)
    _leaf_sums(x, buf)
    return _combine(buf, nblocks)


@njit(cache=True)
def _pairwise_vdot(a, b):
    # sum(conj(a) * b) on the same tree as _pairwise_sum
    n = a.size
    nblocks = (n + BLOCK - 1) // BLOCK
    buf = np.empty(nblocks, dtype=np.complex128)
    for blk in range(nblocks):
        lo = blk * BLOCK
        hi = min(lo + BLOCK, n)
        s = 0j
        for i in range(lo, hi):
            s += a[i].conjugate() * b[i]
        buf[blk] = s
    return _combine(buf, nblocks)


@njit(cache=True)
def _pairwise_norm2(a):
    n = a.size
    nblocks = (n + BLOCK - 1) // BLOCK
    buf = np.empty(nblocks, dtype=np.float64)
    for blk in range(nblocks):
        lo = blk * BLOCK
        hi = min(lo + BLOCK, n)
        s = 0.0
        for i in range(lo, hi):
            s += a[i].real * a[i].real + a[i].imag * a[i].imag
        buf[blk] = s
    return _combine(buf, nblocks)


def pairwise_sum(x):
    """Sum a 1-D float or complex array on the fixed tree."""
    x = np.ascontiguousarray(x)
    if x.ndim != 1:
        x = x.ravel()
    if x.size == 0:
        return x.dtype.type(0)
    return _pairwise_sum(x)


def pairwise_vdot(a, b) -> complex:
    """Inner product ``<a, b>``, conjugate-linear in ``a``."""
    a = np.ascontiguousarray(a, dtype=np.complex128).ravel()
    b = np.ascontiguousarray(b, dtype=np.complex128).ravel()
    if a.size != b.size:
        raise ValueError(f"length mismatch: {a.size} vs {b.size}")
    if a.size == 0:
        return 0j
    return complex(_pairwise_vdot(a, b))


def pairwise_norm2(a) -> float:
    """Squared 2-norm ``sum |a_i|**2``."""
    a = np.ascontiguousarray(a, dtype=np.complex128).ravel()
    if a.size == 0:
        return 0.0
    return float(_pairwise_norm2(a))


def pairwise_sum_chunked(x, chunks: int):
    """Sum ``x`` as ``chunks`` independent partitions, then merge the partials.

    Exists to demonstrate (and test) that partitioning does not change the
    result. ``chunks`` must be a power of two and every chunk must hold a
    whole number of leaf blocks, so each chunk is an aligned subtree.
    """
    x = np.ascontiguousarray(x).ravel()
    if chunks < 1 or chunks & (chunks - 1):
        raise ValueError("chunks must be a power of two")
    if x.size % (chunks * BLOCK):
        raise ValueError("each chunk must be a whole number of leaf blocks")
    nblk = x.size // BLOCK
    per = nblk // chunks
    if per & (per - 1):
        raise ValueError("blocks per chunk must be a power of two")
    partials = np.array([_pairwise_sum(c) for c in np.split(x, chunks)], dtype=x.dtype)
    return _combine(partials, partials.size)
