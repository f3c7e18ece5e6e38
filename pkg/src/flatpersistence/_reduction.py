"""Compiled Z/2 column-reduction kernels.

Row indices of a column are kept as ranks within the facet dimension. The
column being reduced lives in a two-level bitset (32-bit words plus a
summary word per 32 words), so adding a stored column costs one bit flip per
entry and the next pivot is found by scanning down from the previous one;
the pivot only decreases while a column is reduced. Reduced columns that own
a pivot are stored sorted in a flat pool so later columns can add them.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _highest_bit(x):
    n = 0
    if x >> 16:
        x >>= 16
        n += 16
    if x >> 8:
        x >>= 8
        n += 8
    if x >> 4:
        x >>= 4
        n += 4
    if x >> 2:
        x >>= 2
        n += 2
    if x >> 1:
        n += 1
    return n


@njit(cache=True)
def _flip(words, summary, r):
    w = r >> 5
    words[w] ^= 1 << (r & 31)
    bit = 1 << (w & 31)
    if words[w] == 0:
        summary[w >> 5] &= ~bit
    else:
        summary[w >> 5] |= bit


@njit(cache=True)
def _find_prev(words, summary, p):
    """Highest set position <= p, or -1."""
    if p < 0:
        return -1
    w = p >> 5
    x = words[w] & ((2 << (p & 31)) - 1)
    if x:
        return (w << 5) + _highest_bit(x)
    sw = w >> 5
    y = summary[sw] & ((1 << (w & 31)) - 1)
    while True:
        if y:
            w2 = (sw << 5) + _highest_bit(y)
            return (w2 << 5) + _highest_bit(words[w2])
        sw -= 1
        if sw < 0:
            return -1
        y = summary[sw]


@njit(cache=True)
def _grow(buf, need):
    size = buf.shape[0]
    if need <= size:
        return buf
    while size < need:
        size *= 2
    new = np.empty(size, dtype=buf.dtype)
    new[: buf.shape[0]] = buf
    return new




@njit(cache=True)
def _setup(indptr, indices, dims):
    """Per-dimension ranks of every simplex and the inverse maps."""
    m = dims.shape[0]
    top = 0
    for j in range(m):
        if dims[j] > top:
            top = dims[j]
    counts = np.zeros(top + 2, dtype=np.int64)
    rank = np.empty(m, dtype=np.int64)
    for j in range(m):
        rank[j] = counts[dims[j]]
        counts[dims[j]] += 1
    start = np.zeros(top + 2, dtype=np.int64)
    for k in range(1, top + 2):
        start[k] = start[k - 1] + counts[k - 1]
    by_rank = np.empty(m, dtype=np.int64)
    for j in range(m):
        by_rank[start[dims[j]] + rank[j]] = j
    local = np.empty(indices.shape[0], dtype=np.int64)
    for t in range(indices.shape[0]):
        local[t] = rank[indices[t]]
    width = 1
    for k in range(top + 1):
        if counts[k] > width:
            width = counts[k]
    return rank, start, by_rank, local, width


@njit(cache=True)
def _reduce_column(j, indptr, local, pivot_col, by_rank, base, pool, pool_start, pool_len,
                   words, summary):
    """Reduce column ``j``; returns the local rank of its pivot or -1.

    Rows are local ranks in the facet dimension, whose global positions
    start at ``by_rank[base]``. On return the bitset holds the reduced column.
    """
    low = -1
    for t in range(indptr[j], indptr[j + 1]):
        _flip(words, summary, local[t])
        if local[t] > low:
            low = local[t]
    while low >= 0:
        other = pivot_col[by_rank[base + low]]
        if other < 0:
            return low
        for t in range(pool_start[other], pool_start[other] + pool_len[other]):
            _flip(words, summary, pool[t])
        low = _find_prev(words, summary, low - 1)
    return -1


@njit(cache=True)
def _store(j, low, words, summary, pool, pool_used, pool_start, pool_len):
    """Move the bitset contents into the pool (ascending), leaving it empty."""
    n = 0
    r = low
    while r >= 0:
        pool = _grow(pool, pool_used + n + 1)
        pool[pool_used + n] = r
        n += 1
        _flip(words, summary, r)
        r = _find_prev(words, summary, r - 1)
    pool[pool_used : pool_used + n] = pool[pool_used : pool_used + n][::-1].copy()
    pool_start[j] = pool_used
    pool_len[j] = n
    return pool, pool_used + n


@njit(cache=True)
def _reduce(indptr, indices, dims, order_dims, expected_pivots, clearing):
    m = indptr.shape[0] - 1
    rank, start, by_rank, local, width = _setup(indptr, indices, dims)
    words = np.zeros(width // 32 + 2, dtype=np.int64)
    summary = np.zeros(words.shape[0] // 32 + 2, dtype=np.int64)
    pivot_col = -np.ones(m, dtype=np.int64)
    low_of = -np.ones(m, dtype=np.int64)
    cleared = np.zeros(m, dtype=np.bool_)
    pool = np.empty(max(16, indices.shape[0] // 4), dtype=np.int64)
    pool_used = 0
    pool_start = np.zeros(m, dtype=np.int64)
    pool_len = np.zeros(m, dtype=np.int64)
    for k in order_dims:
        found = 0
        target = expected_pivots[k] if k >= 0 else -1
        for j in range(m):
            d = dims[j]
            if d == 0 or (k >= 0 and d != k) or cleared[j]:
                continue
            if target >= 0 and found >= target:
                break
            base = start[d - 1]
            low = _reduce_column(j, indptr, local, pivot_col, by_rank, base, pool,
                                 pool_start, pool_len, words, summary)
            if low >= 0:
                row = by_rank[base + low]
                pivot_col[row] = j
                low_of[j] = row
                found += 1
                if clearing:
                    cleared[row] = True
                pool, pool_used = _store(j, low, words, summary, pool, pool_used,
                                         pool_start, pool_len)
    return low_of


def reduce_standard(indptr, indices, dims):
    """Plain left-to-right reduction. Returns the pivot row of each column or -1."""
    dims = np.ascontiguousarray(dims, dtype=np.int64)
    top = int(dims.max()) if dims.size else 0
    no_target = -np.ones(top + 1, dtype=np.int64)
    return _reduce(indptr, indices, dims, np.array([-1], dtype=np.int64), no_target, False)


def reduce_twist(indptr, indices, dims, max_dim, expected_pivots):
    """Reduction with clearing: dimensions high to low, creators' columns skipped.

    When a column of dimension k gets pivot i, simplex i is a creator and its
    own column (dimension k-1) reduces to zero, so it is never touched.
    ``expected_pivots[k] >= 0`` is the known rank of the dimension-k boundary
    map; the sweep over that dimension stops once that many pivots are found.
    """
    dims = np.ascontiguousarray(dims, dtype=np.int64)
    order = np.arange(max_dim, 0, -1, dtype=np.int64)
    return _reduce(indptr, indices, dims, order, np.asarray(expected_pivots, dtype=np.int64), True)
