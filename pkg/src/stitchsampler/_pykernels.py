"""Pure numpy fallback for the compiled kernels.

Every function here mirrors one in _ckernels and must return the exact
same values: the distance tests use the same float expression
(dx*dx + dy*dy <= r*r, no FMA) and the mixer uses the same constants,
so swapping backends never changes a sampled point set.
"""

import numpy as np

_MASK = np.uint64(0xFFFFFFFFFFFFFFFF)
_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)

# Row block for the batched counter: caps the (b, n, n) broadcast at
# roughly 64 MB of doubles.
_BATCH_BUDGET = 8_000_000


def bits_block(key, start, n):
    idx = np.arange(1, n + 1, dtype=np.uint64) + np.uint64(start)
    z = np.uint64(key) + idx * _GAMMA
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def close_pair_count(xs, ys, r):
    n = xs.shape[0]
    if n < 2:
        return 0
    if n <= 24:
        # Tiny sets dominate the stitching recursion; a plain loop avoids
        # the broadcast temporaries.
        xl = xs.tolist()
        yl = ys.tolist()
        rr = r * r
        total = 0
        for i in range(n):
            xi = xl[i]
            yi = yl[i]
            for j in range(i + 1, n):
                dx = xi - xl[j]
                dy = yi - yl[j]
                if dx * dx + dy * dy <= rr:
                    total += 1
        return total
    dx = xs[:, None] - xs[None, :]
    dy = ys[:, None] - ys[None, :]
    close = dx * dx + dy * dy <= r * r
    return int((np.count_nonzero(close) - n) // 2)


def cross_pair_count(xs1, ys1, xs2, ys2, r):
    if xs1.shape[0] == 0 or xs2.shape[0] == 0:
        return 0
    dx = xs1[:, None] - xs2[None, :]
    dy = ys1[:, None] - ys2[None, :]
    return int(np.count_nonzero(dx * dx + dy * dy <= r * r))


def close_neighbor_mask(xs, ys, r):
    n = xs.shape[0]
    out = np.zeros(n, dtype=np.bool_)
    if n < 2:
        return out
    if n <= 24:
        xl = xs.tolist()
        yl = ys.tolist()
        rr = r * r
        for i in range(n):
            xi = xl[i]
            yi = yl[i]
            for j in range(i + 1, n):
                dx = xi - xl[j]
                dy = yi - yl[j]
                if dx * dx + dy * dy <= rr:
                    out[i] = True
                    out[j] = True
        return out
    dx = xs[:, None] - xs[None, :]
    dy = ys[:, None] - ys[None, :]
    close = dx * dx + dy * dy <= r * r
    np.fill_diagonal(close, False)
    return close.any(axis=1)


def close_pair_counts_batch(xs, ys, r):
    m, n = xs.shape
    out = np.zeros(m, dtype=np.int64)
    if n < 2 or m == 0:
        return out
    rr = r * r
    rows = max(1, _BATCH_BUDGET // (n * n))
    iu, ju = np.triu_indices(n, k=1)
    for lo in range(0, m, rows):
        hi = min(lo + rows, m)
        dx = xs[lo:hi, iu] - xs[lo:hi, ju]
        dy = ys[lo:hi, iu] - ys[lo:hi, ju]
        out[lo:hi] = np.count_nonzero(dx * dx + dy * dy <= rr, axis=1)
    return out
