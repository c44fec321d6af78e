"""Compiled hot loops for exhaustive orbit enumeration.

Everything here mirrors plain-Python code in enumeration.py; the compiled
versions exist purely for throughput (full censuses walk hundreds of millions
of steps).  Graphs arrive as int64 adjacency bitmask arrays, permutations are
ranked with Lehmer codes, and a census fills a per-state orbit-length table
for one contiguous rank range so shards can run independently.

If numba is unavailable the module still imports; callers must check
AVAILABLE and fall back.
"""
from __future__ import annotations

import numpy as np

try:
    from numba import njit

    AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    AVAILABLE = False

    def njit(*args, **kwargs):  # type: ignore[misc]
        def wrap(fn):
            return fn

        return wrap


# factorials up to 12! fit comfortably in int64
FACT = np.array(
    [1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800, 39916800, 479001600],
    dtype=np.int64,
)


@njit(cache=True, nogil=True)
def _rank(perm, nu):
    # Lehmer rank of a 0-based permutation, O(nu^2)
    r = 0
    for k in range(nu - 1):
        smaller = 0
        for j in range(k + 1, nu):
            if perm[j] < perm[k]:
                smaller += 1
        r += smaller * FACT[nu - 1 - k]
    return r


@njit(cache=True, nogil=True)
def _unrank(r, nu, out):
    avail = np.empty(nu, dtype=np.int8)
    for v in range(nu):
        avail[v] = v
    n_avail = nu
    for k in range(nu):
        f = FACT[nu - 1 - k]
        d = r // f
        r -= d * f
        out[k] = avail[d]
        for j in range(d, n_avail - 1):
            avail[j] = avail[j + 1]
        n_avail -= 1


@njit(cache=True, nogil=True)
def orbit_lengths_range(adj, nu, rank_lo, rank_hi, lengths, budget):
    """Fill lengths[(r - rank_lo)*nu + (i-1)] for every state in the range.

    Walks each still-unfilled state's orbit to first recurrence, buffering the
    in-range states it passes, then stamps them all with the orbit length.
    Zero means unfilled (real lengths are >= 1).

    Returns (steps_used, status): 0 done, 1 budget exhausted (table partial),
    2 a walk hit a state already owned by another orbit (the step is not
    injective), 3 a walk exceeded the state count (the step is broken).
    """
    label0 = np.empty(nu, dtype=np.int8)  # vertex -> label-1
    vert = np.empty(nu, dtype=np.int8)  # label-1 -> vertex
    start = np.empty(nu, dtype=np.int8)
    buf = np.empty((rank_hi - rank_lo) * nu, dtype=np.int64)
    steps = 0
    cap = nu * FACT[nu]
    for r0 in range(rank_lo, rank_hi):
        for i0 in range(nu):
            idx0 = (r0 - rank_lo) * nu + i0
            if lengths[idx0] != 0:
                continue
            _unrank(r0, nu, start)
            for v in range(nu):
                label0[v] = start[v]
                vert[start[v]] = v
            i = i0
            nbuf = 1
            buf[0] = idx0
            length = 0
            while True:
                u = vert[i]
                w = vert[(i + 1) % nu]
                if (adj[u] >> w) & 1 == 0:
                    li = label0[u]
                    lw = label0[w]
                    label0[u] = lw
                    label0[w] = li
                    vert[li] = w
                    vert[lw] = u
                i = (i + 1) % nu
                length += 1
                steps += 1
                if steps > budget:
                    return steps, 1
                if i == i0:
                    same = True
                    for v in range(nu):
                        if label0[v] != start[v]:
                            same = False
                            break
                    if same:
                        break
                if length > cap:
                    return steps, 3
                rr = _rank(label0, nu)
                if rank_lo <= rr < rank_hi:
                    jdx = (rr - rank_lo) * nu + i
                    if lengths[jdx] != 0:
                        return steps, 2
                    buf[nbuf] = jdx
                    nbuf += 1
            for b in range(nbuf):
                lengths[buf[b]] = length
    return steps, 0


@njit(cache=True, nogil=True)
def restriction_scan(nu, lengths, block, out):
    """Count states whose orbit length differs from their group representative.

    The group of a state fixes the labels outside `block` and the active
    label; the representative assigns the block's labels to the block's
    vertices in ascending order.  `lengths` is a full orbit-length table.
    Index pairs (state, representative) for the first disagreements are
    written to `out`; the return value is the total disagreement count.
    """
    nb = block.shape[0]
    perm = np.empty(nu, dtype=np.int8)
    canon = np.empty(nu, dtype=np.int8)
    labs = np.empty(nb, dtype=np.int8)
    viol = 0
    total = FACT[nu]
    for r in range(total):
        _unrank(r, nu, perm)
        for t in range(nb):
            labs[t] = perm[block[t]]
        for a in range(1, nb):
            key = labs[a]
            b = a - 1
            while b >= 0 and labs[b] > key:
                labs[b + 1] = labs[b]
                b -= 1
            labs[b + 1] = key
        for v in range(nu):
            canon[v] = perm[v]
        for t in range(nb):
            canon[block[t]] = labs[t]
        rc = _rank(canon, nu)
        if rc == r:
            continue
        for i in range(nu):
            if lengths[r * nu + i] != lengths[rc * nu + i]:
                if viol < out.shape[0]:
                    out[viol, 0] = r * nu + i
                    out[viol, 1] = rc * nu + i
                viol += 1
    return viol
