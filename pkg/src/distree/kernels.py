"""Hot numeric loops.

Every kernel exists twice: a numba ``@njit`` version (``*_nb``) and a
numpy / pure-Python fallback (``*_np``). The public name is bound to one of
them by :func:`distree._accel.pick` according to ``DISTREE_NUMBA``. Both
versions take and return plain numpy arrays / scalars so they are
interchangeable; ``benchmarks/bench_kernels.py`` times them side by side.
"""
from __future__ import annotations

import math

import numpy as np

from ._accel import njit, pick

UNREACHABLE = -1


# ---------------------------------------------------------------- all-pairs BFS


def _apsp_np(adjacency):
    """Level-synchronous BFS from all sources at once via boolean products."""
    n = adjacency.shape[0]
    a = adjacency.astype(np.int64)
    dist = np.full((n, n), UNREACHABLE, dtype=np.int64)
    reached = np.eye(n, dtype=bool)
    frontier = reached.copy()
    np.fill_diagonal(dist, 0)
    level = 0
    while frontier.any():
        level += 1
        nxt = (frontier.astype(np.int64) @ a > 0) & ~reached
        dist[nxt] = level
        reached |= nxt
        frontier = nxt
    return dist


@njit
def _apsp_nb(indptr, indices, n):
    dist = np.full((n, n), -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        row = dist[s]
        row[s] = 0
        queue[0] = s
        head, tail = 0, 1
        while head < tail:
            u = queue[head]
            head += 1
            du = row[u] + 1
            for p in range(indptr[u], indptr[u + 1]):
                w = indices[p]
                if row[w] < 0:
                    row[w] = du
                    queue[tail] = w
                    tail += 1
    return dist


def _apsp_nb_entry(adjacency, indptr, indices):
    return _apsp_nb(indptr, indices, adjacency.shape[0])


def _apsp_np_entry(adjacency, indptr, indices):
    return _apsp_np(adjacency)


apsp_kernel = pick(_apsp_nb_entry, _apsp_np_entry)


# ---------------------------------------------------------------- power iteration


def _power_np(d, tol, max_iter):
    n = d.shape[0]
    x = np.ones(n)
    lo, hi, resid = -math.inf, math.inf, math.inf
    it = 0
    while it < max_iter:
        it += 1
        y = d @ x
        rq = float(x @ y) / float(x @ x)
        cw = float(np.max(y / x))
        resid = float(np.linalg.norm(y - rq * x) / np.linalg.norm(x))
        lo = max(lo, rq)
        hi = min(hi, cw)
        if hi - lo <= tol:
            return lo, hi, it, resid, True
        x = y / np.max(y)
    return lo, hi, it, resid, False


@njit
def _power_nb(d, tol, max_iter):
    n = d.shape[0]
    x = np.ones(n)
    y = np.empty(n)
    lo, hi, resid = -np.inf, np.inf, np.inf
    it = 0
    while it < max_iter:
        it += 1
        xx = 0.0
        xy = 0.0
        ymax = 0.0
        cw = 0.0
        for i in range(n):
            s = 0.0
            for j in range(n):
                s += d[i, j] * x[j]
            y[i] = s
            xx += x[i] * x[i]
            xy += x[i] * s
            if s > ymax:
                ymax = s
            r = s / x[i]
            if r > cw:
                cw = r
        rq = xy / xx
        r2 = 0.0
        for i in range(n):
            t = y[i] - rq * x[i]
            r2 += t * t
        resid = np.sqrt(r2 / xx)
        if rq > lo:
            lo = rq
        if cw < hi:
            hi = cw
        if hi - lo <= tol:
            return lo, hi, it, resid, True
        for i in range(n):
            x[i] = y[i] / ymax
    return lo, hi, it, resid, False


power_kernel = pick(_power_nb, _power_np)


# ---------------------------------------------------------------- partition search


def _min_partition_py(adj, n):
    """Exact min over set partitions (s >= 2) of crossing / (s - 1).

    Depth-first walk over restricted growth strings in lexicographic order,
    pruning a prefix whose crossing count already exceeds what the incumbent
    allows even if every remaining vertex opened its own block. Returns
    ``(crossing, s, rgs)`` of the first minimiser in (ratio, s, rgs) order.
    """
    rgs = np.zeros(n, dtype=np.int64)
    best_rgs = np.zeros(n, dtype=np.int64)
    if n < 2:
        return -1, 0, best_rgs
    cross = np.zeros(n + 1, dtype=np.int64)
    blocks = np.zeros(n + 1, dtype=np.int64)
    blocks[1] = 1
    # crossing <= m < m + 1, so the sentinel loses to every real partition
    m = 0
    for i in range(n):
        for j in range(i + 1, n):
            m += int(adj[i, j])
    best_c, best_s = m + 1, 2
    i = 1
    rgs[1] = -1
    while i >= 1:
        rgs[i] += 1
        v = rgs[i]
        if v > blocks[i]:
            i -= 1
            continue
        c = cross[i]
        for j in range(i):
            if adj[i, j] and rgs[j] != v:
                c += 1
        b = blocks[i] if v < blocks[i] else blocks[i] + 1
        s_max = b + (n - 1 - i)
        if s_max < 2:
            continue
        # c / (s_max - 1) > best_c / (best_s - 1)
        if c * (best_s - 1) > best_c * (s_max - 1):
            continue
        if i == n - 1:
            if b >= 2:
                lhs = c * (best_s - 1)
                rhs = best_c * (b - 1)
                if lhs < rhs or (lhs == rhs and b < best_s):
                    best_c, best_s = c, b
                    for t in range(n):
                        best_rgs[t] = rgs[t]
            continue
        cross[i + 1] = c
        blocks[i + 1] = b
        i += 1
        rgs[i] = -1
    return best_c, best_s, best_rgs


_min_partition_nb = njit(_min_partition_py)

min_partition_kernel = pick(_min_partition_nb, _min_partition_py)


# ---------------------------------------------------------------- exhaustive sweeps


def _pair_index(n):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return np.asarray(pairs, dtype=np.int64).reshape(-1, 2)


def _mask_adjacency_py(mask, n, pairs):
    a = np.zeros((n, n), dtype=np.uint8)
    for b in range(pairs.shape[0]):
        if (mask >> b) & 1:
            a[pairs[b, 0], pairs[b, 1]] = 1
            a[pairs[b, 1], pairs[b, 0]] = 1
    return a


@njit
def _mask_connected_nb(mask, n, pairs):
    nbr = np.zeros(n, dtype=np.int64)
    for b in range(pairs.shape[0]):
        if (mask >> b) & 1:
            nbr[pairs[b, 0]] |= 1 << pairs[b, 1]
            nbr[pairs[b, 1]] |= 1 << pairs[b, 0]
    reach = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in range(n):
            if (frontier >> v) & 1:
                nxt |= nbr[v]
        frontier = nxt & ~reach
        reach |= nxt
    return reach == (1 << n) - 1


def _mask_connected_py(mask, n, pairs):
    nbr = [0] * n
    for b in range(pairs.shape[0]):
        if (mask >> b) & 1:
            i, j = int(pairs[b, 0]), int(pairs[b, 1])
            nbr[i] |= 1 << j
            nbr[j] |= 1 << i
    reach = frontier = 1
    while frontier:
        nxt = 0
        for v in range(n):
            if (frontier >> v) & 1:
                nxt |= nbr[v]
        frontier = nxt & ~reach
        reach |= nxt
    return reach == (1 << n) - 1


@njit
def _connected_masks_nb(n, start, stop, stride):
    pairs = np.empty((n * (n - 1) // 2, 2), dtype=np.int64)
    b = 0
    for i in range(n):
        for j in range(i + 1, n):
            pairs[b, 0] = i
            pairs[b, 1] = j
            b += 1
    count = 0
    out = np.empty((stop - start + stride - 1) // stride, dtype=np.int64)
    for mask in range(start, stop, stride):
        if _mask_connected_nb(mask, n, pairs):
            out[count] = mask
            count += 1
    return out[:count]


def _connected_masks_np(n, start, stop, stride):
    pairs = _pair_index(n)
    return np.asarray(
        [mk for mk in range(start, stop, stride) if _mask_connected_py(mk, n, pairs)],
        dtype=np.int64,
    )


connected_masks_kernel = pick(_connected_masks_nb, _connected_masks_np)


@njit
def _spectral_sweep_nb(n, masks, tol, max_iter):
    """For each connected mask: edge count, Wiener index, power-iteration interval."""
    pairs = np.empty((n * (n - 1) // 2, 2), dtype=np.int64)
    b = 0
    for i in range(n):
        for j in range(i + 1, n):
            pairs[b, 0] = i
            pairs[b, 1] = j
            b += 1
    k = masks.shape[0]
    m_out = np.zeros(k, dtype=np.int64)
    w_out = np.zeros(k, dtype=np.int64)
    lo_out = np.zeros(k)
    hi_out = np.zeros(k)
    ok_out = np.zeros(k, dtype=np.bool_)
    nbr = np.zeros(n, dtype=np.int64)
    d = np.zeros((n, n))
    for t in range(k):
        mask = masks[t]
        for v in range(n):
            nbr[v] = 0
        m = 0
        for e in range(pairs.shape[0]):
            if (mask >> e) & 1:
                nbr[pairs[e, 0]] |= 1 << pairs[e, 1]
                nbr[pairs[e, 1]] |= 1 << pairs[e, 0]
                m += 1
        w = 0
        for s in range(n):
            reach = 1 << s
            frontier = reach
            level = 0
            d[s, s] = 0.0
            while frontier:
                level += 1
                nxt = 0
                for v in range(n):
                    if (frontier >> v) & 1:
                        nxt |= nbr[v]
                frontier = nxt & ~reach
                reach |= nxt
                for v in range(n):
                    if (frontier >> v) & 1:
                        d[s, v] = level
                        w += level
        m_out[t] = m
        w_out[t] = w // 2
        lo, hi, it, resid, ok = _power_nb(d, tol, max_iter)
        lo_out[t] = lo
        hi_out[t] = hi
        ok_out[t] = ok
    return m_out, w_out, lo_out, hi_out, ok_out


def _spectral_sweep_np(n, masks, tol, max_iter):
    pairs = _pair_index(n)
    k = masks.shape[0]
    m_out = np.zeros(k, dtype=np.int64)
    w_out = np.zeros(k, dtype=np.int64)
    lo_out = np.zeros(k)
    hi_out = np.zeros(k)
    ok_out = np.zeros(k, dtype=bool)
    for t in range(k):
        a = _mask_adjacency_py(int(masks[t]), n, pairs)
        d = _apsp_np(a)
        m_out[t] = int(a.sum()) // 2
        w_out[t] = int(d.sum()) // 2
        lo, hi, _, _, ok = _power_np(d.astype(np.float64), tol, max_iter)
        lo_out[t], hi_out[t], ok_out[t] = lo, hi, ok
    return m_out, w_out, lo_out, hi_out, ok_out


spectral_sweep_kernel = pick(_spectral_sweep_nb, _spectral_sweep_np)


# ---------------------------------------------------------------- product-sum lemma


@njit
def _product_lemma_nb(s, value_max):
    """Brute force over multisets of s pairs (a_i, b_i) in [0, value_max]^2.

    Checks ``sum a_i b_i <= a (b - (s - 1))`` whenever ``b >= a`` and every
    ``a_i + b_i >= 2``. Pairs are drawn with nondecreasing index since the
    inequality is symmetric in the index. Returns (checked, failures, witness).
    """
    pa = np.empty((value_max + 1) ** 2, dtype=np.int64)
    pb = np.empty((value_max + 1) ** 2, dtype=np.int64)
    p = 0
    for x in range(value_max + 1):
        for y in range(value_max + 1):
            if x + y >= 2:
                pa[p] = x
                pb[p] = y
                p += 1
    idx = np.zeros(s, dtype=np.int64)
    sa = np.zeros(s + 1, dtype=np.int64)
    sb = np.zeros(s + 1, dtype=np.int64)
    sp = np.zeros(s + 1, dtype=np.int64)
    witness = np.full(s, -1, dtype=np.int64)
    checked = 0
    fails = 0
    # odometer over nondecreasing index tuples
    for lvl in range(s):
        idx[lvl] = 0
        sa[lvl + 1] = sa[lvl] + pa[0]
        sb[lvl + 1] = sb[lvl] + pb[0]
        sp[lvl + 1] = sp[lvl] + pa[0] * pb[0]
    while True:
        a = sa[s]
        b = sb[s]
        if b >= a:
            checked += 1
            if sp[s] > a * (b - (s - 1)):
                if fails == 0:
                    for t in range(s):
                        witness[t] = idx[t]
                fails += 1
        lvl = s - 1
        while lvl >= 0 and idx[lvl] == p - 1:
            lvl -= 1
        if lvl < 0:
            break
        idx[lvl] += 1
        q = idx[lvl]
        sa[lvl + 1] = sa[lvl] + pa[q]
        sb[lvl + 1] = sb[lvl] + pb[q]
        sp[lvl + 1] = sp[lvl] + pa[q] * pb[q]
        for t in range(lvl + 1, s):
            idx[t] = q
            sa[t + 1] = sa[t] + pa[q]
            sb[t + 1] = sb[t] + pb[q]
            sp[t + 1] = sp[t] + pa[q] * pb[q]
    wa = np.full(s, -1, dtype=np.int64)
    wb = np.full(s, -1, dtype=np.int64)
    if fails:
        for t in range(s):
            wa[t] = pa[witness[t]]
            wb[t] = pb[witness[t]]
    return checked, fails, wa, wb


def _product_lemma_np(s, value_max):
    """Same verdict via a max-plus table over (sum a, sum b).

    ``best[A, B]`` is the largest ``sum a_i b_i`` over s admissible pairs with
    the given sums; the inequality holds for every tuple iff it holds for
    every table entry. ``checked`` counts reachable (A, B) cells, not tuples.
    """
    vals = np.arange(value_max + 1)
    pa, pb = np.meshgrid(vals, vals, indexing="ij")
    keep = (pa + pb) >= 2
    pa, pb = pa[keep], pb[keep]
    top = s * value_max
    neg = np.iinfo(np.int64).min // 4
    best = np.full((top + 1, top + 1), neg, dtype=np.int64)
    best[0, 0] = 0
    for _ in range(s):
        nxt = np.full_like(best, neg)
        for x, y in zip(pa.tolist(), pb.tolist()):
            cand = best[: top + 1 - x, : top + 1 - y] + x * y
            view = nxt[x:, y:]
            np.maximum(view, cand, out=view)
        best = nxt
    A, B = np.meshgrid(np.arange(top + 1), np.arange(top + 1), indexing="ij")
    live = (best > neg // 2) & (B >= A)
    bad = live & (best > A * (B - (s - 1)))
    wa = np.full(s, -1, dtype=np.int64)
    wb = np.full(s, -1, dtype=np.int64)
    return int(live.sum()), int(bad.sum()), wa, wb


product_lemma_kernel = pick(_product_lemma_nb, _product_lemma_np)
