"""Numeric kernels for the address seriation core.

Each kernel has two interchangeable backends: a numba ``@njit`` version and
a pure-numpy version. The numpy path is selected when numba is unavailable
or when ``NFTDISK_NO_NUMBA=1`` is set; both produce bit-identical results
(same operation order, same first-occurrence tie-breaking), which the test
suite asserts. ``benchmarks/bench_kernels.py`` compares their speed.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    _HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAS_NUMBA = False

INF = np.inf


def numba_enabled() -> bool:
    return _HAS_NUMBA and os.environ.get("NFTDISK_NO_NUMBA", "0") not in (
        "1",
        "true",
        "yes",
    )


def backend_name() -> str:
    return "numba" if numba_enabled() else "numpy"


# ---------------------------------------------------------------------------
# Average-linkage agglomerative clustering.
#
# Clusters live in "slots" 0..n-1; a merge folds the higher slot into the
# lower one, so active slots stay sorted by their smallest member and the
# lexicographically first minimal pair is the deterministic tie-break.
# ---------------------------------------------------------------------------


def _linkage_numpy(d: np.ndarray):
    n = d.shape[0]
    work = d.astype(np.float64).copy()
    lower = np.tril(np.full((n, n), INF))
    np.fill_diagonal(work, 0.0)
    merge_a = np.empty(n - 1, dtype=np.int64)
    merge_b = np.empty(n - 1, dtype=np.int64)
    heights = np.empty(n - 1, dtype=np.float64)
    out_size = np.empty(n - 1, dtype=np.int64)
    size = np.ones(n, dtype=np.float64)
    cluster_id = np.arange(n, dtype=np.int64)
    dead = np.zeros(n, dtype=bool)

    for t in range(n - 1):
        masked = work + lower
        masked[dead, :] = INF
        masked[:, dead] = INF
        flat = int(np.argmin(masked))
        i, j = divmod(flat, n)
        height = masked[i, j]

        merge_a[t] = cluster_id[i]
        merge_b[t] = cluster_id[j]
        heights[t] = height
        out_size[t] = int(size[i] + size[j])

        alive = ~dead
        alive[i] = alive[j] = False
        merged = (size[i] * work[i, alive] + size[j] * work[j, alive]) / (
            size[i] + size[j]
        )
        work[i, alive] = merged
        work[alive, i] = merged
        size[i] += size[j]
        cluster_id[i] = n + t
        dead[j] = True
    return merge_a, merge_b, heights, out_size


def _linkage_loops(d):  # compiled by numba below
    n = d.shape[0]
    work = d.copy()
    merge_a = np.empty(n - 1, dtype=np.int64)
    merge_b = np.empty(n - 1, dtype=np.int64)
    heights = np.empty(n - 1, dtype=np.float64)
    out_size = np.empty(n - 1, dtype=np.int64)
    size = np.ones(n, dtype=np.float64)
    cluster_id = np.arange(n, dtype=np.int64)
    dead = np.zeros(n, dtype=np.bool_)

    for t in range(n - 1):
        best = INF
        bi = -1
        bj = -1
        for i in range(n):
            if dead[i]:
                continue
            for j in range(i + 1, n):
                if dead[j]:
                    continue
                if work[i, j] < best:
                    best = work[i, j]
                    bi = i
                    bj = j
        merge_a[t] = cluster_id[bi]
        merge_b[t] = cluster_id[bj]
        heights[t] = best
        out_size[t] = int(size[bi] + size[bj])

        for k in range(n):
            if dead[k] or k == bi or k == bj:
                continue
            merged = (size[bi] * work[bi, k] + size[bj] * work[bj, k]) / (
                size[bi] + size[bj]
            )
            work[bi, k] = merged
            work[k, bi] = merged
        size[bi] += size[bj]
        cluster_id[bi] = n + t
        dead[bj] = True
    return merge_a, merge_b, heights, out_size


if _HAS_NUMBA:
    _linkage_numba = njit(cache=True)(_linkage_loops)


def average_linkage(d: np.ndarray):
    """UPGMA linkage rows (left id, right id, height, size), scipy-style ids."""
    d = np.ascontiguousarray(d, dtype=np.float64)
    n = d.shape[0]
    if n < 2:
        return (
            np.empty(0, dtype=np.int64),
            np.empty(0, dtype=np.int64),
            np.empty(0, dtype=np.float64),
            np.empty(0, dtype=np.int64),
        )
    if numba_enabled():
        return _linkage_numba(d)
    return _linkage_numpy(d)


# ---------------------------------------------------------------------------
# Optimal leaf ordering DP.
#
# Leaves are laid out in dendrogram in-order positions so every subtree is a
# contiguous range. cost[u, w] is the best cost of the subtree rooted at
# LCA(u, w) with u as the leftmost and w as the rightmost leaf; argm/argk
# record the inner boundary leaves for backtracking.
# ---------------------------------------------------------------------------


def _olo_loops(dd, los, mids, his, lsplits, rsplits):  # compiled by numba below
    n = dd.shape[0]
    cost = np.full((n, n), INF)
    argm = np.full((n, n), -1, dtype=np.int32)
    argk = np.full((n, n), -1, dtype=np.int32)
    for u in range(n):
        cost[u, u] = 0.0
    T = np.empty(n, dtype=np.float64)
    TA = np.empty(n, dtype=np.int32)

    for t in range(los.shape[0]):
        lo = los[t]
        mid = mids[t]
        hi = his[t]
        ls = lsplits[t]
        rs = rsplits[t]
        for u in range(lo, mid):
            # Valid rightmost leaves m of the left child: the sub-child u is
            # not in (a single-leaf child pins m to u itself).
            if ls < 0:
                m_lo, m_hi = u, u + 1
            elif u < ls:
                m_lo, m_hi = ls, mid
            else:
                m_lo, m_hi = lo, ls
            for k in range(mid, hi):
                tbest = INF
                tm = -1
                for m in range(m_lo, m_hi):
                    v = cost[u, m] + dd[m, k]
                    if v < tbest:
                        tbest = v
                        tm = m
                T[k] = tbest
                TA[k] = tm
            for w in range(mid, hi):
                if rs < 0:
                    k_lo, k_hi = w, w + 1
                elif w < rs:
                    k_lo, k_hi = rs, hi
                else:
                    k_lo, k_hi = mid, rs
                best = INF
                bk = -1
                for k in range(k_lo, k_hi):
                    v = T[k] + cost[k, w]
                    if v < best:
                        best = v
                        bk = k
                cost[u, w] = best
                cost[w, u] = best
                argk[u, w] = bk
                argm[u, w] = TA[bk]
    return cost, argm, argk


def _olo_numpy(dd, los, mids, his, lsplits, rsplits):
    n = dd.shape[0]
    cost = np.full((n, n), INF)
    argm = np.full((n, n), -1, dtype=np.int32)
    argk = np.full((n, n), -1, dtype=np.int32)
    np.fill_diagonal(cost, 0.0)

    for t in range(los.shape[0]):
        lo, mid, hi = int(los[t]), int(mids[t]), int(his[t])
        ls, rs = int(lsplits[t]), int(rsplits[t])
        for u in range(lo, mid):
            if ls < 0:
                m_lo, m_hi = u, u + 1
            elif u < ls:
                m_lo, m_hi = ls, mid
            else:
                m_lo, m_hi = lo, ls
            tmat = cost[u, m_lo:m_hi][:, None] + dd[m_lo:m_hi, mid:hi]
            targ = np.argmin(tmat, axis=0)
            tmin = tmat[targ, np.arange(hi - mid)]

            def combine(w_lo: int, w_hi: int, k_lo: int, k_hi: int):
                smat = tmin[k_lo - mid : k_hi - mid, None] + cost[k_lo:k_hi, w_lo:w_hi]
                karg = np.argmin(smat, axis=0)
                cols = np.arange(w_hi - w_lo)
                best = smat[karg, cols]
                cost[u, w_lo:w_hi] = best
                cost[w_lo:w_hi, u] = best
                argk[u, w_lo:w_hi] = (karg + k_lo).astype(np.int32)
                argm[u, w_lo:w_hi] = (targ[karg + k_lo - mid] + m_lo).astype(np.int32)

            if rs < 0:
                cost[u, mid:hi] = tmin
                cost[mid:hi, u] = tmin
                argk[u, mid:hi] = np.arange(mid, hi, dtype=np.int32)
                argm[u, mid:hi] = (targ + m_lo).astype(np.int32)
            else:
                combine(mid, rs, rs, hi)
                combine(rs, hi, mid, rs)
    return cost, argm, argk


if _HAS_NUMBA:
    _olo_numba = njit(cache=True)(_olo_loops)


def olo_tables(
    dd: np.ndarray,
    los: np.ndarray,
    mids: np.ndarray,
    his: np.ndarray,
    lsplits: np.ndarray,
    rsplits: np.ndarray,
):
    """DP cost and backtracking tables over in-order leaf positions.

    ``lsplits``/``rsplits`` give each node's child split positions (-1 for a
    leaf child); endpoint leaves of a subtree must come from different
    sub-children, so the inner minimizations only range over the opposite
    side of the relevant split.
    """
    dd = np.ascontiguousarray(dd, dtype=np.float64)
    args = [
        np.ascontiguousarray(a, dtype=np.int64)
        for a in (los, mids, his, lsplits, rsplits)
    ]
    if numba_enabled():
        return _olo_numba(dd, *args)
    return _olo_numpy(dd, *args)


def warmup() -> None:
    """Trigger JIT compilation on tiny inputs (no-op on the numpy path)."""
    d = np.array([[0.0, 0.5, 0.9], [0.5, 0.0, 0.4], [0.9, 0.4, 0.0]])
    average_linkage(d)
    olo_tables(
        d,
        np.array([1, 0], dtype=np.int64),
        np.array([2, 1], dtype=np.int64),
        np.array([3, 3], dtype=np.int64),
        np.array([-1, -1], dtype=np.int64),
        np.array([-1, 2], dtype=np.int64),
    )
