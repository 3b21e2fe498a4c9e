"""Address seriation: put heavily-trading address pairs next to each other.

Transaction counts become distances (more transactions, shorter distance),
the distance matrix is clustered agglomeratively with average linkage, and
the dendrogram's leaves are ordered by the optimal leaf ordering dynamic
program: among all 2^(n-1) orders reachable by flipping internal nodes, pick
one minimizing the sum of distances between adjacent addresses. The chain is
linear; the wrap-around adjacency of the circular layout is not part of the
objective.

All ties break toward the smallest address index so repeated runs give
identical orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .analytics import PairStats


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric pairwise distances over the filtered addresses.

    ``labels[i]`` is the dataset address index behind matrix row i; labels
    are sorted ascending.
    """

    labels: tuple[int, ...]
    values: np.ndarray

    @property
    def n(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class Dendrogram:
    """Binary merge tree in scipy linkage convention.

    Row t of ``merges`` is (left id, right id, height, size); ids below
    ``n_leaves`` are leaves, id ``n_leaves + t`` is the cluster made by row t.
    """

    n_leaves: int
    merges: np.ndarray  # (n_leaves - 1, 4) float64

    def heights(self) -> np.ndarray:
        return self.merges[:, 2]


@dataclass(frozen=True)
class AddressOrder:
    """A permutation of the filtered address indices plus its chain cost."""

    addresses: tuple[int, ...]
    cost: float

    def position(self, address: int) -> int:
        return self.addresses.index(address)


def build_distance_matrix(
    pairs: Sequence[PairStats], addresses: Iterable[int]
) -> DistanceMatrix:
    """d(i, j) = 1 / (1 + M(i, j)): bounded, zero-safe, decreasing in M."""
    labels = tuple(sorted(set(addresses)))
    if not labels:
        raise ValueError("addresses must be non-empty")
    index = {a: i for i, a in enumerate(labels)}
    n = len(labels)
    d = np.ones((n, n), dtype=np.float64)
    np.fill_diagonal(d, 0.0)
    for p in pairs:
        i = index.get(p.a)
        j = index.get(p.b)
        if i is None or j is None:
            continue
        d[i, j] = d[j, i] = 1.0 / (1.0 + p.tx_count)
    return DistanceMatrix(labels=labels, values=d)


def cluster_addresses(matrix: DistanceMatrix) -> Dendrogram:
    """Agglomerative average-linkage clustering of the distance matrix."""
    n = matrix.n
    merges = np.empty((max(n - 1, 0), 4), dtype=np.float64)
    if n >= 2:
        a, b, h, s = _kernels.average_linkage(matrix.values)
        merges[:, 0] = a
        merges[:, 1] = b
        merges[:, 2] = h
        merges[:, 3] = s
    return Dendrogram(n_leaves=n, merges=merges)


def inorder_leaves(tree: Dendrogram) -> list[int]:
    """Matrix indices in dendrogram in-order (no flips applied)."""
    n = tree.n_leaves
    if n == 1:
        return [0]
    leaves: list[int] = []
    stack = [n + len(tree.merges) - 1]
    while stack:
        node = stack.pop()
        if node < n:
            leaves.append(node)
        else:
            row = tree.merges[node - n]
            stack.append(int(row[1]))  # right pushed first, left pops first
            stack.append(int(row[0]))
    return leaves


def _node_ranges(tree: Dendrogram, pos_of_leaf: Sequence[int]):
    """Per internal node: contiguous in-order position range, split point,
    and each child's own split (-1 when the child is a leaf)."""
    n = tree.n_leaves
    spans: dict[int, tuple[int, int]] = {
        leaf: (pos_of_leaf[leaf], pos_of_leaf[leaf] + 1) for leaf in range(n)
    }
    los = np.empty(n - 1, dtype=np.int64)
    mids = np.empty(n - 1, dtype=np.int64)
    his = np.empty(n - 1, dtype=np.int64)
    lsplits = np.empty(n - 1, dtype=np.int64)
    rsplits = np.empty(n - 1, dtype=np.int64)
    for t in range(n - 1):
        left = int(tree.merges[t, 0])
        right = int(tree.merges[t, 1])
        l_lo, l_hi = spans[left]
        r_lo, r_hi = spans[right]
        assert l_hi == r_lo, "in-order layout must make children adjacent"
        spans[n + t] = (l_lo, r_hi)
        los[t], mids[t], his[t] = l_lo, l_hi, r_hi
        lsplits[t] = mids[left - n] if left >= n else -1
        rsplits[t] = mids[right - n] if right >= n else -1
    return los, mids, his, lsplits, rsplits


def _backtrack(
    los: np.ndarray,
    mids: np.ndarray,
    his: np.ndarray,
    argm: np.ndarray,
    argk: np.ndarray,
    u: int,
    w: int,
) -> list[int]:
    """Recover the leaf-position chain for the root endpoints (u, w)."""
    n = argm.shape[0]
    node_of_range: dict[tuple[int, int], int] = {
        (int(los[t]), int(his[t])): t for t in range(len(los))
    }
    out = [0] * n
    root = len(los) - 1
    stack = [(root, u, w, 0)]
    while stack:
        node, u, w, out_lo = stack.pop()
        lo, mid, hi = int(los[node]), int(mids[node]), int(his[node])
        left_size = mid - lo

        def child(lo_: int, hi_: int) -> int:
            return -1 if hi_ - lo_ == 1 else node_of_range[(lo_, hi_)]

        if u < mid:
            m, k = int(argm[u, w]), int(argk[u, w])
            first = (child(lo, mid), u, m, out_lo)
            second = (child(mid, hi), k, w, out_lo + left_size)
        else:
            # Flipped orientation: right child comes first, mirrored tables.
            m, k = int(argm[w, u]), int(argk[w, u])
            first = (child(mid, hi), u, k, out_lo)
            second = (child(lo, mid), m, w, out_lo + (hi - mid))
        for node_, u_, w_, pos_ in (first, second):
            if node_ == -1:
                out[pos_] = u_
            else:
                stack.append((node_, u_, w_, pos_))
    return out


def order_cost(positions: Sequence[int], values: np.ndarray) -> float:
    """Sum of distances over consecutive entries of a matrix-index chain."""
    return float(
        sum(values[positions[i], positions[i + 1]] for i in range(len(positions) - 1))
    )


def optimal_leaf_order(tree: Dendrogram, matrix: DistanceMatrix) -> AddressOrder:
    """Best flip assignment of the dendrogram, as an ordered address chain."""
    n = tree.n_leaves
    if n == 1:
        return AddressOrder(addresses=(matrix.labels[0],), cost=0.0)

    inorder = inorder_leaves(tree)
    pos_of_leaf = [0] * n
    for pos, leaf in enumerate(inorder):
        pos_of_leaf[leaf] = pos
    los, mids, his, lsplits, rsplits = _node_ranges(tree, pos_of_leaf)
    dd = matrix.values[np.ix_(inorder, inorder)]

    cost, argm, argk = _kernels.olo_tables(dd, los, mids, his, lsplits, rsplits)

    root = n - 2
    lo, mid, hi = int(los[root]), int(mids[root]), int(his[root])
    best = np.inf
    bu = bw = -1
    for u in range(lo, mid):
        for w in range(mid, hi):
            if cost[u, w] < best:
                best = float(cost[u, w])
                bu, bw = u, w

    chain = _backtrack(los, mids, his, argm, argk, bu, bw)
    matrix_indices = [inorder[p] for p in chain]
    return AddressOrder(
        addresses=tuple(matrix.labels[i] for i in matrix_indices),
        cost=order_cost(matrix_indices, matrix.values),
    )


def seriate(pairs: Sequence[PairStats], addresses: Iterable[int]) -> AddressOrder:
    """Distance transform, clustering, and leaf ordering in one call."""
    addresses = set(addresses)
    if not addresses:
        return AddressOrder(addresses=(), cost=0.0)
    matrix = build_distance_matrix(pairs, addresses)
    tree = cluster_addresses(matrix)
    return optimal_leaf_order(tree, matrix)
