"""Independent brute-force oracles the implementation is checked against.

These deliberately re-derive everything from raw records with the dumbest
possible algorithms; they share no code path with the engine.
"""

from __future__ import annotations

from collections import defaultdict

import numpy as np

from nftdisk.records import ZERO_ADDRESS, TransactionRecord


def pair_stats_oracle(
    records: list[TransactionRecord], t0: int, t1: int
) -> dict[tuple[str, str], tuple[int, int]]:
    """(M, N) per unordered hex address pair, rescanning the raw log."""
    tokens: dict[tuple[str, str], list[int]] = defaultdict(list)
    for r in records:
        if not (t0 <= r.timestamp <= t1):
            continue
        if ZERO_ADDRESS in (r.from_address, r.to_address):
            continue
        key = tuple(sorted((r.from_address, r.to_address)))
        tokens[key].append(r.token_id)
    return {k: (len(v), len(set(v))) for k, v in tokens.items()}


def holder_oracle(
    records: list[TransactionRecord], upto: int
) -> dict[int, str]:
    """token_id -> holder address after replaying records[:upto]."""
    holder: dict[int, str] = {}
    for r in records[:upto]:
        holder[r.token_id] = r.to_address
    return holder


def group_holdings_oracle(
    records: list[TransactionRecord], upto: int, members: set[str]
) -> dict[str, set[int]]:
    """Per-member token sets after replaying records[:upto] from scratch."""
    holder = holder_oracle(records, upto)
    out: dict[str, set[int]] = {m: set() for m in members}
    for token, addr in holder.items():
        if addr in members:
            out[addr].add(token)
    return out


def naive_average_linkage(d: np.ndarray):
    """O(n^3) agglomerative clustering recomputing every cluster distance
    from the raw pairwise matrix; ties break on smallest member indices."""
    n = d.shape[0]
    clusters: list[list[int]] = [[i] for i in range(n)]
    ids = list(range(n))
    merges = []
    for t in range(n - 1):
        best = None
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                dist = float(
                    np.mean([d[a, b] for a in clusters[i] for b in clusters[j]])
                )
                key = (dist, min(clusters[i]), min(clusters[j]))
                if best is None or key < best[0]:
                    best = (key, i, j)
        (dist, _, _), i, j = best
        merges.append(
            {
                "height": dist,
                "members": frozenset(clusters[i]) | frozenset(clusters[j]),
                "children": {ids[i], ids[j]},
            }
        )
        clusters[i] = clusters[i] + clusters[j]
        ids[i] = n + t
        del clusters[j], ids[j]
    return merges


def exhaustive_leaf_order_cost(tree, d: np.ndarray) -> float:
    """Minimum chain cost over all 2^(n-1) flip assignments of the tree."""
    n = tree.n_leaves
    if n == 1:
        return 0.0
    best = np.inf
    for mask in range(2 ** (n - 1)):

        def leaves(node: int) -> list[int]:
            if node < n:
                return [node]
            t = node - n
            left = leaves(int(tree.merges[t, 0]))
            right = leaves(int(tree.merges[t, 1]))
            return right + left if (mask >> t) & 1 else left + right

        order = leaves(n + len(tree.merges) - 1)
        cost = sum(d[order[i], order[i + 1]] for i in range(n - 1))
        best = min(best, cost)
    return float(best)


def order_consistent_with_tree(order: list[int], tree) -> bool:
    """Every subtree's leaves must occupy a contiguous block of the order."""
    n = tree.n_leaves
    pos = {leaf: i for i, leaf in enumerate(order)}

    def leaves(node: int) -> list[int]:
        if node < n:
            return [node]
        t = node - n
        return leaves(int(tree.merges[t, 0])) + leaves(int(tree.merges[t, 1]))

    for t in range(len(tree.merges)):
        block = [pos[leaf] for leaf in leaves(n + t)]
        if max(block) - min(block) != len(block) - 1:
            return False
    return True
