"""Pair suspicion statistics, colluding groups, holdings replays, and
background metric bins.

An address pair's suspicion score is one minus the share of distinct tokens
among its transactions (``1 - unique_tokens / tx_count``, counting both
directions). A pair that trades a fresh token every time scores zero; a
pair churning a small set of tokens approaches one.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone
from decimal import Decimal
from enum import Enum
from typing import Iterable, Mapping, Sequence

import numpy as np

from .dataset import CollectionDataset
from .errors import GroupEmpty
from .records import WEI_PER_ETHER, ZERO_ADDRESS, Origin, Status


@dataclass(frozen=True, slots=True)
class PairStats:
    """Aggregate for one unordered address pair (a < b, dense indices)."""

    a: int
    b: int
    tx_count: int
    unique_tokens: int
    score: float  # 1 - unique_tokens / tx_count

    def key(self) -> tuple[int, int]:
        return (self.a, self.b)


def compute_pair_stats(
    dataset: CollectionDataset,
    time_range: tuple[int, int] | None = None,
) -> list[PairStats]:
    """One PairStats per unordered pair with >= 1 transaction in range.

    Pairs involving the zero (mint/burn) address are excluded; minting is
    issuance, not trade between accounts. Results are sorted by (a, b).
    """
    t0, t1 = time_range if time_range is not None else dataset.time_extent
    if t1 < t0:
        raise ValueError("time_range must satisfy t0 <= t1")

    idx = dataset.in_range(t0, t1)
    if idx.size == 0:
        return []

    f = dataset.from_idx[idx].astype(np.int64)
    t = dataset.to_idx[idx].astype(np.int64)
    tok = dataset.token_code[idx].astype(np.int64)

    zero = dataset.address_index.get(ZERO_ADDRESS)
    if zero is not None:
        keep = (f != zero) & (t != zero)
        f, t, tok = f[keep], t[keep], tok[keep]
    if f.size == 0:
        return []

    a = np.minimum(f, t)
    b = np.maximum(f, t)
    n_addr = len(dataset.addresses)
    pair_key = a * n_addr + b

    keys, counts = np.unique(pair_key, return_counts=True)

    # Distinct tokens per pair: sort by (pair, token), count run starts.
    order = np.lexsort((tok, pair_key))
    pk = pair_key[order]
    tk = tok[order]
    new_combo = np.ones(pk.size, dtype=bool)
    new_combo[1:] = (pk[1:] != pk[:-1]) | (tk[1:] != tk[:-1])
    combo_pairs = pk[new_combo]
    uniq_tokens = np.bincount(
        np.searchsorted(keys, combo_pairs), minlength=keys.size
    )

    out = []
    for key, m, n in zip(keys.tolist(), counts.tolist(), uniq_tokens.tolist()):
        out.append(
            PairStats(
                a=key // n_addr,
                b=key % n_addr,
                tx_count=m,
                unique_tokens=n,
                score=1.0 - n / m,
            )
        )
    return out


def filter_pairs(
    stats: Sequence[PairStats], min_tx: int
) -> tuple[list[PairStats], set[int]]:
    """Keep pairs with strictly more than ``min_tx`` transactions."""
    if min_tx < 1:
        raise ValueError("min_tx must be >= 1")
    kept = [p for p in stats if p.tx_count > min_tx]
    addresses = {i for p in kept for i in (p.a, p.b)}
    return kept, addresses


def detect_groups(pairs: Sequence[PairStats]) -> list[tuple[int, ...]]:
    """Connected components of the filtered pair graph.

    Components are ordered by descending total transaction count (then by
    smallest member for determinism); members are sorted ascending.
    """
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for p in pairs:
        parent.setdefault(p.a, p.a)
        parent.setdefault(p.b, p.b)
        ra, rb = find(p.a), find(p.b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    members: dict[int, list[int]] = {}
    for node in parent:
        members.setdefault(find(node), []).append(node)
    weight: dict[int, int] = {}
    for p in pairs:
        root = find(p.a)
        weight[root] = weight.get(root, 0) + p.tx_count

    comps = [tuple(sorted(v)) for v in members.values()]
    comps.sort(key=lambda c: (-weight[find(c[0])], c[0]))
    return comps


@dataclass(frozen=True, slots=True)
class HoldingsEvent:
    """One window transaction touching the group, with its holdings effect."""

    tx: int                       # transaction index in the dataset
    timestamp: int
    token_id: int
    status: "Status"
    mint: bool
    from_member: int | None       # group address index, if the sender is in the group
    to_member: int | None
    delta: Mapping[int, int]      # group address -> holdings count change
    inflow: int                   # 1 if a token entered the group at this event
    outflow: int


@dataclass(frozen=True)
class HoldingsTimeline:
    """Group holdings replayed over a window, one entry per touching tx."""

    addresses: tuple[int, ...]
    window: tuple[int, int]
    initial: Mapping[int, frozenset[int]]        # holdings at window start
    events: tuple[HoldingsEvent, ...]
    holdings: tuple[Mapping[int, frozenset[int]], ...]  # after each event
    totals: tuple[int, ...]                      # group_total after each event

    @property
    def initial_total(self) -> int:
        return sum(len(s) for s in self.initial.values())


def holders_before(dataset: CollectionDataset, t0: int) -> dict[int, int]:
    """token_id -> address index of the last receiver strictly before t0."""
    end = int(np.searchsorted(dataset.timestamps, t0, side="left"))
    holders: dict[int, int] = {}
    to_idx = dataset.to_idx
    for i in range(end):
        holders[dataset.records[i].token_id] = int(to_idx[i])
    return holders


def replay_holdings(
    dataset: CollectionDataset,
    group: Iterable[int],
    window: tuple[int, int] | None = None,
) -> HoldingsTimeline:
    """Replay per-address token holdings for a group over a time window.

    Holdings at the window start come from a full-history replay: an address
    holds token k iff the last transaction of k strictly before t0 delivered
    it there. Events are all window transactions touching at least one group
    address; intra-group moves shuffle tokens without changing the total.
    """
    members = tuple(sorted(set(group)))
    if not members:
        raise GroupEmpty("group must contain at least one address")
    t0, t1 = window if window is not None else dataset.time_extent
    member_set = set(members)

    held: dict[int, set[int]] = {a: set() for a in members}
    for token, holder in holders_before(dataset, t0).items():
        if holder in member_set:
            held[holder].add(token)
    initial = {a: frozenset(s) for a, s in held.items()}

    events: list[HoldingsEvent] = []
    snapshots: list[dict[int, frozenset[int]]] = []
    totals: list[int] = []
    total = sum(len(s) for s in held.values())

    for i in dataset.in_range(t0, t1).tolist():
        rec = dataset.records[i]
        src = int(dataset.from_idx[i])
        dst = int(dataset.to_idx[i])
        src_in = src in member_set
        dst_in = dst in member_set
        if not (src_in or dst_in):
            continue

        delta: dict[int, int] = {}
        removed = added = False
        if src_in and rec.token_id in held[src]:
            held[src].discard(rec.token_id)
            delta[src] = delta.get(src, 0) - 1
            removed = True
        if dst_in and rec.token_id not in held[dst]:
            held[dst].add(rec.token_id)
            delta[dst] = delta.get(dst, 0) + 1
            added = True
        inflow = 1 if added and not removed else 0
        outflow = 1 if removed and not added else 0
        total += inflow - outflow

        events.append(
            HoldingsEvent(
                tx=i,
                timestamp=rec.timestamp,
                token_id=rec.token_id,
                status=rec.status,
                mint=rec.origin is Origin.MINT,
                from_member=src if src_in else None,
                to_member=dst if dst_in else None,
                delta=delta,
                inflow=inflow,
                outflow=outflow,
            )
        )
        snapshots.append({a: frozenset(s) for a, s in held.items()})
        totals.append(total)

    return HoldingsTimeline(
        addresses=members,
        window=(t0, t1),
        initial=initial,
        events=tuple(events),
        holdings=tuple(snapshots),
        totals=tuple(totals),
    )


def detect_constant_spans(
    timeline: HoldingsTimeline, min_events: int
) -> list[tuple[int, int, int]]:
    """Maximal event ranges where the group total stays flat.

    A flat stretch of the stacked-area top contour means tokens are only
    circulating inside the group. Returns (start_event, end_event, tx_count)
    with inclusive indices, for ranges of at least ``min_events`` events.
    """
    if min_events < 2:
        raise ValueError("min_events must be >= 2")
    totals = timeline.totals
    spans: list[tuple[int, int, int]] = []
    start = 0
    for i in range(1, len(totals) + 1):
        if i == len(totals) or totals[i] != totals[start]:
            if i - start >= min_events:
                spans.append((start, i - 1, i - start))
            start = i
    return spans


class Metric(str, Enum):
    AVERAGE_PRICE = "average_price"
    TRADE_VOLUME = "trade_volume"


@dataclass(frozen=True)
class BackgroundSeries:
    metric: Metric
    bins: tuple[tuple[int, int, Decimal], ...]  # (month start, month end, value)
    normalization: Decimal                      # max bin value in range


def _month_start(ts: int) -> int:
    dt = datetime.fromtimestamp(ts, tz=timezone.utc)
    return int(datetime(dt.year, dt.month, 1, tzinfo=timezone.utc).timestamp())


def _next_month(ts: int) -> int:
    dt = datetime.fromtimestamp(ts, tz=timezone.utc)
    year, month = (dt.year + 1, 1) if dt.month == 12 else (dt.year, dt.month + 1)
    return int(datetime(year, month, 1, tzinfo=timezone.utc).timestamp())


def month_bins(t0: int, t1: int) -> list[tuple[int, int]]:
    """Consecutive UTC calendar months covering [t0, t1]."""
    edges = []
    start = _month_start(t0)
    while start <= t1:
        end = _next_month(start)
        edges.append((start, end))
        start = end
    return edges


def compute_background_bins(
    dataset: CollectionDataset,
    metric: Metric,
    time_range: tuple[int, int] | None = None,
) -> BackgroundSeries:
    """Monthly average sale price or sale count over the configured range.

    Transfers are excluded from both metrics: zero-value moves are not market
    activity and would drag the price average to zero. Empty months carry 0.
    """
    t0, t1 = time_range if time_range is not None else dataset.time_extent
    if t1 < t0:
        raise ValueError("time_range must satisfy t0 <= t1")
    months = month_bins(t0, t1)

    sums = [0] * len(months)
    counts = [0] * len(months)
    starts = [m[0] for m in months]
    for i in dataset.in_range(t0, t1).tolist():
        rec = dataset.records[i]
        if rec.value_wei == 0:
            continue
        k = int(np.searchsorted(starts, rec.timestamp, side="right")) - 1
        sums[k] += rec.value_wei
        counts[k] += 1

    bins = []
    for (start, end), total_wei, n_sales in zip(months, sums, counts):
        if metric is Metric.AVERAGE_PRICE:
            value = (
                Decimal(total_wei) / (Decimal(n_sales) * WEI_PER_ETHER)
                if n_sales
                else Decimal(0)
            )
        else:
            value = Decimal(n_sales)
        bins.append((start, end, value))

    normalization = max((b[2] for b in bins), default=Decimal(0))
    return BackgroundSeries(
        metric=metric, bins=tuple(bins), normalization=normalization
    )
