"""Headless summary of suspicious activity in one collection.

The report ranks address pairs by suspicion score, lists colluding groups
with their flat-holdings stretches, and totals how many addresses, trades,
and tokens the suspicious pairs involve. It is the CLI counterpart of
eyeballing the disk and flow views.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

from .analytics import (
    Metric,
    PairStats,
    compute_pair_stats,
    detect_constant_spans,
    detect_groups,
    filter_pairs,
    replay_holdings,
)
from .dataset import CollectionDataset
from .disklayout import DEFAULT_MIN_TX
from .records import format_ether


@dataclass(frozen=True)
class SessionConfig:
    """Toolbar state: what the user has filtered the views down to."""

    time_range: tuple[int, int] | None = None   # None = full extent
    metric: Metric = Metric.AVERAGE_PRICE
    min_tx: int = DEFAULT_MIN_TX
    addresses: tuple[int, ...] | None = None    # current selection, if any
    event_range: tuple[int, int] | None = None

    def resolved_range(self, dataset: CollectionDataset) -> tuple[int, int]:
        return self.time_range if self.time_range is not None else dataset.time_extent


@dataclass(frozen=True)
class GroupSummary:
    addresses: tuple[int, ...]
    labels: tuple[str, ...]
    total_tx: int
    constant_spans: tuple[tuple[int, int, int], ...]  # (start, end, tx_count)
    event_count: int


@dataclass(frozen=True)
class ReportDocument:
    collection_id: str
    time_range: tuple[int, int]
    min_tx: int
    ranked_pairs: tuple[dict, ...]
    groups: tuple[GroupSummary, ...]
    suspicious_addresses: int
    suspicious_transactions: int
    suspicious_tokens: int
    total_transactions: int = field(default=0)


def _rank_key(p: PairStats):
    return (-p.score, -p.tx_count, p.a, p.b)


def generate_report(
    dataset: CollectionDataset, config: SessionConfig, top_k: int = 20
) -> ReportDocument:
    """Deterministic suspicion summary under the given session config."""
    t0, t1 = config.resolved_range(dataset)
    stats = compute_pair_stats(dataset, (t0, t1))
    kept, _ = filter_pairs(stats, config.min_tx)
    suspicious = [p for p in kept if p.score > 0.0]

    ranked = sorted(suspicious, key=_rank_key)[:top_k]
    ranked_pairs = tuple(
        {
            "a": dataset.addresses[p.a],
            "b": dataset.addresses[p.b],
            "tx_count": p.tx_count,
            "unique_tokens": p.unique_tokens,
            "score": p.score,
        }
        for p in ranked
    )

    groups = []
    for members in detect_groups(kept):
        timeline = replay_holdings(dataset, members, (t0, t1))
        spans = detect_constant_spans(timeline, min_events=2)
        total_tx = sum(p.tx_count for p in kept if p.a in members and p.b in members)
        groups.append(
            GroupSummary(
                addresses=members,
                labels=tuple(dataset.addresses[a] for a in members),
                total_tx=total_tx,
                constant_spans=tuple(spans),
                event_count=len(timeline.events),
            )
        )

    tokens: set[int] = set()
    if suspicious:
        pair_set = {(p.a, p.b) for p in suspicious}
        for i in dataset.in_range(t0, t1).tolist():
            f = int(dataset.from_idx[i])
            t = int(dataset.to_idx[i])
            if (min(f, t), max(f, t)) in pair_set:
                tokens.add(dataset.records[i].token_id)

    return ReportDocument(
        collection_id=dataset.collection_id,
        time_range=(t0, t1),
        min_tx=config.min_tx,
        ranked_pairs=ranked_pairs,
        groups=tuple(groups),
        suspicious_addresses=len({a for p in suspicious for a in (p.a, p.b)}),
        suspicious_transactions=sum(p.tx_count for p in suspicious),
        suspicious_tokens=len(tokens),
        total_transactions=int(dataset.in_range(t0, t1).size),
    )


def report_to_dict(doc: ReportDocument) -> dict:
    return {
        "collection_id": doc.collection_id,
        "time_range": list(doc.time_range),
        "min_tx": doc.min_tx,
        "summary": {
            "suspicious_addresses": doc.suspicious_addresses,
            "suspicious_transactions": doc.suspicious_transactions,
            "suspicious_tokens": doc.suspicious_tokens,
            "total_transactions": doc.total_transactions,
        },
        "ranked_pairs": list(doc.ranked_pairs),
        "groups": [
            {
                "addresses": list(g.labels),
                "total_tx": g.total_tx,
                "events": g.event_count,
                "constant_spans": [
                    {"start": s, "end": e, "tx_count": c}
                    for s, e, c in g.constant_spans
                ],
            }
            for g in doc.groups
        ],
    }


def report_to_text(doc: ReportDocument) -> str:
    buf = io.StringIO()
    w = buf.write
    w(f"Collection {doc.collection_id}\n")
    w(f"  time range   {doc.time_range[0]} .. {doc.time_range[1]}\n")
    w(f"  address filter  more than {doc.min_tx} transactions per pair\n")
    w(
        f"  suspicious: {doc.suspicious_addresses} addresses, "
        f"{doc.suspicious_transactions} transactions, "
        f"{doc.suspicious_tokens} tokens "
        f"(of {doc.total_transactions} transactions in range)\n\n"
    )
    w("Top pairs by suspicion score (1 - unique tokens / transactions):\n")
    if not doc.ranked_pairs:
        w("  none above zero\n")
    for i, p in enumerate(doc.ranked_pairs, 1):
        w(
            f"  {i:2d}. score={p['score']:.4f}  tx={p['tx_count']:<5d} "
            f"tokens={p['unique_tokens']:<4d} {p['a']} <-> {p['b']}\n"
        )
    w("\nColluding groups (connected suspicious pairs):\n")
    if not doc.groups:
        w("  none\n")
    for i, g in enumerate(doc.groups, 1):
        w(f"  group {i}: {len(g.addresses)} addresses, {g.total_tx} transactions\n")
        for label in g.labels:
            w(f"    {label}\n")
        if g.constant_spans:
            longest = max(g.constant_spans, key=lambda s: s[2])
            w(
                f"    flat holdings: {len(g.constant_spans)} stretch(es), "
                f"longest {longest[2]} consecutive events\n"
            )
    return buf.getvalue()


def format_wei(wei: int) -> str:
    """Ether formatting for report surfaces."""
    return format_ether(wei)
