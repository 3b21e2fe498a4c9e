"""Flow view data: group stacked series and the per-NFT routed trade paths.

The x-axis is the relative event sequence, not wall-clock time. In the
detail chart every address gets a ribbon whose height is its holdings count,
and every token gets a path threading through ribbon lanes: flat or shifting
Hold segments while held, hop segments when ownership changes (solid for
sales, dotted for transfers), entering from the top border when minted and
touching the bottom border when crossing the group boundary.

Lane routing follows the greedy insertion-side rule: a token arriving from a
ribbon drawn above enters the receiver's top lane, from below the bottom
lane; mints enter on top, external arrivals at the bottom. Closing a lane
compacts its neighbors toward the vacated slot, preserving relative order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from .analytics import HoldingsEvent, HoldingsTimeline
from .errors import EmptyBrush
from .records import Status
from .seriation import AddressOrder


class Border(str, Enum):
    TOP = "top"
    BOTTOM = "bottom"


class SegmentKind(str, Enum):
    HOLD = "hold"
    SALE_HOP = "sale_hop"
    TRANSFER_HOP = "transfer_hop"
    MINT_ENTRY = "mint_entry"
    EXTERNAL_ENTRY = "external_entry"
    EXTERNAL_EXIT = "external_exit"


MINT_KEY = "mint"
EXTERNAL_KEY = "external"


@dataclass(frozen=True, slots=True)
class PathEnd:
    node: int | Border  # address index or chart border
    x: int              # column: 0 = window start, i = after i-th event
    lane: int


@dataclass(frozen=True, slots=True)
class PathSegment:
    token_id: int
    kind: SegmentKind
    frm: PathEnd
    to: PathEnd
    fill: tuple[int | str, int | str]  # color keys: address index or mint/external
    status: Status | None = None       # underlying tx status for hops/crossings
    tx: int | None = None


@dataclass(frozen=True)
class TokenPath:
    token_id: int
    segments: tuple[PathSegment, ...]


@dataclass(frozen=True)
class StackedSeries:
    """Group-level holdings after each event, stacked in disk order."""

    addresses: tuple[int, ...]
    events: tuple[HoldingsEvent, ...]
    heights: np.ndarray  # (addresses, events) int64
    totals: tuple[int, ...]


@dataclass(frozen=True)
class FlowLayout:
    addresses: tuple[int, ...]          # stacking order, top ribbon first
    event_range: tuple[int, int]        # inclusive indices into the timeline
    events: tuple[HoldingsEvent, ...]
    columns: int                        # number of x positions (events + 1)
    heights: Mapping[int, tuple[int, ...]]
    lanes: Mapping[int, tuple[tuple[int, ...], ...]]  # addr -> per-x token ids
    paths: tuple[TokenPath, ...]


def _order_addresses(order) -> tuple[int, ...]:
    if isinstance(order, AddressOrder):
        return order.addresses
    return tuple(order)


def build_stacked_series(timeline: HoldingsTimeline, order) -> StackedSeries:
    """Per-address holdings heights after each event, stacked in disk order."""
    ordered = [a for a in _order_addresses(order) if a in set(timeline.addresses)]
    missing = set(timeline.addresses) - set(ordered)
    if missing:
        raise ValueError(f"order does not cover group addresses {sorted(missing)}")
    heights = np.zeros((len(ordered), len(timeline.events)), dtype=np.int64)
    for row, addr in enumerate(ordered):
        for e, snapshot in enumerate(timeline.holdings):
            heights[row, e] = len(snapshot[addr])
    return StackedSeries(
        addresses=tuple(ordered),
        events=timeline.events,
        heights=heights,
        totals=timeline.totals,
    )


def resolve_time_brush(
    series: StackedSeries, brush: tuple[float, float]
) -> tuple[int, int]:
    """Contiguous event indices whose x-positions intersect [x_lo, x_hi]."""
    x_lo, x_hi = brush
    if x_lo > x_hi:
        raise ValueError("brush must satisfy x_lo <= x_hi")
    n = len(series.events)
    lo = max(int(math.ceil(x_lo)), 0)
    hi = min(int(math.floor(x_hi)), n - 1)
    if n == 0 or lo > hi:
        raise EmptyBrush("no event inside the brushed period")
    return lo, hi


def assign_lanes(
    lanes: Mapping[int, Sequence[int]],
    *,
    token_id: int,
    from_node: int | Border,
    to_node: int | Border,
    positions: Mapping[int, int],
) -> dict[int, list[int]]:
    """Apply one ownership change to the lane map and return the new map.

    Lanes are listed top to bottom. The incoming token enters the receiver
    on the sender's side: top lane when the sender sits above (or is the top
    border), bottom lane when below (or outside the group).
    """
    updated = {addr: list(toks) for addr, toks in lanes.items()}
    if isinstance(from_node, int) and token_id in updated.get(from_node, ()):
        updated[from_node].remove(token_id)
    if isinstance(to_node, int) and token_id not in updated.get(to_node, ()):
        dest = updated.setdefault(to_node, [])
        if from_node is Border.TOP:
            dest.insert(0, token_id)
        elif from_node is Border.BOTTOM:
            dest.append(token_id)
        elif positions[from_node] < positions[to_node]:
            dest.insert(0, token_id)
        else:
            dest.append(token_id)
    return updated


def build_flow_detail(
    timeline: HoldingsTimeline, event_range: tuple[int, int], order
) -> FlowLayout:
    """Route ribbons, lanes, and per-token paths for a brushed event range."""
    lo, hi = event_range
    if not (0 <= lo <= hi < len(timeline.events)):
        raise ValueError(f"event range {event_range} outside the timeline")
    events = timeline.events[lo : hi + 1]
    start_state = timeline.holdings[lo - 1] if lo > 0 else timeline.initial

    touched = {m for ev in events for m in (ev.from_member, ev.to_member) if m is not None}
    relevant = [
        a
        for a in _order_addresses(order)
        if a in touched or (a in start_state and start_state[a])
    ]
    unknown = (touched | {a for a in timeline.addresses if start_state.get(a)}) - set(
        relevant
    )
    if unknown:
        raise ValueError(f"order does not cover addresses {sorted(unknown)}")
    positions = {addr: k for k, addr in enumerate(relevant)}

    lanes: dict[int, list[int]] = {
        addr: sorted(start_state.get(addr, ())) for addr in relevant
    }
    lane_snaps: list[dict[int, tuple[int, ...]]] = [
        {a: tuple(t) for a, t in lanes.items()}
    ]

    # (token -> move descriptor) per column, then per-token trajectories.
    moves: dict[tuple[int, int], tuple] = {}
    for i, ev in enumerate(events, start=1):
        if ev.from_member is not None:
            from_node: int | Border = ev.from_member
        elif ev.mint:
            from_node = Border.TOP
        else:
            from_node = Border.BOTTOM
        to_node: int | Border = (
            ev.to_member if ev.to_member is not None else Border.BOTTOM
        )
        lanes = assign_lanes(
            lanes,
            token_id=ev.token_id,
            from_node=from_node,
            to_node=to_node,
            positions=positions,
        )
        lane_snaps.append({a: tuple(t) for a, t in lanes.items()})
        moves[(ev.token_id, i)] = (from_node, to_node, ev.status, ev.tx)

    columns = len(events) + 1
    tracked = sorted(
        {t for snap in lane_snaps for toks in snap.values() for t in toks}
        | {ev.token_id for ev in events}
    )

    def locate(token: int, x: int) -> tuple[int | None, int]:
        for addr in relevant:
            toks = lane_snaps[x][addr]
            if token in toks:
                return addr, toks.index(token)
        return None, -1

    paths = []
    for token in tracked:
        segments: list[PathSegment] = []
        prev_addr, prev_lane = locate(token, 0)
        run_start = 0 if prev_addr is not None else None

        def flush(x_end: int, addr: int | None, lane: int) -> None:
            nonlocal run_start
            if run_start is not None and addr is not None and x_end > run_start:
                segments.append(
                    PathSegment(
                        token_id=token,
                        kind=SegmentKind.HOLD,
                        frm=PathEnd(addr, run_start, lane),
                        to=PathEnd(addr, x_end, lane),
                        fill=(addr, addr),
                    )
                )
            run_start = None

        for x in range(1, columns):
            cur_addr, cur_lane = locate(token, x)
            move = moves.get((token, x))
            if move is None:
                if cur_addr is not None and cur_addr == prev_addr:
                    if cur_lane != prev_lane:
                        flush(x - 1, prev_addr, prev_lane)
                        segments.append(
                            PathSegment(
                                token_id=token,
                                kind=SegmentKind.HOLD,
                                frm=PathEnd(cur_addr, x - 1, prev_lane),
                                to=PathEnd(cur_addr, x, cur_lane),
                                fill=(cur_addr, cur_addr),
                            )
                        )
                        run_start = x
                prev_addr, prev_lane = cur_addr, cur_lane
                continue

            from_node, to_node, status, tx = move
            flush(x - 1, prev_addr, prev_lane)
            if isinstance(from_node, int) and isinstance(to_node, int):
                if from_node == prev_addr:
                    segments.append(
                        PathSegment(
                            token_id=token,
                            kind=(
                                SegmentKind.SALE_HOP
                                if status is Status.SALE
                                else SegmentKind.TRANSFER_HOP
                            ),
                            frm=PathEnd(from_node, x - 1, prev_lane),
                            to=PathEnd(to_node, x, cur_lane),
                            fill=(from_node, to_node),
                            status=status,
                            tx=tx,
                        )
                    )
            elif from_node is Border.TOP:
                segments.append(
                    PathSegment(
                        token_id=token,
                        kind=SegmentKind.MINT_ENTRY,
                        frm=PathEnd(Border.TOP, x, 0),
                        to=PathEnd(to_node, x, cur_lane),
                        fill=(MINT_KEY, to_node),
                        status=status,
                        tx=tx,
                    )
                )
            elif from_node is Border.BOTTOM:
                segments.append(
                    PathSegment(
                        token_id=token,
                        kind=SegmentKind.EXTERNAL_ENTRY,
                        frm=PathEnd(Border.BOTTOM, x, 0),
                        to=PathEnd(to_node, x, cur_lane),
                        fill=(EXTERNAL_KEY, to_node),
                        status=status,
                        tx=tx,
                    )
                )
            elif to_node is Border.BOTTOM and prev_addr == from_node:
                segments.append(
                    PathSegment(
                        token_id=token,
                        kind=SegmentKind.EXTERNAL_EXIT,
                        frm=PathEnd(from_node, x - 1, prev_lane),
                        to=PathEnd(Border.BOTTOM, x, 0),
                        fill=(from_node, EXTERNAL_KEY),
                        status=status,
                        tx=tx,
                    )
                )
            run_start = x if cur_addr is not None else None
            prev_addr, prev_lane = cur_addr, cur_lane

        flush(columns - 1, prev_addr, prev_lane)
        if segments:
            paths.append(TokenPath(token_id=token, segments=tuple(segments)))

    heights = {
        addr: tuple(len(lane_snaps[x][addr]) for x in range(columns))
        for addr in relevant
    }
    return FlowLayout(
        addresses=tuple(relevant),
        event_range=(lo, hi),
        events=events,
        columns=columns,
        heights=heights,
        lanes={
            addr: tuple(lane_snaps[x][addr] for x in range(columns))
            for addr in relevant
        },
        paths=tuple(paths),
    )


def _node_json(node: int | Border, labels: Sequence[str] | None = None):
    if isinstance(node, Border):
        return node.value
    return labels[node] if labels is not None else node


def stacked_series_to_dict(series: StackedSeries, labels: Mapping[int, str]) -> dict:
    return {
        "addresses": [
            {"address": labels[a], "index": a} for a in series.addresses
        ],
        "events": [
            {
                "tx": ev.tx,
                "timestamp": ev.timestamp,
                "token_id": ev.token_id,
                "status": ev.status.value,
            }
            for ev in series.events
        ],
        "heights": series.heights.tolist(),
        "totals": list(series.totals),
    }


def flow_layout_to_dict(flow: FlowLayout, labels: Mapping[int, str]) -> dict:
    """JSON-ready form matching flow_layout.schema.json."""

    def key_json(key: int | str):
        return labels[key] if isinstance(key, int) else key

    def end_json(end: PathEnd) -> dict:
        node = end.node.value if isinstance(end.node, Border) else labels[end.node]
        return {"node": node, "x": end.x, "lane": end.lane}

    return {
        "event_range": list(flow.event_range),
        "columns": flow.columns,
        "events": [
            {
                "tx": ev.tx,
                "timestamp": ev.timestamp,
                "token_id": ev.token_id,
                "status": ev.status.value,
            }
            for ev in flow.events
        ],
        "ribbons": [
            {
                "address": labels[addr],
                "index": addr,
                "slot": slot,
                "heights": list(flow.heights[addr]),
                "lanes": [list(toks) for toks in flow.lanes[addr]],
            }
            for slot, addr in enumerate(flow.addresses)
        ],
        "paths": [
            {
                "token_id": path.token_id,
                "segments": [
                    {
                        "kind": seg.kind.value,
                        "from": end_json(seg.frm),
                        "to": end_json(seg.to),
                        "fill": [key_json(seg.fill[0]), key_json(seg.fill[1])],
                        "status": seg.status.value if seg.status else None,
                        "tx": seg.tx,
                    }
                    for seg in path.segments
                ],
            }
            for path in flow.paths
        ],
    }
