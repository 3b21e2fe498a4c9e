"""Reusable flow-layout invariant checks (shared with the acceptance suite)."""

from __future__ import annotations

from nftdisk.analytics import HoldingsTimeline
from nftdisk.flowlayout import Border, FlowLayout, SegmentKind
from nftdisk.records import Status


def check_lane_capacity(flow: FlowLayout, timeline: HoldingsTimeline) -> None:
    lo, _ = flow.event_range
    for addr in flow.addresses:
        for x in range(flow.columns):
            lanes = flow.lanes[addr][x]
            assert len(lanes) == flow.heights[addr][x]
            assert len(set(lanes)) == len(lanes), "two tokens share a lane"
            state = (
                timeline.holdings[lo + x - 1]
                if x > 0 or lo > 0
                else timeline.initial
            )
            if x == 0 and lo > 0:
                state = timeline.holdings[lo - 1]
            assert set(lanes) == set(state[addr])


def check_path_continuity(flow: FlowLayout) -> None:
    for path in flow.paths:
        for seg in path.segments:
            if seg.kind is SegmentKind.HOLD:
                assert seg.frm.node == seg.to.node, "hold changed address"
        for prev, nxt in zip(path.segments, path.segments[1:]):
            joined = (prev.to.node, prev.to.x, prev.to.lane) == (
                nxt.frm.node,
                nxt.frm.x,
                nxt.frm.lane,
            )
            via_border = isinstance(prev.to.node, Border) and isinstance(
                nxt.frm.node, Border
            )
            assert joined or via_border, (
                f"token {path.token_id}: {prev.kind} -> {nxt.kind} disconnected"
            )


def check_hop_styles(flow: FlowLayout) -> None:
    by_tx = {ev.tx: ev for ev in flow.events}
    for path in flow.paths:
        for seg in path.segments:
            if seg.kind in (SegmentKind.SALE_HOP, SegmentKind.TRANSFER_HOP):
                status = by_tx[seg.tx].status
                expected = (
                    SegmentKind.SALE_HOP
                    if status is Status.SALE
                    else SegmentKind.TRANSFER_HOP
                )
                assert seg.kind is expected


def check_borders(flow: FlowLayout) -> None:
    for path in flow.paths:
        first = path.segments[0]
        if first.kind is SegmentKind.MINT_ENTRY:
            assert first.frm.node is Border.TOP
        elif first.kind is SegmentKind.EXTERNAL_ENTRY:
            assert first.frm.node is Border.BOTTOM
        else:
            # must begin at window start inside a ribbon
            assert first.frm.x == 0 and not isinstance(first.frm.node, Border)
        for seg in path.segments:
            if seg.kind is SegmentKind.MINT_ENTRY:
                assert seg.frm.node is Border.TOP
            if seg.kind is SegmentKind.EXTERNAL_ENTRY:
                assert seg.frm.node is Border.BOTTOM
            if seg.kind is SegmentKind.EXTERNAL_EXIT:
                assert seg.to.node is Border.BOTTOM


def check_stacked_agreement(flow: FlowLayout, timeline: HoldingsTimeline) -> None:
    lo, hi = flow.event_range
    for x in range(1, flow.columns):
        stack_total = timeline.totals[lo + x - 1]
        assert sum(flow.heights[a][x] for a in flow.addresses) == stack_total


def check_all(flow: FlowLayout, timeline: HoldingsTimeline) -> None:
    check_lane_capacity(flow, timeline)
    check_path_continuity(flow)
    check_hop_styles(flow)
    check_borders(flow)
    check_stacked_agreement(flow, timeline)
