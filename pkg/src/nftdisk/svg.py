"""Deterministic SVG rendering of disk and flow layouts.

Output is byte-identical for identical inputs: fixed float formatting, no
timestamps, element order follows layout order. Elements carry semantic
classes (arc-sale, arc-transfer, lifeline, bg-band, inner-path, ribbon,
nft-path) so tests and tools can count and inspect them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .disklayout import DiskLayout
from .flowlayout import Border, FlowLayout, SegmentKind
from .records import Status


@dataclass(frozen=True)
class StyleProfile:
    size: int = 800
    sale_color: str = "#2d9c5a"
    transfer_color: str = "#e3b72e"
    lifeline_color: str = "#ffffff"
    background_color: str = "#2a6fb0"
    inner_path_color: str = "#8a4fbf"
    guide_color: str = "#c8c8c8"
    canvas_color: str = "#101418"
    palette: tuple[str, ...] = (
        "#4e79a7",
        "#f28e2b",
        "#e15759",
        "#76b7b2",
        "#59a14f",
        "#edc948",
        "#b07aa1",
        "#ff9da7",
        "#9c755f",
        "#bab0ac",
    )
    flow_lane_px: float = 14.0
    flow_gap_px: float = 22.0
    flow_column_px: float = 26.0


DEFAULT_STYLE = StyleProfile()


def _f(x: float) -> str:
    return f"{x + 0.0:.6f}"


def _point(angle: float, r: float) -> tuple[float, float]:
    return r * math.cos(angle), -r * math.sin(angle)


def export_disk_svg(layout: DiskLayout, style: StyleProfile = DEFAULT_STYLE) -> bytes:
    cfg = layout.config
    s = style.size
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" '
        'viewBox="-1.15 -1.15 2.3 2.3">\n'
    ]
    out.append(
        f'<rect x="-1.15" y="-1.15" width="2.3" height="2.3" '
        f'fill="{style.canvas_color}"/>\n'
    )

    for band in layout.background:
        mid = (band.r_lo + band.r_hi) / 2.0
        width = band.r_hi - band.r_lo
        out.append(
            f'<circle class="bg-band" cx="0" cy="0" r="{_f(mid)}" fill="none" '
            f'stroke="{style.background_color}" stroke-width="{_f(width)}" '
            f'stroke-opacity="{_f(band.intensity)}"/>\n'
        )
    for r in (cfg.r_in, cfg.r_out):
        out.append(
            f'<circle class="ring-guide" cx="0" cy="0" r="{_f(r)}" fill="none" '
            f'stroke="{style.guide_color}" stroke-width="0.002"/>\n'
        )
    out.append(
        f'<circle class="inner-circle" cx="0" cy="0" r="{_f(cfg.circle_radius)}" '
        f'fill="none" stroke="{style.guide_color}" stroke-width="0.002"/>\n'
    )

    for line in layout.lifelines:
        x1, y1 = _point(line.angle, line.r_first)
        x2, y2 = _point(line.angle, line.r_last)
        out.append(
            f'<line class="lifeline" x1="{_f(x1)}" y1="{_f(y1)}" '
            f'x2="{_f(x2)}" y2="{_f(y2)}" stroke="{style.lifeline_color}" '
            'stroke-width="0.003"/>\n'
        )

    for arc in layout.arcs:
        x1, y1 = _point(arc.angle_start, arc.radius)
        x2, y2 = _point(arc.angle_end, arc.radius)
        color = (
            style.sale_color if arc.style is Status.SALE else style.transfer_color
        )
        kind = "sale" if arc.style is Status.SALE else "transfer"
        r = _f(arc.radius)
        out.append(
            f'<path class="arc-{kind}" d="M {_f(x1)} {_f(y1)} '
            f'A {r} {r} 0 0 0 {_f(x2)} {_f(y2)}" fill="none" '
            f'stroke="{color}" stroke-width="0.0025" stroke-opacity="0.85" '
            f'data-tx="{arc.tx}"/>\n'
        )

    for path in layout.inner_paths:
        x1, y1 = _point(path.angle_a, layout.config.circle_radius)
        x2, y2 = _point(path.angle_b, layout.config.circle_radius)
        cx, cy = path.control[0], -path.control[1]
        out.append(
            f'<path class="inner-path" d="M {_f(x1)} {_f(y1)} '
            f'Q {_f(cx)} {_f(cy)} {_f(x2)} {_f(y2)}" fill="none" '
            f'stroke="{style.inner_path_color}" stroke-width="0.003" '
            f'stroke-opacity="0.8" data-score="{_f(path.score)}" '
            f'data-apex="{_f(path.apex_radius)}"/>\n'
        )

    for addr, label in zip(layout.order.addresses, layout.address_labels):
        angle = layout.angles[addr]
        x1, y1 = _point(angle, cfg.r_out)
        x2, y2 = _point(angle, cfg.r_out + 0.03)
        out.append(
            f'<line class="addr-tick" x1="{_f(x1)}" y1="{_f(y1)}" '
            f'x2="{_f(x2)}" y2="{_f(y2)}" stroke="{style.guide_color}" '
            f'stroke-width="0.002" data-address="{label}"/>\n'
        )

    out.append("</svg>\n")
    return "".join(out).encode("utf-8")


def export_flow_svg(flow: FlowLayout, style: StyleProfile = DEFAULT_STYLE) -> bytes:
    lane = style.flow_lane_px
    gap = style.flow_gap_px
    dx = style.flow_column_px

    base_y: dict[int, float] = {}
    y = gap
    for addr in flow.addresses:
        base_y[addr] = y
        y += max(flow.heights[addr]) * lane + gap
    total_h = y
    total_w = max(flow.columns - 1, 1) * dx
    color = {
        addr: style.palette[slot % len(style.palette)]
        for slot, addr in enumerate(flow.addresses)
    }

    def xpos(col: int) -> float:
        return col * dx

    def lane_y(addr: int, lane_idx: int) -> float:
        return base_y[addr] + (lane_idx + 0.5) * lane

    def end_xy(end) -> tuple[float, float]:
        if end.node is Border.TOP:
            return xpos(end.x), 0.0
        if end.node is Border.BOTTOM:
            return xpos(end.x), total_h
        return xpos(end.x), lane_y(end.node, end.lane)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(total_w)}" '
        f'height="{_f(total_h)}" viewBox="0 0 {_f(total_w)} {_f(total_h)}">\n'
    ]

    defs: list[str] = []
    body: list[str] = []
    grad_n = 0

    for slot, addr in enumerate(flow.addresses):
        heights = flow.heights[addr]
        top = " ".join(
            f"{_f(xpos(x))},{_f(base_y[addr])}" for x in range(flow.columns)
        )
        bottom = " ".join(
            f"{_f(xpos(x))},{_f(base_y[addr] + heights[x] * lane)}"
            for x in reversed(range(flow.columns))
        )
        body.append(
            f'<polygon class="ribbon" points="{top} {bottom}" '
            f'fill="{color[addr]}" fill-opacity="0.35" data-index="{addr}" '
            f'data-slot="{slot}"/>\n'
        )

    for path in flow.paths:
        segs = []
        for seg in path.segments:
            x1, y1 = end_xy(seg.frm)
            x2, y2 = end_xy(seg.to)
            if seg.kind is SegmentKind.HOLD:
                stroke = color[seg.frm.node]
            else:
                c1 = color.get(seg.frm.node, style.guide_color)
                c2 = color.get(seg.to.node, style.guide_color)
                gid = f"grad{grad_n}"
                grad_n += 1
                defs.append(
                    f'<linearGradient id="{gid}" gradientUnits="userSpaceOnUse" '
                    f'x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}">'
                    f'<stop offset="0" stop-color="{c1}"/>'
                    f'<stop offset="1" stop-color="{c2}"/></linearGradient>\n'
                )
                stroke = f"url(#{gid})"
            dotted = (
                ' stroke-dasharray="3 3"'
                if seg.kind is SegmentKind.TRANSFER_HOP
                or (seg.status is Status.TRANSFER and seg.kind is not SegmentKind.HOLD)
                else ""
            )
            segs.append(
                f'<line class="nft-seg nft-seg-{seg.kind.value}" '
                f'x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" '
                f'stroke="{stroke}" stroke-width="3"{dotted}/>\n'
            )
        body.append(
            f'<g class="nft-path" data-token="{path.token_id}">\n'
            + "".join(segs)
            + "</g>\n"
        )

    if defs:
        out.append("<defs>\n" + "".join(defs) + "</defs>\n")
    out.extend(body)
    out.append("</svg>\n")
    return "".join(out).encode("utf-8")


def export_svg(layout, style: StyleProfile = DEFAULT_STYLE) -> bytes:
    """Render a disk or flow layout to deterministic SVG bytes."""
    if isinstance(layout, DiskLayout):
        return export_disk_svg(layout, style)
    if isinstance(layout, FlowLayout):
        return export_flow_svg(layout, style)
    raise TypeError(f"cannot render {type(layout).__name__}")
