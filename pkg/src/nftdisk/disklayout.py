"""Geometry for the radial disk view.

The outer ring maps time to radius (earlier toward the center) and draws one
arc per transaction between the two involved address angles, always along
the smaller of the two possible arcs. White lifespan lines mark each
address's first and last transaction, and annular background bands encode a
monthly market metric. The inner circle draws one curve per suspicious pair;
the curve's closest approach to the center encodes the suspicion score.

Everything here is renderer-agnostic: angles in radians, radii normalized to
[0, 1], colors as semantic style enums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .analytics import (
    BackgroundSeries,
    Metric,
    PairStats,
    compute_background_bins,
    compute_pair_stats,
    filter_pairs,
)
from .dataset import CollectionDataset
from .errors import EmptyBrush, OutOfRange
from .records import Status
from .seriation import AddressOrder, seriate

TAU = 2.0 * math.pi

DEFAULT_MIN_TX = 20


@dataclass(frozen=True)
class DiskConfig:
    time_range: tuple[int, int]
    r_in: float = 0.45
    r_out: float = 1.0
    inner_circle_radius: float | None = None  # defaults to r_in
    metric: Metric = Metric.AVERAGE_PRICE
    min_tx: int = DEFAULT_MIN_TX

    def __post_init__(self):
        if not (0.0 < self.circle_radius <= self.r_in < self.r_out <= 1.0):
            raise ValueError("radii must satisfy 0 < R <= r_in < r_out <= 1")
        if self.time_range[0] > self.time_range[1]:
            raise ValueError("time_range must satisfy t0 <= t1")

    @property
    def circle_radius(self) -> float:
        return (
            self.inner_circle_radius
            if self.inner_circle_radius is not None
            else self.r_in
        )


@dataclass(frozen=True, slots=True)
class ArcGlyph:
    """One transaction arc; traversing counter-clockwise from angle_start to
    angle_end covers the smaller span (<= pi)."""

    radius: float
    angle_start: float
    angle_end: float
    style: Status
    tx: int


@dataclass(frozen=True, slots=True)
class LifeLine:
    address: int
    angle: float
    r_first: float
    r_last: float


@dataclass(frozen=True, slots=True)
class BackgroundBand:
    r_lo: float
    r_hi: float
    intensity: float


@dataclass(frozen=True, slots=True)
class InnerPath:
    """Quadratic curve between two rim points whose midpoint sits at
    apex_radius = R * (1 - score) from the center."""

    a: int
    b: int
    angle_a: float
    angle_b: float
    score: float
    apex_radius: float
    control: tuple[float, float]


@dataclass(frozen=True, slots=True)
class CircularBrush:
    angle_start: float
    angle_end: float
    r_lo: float
    r_hi: float


@dataclass(frozen=True, slots=True)
class Selection:
    addresses: tuple[int, ...]  # in disk order
    time_range: tuple[int, int]


@dataclass(frozen=True)
class DiskLayout:
    config: DiskConfig
    order: AddressOrder
    address_labels: tuple[str, ...]  # hex addresses in disk order
    angles: Mapping[int, float]
    arcs: tuple[ArcGlyph, ...]
    lifelines: tuple[LifeLine, ...]
    background: tuple[BackgroundBand, ...]
    inner_paths: tuple[InnerPath, ...]
    pairs: tuple[PairStats, ...] = field(default=())


def address_angles(order: AddressOrder) -> dict[int, float]:
    """Evenly spaced angles, position k at 2*pi*k/n, position 0 at angle 0."""
    n = len(order.addresses)
    return {addr: TAU * k / n for k, addr in enumerate(order.addresses)}


def time_to_radius(t: int, config: DiskConfig) -> float:
    t0, t1 = config.time_range
    if not (t0 <= t <= t1):
        raise OutOfRange(f"timestamp {t} outside [{t0}, {t1}]")
    if t1 == t0:
        return config.r_in
    return config.r_in + (t - t0) / (t1 - t0) * (config.r_out - config.r_in)


def radius_to_time(r: float, config: DiskConfig) -> int:
    t0, t1 = config.time_range
    span = config.r_out - config.r_in
    t = t0 + (r - config.r_in) / span * (t1 - t0)
    return min(max(round(t), t0), t1)


def _positions(order: AddressOrder) -> dict[int, int]:
    return {addr: k for k, addr in enumerate(order.addresses)}


def make_arcs(
    dataset: CollectionDataset,
    order: AddressOrder,
    angles: Mapping[int, float],
    config: DiskConfig,
) -> list[ArcGlyph]:
    """One arc per in-range transaction whose endpoints both survived the
    filter, in log order (stable z-order: later transactions on top)."""
    pos = _positions(order)
    n = len(order.addresses)
    t0, t1 = config.time_range
    arcs: list[ArcGlyph] = []
    for i in dataset.in_range(t0, t1).tolist():
        f = int(dataset.from_idx[i])
        t = int(dataset.to_idx[i])
        if f not in pos or t not in pos:
            continue
        # Smaller-span rule on exact grid positions; a diametric tie starts
        # counter-clockwise from the lower disk position.
        dp = (pos[t] - pos[f]) % n
        if 2 * dp < n:
            start, end = f, t
        elif 2 * dp > n:
            start, end = t, f
        else:
            start = f if pos[f] < pos[t] else t
            end = t if start == f else f
        rec = dataset.records[i]
        arcs.append(
            ArcGlyph(
                radius=time_to_radius(rec.timestamp, config),
                angle_start=angles[start],
                angle_end=angles[end],
                style=rec.status,
                tx=i,
            )
        )
    return arcs


def make_lifelines(
    dataset: CollectionDataset,
    order: AddressOrder,
    angles: Mapping[int, float],
    config: DiskConfig,
) -> list[LifeLine]:
    """Radial segment per address from its first to its last in-range
    transaction (any counterparty; a late first transaction flags a fresh
    address)."""
    t0, t1 = config.time_range
    addr_set = set(order.addresses)
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    for i in dataset.in_range(t0, t1).tolist():
        ts = int(dataset.timestamps[i])
        for a in (int(dataset.from_idx[i]), int(dataset.to_idx[i])):
            if a in addr_set:
                first.setdefault(a, ts)
                last[a] = ts
    lines = []
    for addr in order.addresses:
        if addr in first:
            lines.append(
                LifeLine(
                    address=addr,
                    angle=angles[addr],
                    r_first=time_to_radius(first[addr], config),
                    r_last=time_to_radius(last[addr], config),
                )
            )
    return lines


def make_background(
    series: BackgroundSeries, config: DiskConfig
) -> list[BackgroundBand]:
    """Annular band per month bin, intensity normalized to the range max."""
    t0, t1 = config.time_range
    norm = series.normalization
    bands = []
    for start, end, value in series.bins:
        lo = max(start, t0)
        hi = min(end, t1)
        if lo > hi:
            continue
        intensity = float(value / norm) if norm > 0 else 0.0
        bands.append(
            BackgroundBand(
                r_lo=time_to_radius(lo, config),
                r_hi=time_to_radius(hi, config),
                intensity=intensity,
            )
        )
    return bands


def make_inner_paths(
    pairs: Sequence[PairStats],
    order: AddressOrder,
    angles: Mapping[int, float],
    radius: float,
) -> list[InnerPath]:
    """One curve per pair with score > 0; zero-score pairs are not drawn."""
    pos = _positions(order)
    n = len(order.addresses)
    paths = []
    for p in sorted(pairs, key=PairStats.key):
        if p.score <= 0.0 or p.a not in pos or p.b not in pos:
            continue
        apex = radius * (1.0 - p.score)
        dp = (pos[p.b] - pos[p.a]) % n
        if 2 * dp < n:
            mid_pos = pos[p.a] + dp / 2.0
        elif 2 * dp > n:
            mid_pos = pos[p.b] + (n - dp) / 2.0
        else:
            mid_pos = min(pos[p.a], pos[p.b]) + n / 4.0
        half_span = (min(dp, n - dp) / 2.0) * (TAU / n)
        mid_angle = TAU * mid_pos / n
        # Quadratic curve midpoint is P0/4 + C/2 + P1/4; placing the control
        # point at distance c along the bisector puts the midpoint at
        # (R*cos(half_span) + c) / 2 from the center.
        c = 2.0 * apex - radius * math.cos(half_span)
        paths.append(
            InnerPath(
                a=p.a,
                b=p.b,
                angle_a=angles[p.a],
                angle_b=angles[p.b],
                score=p.score,
                apex_radius=apex,
                control=(c * math.cos(mid_angle), c * math.sin(mid_angle)),
            )
        )
    return paths


def build_disk_layout(dataset: CollectionDataset, config: DiskConfig) -> DiskLayout:
    """Full disk pipeline: pair stats, filter, seriation, geometry."""
    stats = compute_pair_stats(dataset, config.time_range)
    kept, addresses = filter_pairs(stats, config.min_tx)
    order = seriate(kept, addresses)
    angles = address_angles(order) if order.addresses else {}
    series = compute_background_bins(dataset, config.metric, config.time_range)
    return DiskLayout(
        config=config,
        order=order,
        address_labels=tuple(dataset.addresses[a] for a in order.addresses),
        angles=angles,
        arcs=tuple(make_arcs(dataset, order, angles, config)),
        lifelines=tuple(make_lifelines(dataset, order, angles, config)),
        background=tuple(make_background(series, config)),
        inner_paths=tuple(
            make_inner_paths(kept, order, angles, config.circle_radius)
        ),
        pairs=tuple(sorted(kept, key=PairStats.key)),
    )


def resolve_circular_brush(layout: DiskLayout, brush: CircularBrush) -> Selection:
    """Addresses inside the directed angular interval, plus the time range
    the radial interval maps back to."""
    if not (0 <= brush.r_lo < brush.r_hi):
        raise ValueError("brush radii must satisfy 0 <= r_lo < r_hi")
    config = layout.config
    start = brush.angle_start % TAU
    span = (brush.angle_end - brush.angle_start) % TAU
    eps = 1e-9
    selected = tuple(
        addr
        for addr in layout.order.addresses
        if (layout.angles[addr] - start) % TAU <= span + eps
    )
    if not selected:
        raise EmptyBrush("no address inside the brushed angular span")
    r_lo = max(brush.r_lo, config.r_in)
    r_hi = min(brush.r_hi, config.r_out)
    if r_lo > r_hi:
        raise EmptyBrush("brushed radii do not intersect the ring")
    return Selection(
        addresses=selected,
        time_range=(radius_to_time(r_lo, config), radius_to_time(r_hi, config)),
    )


def disk_layout_to_dict(layout: DiskLayout) -> dict:
    """JSON-ready form matching disk_layout.schema.json."""
    cfg = layout.config
    return {
        "config": {
            "time_range": list(cfg.time_range),
            "r_in": cfg.r_in,
            "r_out": cfg.r_out,
            "inner_circle_radius": cfg.circle_radius,
            "metric": cfg.metric.value,
            "min_tx": cfg.min_tx,
        },
        "addresses": [
            {
                "address": label,
                "index": addr,
                "angle": layout.angles[addr],
            }
            for addr, label in zip(layout.order.addresses, layout.address_labels)
        ],
        "order_cost": layout.order.cost,
        "arcs": [
            {
                "radius": a.radius,
                "angle_start": a.angle_start,
                "angle_end": a.angle_end,
                "style": a.style.value,
                "tx": a.tx,
            }
            for a in layout.arcs
        ],
        "lifelines": [
            {
                "index": l.address,
                "angle": l.angle,
                "r_first": l.r_first,
                "r_last": l.r_last,
            }
            for l in layout.lifelines
        ],
        "background": [
            {"r_lo": b.r_lo, "r_hi": b.r_hi, "intensity": b.intensity}
            for b in layout.background
        ],
        "inner_paths": [
            {
                "a": p.a,
                "b": p.b,
                "angle_a": p.angle_a,
                "angle_b": p.angle_b,
                "score": p.score,
                "apex_radius": p.apex_radius,
                "control": list(p.control),
            }
            for p in layout.inner_paths
        ],
        "pairs": [
            {
                "a": p.a,
                "b": p.b,
                "tx_count": p.tx_count,
                "unique_tokens": p.unique_tokens,
                "score": p.score,
            }
            for p in layout.pairs
        ],
    }
