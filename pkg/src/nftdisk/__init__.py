"""Wash-trading analytics and visualization engine for NFT transaction logs.

Pipeline: parse an exported transaction log into an immutable collection
dataset, score address pairs by how heavily they churn a small token set,
seriate the filtered addresses so colluding cliques sit together, and emit
renderer-agnostic disk (radial overview) and flow (per-NFT provenance)
layouts, plus reports, SVG exports, and an HTTP API for the browser client.
"""

from .analytics import (
    BackgroundSeries,
    HoldingsTimeline,
    Metric,
    PairStats,
    compute_background_bins,
    compute_pair_stats,
    detect_constant_spans,
    detect_groups,
    filter_pairs,
    replay_holdings,
)
from .dataset import CollectionDataset, build_dataset
from .disklayout import (
    CircularBrush,
    DiskConfig,
    DiskLayout,
    Selection,
    build_disk_layout,
    disk_layout_to_dict,
    resolve_circular_brush,
)
from .flowlayout import (
    FlowLayout,
    StackedSeries,
    build_flow_detail,
    build_stacked_series,
    flow_layout_to_dict,
    resolve_time_brush,
    stacked_series_to_dict,
)
from .records import TransactionRecord, parse_transactions
from .report import SessionConfig, generate_report
from .seriation import (
    AddressOrder,
    Dendrogram,
    DistanceMatrix,
    build_distance_matrix,
    cluster_addresses,
    optimal_leaf_order,
    seriate,
)
from .svg import export_svg

__version__ = "0.1.0"

__all__ = [
    "AddressOrder",
    "BackgroundSeries",
    "CircularBrush",
    "CollectionDataset",
    "Dendrogram",
    "DiskConfig",
    "DiskLayout",
    "DistanceMatrix",
    "FlowLayout",
    "HoldingsTimeline",
    "Metric",
    "PairStats",
    "Selection",
    "SessionConfig",
    "StackedSeries",
    "TransactionRecord",
    "build_dataset",
    "build_disk_layout",
    "build_distance_matrix",
    "build_flow_detail",
    "build_stacked_series",
    "cluster_addresses",
    "compute_background_bins",
    "compute_pair_stats",
    "detect_constant_spans",
    "detect_groups",
    "disk_layout_to_dict",
    "export_svg",
    "filter_pairs",
    "flow_layout_to_dict",
    "generate_report",
    "optimal_leaf_order",
    "parse_transactions",
    "replay_holdings",
    "resolve_circular_brush",
    "resolve_time_brush",
    "seriate",
    "stacked_series_to_dict",
]
