"""Command line interface: ingest, fetch, report, export-svg, serve."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .analytics import Metric, detect_groups, filter_pairs, compute_pair_stats
from .analytics import replay_holdings
from .dataset import build_dataset
from .disklayout import DEFAULT_MIN_TX, DiskConfig, build_disk_layout
from .errors import MalformedRow, NFTDiskError
from .flowlayout import build_flow_detail
from .records import parse_transactions
from .report import SessionConfig, generate_report, report_to_dict, report_to_text
from .server import parse_time
from .store import default_data_dir, load_dataset, save_dataset
from .svg import export_svg


def _data_dir_option(func):
    return click.option(
        "--data-dir",
        type=click.Path(path_type=Path),
        default=None,
        help="Dataset cache directory (default: $NFTDISK_DATA_DIR or ./data).",
    )(func)


def _resolve_dir(data_dir: Path | None) -> Path:
    return data_dir if data_dir is not None else default_data_dir()


@click.group()
def main():
    """Wash-trading analytics for NFT transaction logs."""


@main.command()
@click.argument("file", type=click.Path(exists=True, path_type=Path))
@click.option("--collection", required=True, help="Collection id to store under.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--strict", is_flag=True, help="Abort on the first bad row.")
@_data_dir_option
def ingest(file: Path, collection: str, fmt: str, strict: bool, data_dir):
    """Parse an exported transaction FILE and cache it as a collection."""
    errors: list[MalformedRow] = []
    records = parse_transactions(
        file.read_bytes(), format=fmt, strict=strict, errors=errors
    )
    for err in errors:
        click.echo(f"warning: skipped {err}", err=True)
    dataset = build_dataset(records, collection)
    path = save_dataset(dataset, _resolve_dir(data_dir))
    click.echo(
        f"ingested {len(dataset)} transactions, "
        f"{len(dataset.addresses)} addresses, {len(dataset.tokens)} tokens "
        f"-> {path}"
    )


@main.command()
@click.argument("contract")
@click.option("--base-url", required=True, help="Explorer API endpoint.")
@click.option(
    "--out",
    type=click.Path(path_type=Path),
    default=None,
    help="Output CSV (default: <data-dir>/<contract>.csv).",
)
@_data_dir_option
def fetch(contract: str, base_url: str, out, data_dir):
    """Download token transfer events for CONTRACT into a canonical CSV.

    Credentials come from the NFTDISK_EXPLORER_KEY environment variable.
    """
    from .fetch import fetch_transactions

    out_path = out if out is not None else _resolve_dir(data_dir) / f"{contract}.csv"
    result = fetch_transactions(contract, base_url, out_path)
    click.echo(f"fetched {result.rows} rows over {result.pages} pages -> {result.csv_path}")


@main.command()
@click.argument("collection")
@click.option("--min-tx", type=int, default=DEFAULT_MIN_TX, show_default=True)
@click.option("--from", "from_", default=None, help="Range start (unix or ISO).")
@click.option("--to", default=None, help="Range end (unix or ISO).")
@click.option("--top", type=int, default=20, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of text.")
@_data_dir_option
def report(collection, min_tx, from_, to, top, as_json, data_dir):
    """Rank suspicious pairs and groups for a cached COLLECTION."""
    dataset = load_dataset(collection, _resolve_dir(data_dir))
    t0, t1 = dataset.time_extent
    config = SessionConfig(
        time_range=(parse_time(from_, t0), parse_time(to, t1)), min_tx=min_tx
    )
    doc = generate_report(dataset, config, top_k=top)
    if as_json:
        import json as _json

        click.echo(_json.dumps(report_to_dict(doc), indent=2))
    else:
        click.echo(report_to_text(doc), nl=False)


@main.command("export-svg")
@click.argument("collection")
@click.option("--view", type=click.Choice(["disk", "flow"]), required=True)
@click.option(
    "--out",
    type=click.Path(path_type=Path),
    default=None,
    help="Output file (default: <collection>-<view>.svg).",
)
@click.option("--min-tx", type=int, default=DEFAULT_MIN_TX, show_default=True)
@click.option("--from", "from_", default=None, help="Range start (unix or ISO).")
@click.option("--to", default=None, help="Range end (unix or ISO).")
@click.option(
    "--metric",
    type=click.Choice([m.value for m in Metric]),
    default=Metric.AVERAGE_PRICE.value,
    show_default=True,
)
@click.option(
    "--addresses",
    default=None,
    help="Comma-separated hex addresses for the flow view "
    "(default: top colluding group).",
)
@click.option("--event-lo", type=int, default=0, show_default=True)
@click.option("--event-hi", type=int, default=None)
@_data_dir_option
def export_svg_cmd(
    collection, view, out, min_tx, from_, to, metric, addresses, event_lo, event_hi, data_dir
):
    """Render the disk or flow view of a cached COLLECTION to SVG."""
    dataset = load_dataset(collection, _resolve_dir(data_dir))
    t0, t1 = dataset.time_extent
    time_range = (parse_time(from_, t0), parse_time(to, t1))

    if view == "disk":
        config = DiskConfig(
            time_range=time_range, metric=Metric(metric), min_tx=min_tx
        )
        payload = export_svg(build_disk_layout(dataset, config))
    else:
        if addresses:
            group = [dataset.index_of(a.strip()) for a in addresses.split(",") if a.strip()]
        else:
            stats = compute_pair_stats(dataset, time_range)
            kept, _ = filter_pairs(stats, min_tx)
            groups = detect_groups(kept)
            if not groups:
                raise click.ClickException(
                    "no colluding group found; pass --addresses"
                )
            group = list(groups[0])
        timeline = replay_holdings(dataset, group, time_range)
        if not timeline.events:
            raise click.ClickException("no events for this group in the range")
        hi = event_hi if event_hi is not None else len(timeline.events) - 1
        payload = export_svg(build_flow_detail(timeline, (event_lo, hi), group))

    out_path = out if out is not None else Path(f"{collection}-{view}.svg")
    out_path.write_bytes(payload)
    click.echo(f"wrote {out_path} ({len(payload)} bytes)")


@main.command()
@click.option("--port", type=int, default=None, help="Default: $NFTDISK_PORT or 8000.")
@click.option(
    "--ui-dir",
    type=click.Path(path_type=Path),
    default=None,
    help="Serve the browser client from this directory at /ui "
    "(default: $NFTDISK_UI_DIR if set).",
)
@_data_dir_option
def serve(port, ui_dir, data_dir):
    """Run the HTTP API over the cached collections."""
    import os

    from .server import serve as run_server

    resolved_port = port if port is not None else int(os.environ.get("NFTDISK_PORT", "8000"))
    if ui_dir is None and os.environ.get("NFTDISK_UI_DIR"):
        ui_dir = Path(os.environ["NFTDISK_UI_DIR"])
    try:
        run_server(resolved_port, _resolve_dir(data_dir), ui_dir)
    except OSError as err:
        raise click.ClickException(f"cannot bind port {resolved_port}: {err}")


def entrypoint():  # pragma: no cover - console script shim
    try:
        main()
    except NFTDiskError as err:
        click.echo(f"error [{err.code}]: {err}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    entrypoint()
