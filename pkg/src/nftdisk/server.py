"""HTTP service exposing layouts, selections, and reports over loaded
collections.

The server is stateless per request: clients round-trip the session
parameters (time range, metric, address filter) on every call, so many
concurrent readers can share the immutable datasets without sessions.
"""

from __future__ import annotations

import threading
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .analytics import Metric, replay_holdings
from .dataset import CollectionDataset
from .disklayout import (
    DEFAULT_MIN_TX,
    CircularBrush,
    DiskConfig,
    build_disk_layout,
    disk_layout_to_dict,
    resolve_circular_brush,
)
from .errors import (
    DataDirMissing,
    EmptyBrush,
    GroupEmpty,
    NFTDiskError,
    OutOfRange,
    UnknownCollection,
)
from .flowlayout import (
    build_flow_detail,
    build_stacked_series,
    flow_layout_to_dict,
    stacked_series_to_dict,
)
from .store import list_collections, load_dataset

_STATUS = {
    "UnknownCollection": 404,
    "EmptyBrush": 422,
    "GroupEmpty": 422,
    "OutOfRange": 422,
    "DataDirMissing": 503,
}


def parse_time(value: str | None, default: int) -> int:
    """Accept integer unix seconds or an ISO date/datetime (UTC)."""
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError:
        pass
    try:
        dt = datetime.fromisoformat(value)
    except ValueError:
        raise OutOfRange(f"unparsable time {value!r}") from None
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return int(dt.timestamp())


class SelectionBody(BaseModel):
    angle_start: float
    angle_end: float
    r_lo: float
    r_hi: float


class _DatasetCache:
    def __init__(self, data_dir: Path):
        self.data_dir = data_dir
        self._lock = threading.Lock()
        self._loaded: dict[str, CollectionDataset] = {}

    def get(self, collection_id: str) -> CollectionDataset:
        with self._lock:
            if collection_id not in self._loaded:
                self._loaded[collection_id] = load_dataset(
                    collection_id, self.data_dir
                )
            return self._loaded[collection_id]


def create_app(data_dir: Path, ui_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="nftdisk", version="0.1.0")
    cache = _DatasetCache(data_dir)

    if ui_dir is not None and ui_dir.exists():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    @app.exception_handler(NFTDiskError)
    async def _nftdisk_error(request: Request, exc: NFTDiskError):
        return JSONResponse(
            status_code=_STATUS.get(exc.code, 400),
            content={"code": exc.code, "message": str(exc)},
        )

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(
            status_code=400, content={"code": "BadRequest", "message": str(exc)}
        )

    def disk_config(
        dataset: CollectionDataset,
        from_: str | None,
        to: str | None,
        min_tx: int,
        metric: str,
    ) -> DiskConfig:
        t0, t1 = dataset.time_extent
        return DiskConfig(
            time_range=(parse_time(from_, t0), parse_time(to, t1)),
            metric=Metric(metric),
            min_tx=min_tx,
        )

    def resolve_addresses(dataset: CollectionDataset, addresses: str) -> list[int]:
        out = []
        for part in addresses.split(","):
            part = part.strip().lower()
            if not part:
                continue
            if part not in dataset.address_index:
                raise ValueError(f"address {part} not in collection")
            out.append(dataset.address_index[part])
        if not out:
            raise GroupEmpty("addresses parameter is empty")
        return out

    @app.get("/collections")
    def collections():
        try:
            return list_collections(data_dir)
        except DataDirMissing:
            return []

    @app.get("/collections/{collection_id}/disk")
    def disk(
        collection_id: str,
        from_: str | None = Query(default=None, alias="from"),
        to: str | None = None,
        min_tx: int = DEFAULT_MIN_TX,
        metric: str = Metric.AVERAGE_PRICE.value,
    ):
        dataset = cache.get(collection_id)
        config = disk_config(dataset, from_, to, min_tx, metric)
        return disk_layout_to_dict(build_disk_layout(dataset, config))

    @app.post("/collections/{collection_id}/selection")
    def selection(
        collection_id: str,
        body: SelectionBody,
        from_: str | None = Query(default=None, alias="from"),
        to: str | None = None,
        min_tx: int = DEFAULT_MIN_TX,
        metric: str = Metric.AVERAGE_PRICE.value,
    ):
        dataset = cache.get(collection_id)
        config = disk_config(dataset, from_, to, min_tx, metric)
        layout = build_disk_layout(dataset, config)
        sel = resolve_circular_brush(
            layout,
            CircularBrush(
                angle_start=body.angle_start,
                angle_end=body.angle_end,
                r_lo=body.r_lo,
                r_hi=body.r_hi,
            ),
        )
        return {
            "addresses": [dataset.addresses[a] for a in sel.addresses],
            "indices": list(sel.addresses),
            "time_range": list(sel.time_range),
        }

    @app.get("/collections/{collection_id}/flow/group")
    def flow_group(
        collection_id: str,
        addresses: str,
        from_: str | None = Query(default=None, alias="from"),
        to: str | None = None,
    ):
        dataset = cache.get(collection_id)
        group = resolve_addresses(dataset, addresses)
        t0, t1 = dataset.time_extent
        window = (parse_time(from_, t0), parse_time(to, t1))
        timeline = replay_holdings(dataset, group, window)
        series = build_stacked_series(timeline, group)
        return stacked_series_to_dict(series, dataset.addresses)

    @app.get("/collections/{collection_id}/flow/detail")
    def flow_detail(
        collection_id: str,
        addresses: str,
        from_: str | None = Query(default=None, alias="from"),
        to: str | None = None,
        event_lo: int = 0,
        event_hi: int | None = None,
    ):
        dataset = cache.get(collection_id)
        group = resolve_addresses(dataset, addresses)
        t0, t1 = dataset.time_extent
        window = (parse_time(from_, t0), parse_time(to, t1))
        timeline = replay_holdings(dataset, group, window)
        if not timeline.events:
            raise EmptyBrush("no events for this group in the window")
        hi = event_hi if event_hi is not None else len(timeline.events) - 1
        flow = build_flow_detail(timeline, (event_lo, hi), group)
        return flow_layout_to_dict(flow, dataset.addresses)

    @app.get("/collections/{collection_id}/report")
    def report(
        collection_id: str,
        from_: str | None = Query(default=None, alias="from"),
        to: str | None = None,
        min_tx: int = DEFAULT_MIN_TX,
        top: int = 20,
    ):
        from .report import SessionConfig, generate_report, report_to_dict

        dataset = cache.get(collection_id)
        t0, t1 = dataset.time_extent
        config = SessionConfig(
            time_range=(parse_time(from_, t0), parse_time(to, t1)), min_tx=min_tx
        )
        return report_to_dict(generate_report(dataset, config, top_k=top))

    return app


def serve(port: int, data_dir: Path, ui_dir: Path | None = None) -> None:
    """Run the HTTP service; blocks until interrupted."""
    import uvicorn

    if not data_dir.exists():
        raise DataDirMissing(f"data directory {data_dir} does not exist")
    uvicorn.run(create_app(data_dir, ui_dir), host="127.0.0.1", port=port)
