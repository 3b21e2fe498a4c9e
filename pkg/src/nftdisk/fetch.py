"""Block-explorer fetch client.

Targets the common explorer "token transfer events" endpoint shape
(etherscan-style): GET {base_url}?module=account&action=tokennfttx&
contractaddress=...&page=N&offset=PAGE_SIZE&sort=asc&apikey=KEY returning
{"status": "1", "message": "OK", "result": [{"timeStamp", "tokenID",
"value", "from", "to"}, ...]}. An empty result page ends pagination.

Rows are appended to a canonical CSV as pages complete, and a cursor
sidecar records the next page, so an interrupted fetch resumes instead of
re-downloading. The API key comes from the NFTDISK_EXPLORER_KEY
environment variable.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass
from pathlib import Path

import requests

from .errors import AuthFailed, FetchError, PartialFetch, RateLimited
from .records import CSV_HEADER, format_ether, normalize_address, parse_ether

ENV_KEY = "NFTDISK_EXPLORER_KEY"
DEFAULT_PAGE_SIZE = 1000


@dataclass(frozen=True)
class FetchResult:
    csv_path: Path
    rows: int
    pages: int


def _cursor_path(out_path: Path) -> Path:
    return out_path.with_suffix(".cursor.json")


def _load_cursor(out_path: Path, contract: str) -> tuple[int, int]:
    """(next page, rows already written); (1, 0) when starting fresh."""
    path = _cursor_path(out_path)
    if not path.exists():
        return 1, 0
    cursor = json.loads(path.read_text())
    if cursor.get("contract") != contract:
        return 1, 0
    return int(cursor.get("next_page", 1)), int(cursor.get("rows_written", 0))


def _save_cursor(out_path: Path, contract: str, next_page: int, rows: int) -> None:
    _cursor_path(out_path).write_text(
        json.dumps(
            {"contract": contract, "next_page": next_page, "rows_written": rows}
        )
    )


def _event_to_row(event: dict) -> list[str]:
    try:
        ts = int(event["timeStamp"])
        token = int(event["tokenID"])
        wei = parse_ether(str(event.get("value", "0") or "0"))
        src = normalize_address(event["from"])
        dst = normalize_address(event["to"])
    except (KeyError, ValueError) as err:
        raise FetchError(f"malformed explorer event {event!r}: {err}") from err
    return [str(ts), str(token), format_ether(wei), src, dst]


def fetch_transactions(
    contract: str,
    base_url: str,
    out_path: Path,
    api_key: str | None = None,
    session: requests.Session | None = None,
    page_size: int = DEFAULT_PAGE_SIZE,
) -> FetchResult:
    """Download all token transfer events of a contract into a canonical CSV.

    Re-running after an interruption resumes from the persisted cursor.
    Raises AuthFailed, RateLimited (with retry metadata), or PartialFetch
    (cursor persisted) on failure.
    """
    key = api_key if api_key is not None else os.environ.get(ENV_KEY, "")
    http = session or requests.Session()
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)

    page, rows_written = _load_cursor(out_path, contract)
    fresh = page == 1 and rows_written == 0
    if fresh:
        with open(out_path, "w", newline="") as fp:
            csv.writer(fp, lineterminator="\n").writerow(CSV_HEADER)

    pages_done = 0
    while True:
        try:
            resp = http.get(
                base_url,
                params={
                    "module": "account",
                    "action": "tokennfttx",
                    "contractaddress": contract,
                    "page": page,
                    "offset": page_size,
                    "sort": "asc",
                    "apikey": key,
                },
                timeout=30,
            )
        except requests.RequestException as err:
            _save_cursor(out_path, contract, page, rows_written)
            raise PartialFetch(
                f"network error on page {page}: {err}", pages_done, rows_written
            ) from err

        if resp.status_code == 429:
            _save_cursor(out_path, contract, page, rows_written)
            retry = resp.headers.get("Retry-After")
            raise RateLimited(
                f"explorer rate limited on page {page}",
                retry_after=float(retry) if retry else None,
            )
        if resp.status_code in (401, 403):
            raise AuthFailed(f"explorer rejected credentials ({resp.status_code})")
        if resp.status_code != 200:
            _save_cursor(out_path, contract, page, rows_written)
            raise PartialFetch(
                f"HTTP {resp.status_code} on page {page}", pages_done, rows_written
            )

        payload = resp.json()
        status = str(payload.get("status", ""))
        message = str(payload.get("message", ""))
        result = payload.get("result")
        if status == "0" and "rate limit" in message.lower():
            _save_cursor(out_path, contract, page, rows_written)
            raise RateLimited(f"explorer rate limited: {message}")
        if status == "0" and isinstance(result, str):
            if "api key" in result.lower() or "key" in message.lower():
                raise AuthFailed(f"explorer rejected credentials: {result}")
            _save_cursor(out_path, contract, page, rows_written)
            raise FetchError(f"explorer error: {result}")
        if not isinstance(result, list):
            result = []

        if not result:
            break
        with open(out_path, "a", newline="") as fp:
            writer = csv.writer(fp, lineterminator="\n")
            for event in result:
                writer.writerow(_event_to_row(event))
                rows_written += 1
        page += 1
        pages_done += 1
        _save_cursor(out_path, contract, page, rows_written)
        if len(result) < page_size:
            break

    cursor = _cursor_path(out_path)
    if cursor.exists():
        cursor.unlink()
    return FetchResult(csv_path=out_path, rows=rows_written, pages=pages_done)
