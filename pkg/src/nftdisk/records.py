"""Transaction record model and the CSV/JSON parsers.

A transaction is the six-field event exported from a block explorer:
timestamp, token id, value (in ether), status, from address, to address.
Status is never part of the input; it is derived from the value (zero value
means a transfer, positive value means a sale). Origin is derived from the
sender: the all-zero address mints.

Values are kept as integer wei so that price aggregates are exact and
reproducible; ether has 18 decimal places and anything finer is rejected.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from enum import Enum
from typing import IO, Iterable

from .errors import BadAddress, MalformedRow, NegativeValue

ZERO_ADDRESS = "0x" + "0" * 40
WEI_PER_ETHER = 10**18

CSV_HEADER = ["timestamp", "token_id", "value", "from_address", "to_address"]

_ADDRESS_RE = re.compile(r"^0x[0-9a-fA-F]{40}$")


class Status(str, Enum):
    SALE = "sale"
    TRANSFER = "transfer"


class Origin(str, Enum):
    MINT = "mint"
    NORMAL = "normal"


def normalize_address(raw: str, line: int = 0) -> str:
    """Validate and lowercase a 20-byte hex account identifier."""
    addr = raw.strip()
    if not _ADDRESS_RE.match(addr):
        raise BadAddress(line, f"bad address {raw!r}")
    return addr.lower()


def parse_ether(raw: str, line: int = 0) -> int:
    """Parse a decimal ether amount into integer wei."""
    try:
        value = Decimal(raw.strip())
    except InvalidOperation:
        raise MalformedRow(line, f"unparsable value {raw!r}") from None
    if not value.is_finite():
        raise MalformedRow(line, f"non-finite value {raw!r}")
    if value < 0:
        raise NegativeValue(line, f"negative value {raw!r}")
    wei = value * WEI_PER_ETHER
    if wei != wei.to_integral_value():
        raise MalformedRow(line, f"value {raw!r} finer than 1 wei")
    return int(wei)


def format_ether(wei: int) -> str:
    """Canonical decimal string for a wei amount ("1.5", "0", "0.000021")."""
    if wei == 0:
        return "0"
    sign = "-" if wei < 0 else ""
    wei = abs(wei)
    whole, frac = divmod(wei, WEI_PER_ETHER)
    if frac == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:018d}".rstrip("0")


@dataclass(frozen=True, slots=True)
class TransactionRecord:
    """One on-chain NFT sale or transfer event."""

    timestamp: int
    token_id: int
    value_wei: int
    status: Status
    from_address: str
    to_address: str
    origin: Origin

    @property
    def value_ether(self) -> Decimal:
        return Decimal(self.value_wei) / WEI_PER_ETHER

    @staticmethod
    def from_fields(
        timestamp: int,
        token_id: int,
        value_wei: int,
        from_address: str,
        to_address: str,
    ) -> "TransactionRecord":
        """Build a record, deriving status and origin from the raw fields."""
        status = Status.TRANSFER if value_wei == 0 else Status.SALE
        origin = Origin.MINT if from_address == ZERO_ADDRESS else Origin.NORMAL
        return TransactionRecord(
            timestamp=timestamp,
            token_id=token_id,
            value_wei=value_wei,
            status=status,
            from_address=from_address,
            to_address=to_address,
            origin=origin,
        )


def _record_from_row(
    line: int, timestamp: str, token_id: str, value: str, from_addr: str, to_addr: str
) -> TransactionRecord:
    try:
        ts = int(str(timestamp).strip())
    except ValueError:
        raise MalformedRow(line, f"unparsable timestamp {timestamp!r}") from None
    if ts < 0:
        raise MalformedRow(line, f"negative timestamp {timestamp!r}")
    try:
        tid = int(str(token_id).strip())
    except ValueError:
        raise MalformedRow(line, f"unparsable token_id {token_id!r}") from None
    if tid < 0:
        raise MalformedRow(line, f"negative token_id {token_id!r}")
    wei = parse_ether(str(value), line)
    src = normalize_address(str(from_addr), line)
    dst = normalize_address(str(to_addr), line)
    if src == dst:
        raise MalformedRow(line, f"self transaction on address {src}")
    return TransactionRecord.from_fields(ts, tid, wei, src, dst)


def parse_transactions(
    source: bytes | str | IO[bytes] | IO[str],
    format: str = "csv",
    strict: bool = True,
    errors: list[MalformedRow] | None = None,
) -> list[TransactionRecord]:
    """Parse a CSV or JSON export into transaction records, in input order.

    In strict mode the first bad row aborts the parse. In lenient mode
    (``strict=False``) bad rows are skipped; pass ``errors`` to collect them.
    """
    text = _as_text(source)
    if format == "csv":
        rows = _iter_csv_rows(text)
    elif format == "json":
        rows = _iter_json_rows(text)
    else:
        raise ValueError(f"unknown format {format!r}")

    records: list[TransactionRecord] = []
    for line, fields in rows:
        try:
            records.append(_record_from_row(line, *fields))
        except MalformedRow as err:
            if strict:
                raise
            if errors is not None:
                errors.append(err)
    return records


def _as_text(source: bytes | str | IO[bytes] | IO[str]) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data


def _iter_csv_rows(text: str):
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedRow(0, "missing header row") from None
    if [h.strip() for h in header] != CSV_HEADER:
        raise MalformedRow(1, f"bad header {header!r}, expected {CSV_HEADER!r}")
    for line, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 5:
            raise MalformedRow(line, f"expected 5 columns, got {len(row)}")
        yield line, tuple(row)


def _iter_json_rows(text: str):
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as err:
        raise MalformedRow(err.lineno, f"invalid JSON: {err.msg}") from None
    if not isinstance(payload, list):
        raise MalformedRow(0, "top-level JSON value must be an array")
    for i, obj in enumerate(payload):
        if not isinstance(obj, dict):
            raise MalformedRow(i, "array element is not an object")
        try:
            fields = tuple(obj[k] for k in CSV_HEADER)
        except KeyError as err:
            raise MalformedRow(i, f"missing key {err.args[0]!r}") from None
        yield i, fields


def write_canonical_csv(records: Iterable[TransactionRecord], fp: IO[str]) -> int:
    """Write records in the canonical CSV column order. Returns row count."""
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    n = 0
    for rec in records:
        writer.writerow(
            [
                rec.timestamp,
                rec.token_id,
                format_ether(rec.value_wei),
                rec.from_address,
                rec.to_address,
            ]
        )
        n += 1
    return n


def records_to_csv_bytes(records: Iterable[TransactionRecord]) -> bytes:
    buf = io.StringIO()
    write_canonical_csv(records, buf)
    return buf.getvalue().encode("utf-8")
