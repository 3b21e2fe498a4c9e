"""Immutable, indexed, time-sorted transaction store for one collection.

Addresses and token ids are interned to dense integer codes in first
appearance order, so downstream analytics can work on numpy arrays instead
of hex strings. A built dataset is never mutated; all fields should be
treated as read-only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import EmptyInput
from .records import TransactionRecord, records_to_csv_bytes


@dataclass(frozen=True)
class CollectionDataset:
    collection_id: str
    records: tuple[TransactionRecord, ...]
    addresses: tuple[str, ...]                   # dense index -> hex address
    address_index: Mapping[str, int]             # hex address -> dense index
    tokens: tuple[int, ...]                      # dense code -> token_id
    token_index: Mapping[int, tuple[int, ...]]   # token_id -> chronological tx indices
    time_extent: tuple[int, int]
    # Columnar views over `records`, aligned by transaction index.
    timestamps: np.ndarray = field(repr=False)   # int64
    from_idx: np.ndarray = field(repr=False)     # int32
    to_idx: np.ndarray = field(repr=False)       # int32
    token_code: np.ndarray = field(repr=False)   # int32
    is_sale: np.ndarray = field(repr=False)      # bool

    def __len__(self) -> int:
        return len(self.records)

    def index_of(self, address: str) -> int:
        return self.address_index[address.lower()]

    def in_range(self, t0: int, t1: int) -> np.ndarray:
        """Transaction indices with timestamp inside [t0, t1], in log order."""
        mask = (self.timestamps >= t0) & (self.timestamps <= t1)
        return np.flatnonzero(mask)

    def to_canonical_csv(self) -> bytes:
        return records_to_csv_bytes(self.records)


def build_dataset(
    records: Sequence[TransactionRecord] | Iterable[TransactionRecord],
    collection_id: str,
) -> CollectionDataset:
    """Sort, intern, and index records into an immutable dataset.

    Sorting is stable: ties in timestamp keep input order, preserving the
    exporter's intra-block ordering.
    """
    recs = tuple(sorted(records, key=lambda r: r.timestamp))
    if not recs:
        raise EmptyInput("no transactions")

    address_index: dict[str, int] = {}
    token_codes: dict[int, int] = {}
    token_index: dict[int, list[int]] = {}

    n = len(recs)
    timestamps = np.empty(n, dtype=np.int64)
    from_idx = np.empty(n, dtype=np.int32)
    to_idx = np.empty(n, dtype=np.int32)
    token_code = np.empty(n, dtype=np.int32)
    is_sale = np.empty(n, dtype=bool)

    for i, rec in enumerate(recs):
        timestamps[i] = rec.timestamp
        from_idx[i] = address_index.setdefault(rec.from_address, len(address_index))
        to_idx[i] = address_index.setdefault(rec.to_address, len(address_index))
        token_code[i] = token_codes.setdefault(rec.token_id, len(token_codes))
        token_index.setdefault(rec.token_id, []).append(i)
        is_sale[i] = rec.value_wei > 0

    for arr in (timestamps, from_idx, to_idx, token_code, is_sale):
        arr.setflags(write=False)

    return CollectionDataset(
        collection_id=collection_id,
        records=recs,
        addresses=tuple(address_index),
        address_index=address_index,
        tokens=tuple(token_codes),
        token_index={k: tuple(v) for k, v in token_index.items()},
        time_extent=(int(timestamps[0]), int(timestamps[-1])),
        timestamps=timestamps,
        from_idx=from_idx,
        to_idx=to_idx,
        token_code=token_code,
        is_sale=is_sale,
    )
