"""Synthetic collection generators with known ground truth.

Used by the test suite and handy for demos. All generators are seeded and
produce ownership-consistent histories: every transaction moves a token
from its actual current holder.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .dataset import CollectionDataset, build_dataset
from .records import ZERO_ADDRESS, TransactionRecord, WEI_PER_ETHER


def _addr(i: int) -> str:
    return "0x" + format(i + 1, "040x")


def _hierholzer(n_nodes: int, multiplicity: int) -> list[tuple[int, int]]:
    """Closed walk over the complete graph on n_nodes traversing every edge
    exactly ``multiplicity`` times. Requires even degree at every node."""
    remaining = {
        (i, j): multiplicity for i in range(n_nodes) for j in range(i + 1, n_nodes)
    }

    def take_edge(u: int) -> int | None:
        for v in range(n_nodes):
            if v == u:
                continue
            key = (min(u, v), max(u, v))
            if remaining[key] > 0:
                remaining[key] -= 1
                return v
        return None

    circuit = [0]
    while True:
        # Find a vertex on the circuit with unused edges and splice a loop in.
        at = next(
            (
                k
                for k, u in enumerate(circuit)
                if any(
                    remaining[(min(u, v), max(u, v))] > 0
                    for v in range(n_nodes)
                    if v != u
                )
            ),
            None,
        )
        if at is None:
            break
        u = circuit[at]
        loop = [u]
        v = take_edge(u)
        while v is not None and v != u:
            loop.append(v)
            v = take_edge(v)
        if v == u:
            loop.append(u)
        circuit = circuit[:at] + loop + circuit[at + 1 :]
    return [(circuit[i], circuit[i + 1]) for i in range(len(circuit) - 1)]


@dataclass(frozen=True)
class PlantedRing:
    dataset: CollectionDataset
    ring_addresses: tuple[str, ...]
    ring_tokens: tuple[int, ...]
    honest_heavy_pairs: tuple[tuple[str, str], ...]


def planted_ring_collection(
    seed: int = 7,
    ring_size: int = 4,
    ring_tokens: int = 2,
    trades_per_pair: int = 50,
    background_tx: int = 5000,
    background_addresses: int = 400,
    honest_heavy_pairs: int = 6,
    honest_pair_tx: int = 30,
    collection_id: str = "planted-ring",
) -> PlantedRing:
    """A wash-trading ring hidden in honest background traffic.

    Every unordered pair among the ring addresses trades the same small
    token set exactly ``trades_per_pair`` times, so each pair scores
    1 - ring_tokens/trades_per_pair. Background pairs never repeat a token,
    so they all score zero; a few heavy honest pairs survive the address
    filter to give the seriation something to separate.
    """
    rng = random.Random(seed)
    records: list[TransactionRecord] = []
    ts = 1_600_000_000
    next_token = 0

    def step() -> int:
        nonlocal ts
        ts += rng.randint(30, 900)
        return ts

    def price_wei() -> int:
        return rng.randint(1, 400) * WEI_PER_ETHER // 10

    def mint(token: int, to: str) -> None:
        records.append(
            TransactionRecord.from_fields(step(), token, 0, ZERO_ADDRESS, to)
        )

    def sale(token: int, src: str, dst: str) -> None:
        records.append(
            TransactionRecord.from_fields(step(), token, price_wei(), src, dst)
        )

    ring = tuple(_addr(i) for i in range(ring_size))
    background = [_addr(1000 + i) for i in range(background_addresses)]
    honest = [_addr(5000 + i) for i in range(2 * honest_heavy_pairs)]

    # Ring: split each pair's trade count across the tokens so every token
    # touches every pair, then walk Euler circuits so ownership stays
    # consistent. Each split must leave every ring vertex with even degree.
    counts = []
    spare = trades_per_pair
    for k in range(ring_tokens):
        share = spare // (ring_tokens - k)
        if share % 2 and k < ring_tokens - 1:
            share += 1
        counts.append(share)
        spare -= share
    assert sum(counts) == trades_per_pair and all(c > 0 for c in counts)
    assert all((ring_size - 1) * c % 2 == 0 for c in counts), (
        "trade split does not close into Euler circuits; "
        "adjust trades_per_pair or ring_size"
    )

    walks = [_hierholzer(ring_size, c) for c in counts]
    token_ids = []
    for walk in walks:
        token = next_token
        next_token += 1
        token_ids.append(token)
        mint(token, ring[walk[0][0]])
    # Interleave the walks so the tokens trade during the same period.
    cursors = [0] * len(walks)
    while any(cursors[i] < len(walks[i]) for i in range(len(walks))):
        for i, walk in enumerate(walks):
            if cursors[i] < len(walk):
                u, v = walk[cursors[i]]
                sale(token_ids[i], ring[u], ring[v])
                cursors[i] += 1

    # Heavy honest pairs: many transactions, each with a fresh token.
    honest_pairs = []
    for k in range(honest_heavy_pairs):
        a, b = honest[2 * k], honest[2 * k + 1]
        honest_pairs.append((a, b))
        for _ in range(honest_pair_tx):
            token = next_token
            next_token += 1
            mint(token, a)
            sale(token, a, b)

    # Background: each token walks a short simple path, so no pair ever
    # repeats a token.
    emitted = 0
    while emitted < background_tx:
        hops = rng.randint(1, 4)
        path = rng.sample(background, hops + 1)
        token = next_token
        next_token += 1
        mint(token, path[0])
        emitted += 1
        for src, dst in zip(path, path[1:]):
            if emitted >= background_tx:
                break
            if rng.random() < 0.8:
                sale(token, src, dst)
            else:
                records.append(
                    TransactionRecord.from_fields(step(), token, 0, src, dst)
                )
            emitted += 1

    return PlantedRing(
        dataset=build_dataset(records, collection_id),
        ring_addresses=ring,
        ring_tokens=tuple(token_ids),
        honest_heavy_pairs=tuple(honest_pairs),
    )


def random_records(
    n_tx: int,
    n_addresses: int,
    seed: int = 0,
    n_tokens: int | None = None,
    start_ts: int = 1_650_000_000,
    transfer_share: float = 0.3,
) -> list[TransactionRecord]:
    """Ownership-consistent random log: mints happen on first touch, then
    each token moves from its current holder to a random other address."""
    rng = random.Random(seed)
    if n_tokens is None:
        n_tokens = max(1, n_tx // 4)
    addresses = [_addr(i) for i in range(n_addresses)]
    holder: dict[int, str] = {}
    records: list[TransactionRecord] = []
    ts = start_ts
    for _ in range(n_tx):
        ts += rng.randint(1, 600)
        token = rng.randrange(n_tokens)
        if token not in holder:
            dst = rng.choice(addresses)
            records.append(
                TransactionRecord.from_fields(ts, token, 0, ZERO_ADDRESS, dst)
            )
            holder[token] = dst
            continue
        src = holder[token]
        dst = rng.choice([a for a in addresses if a != src])
        wei = 0 if rng.random() < transfer_share else rng.randint(1, 10**6) * 10**12
        records.append(TransactionRecord.from_fields(ts, token, wei, src, dst))
        holder[token] = dst
    return records


def random_collection(
    n_tx: int, n_addresses: int, seed: int = 0, collection_id: str = "random"
) -> CollectionDataset:
    return build_dataset(random_records(n_tx, n_addresses, seed), collection_id)
