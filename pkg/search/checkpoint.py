"""
checkpoint.py - Little-endian binary checkpoints of a paused or finished search

Layout (all little-endian):

    header  <4sHBHHBHB8sBQdI
            magic b"GRSC", format version, k, n, m, mode (1 = gallai, 0 = ramsey),
            host order N, flags (bit 0: pruning on), 8-byte problem hash,
            status (0 running, 1 exhausted, 2 avoider found), nodes explored,
            wall time in seconds, record count
    record  <H vertex count v, then v(v-1)/2 colour bytes in vertex-extension order

A running checkpoint holds the DFS stack bottom to top; a finished one holds
nothing (exhausted) or the avoider (one record).
"""
import hashlib
import logging
import os
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Tuple

import orjson

from core.errors import CheckpointMismatchError
from search.symmetry import vertices_in

logger = logging.getLogger(__name__)

MAGIC = b"GRSC"
VERSION = 1
HEADER = struct.Struct("<4sHBHHBHB8sBQdI")
RECORD_LENGTH = struct.Struct("<H")

STATUS_RUNNING = 0
STATUS_EXHAUSTED = 1
STATUS_AVOIDER = 2


HEADER_LIMITS = (("k", 0xFF), ("n", 0xFFFF), ("m", 0xFFFF), ("order", 0xFFFF))


def check_header_fields(k: int, n: int, m: int, order: int) -> None:
    """Raise CheckpointMismatchError when a problem field overflows its header slot"""
    for (name, limit), value in zip(HEADER_LIMITS, (k, n, m, order)):
        if not 0 <= value <= limit:
            raise CheckpointMismatchError(f"{name}={value} does not fit a checkpoint header (0..{limit})")


def problem_hash(record: Dict) -> bytes:
    """8-byte digest of the canonical JSON form of a search problem"""
    return hashlib.blake2b(orjson.dumps(record, option=orjson.OPT_SORT_KEYS), digest_size=8).digest()


@dataclass
class Checkpoint:
    k: int
    n: int
    m: int
    gallai: bool
    order: int
    prune: bool
    digest: bytes
    status: int
    nodes_explored: int
    wall_time: float
    records: List[Tuple[int, ...]]


def write_checkpoint(path: str, cp: Checkpoint) -> None:
    """Write atomically: a sibling temp file is renamed over the target"""
    check_header_fields(cp.k, cp.n, cp.m, cp.order)
    chunks = [HEADER.pack(MAGIC, VERSION, cp.k, cp.n, cp.m, int(cp.gallai), cp.order, int(cp.prune),
                          cp.digest, cp.status, cp.nodes_explored, cp.wall_time, len(cp.records))]
    for flat in cp.records:
        v = vertices_in(len(flat))
        chunks.append(RECORD_LENGTH.pack(v))
        chunks.append(bytes(flat))
    target = Path(path)
    tmp = target.with_name(target.name + ".tmp")
    tmp.write_bytes(b"".join(chunks))
    os.replace(tmp, target)
    logger.info("checkpoint written to %s (%d records, %d nodes)", path, len(cp.records), cp.nodes_explored)


def read_checkpoint(path: str) -> Checkpoint:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise CheckpointMismatchError(f"cannot read checkpoint {path}: {e}") from e
    if len(data) < HEADER.size:
        raise CheckpointMismatchError(f"{path} is too short to be a checkpoint")

    (magic, version, k, n, m, mode, order, flags, digest, status,
     nodes, wall_time, count) = HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise CheckpointMismatchError(f"{path} is not a search checkpoint")
    if version != VERSION:
        raise CheckpointMismatchError(f"unsupported checkpoint version {version}")

    records = []
    offset = HEADER.size
    for _ in range(count):
        if offset + RECORD_LENGTH.size > len(data):
            raise CheckpointMismatchError(f"{path} is truncated")
        (v,) = RECORD_LENGTH.unpack_from(data, offset)
        offset += RECORD_LENGTH.size
        length = v * (v - 1) // 2
        if offset + length > len(data):
            raise CheckpointMismatchError(f"{path} is truncated")
        records.append(tuple(data[offset:offset + length]))
        offset += length
    if offset != len(data):
        raise CheckpointMismatchError(f"{path} has trailing bytes")

    return Checkpoint(k, n, m, bool(mode), order, bool(flags & 1), digest, status, nodes, wall_time, records)
