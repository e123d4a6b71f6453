"""GVT value-table files.

Bit-exact layout: bytes 0-3 magic ``GVT1`` (ASCII), byte 4 format version
(1), byte 5 deck size n, byte 6 arithmetic tag (0 = float64), byte 7
reserved (0); then layers j = 0..n concatenated, each a dense array of
``C(n,j)**3`` little-endian IEEE-754 float64 values at index
``(rank(V)*C(n,j) + rank(Y))*C(n,j) + rank(P)``.

Only float tables are persisted; rational tables have unbounded entries and
no v1 representation.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .cards import MAX_DECK, binomial
from .engine import ValueTable

MAGIC = b"GVT1"
VERSION = 1
_HEADER_LEN = 8


class GvtError(Exception):
    """Base class for value-table file errors."""


class GvtMagicError(GvtError):
    pass


class GvtVersionError(GvtError):
    pass


class GvtFormatError(GvtError):
    """Arithmetic tag, reserved byte or deck size field is invalid."""


class GvtTruncatedError(GvtError):
    """File length does not match the layer sizes implied by the header."""


class GvtMismatchError(GvtError):
    """The file's deck size differs from the expected one."""


def table_byte_size(n: int) -> int:
    return _HEADER_LEN + 8 * sum(binomial(n, j) ** 3 for j in range(n + 1))


def save_table(table: ValueTable, destination) -> None:
    """Write a complete float table; ``load_table(save_table(t))`` is
    bit-identical to ``t``."""
    if table.arithmetic != "float64":
        raise GvtError("rational tables are not persisted (GVT v1 is float64 only)")
    if not table.complete:
        missing = [j for j in range(table.n + 1) if not table.has_layer(j)]
        raise GvtError(f"table is missing layers {missing}; solve with keep_all_layers=True")
    path = Path(destination)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(MAGIC)
        fh.write(bytes([VERSION, table.n, 0, 0]))
        for j in range(table.n + 1):
            arr = np.ascontiguousarray(table.layers[j], dtype="<f8")
            fh.write(arr.tobytes())
    os.replace(tmp, path)


def load_table(source, expect_n: int | None = None) -> ValueTable:
    """Read a GVT file back into a :class:`ValueTable`.

    Distinct failures raise distinct errors: bad magic, unsupported version,
    malformed header fields, truncated/oversized payload, and (when
    ``expect_n`` is given) a deck-size mismatch.
    """
    path = Path(source)
    raw = path.read_bytes()
    if len(raw) < _HEADER_LEN or raw[:4] != MAGIC:
        raise GvtMagicError(f"{path}: not a GVT file (magic {raw[:4]!r})")
    version, n, arith, reserved = raw[4], raw[5], raw[6], raw[7]
    if version != VERSION:
        raise GvtVersionError(f"{path}: unsupported GVT version {version}")
    if not 1 <= n <= MAX_DECK:
        raise GvtFormatError(f"{path}: deck size byte {n} out of range")
    if arith != 0:
        raise GvtFormatError(f"{path}: unknown arithmetic tag {arith}")
    if reserved != 0:
        raise GvtFormatError(f"{path}: reserved byte is {reserved}")
    if expect_n is not None and n != expect_n:
        raise GvtMismatchError(f"{path}: table is for n={n}, expected n={expect_n}")
    expected = table_byte_size(n)
    if len(raw) != expected:
        raise GvtTruncatedError(f"{path}: {len(raw)} bytes, expected {expected}")
    layers = []
    offset = _HEADER_LEN
    for j in range(n + 1):
        count = binomial(n, j) ** 3
        layers.append(np.frombuffer(raw, dtype="<f8", count=count, offset=offset).copy())
        offset += 8 * count
    return ValueTable(n=n, arithmetic="float64", layers=layers, stats={"loaded_from": str(path)})
