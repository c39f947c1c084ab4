"""Binary memoization of sieve tables.

Format: magic b"WDIV1", little-endian u64 xmax, then the three arrays for
n = 1..xmax in order: d as <u4, D1 as <f8, d01 as <f8.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .arith import DivisorTable, sieve_tables

MAGIC = b"WDIV1"
ENV_CACHE_DIR = "WDIV_TABLE_CACHE"


def save_table(table: DivisorTable, path: str | Path) -> None:
    path = Path(path)
    tmp = path.with_suffix(".tmp")
    with open(tmp, "wb") as fh:
        fh.write(MAGIC)
        fh.write(np.array(table.xmax, dtype="<u8").tobytes())
        fh.write(table.d[1:].astype("<u4").tobytes())
        fh.write(table.D1[1:].astype("<f8").tobytes())
        fh.write(table.d01[1:].astype("<f8").tobytes())
    tmp.replace(path)  # atomic: a crashed writer never leaves a bad cache


def _read_exact(fh, count: int, path) -> bytes:
    data = fh.read(count)
    if len(data) != count:
        raise ValueError(f"{path}: truncated cache file")
    return data


def load_table(path: str | Path) -> DivisorTable:
    path = Path(path)
    with open(path, "rb") as fh:
        magic = fh.read(len(MAGIC))
        if magic != MAGIC:
            raise ValueError(f"{path}: bad magic {magic!r}")
        xmax = int(np.frombuffer(_read_exact(fh, 8, path), dtype="<u8")[0])
        d = np.zeros(xmax + 1, dtype=np.int32)
        d[1:] = np.frombuffer(_read_exact(fh, 4 * xmax, path), dtype="<u4")
        d1 = np.zeros(xmax + 1, dtype=np.float64)
        d1[1:] = np.frombuffer(_read_exact(fh, 8 * xmax, path), dtype="<f8")
        d01 = np.zeros(xmax + 1, dtype=np.float64)
        d01[1:] = np.frombuffer(_read_exact(fh, 8 * xmax, path), dtype="<f8")
        if fh.read(1):
            raise ValueError(f"{path}: trailing bytes")
    return DivisorTable(xmax=xmax, d=d, D1=d1, d01=d01)


def load_or_sieve(xmax: int, cache_dir: str | Path | None = None
                  ) -> DivisorTable:
    """Sieve table, memoized in cache_dir (default: $WDIV_TABLE_CACHE) if set."""
    if cache_dir is None:
        cache_dir = os.environ.get(ENV_CACHE_DIR)
    if not cache_dir:
        return sieve_tables(xmax)
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    path = cache_dir / f"table_{xmax}.bin"
    if path.exists():
        try:
            return load_table(path)
        except ValueError:
            path.unlink()
    table = sieve_tables(xmax)
    save_table(table, path)
    return table
