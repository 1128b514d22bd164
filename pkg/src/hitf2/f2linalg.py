"""Exact GF(2) linear algebra over an ordered column universe.

Rows are Python ints used as bitsets: bit ``i`` is column ``i``.  The leading
entry of a row is its lowest set bit, which is the largest monomial when the
universe is sorted in descending order.  Python's big integers give word-level
XOR for free, which is the whole inner loop of elimination.
"""

from __future__ import annotations

import hashlib
import os
import struct
import tempfile
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import Hashable, Iterable, Iterator, Sequence

__all__ = [
    "BudgetExceeded",
    "CacheError",
    "ColumnUniverse",
    "EchelonBasis",
    "Membership",
    "low_bit",
    "bits_of",
    "row_from_indices",
    "intersect_with_suffix",
    "rank",
    "kernel",
    "transpose",
    "order_hash",
    "save_echelon",
    "load_echelon",
    "CACHE_MAGIC",
    "CACHE_VERSION",
]

# rough per-row cost of a Python int: object header plus 8 bytes per 64 bits
_ROW_OVERHEAD = 64


class BudgetExceeded(MemoryError):
    """The echelon form outgrew the configured memory budget."""


class CacheError(ValueError):
    """A cache file is malformed, truncated or fails its checksum."""


def low_bit(r: int) -> int:
    return (r & -r).bit_length() - 1


def bits_of(r: int) -> Iterator[int]:
    """Set bit positions of ``r`` in increasing order."""
    while r:
        b = r & -r
        yield b.bit_length() - 1
        r ^= b


def row_from_indices(indices: Iterable[int]) -> int:
    r = 0
    for i in indices:
        r ^= 1 << i
    return r


class ColumnUniverse:
    """Ordered, duplicate-free list of column labels with a reverse index."""

    __slots__ = ("labels", "index")

    def __init__(self, labels: Iterable[Hashable]):
        self.labels = tuple(labels)
        self.index = {m: i for i, m in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise ValueError("column labels must be distinct")

    def __len__(self) -> int:
        return len(self.labels)

    def __getitem__(self, i: int):
        return self.labels[i]

    def __contains__(self, m) -> bool:
        return m in self.index

    def row(self, labels: Iterable[Hashable], *, strict: bool = True) -> int:
        """Bitset of the given labels; unknown labels raise unless ``strict`` is off."""
        r = 0
        idx = self.index
        for m in labels:
            i = idx.get(m)
            if i is None:
                if strict:
                    raise KeyError(m)
                continue
            r ^= 1 << i
        return r

    def labels_of(self, r: int) -> list:
        return [self.labels[i] for i in bits_of(r)]

    def order_hash(self) -> int:
        return order_hash(self.labels)


@dataclass(frozen=True)
class Membership:
    """Outcome of a membership query: ``residual == 0`` means the row is in the span."""

    residual: int

    @property
    def in_span(self) -> bool:
        return self.residual == 0


class EchelonBasis:
    """Row space kept as ``pivot column -> row`` with that pivot as lowest bit.

    With ``full_reduction`` on (the default) every stored row is free of all
    other pivots, which is the reduced echelon form.  Large strata switch it
    off: insertion then only reduces the incoming row until its leading bit is
    new, and ``reduce`` does the remaining work at query time.  Both forms
    have the same span and the same pivot set.
    """

    def __init__(self, ncols: int | None = None, *, full_reduction: bool = True,
                 mem_budget: int | None = None):
        self.ncols = ncols
        self.full_reduction = full_reduction
        self.mem_budget = mem_budget
        self.rows: dict[int, int] = {}
        self._bytes = 0

    # -- basic queries -------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def non_pivots(self, start: int = 0, stop: int | None = None) -> list[int]:
        stop = self.ncols if stop is None else stop
        if stop is None:
            raise ValueError("non_pivots needs a column count")
        return [i for i in range(start, stop) if i not in self.rows]

    def __len__(self) -> int:
        return len(self.rows)

    # -- insertion -------------------------------------------------------------
    def _leading_reduce(self, r: int) -> int:
        rows = self.rows
        while r:
            low = (r & -r).bit_length() - 1
            p = rows.get(low)
            if p is None:
                return r
            r ^= p
        return 0

    def insert(self, row: int) -> int | None:
        """Add a row; return its new pivot column, or ``None`` if it was absorbed."""
        if self.ncols is not None and row >> self.ncols:
            raise ValueError("row has bits outside the column universe")
        if self.full_reduction:
            r = self.reduce(row)
        else:
            r = self._leading_reduce(row)
        if not r:
            return None
        low = (r & -r).bit_length() - 1
        if self.full_reduction:
            bit = 1 << low
            for key, other in self.rows.items():
                if other & bit:
                    self.rows[key] = other ^ r
        self.rows[low] = r
        if self.mem_budget is not None:
            self._bytes += _ROW_OVERHEAD + (r.bit_length() >> 3)
            if self._bytes > self.mem_budget:
                raise BudgetExceeded(
                    f"echelon form needs more than {self.mem_budget} bytes (rank {self.rank})")
        return low

    def extend(self, rows: Iterable[int]) -> int:
        """Insert many rows; return how many raised the rank."""
        before = self.rank
        for r in rows:
            self.insert(r)
        return self.rank - before

    # -- reduction ---------------------------------------------------------------
    def reduce(self, row: int) -> int:
        """Residual of ``row`` with every pivot column cleared."""
        rows = self.rows
        out = 0
        r = row
        while r:
            low = (r & -r).bit_length() - 1
            p = rows.get(low)
            if p is None:
                bit = 1 << low
                out |= bit
                r ^= bit
            else:
                r ^= p
        return out

    def membership(self, row: int) -> Membership:
        return Membership(self.reduce(row))

    def contains(self, row: int) -> bool:
        return self._leading_reduce(row) == 0

    def fully_reduced(self) -> "EchelonBasis":
        """A reduced-echelon copy (cheap when already reduced)."""
        out = EchelonBasis(self.ncols, full_reduction=True)
        if self.full_reduction:
            out.rows = dict(self.rows)
            return out
        # back-substitute from the highest pivot down; every row in ``done``
        # is already free of the other pivots, so one pass per row suffices
        done: dict[int, int] = {}
        for piv in sorted(self.rows, reverse=True):
            r = self.rows[piv]
            for b in list(bits_of(r >> (piv + 1))):
                q = done.get(b + piv + 1)
                if q is not None:
                    r ^= q
            done[piv] = r
        out.rows = done
        return out

    def shifted(self, cut: int) -> "EchelonBasis":
        """Rows with all bits at or above ``cut``, re-indexed so that ``cut`` becomes 0."""
        out = EchelonBasis(None if self.ncols is None else self.ncols - cut,
                           full_reduction=self.full_reduction, mem_budget=self.mem_budget)
        for piv, r in self.rows.items():
            if piv >= cut:
                out.rows[piv - cut] = r >> cut
        return out


def intersect_with_suffix(rows: Iterable[int], cut: int, ncols: int | None = None, *,
                          full_reduction: bool = True, mem_budget: int | None = None) -> EchelonBasis:
    """Basis of ``span(rows) ∩ span{e_i : i >= cut}``, indexed from ``cut``.

    Elimination picks the lowest column as pivot, so columns below ``cut``
    are cleared first.  A stored row whose pivot is at least ``cut`` has no
    bits below ``cut``; those rows span the intersection.
    """
    eb = EchelonBasis(ncols, full_reduction=False, mem_budget=mem_budget)
    for r in rows:
        eb.insert(r)
    out = eb.shifted(cut)
    return out.fully_reduced() if full_reduction else out


def rank(rows: Iterable[int]) -> int:
    eb = EchelonBasis(full_reduction=False)
    eb.extend(rows)
    return eb.rank


def kernel(rows: Sequence[int], ncols: int) -> list[int]:
    """Basis of ``{v : M v = 0}`` where row ``i`` of ``M`` is the bitset ``rows[i]``."""
    eb = EchelonBasis(ncols, full_reduction=True)
    eb.extend(rows)
    free = [c for c in range(ncols) if c not in eb.rows]
    basis = []
    for f in free:
        v = 1 << f
        for piv, r in eb.rows.items():
            if r >> f & 1:
                v |= 1 << piv
        basis.append(v)
    return basis


def transpose(rows: Sequence[int], ncols: int) -> list[int]:
    cols = [0] * ncols
    for i, r in enumerate(rows):
        for j in bits_of(r):
            cols[j] |= 1 << i
    return cols


# --- cache files ---------------------------------------------------------------

CACHE_MAGIC = b"HITF2\0"
CACHE_VERSION = 1


def order_hash(labels: Iterable) -> int:
    """64-bit digest of a column order (labels rendered as comma-joined text)."""
    h = hashlib.blake2b(digest_size=8)
    for m in labels:
        h.update((",".join(map(str, m)) if isinstance(m, tuple) else str(m)).encode())
        h.update(b";")
    return int.from_bytes(h.digest(), "little")


def _encode(k: int, degree: int, weight: Sequence[int], ohash: int, rows: Sequence[Sequence[int]]) -> bytes:
    parts = [CACHE_MAGIC, struct.pack("<HBI", CACHE_VERSION, k, degree),
             struct.pack("<B", len(weight)), bytes(weight),
             struct.pack("<QI", ohash, len(rows))]
    for support in rows:
        s = sorted(support)
        parts.append(struct.pack(f"<I{len(s)}I", len(s), *s))
    body = b"".join(parts)
    return body + struct.pack("<I", zlib.crc32(body) & 0xFFFFFFFF)


def save_echelon(path: str | os.PathLike, *, k: int, degree: int, weight: Sequence[int],
                 ohash: int, rows: Sequence[Sequence[int]]) -> None:
    """Write an echelon form atomically (temporary file in the same directory, then rename)."""
    if any(not 0 <= w <= 255 for w in weight) or len(weight) > 255:
        raise ValueError("weight entries must fit in one byte")
    data = _encode(k, degree, weight, ohash, rows)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def load_echelon(path: str | os.PathLike) -> dict:
    """Read a cache file; returns k, degree, weight, order_hash and rows (sorted index lists)."""
    data = Path(path).read_bytes()
    if len(data) < len(CACHE_MAGIC) + 4 or not data.startswith(CACHE_MAGIC):
        raise CacheError("bad magic")
    body, (crc,) = data[:-4], struct.unpack("<I", data[-4:])
    if zlib.crc32(body) & 0xFFFFFFFF != crc:
        raise CacheError("checksum mismatch")
    try:
        off = len(CACHE_MAGIC)
        version, k, degree = struct.unpack_from("<HBI", body, off)
        off += 7
        if version != CACHE_VERSION:
            raise CacheError(f"unsupported cache version {version}")
        (wl,) = struct.unpack_from("<B", body, off)
        off += 1
        weight = tuple(body[off:off + wl])
        off += wl
        ohash, nrows = struct.unpack_from("<QI", body, off)
        off += 12
        rows = []
        for _ in range(nrows):
            (n,) = struct.unpack_from("<I", body, off)
            off += 4
            rows.append(list(struct.unpack_from(f"<{n}I", body, off)))
            off += 4 * n
    except struct.error as exc:
        raise CacheError(f"truncated cache file: {exc}") from None
    if off != len(body):
        raise CacheError("trailing bytes in cache file")
    return {"k": k, "degree": degree, "weight": weight, "order_hash": ohash, "rows": rows}
