from __future__ import annotations

import itertools
import struct
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hitf2.f2linalg import (
    BudgetExceeded,
    CacheError,
    ColumnUniverse,
    EchelonBasis,
    intersect_with_suffix,
    kernel,
    load_echelon,
    order_hash,
    rank,
    save_echelon,
    transpose,
)
from oracles import span_dim

NCOLS = 10
rows_st = st.lists(st.integers(0, (1 << NCOLS) - 1), max_size=12)


def span(rows) -> set[int]:
    out = {0}
    for r in rows:
        out |= {x ^ r for x in out}
    return out


class TestEchelon:
    def test_insert_examples(self):
        eb = EchelonBasis(4)
        assert eb.insert(0b0110) == 1
        assert eb.insert(0b0011) == 0
        assert eb.insert(0b0101) is None
        assert eb.rank == 2
        assert eb.contains(0b0101)
        assert not eb.contains(0b1000)
        assert eb.membership(0b1110).residual == 0b1000
        assert eb.non_pivots() == [2, 3]

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            EchelonBasis(3).insert(0b1000)

    @given(rows_st)
    def test_full_reduction_invariant(self, rows):
        eb = EchelonBasis(NCOLS)
        eb.extend(rows)
        piv = set(eb.rows)
        for p, r in eb.rows.items():
            assert r & -r == 1 << p
            assert all(not (r >> q & 1) for q in piv if q != p)
        assert eb.rank == span_dim(rows)

    @given(rows_st)
    def test_semi_echelon_matches_after_back_substitution(self, rows):
        full = EchelonBasis(NCOLS)
        full.extend(rows)
        semi = EchelonBasis(NCOLS, full_reduction=False)
        semi.extend(rows)
        assert semi.pivots() == full.pivots()
        assert semi.fully_reduced().rows == full.rows

    @given(rows_st, st.integers(0, (1 << NCOLS) - 1))
    def test_membership_matches_span_and_is_idempotent(self, rows, v):
        eb = EchelonBasis(NCOLS, full_reduction=False)
        eb.extend(rows)
        res = eb.reduce(v)
        assert eb.membership(v).in_span == (v in span(rows))
        assert eb.reduce(res) == res
        assert (res ^ v) in span(rows)
        assert all(not (res >> p & 1) for p in eb.rows)

    def test_budget(self):
        eb = EchelonBasis(full_reduction=False, mem_budget=200)
        with pytest.raises(BudgetExceeded):
            for i in range(100):
                eb.insert(1 << i | 1 << (i + 500))


class TestSubspaces:
    @given(rows_st, st.integers(0, NCOLS))
    def test_intersect_with_suffix_exhaustive(self, rows, cut):
        got = intersect_with_suffix(rows, cut, NCOLS)
        want = {v >> cut for v in span(rows) if v & ((1 << cut) - 1) == 0}
        assert span(got.rows.values()) == want

    @given(st.lists(st.integers(0, 63), max_size=8))
    def test_kernel_rank_nullity(self, rows):
        ker = kernel(rows, 6)
        assert len(ker) + rank(rows) == 6
        tr = transpose(rows, 6)
        for v in ker:
            # M v = 0: XOR of the columns selected by v vanishes
            acc = 0
            for j in range(6):
                if v >> j & 1:
                    acc ^= tr[j]
            assert acc == 0
        assert rank(ker) == len(ker)

    def test_transpose_involution(self):
        rows = [0b101, 0b011, 0b110, 0b000]
        assert transpose(transpose(rows, 3), 4) == rows

    def test_universe(self):
        u = ColumnUniverse([(2, 1), (1, 2), (3, 0)])
        assert u.row([(1, 2), (3, 0)]) == 0b110
        assert u.labels_of(0b101) == [(2, 1), (3, 0)]
        assert u.row([(0, 3)], strict=False) == 0
        with pytest.raises(KeyError):
            u.row([(0, 3)])
        with pytest.raises(ValueError):
            ColumnUniverse([(1,), (1,)])
        assert u.order_hash() == order_hash([(2, 1), (1, 2), (3, 0)])
        assert u.order_hash() != order_hash([(1, 2), (2, 1), (3, 0)])


class TestCache:
    ROWS = [[0, 3, 7], [1], [2, 5]]

    def write(self, tmp_path: Path) -> Path:
        path = tmp_path / "sub" / "c.hitf2"
        save_echelon(path, k=5, degree=108, weight=(4, 4, 4, 2, 2, 1), ohash=12345, rows=self.ROWS)
        return path

    def test_round_trip(self, tmp_path):
        d = load_echelon(self.write(tmp_path))
        assert d == {"k": 5, "degree": 108, "weight": (4, 4, 4, 2, 2, 1), "order_hash": 12345, "rows": self.ROWS}

    def test_layout_is_little_endian(self, tmp_path):
        data = self.write(tmp_path).read_bytes()
        assert data[:6] == b"HITF2\0"
        assert struct.unpack_from("<HBI", data, 6) == (1, 5, 108)
        assert data[13] == 6 and tuple(data[14:20]) == (4, 4, 4, 2, 2, 1)
        assert struct.unpack_from("<QI", data, 20) == (12345, 3)

    def test_no_stray_temp_files(self, tmp_path):
        path = self.write(tmp_path)
        assert [p.name for p in path.parent.iterdir()] == ["c.hitf2"]

    @pytest.mark.parametrize("mutate", ["flip", "truncate", "magic", "append"])
    def test_corruption_detected(self, tmp_path, mutate):
        path = self.write(tmp_path)
        data = bytearray(path.read_bytes())
        if mutate == "flip":
            data[25] ^= 1
        elif mutate == "truncate":
            data = data[:-7]
        elif mutate == "magic":
            data[0] = ord("X")
        else:
            data += b"\0"
        path.write_bytes(bytes(data))
        with pytest.raises(CacheError):
            load_echelon(path)

    def test_consistent_crc_but_bad_version(self, tmp_path):
        import zlib

        path = self.write(tmp_path)
        body = bytearray(path.read_bytes()[:-4])
        body[6] = 9
        path.write_bytes(bytes(body) + struct.pack("<I", zlib.crc32(bytes(body))))
        with pytest.raises(CacheError, match="version"):
            load_echelon(path)

    def test_weight_must_fit_in_a_byte(self, tmp_path):
        with pytest.raises(ValueError):
            save_echelon(tmp_path / "x", k=1, degree=1, weight=(300,), ohash=0, rows=[])


def test_rank_small_exhaustive():
    for rows in itertools.product(range(8), repeat=3):
        assert rank(rows) == span_dim(rows) == len(span(rows)).bit_length() - 1
