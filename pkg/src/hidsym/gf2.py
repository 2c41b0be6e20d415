"""Bit-string arithmetic and GF(2) linear algebra on integer bitsets.

Bit ``l`` of a word is the coefficient of ``2**l`` (LSB first). Two-register
outcomes ``Y = (y1, y2)`` are packed with ``y1`` in the low ``n`` bits and
``y2`` in bits ``[n, 2n)``; the symmetry vector ``R = (p, q)`` uses the same
layout, so ``R . Y = p . y1 xor q . y2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from .errors import ContractViolation

MAX_WIDTH = 64


@dataclass(frozen=True)
class BitWord:
    """An unsigned integer interpreted as a bit-string of fixed width."""

    value: int
    width: int

    def __post_init__(self):
        if not 1 <= self.width <= MAX_WIDTH:
            raise ContractViolation(f"width must be in [1, {MAX_WIDTH}], got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise ContractViolation(f"value {self.value} does not fit in {self.width} bits")

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def bits(self) -> List[int]:
        """Bits in LSB-first order."""
        return [(self.value >> i) & 1 for i in range(self.width)]

    @classmethod
    def from_str(cls, s: str) -> "BitWord":
        """Parse a written bit-string such as ``"1001"`` (most significant bit first)."""
        return cls(int(s, 2), len(s))

    def __str__(self):
        return format(self.value, f"0{self.width}b")

    def __xor__(self, other):
        return xor_word(self, other)


def _check_same_width(a: BitWord, b: BitWord) -> None:
    if a.width != b.width:
        raise ContractViolation(f"width mismatch: {a.width} != {b.width}")


def xor_word(a: BitWord, b: BitWord) -> BitWord:
    _check_same_width(a, b)
    return BitWord(a.value ^ b.value, a.width)


def parity(v: int) -> int:
    """Parity of the population count of a non-negative integer."""
    return bin(v).count("1") & 1


def parity_array(v: np.ndarray) -> np.ndarray:
    """Elementwise popcount parity of a non-negative integer array."""
    return (np.bitwise_count(np.asarray(v, dtype=np.uint64)) & 1).astype(np.int64)


def dot_mod2(r: BitWord, y: BitWord) -> int:
    """Scalar product modulo two, i.e. parity of ``r AND y``."""
    _check_same_width(r, y)
    return parity(r.value & y.value)


def pack_ry(p: BitWord, q: BitWord) -> BitWord:
    """Concatenate two n-bit words into a 2n-bit word, ``p`` in the low half."""
    _check_same_width(p, q)
    n = p.width
    if 2 * n > MAX_WIDTH:
        raise ContractViolation(f"cannot pack two {n}-bit words")
    return BitWord(p.value | (q.value << n), 2 * n)


def unpack_ry(word: int, n: int) -> Tuple[int, int]:
    """Inverse of :func:`pack_ry` on raw integers: returns ``(low, high)``."""
    mask = (1 << n) - 1
    return word & mask, (word >> n) & mask


def _as_int(row, ncols: int) -> int:
    if isinstance(row, BitWord):
        if row.width != ncols:
            raise ContractViolation(f"row width {row.width} != ncols {ncols}")
        return row.value
    value = int(row)
    if not 0 <= value < (1 << ncols):
        raise ContractViolation(f"row {value} does not fit in {ncols} columns")
    return value


class Gf2Matrix:
    """Row set over GF(2) with an incrementally maintained reduced echelon form.

    ``rows`` keeps the rows as supplied; the echelon form lives in a pivot map
    ``{pivot_column: reduced_row}`` where each pivot column is the highest set
    bit of its row and is cleared from every other reduced row.
    """

    def __init__(self, ncols: int, rows: Iterable = ()):
        if not 1 <= ncols <= MAX_WIDTH:
            raise ContractViolation(f"ncols must be in [1, {MAX_WIDTH}], got {ncols}")
        self.ncols = ncols
        self.rows: List[int] = []
        self._pivots: dict = {}
        for row in rows:
            value = _as_int(row, ncols)
            self.rows.append(value)
            self._insert(value)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def _reduce(self, v: int) -> int:
        for col, prow in self._pivots.items():
            if (v >> col) & 1:
                v ^= prow
        return v

    def _insert(self, v: int) -> bool:
        v = self._reduce(v)
        if v == 0:
            return False
        col = v.bit_length() - 1
        for c, prow in self._pivots.items():
            if (prow >> col) & 1:
                self._pivots[c] = prow ^ v
        self._pivots[col] = v
        return True

    def copy(self) -> "Gf2Matrix":
        m = Gf2Matrix(self.ncols)
        m.rows = list(self.rows)
        m._pivots = dict(self._pivots)
        return m

    def in_rowspace(self, v) -> bool:
        return self._reduce(_as_int(v, self.ncols)) == 0

    def append_if_independent(self, y) -> bool:
        """Append ``y`` in place iff it increases the rank; returns acceptance."""
        value = _as_int(y, self.ncols)
        if self._insert(value):
            self.rows.append(value)
            return True
        return False

    def nullspace_basis(self) -> List[int]:
        """Basis of ``{v : row . v == 0 for every row}`` as raw integers."""
        basis = []
        for free in range(self.ncols):
            if free in self._pivots:
                continue
            v = 1 << free
            for col, prow in self._pivots.items():
                if (prow >> free) & 1:
                    v |= 1 << col
            basis.append(v)
        return basis

    def matvec(self, x: int) -> int:
        """``A . x`` where row ``i`` of A produces bit ``i`` of the result."""
        out = 0
        for i, row in enumerate(self.rows):
            out |= parity(row & x) << i
        return out

    def __len__(self):
        return len(self.rows)

    def __repr__(self):
        return f"Gf2Matrix(ncols={self.ncols}, nrows={len(self.rows)}, rank={self.rank})"


def append_if_independent(m: Gf2Matrix, y) -> Tuple[Gf2Matrix, bool]:
    """Functional form of :meth:`Gf2Matrix.append_if_independent` (mutates ``m``)."""
    accepted = m.append_if_independent(y)
    return m, accepted


def nullspace_basis(m: Gf2Matrix) -> List[BitWord]:
    return [BitWord(v, m.ncols) for v in m.nullspace_basis()]


def gf2_rank(rows: Sequence[int], ncols: int) -> int:
    """Rank of a row set recomputed from scratch."""
    return Gf2Matrix(ncols, rows).rank
