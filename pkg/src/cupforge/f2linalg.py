"""Exact linear algebra over GF(2).

Vectors and matrix rows are stored as Python integers used as bitsets:
coordinate ``j`` is bit ``j``.  "Leftmost" columns are the low-index ones,
so echelon forms pivot on the lowest set bit of each row.  Reduced echelon
forms are unique, which makes every basis returned here a function of the
input span alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "BitVector",
    "BitMatrix",
    "Echelon",
    "rref",
    "rank",
    "kernel_basis",
    "image_basis",
    "quotient_basis",
    "in_span",
    "popcount",
    "bits_of",
]


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits_of(x: int) -> list[int]:
    """Indices of the set bits of ``x`` in increasing order."""
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


@dataclass(frozen=True)
class BitVector:
    """A vector in GF(2)^length, stored as an integer bitset."""

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("support index out of range")

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> "BitVector":
        bits = 0
        for i in support:
            if not 0 <= i < length:
                raise ValueError(f"index {i} out of range for length {length}")
            bits ^= 1 << i
        return cls(length, bits)

    @classmethod
    def from_list(cls, entries: Sequence[int]) -> "BitVector":
        return cls.from_support(len(entries), (i for i, e in enumerate(entries) if e % 2))

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length, 0)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(bits_of(self.bits))

    @property
    def weight(self) -> int:
        return popcount(self.bits)

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.length)]

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __bool__(self) -> bool:
        return self.bits != 0

    def _check(self, other: "BitVector") -> None:
        if self.length != other.length:
            raise ValueError(f"length mismatch: {self.length} vs {other.length}")

    def __add__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self.length, self.bits ^ other.bits)

    __xor__ = __add__
    __sub__ = __add__

    def __and__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self.length, self.bits & other.bits)

    def dot(self, other: "BitVector") -> int:
        self._check(other)
        return popcount(self.bits & other.bits) & 1

    def __repr__(self) -> str:
        return f"BitVector({self.length}, support={list(self.support)})"


class BitMatrix:
    """Dense GF(2) matrix with bit-packed rows.

    ``rows[i]`` is an integer whose bit ``j`` is the entry ``(i, j)``.
    """

    __slots__ = ("nrows", "ncols", "rows", "_t")

    def __init__(self, nrows: int, ncols: int, rows: Iterable[int] = ()):
        rows = tuple(rows)
        if len(rows) != nrows:
            raise ValueError(f"expected {nrows} rows, got {len(rows)}")
        for r in rows:
            if r < 0 or r >> ncols:
                raise ValueError("row entry outside column range")
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows
        self._t = None

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls(nrows, ncols, [0] * nrows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence[int]], ncols: int | None = None) -> "BitMatrix":
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        rows = []
        for row in entries:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            rows.append(sum(1 << j for j, e in enumerate(row) if e % 2))
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[int]) -> "BitMatrix":
        """Build from column bitsets (bit ``i`` of ``columns[j]`` is entry ``(i, j)``)."""
        return cls(len(columns), nrows, columns).T

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def T(self) -> "BitMatrix":
        if self._t is None:
            cols = [0] * self.ncols
            for i, r in enumerate(self.rows):
                bit = 1 << i
                for j in bits_of(r):
                    cols[j] |= bit
            t = BitMatrix(self.ncols, self.nrows, cols)
            t._t = self
            self._t = t
        return self._t

    def column(self, j: int) -> int:
        return self.T.rows[j]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(ij)
        return (self.rows[i] >> j) & 1

    def matvec(self, v: BitVector) -> BitVector:
        if v.length != self.ncols:
            raise ValueError(f"vector length {v.length} != {self.ncols} columns")
        out = 0
        for i, r in enumerate(self.rows):
            if popcount(r & v.bits) & 1:
                out |= 1 << i
        return BitVector(self.nrows, out)

    def apply_columns(self, bits: int) -> int:
        """XOR of the columns selected by ``bits``; same as ``matvec`` on raw ints."""
        cols = self.T.rows
        out = 0
        for j in bits_of(bits):
            out ^= cols[j]
        return out

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        orows = other.rows
        out = []
        for r in self.rows:
            acc = 0
            for k in bits_of(r):
                acc ^= orows[k]
            out.append(acc)
        return BitMatrix(self.nrows, other.ncols, out)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def to_dense(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def row_vectors(self) -> list[BitVector]:
        return [BitVector(self.ncols, r) for r in self.rows]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, self.rows))

    def __repr__(self) -> str:
        return f"BitMatrix({self.nrows}x{self.ncols})"


class Echelon:
    """Incrementally maintained echelon basis of a subspace.

    Rows are kept keyed by their pivot (lowest set bit).  ``reduce`` returns
    the canonical remainder of a vector modulo the span.
    """

    def __init__(self, vectors: Iterable[int] = ()):
        self.pivots: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    def reduce(self, v: int) -> int:
        pivots = self.pivots
        rem = v
        done = 0
        while rem:
            low = rem & -rem
            row = pivots.get(low)
            if row is None:
                done |= low
                rem ^= low
            else:
                rem ^= row
        return done

    def add(self, v: int) -> bool:
        """Insert ``v``; return True if it enlarged the span."""
        pivots = self.pivots
        while v:
            low = v & -v
            row = pivots.get(low)
            if row is None:
                pivots[low] = v
                return True
            v ^= row
        return False

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def __len__(self) -> int:
        return len(self.pivots)

    def reduced_rows(self) -> list[int]:
        """Rows of the unique reduced row echelon form, ordered by pivot."""
        keys = sorted(self.pivots)
        rows = [self.pivots[k] for k in keys]
        # back-substitute so each pivot column has a single 1
        for i in range(len(rows) - 1, -1, -1):
            pi = keys[i]
            for j in range(i):
                if rows[j] & pi:
                    rows[j] ^= rows[i]
        return rows


def rref(rows: Iterable[int]) -> list[int]:
    """Reduced row echelon form (zero rows dropped), ordered by pivot column."""
    return Echelon(rows).reduced_rows()


def rank(M: BitMatrix) -> int:
    return len(Echelon(M.rows))


def kernel_basis(M: BitMatrix) -> list[BitVector]:
    """Basis of {v : M v = 0}, one vector per non-pivot column, in column order."""
    red = rref(M.rows)
    pivot_of = [(r & -r).bit_length() - 1 for r in red]
    pivot_set = set(pivot_of)
    out = []
    for f in range(M.ncols):
        if f in pivot_set:
            continue
        v = 1 << f
        fb = 1 << f
        for p, r in zip(pivot_of, red):
            if r & fb:
                v |= 1 << p
        out.append(BitVector(M.ncols, v))
    return out


def image_basis(M: BitMatrix) -> list[BitVector]:
    """Reduced echelon basis of the column span of ``M``."""
    return [BitVector(M.nrows, r) for r in rref(M.T.rows)]


def _ints(vectors: Sequence[BitVector], length: int | None) -> tuple[list[int], int | None]:
    out = []
    for v in vectors:
        if length is None:
            length = v.length
        elif v.length != length:
            raise ValueError("length mismatch among vectors")
        out.append(v.bits)
    return out, length


def quotient_basis(Z: Sequence[BitVector], B: Sequence[BitVector]) -> list[BitVector]:
    """Representatives of a basis of span(Z)/span(B).

    Each representative is zero on the pivot columns of span(B), and together
    they form the reduced echelon basis of that complement, so the result
    depends only on the two spans.
    """
    zs, length = _ints(Z, None)
    bs, length = _ints(B, length)
    if length is None:
        return []
    eb = Echelon(bs)
    ez = Echelon(zs)
    for b in bs:
        if b not in ez:
            raise ValueError("span(B) is not contained in span(Z)")
    residues = [eb.reduce(z) for z in ez.reduced_rows()]
    reps = rref(residues)
    # residues already vanish on B's pivots; rref keeps that property
    return [BitVector(length, r) for r in reps]


def in_span(v: BitVector, B: Sequence[BitVector]) -> bool:
    bs, _ = _ints(B, v.length)
    return Echelon(bs).reduce(v.bits) == 0
