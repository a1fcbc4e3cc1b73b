"""Exact linear algebra over the two-element field.

Vectors are bit-packed into Python integers: coordinate i is bit i, so low
index = low bit and reading a vector as a binary integer gives the canonical
ordering used everywhere downstream.  All values are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class GF2Error(ValueError):
    """Dimension mismatch, singular input, or size-guard violation."""


@dataclass(frozen=True)
class BitVec:
    """Vector over GF(2) of a fixed length."""

    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.length < 0:
            raise GF2Error(f"negative length {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise GF2Error(f"bits 0b{self.bits:b} out of range for length {self.length}")

    @classmethod
    def from_coords(cls, coords: Iterable[int]) -> "BitVec":
        bits = 0
        n = 0
        for c in coords:
            if c not in (0, 1):
                raise GF2Error(f"coordinate {c!r} is not 0 or 1")
            bits |= c << n
            n += 1
        return cls(n, bits)

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> "BitVec":
        bits = 0
        for i in support:
            if not 0 <= i < length:
                raise GF2Error(f"support index {i} outside [0, {length})")
            bits |= 1 << i
        return cls(length, bits)

    @classmethod
    def unit(cls, length: int, i: int) -> "BitVec":
        return cls.from_support(length, (i,))

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise GF2Error(f"index {i} outside [0, {self.length})")
        return (self.bits >> i) & 1

    def __iter__(self) -> Iterator[int]:
        return (self[i] for i in range(self.length))

    def __add__(self, other: "BitVec") -> "BitVec":
        if self.length != other.length:
            raise GF2Error(f"length mismatch {self.length} != {other.length}")
        return BitVec(self.length, self.bits ^ other.bits)

    __xor__ = __add__

    def dot(self, other: "BitVec") -> int:
        if self.length != other.length:
            raise GF2Error(f"length mismatch {self.length} != {other.length}")
        return (self.bits & other.bits).bit_count() & 1

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.length) if (self.bits >> i) & 1)

    def weight(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0

    def coords(self) -> tuple[int, ...]:
        return tuple(self)

    def __str__(self) -> str:
        return "".join(str(c) for c in self)


@dataclass(frozen=True)
class BitMatrix:
    """Dense matrix over GF(2), stored as one bit-packed integer per row."""

    rows: int
    cols: int
    row_bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise GF2Error("negative dimension")
        if len(self.row_bits) != self.rows:
            raise GF2Error(f"expected {self.rows} rows, got {len(self.row_bits)}")
        for r in self.row_bits:
            if r < 0 or r >> self.cols:
                raise GF2Error(f"row 0b{r:b} out of range for {self.cols} columns")

    @classmethod
    def from_rows(cls, rows: Sequence[BitVec]) -> "BitMatrix":
        if not rows:
            return cls(0, 0, ())
        cols = rows[0].length
        if any(r.length != cols for r in rows):
            raise GF2Error("rows have unequal lengths")
        return cls(len(rows), cols, tuple(r.bits for r in rows))

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], cols: int | None = None) -> "BitMatrix":
        if not entries:
            return cls(0, cols or 0, ())
        vecs = [BitVec.from_coords(row) for row in entries]
        return cls.from_rows(vecs)

    @classmethod
    def from_columns(cls, columns: Sequence[BitVec]) -> "BitMatrix":
        if not columns:
            return cls(0, 0, ())
        n = columns[0].length
        if any(c.length != n for c in columns):
            raise GF2Error("columns have unequal lengths")
        bits = [0] * n
        for j, c in enumerate(columns):
            for i in range(n):
                bits[i] |= c[i] << j
        return cls(n, len(columns), tuple(bits))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    def row(self, i: int) -> BitVec:
        return BitVec(self.cols, self.row_bits[i])

    def column(self, j: int) -> BitVec:
        if not 0 <= j < self.cols:
            raise GF2Error(f"column {j} outside [0, {self.cols})")
        bits = 0
        for i, r in enumerate(self.row_bits):
            bits |= ((r >> j) & 1) << i
        return BitVec(self.rows, bits)

    def columns(self) -> list[BitVec]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_columns([self.row(i) for i in range(self.rows)]) if self.rows else BitMatrix(self.cols, 0, (0,) * self.cols)

    def apply(self, x: BitVec) -> BitVec:
        """Matrix-vector product A @ x with x a column vector."""
        if x.length != self.cols:
            raise GF2Error(f"vector length {x.length} != column count {self.cols}")
        bits = 0
        for i, r in enumerate(self.row_bits):
            bits |= ((r & x.bits).bit_count() & 1) << i
        return BitVec(self.rows, bits)

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise GF2Error(f"inner dimensions {self.cols} != {other.rows}")
        out = []
        for r in self.row_bits:
            acc = 0
            k = 0
            rr = r
            while rr:
                if rr & 1:
                    acc ^= other.row_bits[k]
                rr >>= 1
                k += 1
            out.append(acc)
        return BitMatrix(self.rows, other.cols, tuple(out))

    def __str__(self) -> str:
        return "\n".join(str(self.row(i)) for i in range(self.rows))


def _echelonize(row_bits: Sequence[int]) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices).

    Pivot of each row is its lowest set bit; rows are fully reduced against
    each other, so pivot columns appear in exactly one row.
    """
    rows: list[int] = []
    pivots: list[int] = []
    for v in row_bits:
        for r, p in zip(rows, pivots):
            if (v >> p) & 1:
                v ^= r
        if v:
            p = (v & -v).bit_length() - 1
            for k in range(len(rows)):
                if (rows[k] >> p) & 1:
                    rows[k] ^= v
            rows.append(v)
            pivots.append(p)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [rows[k] for k in order], [pivots[k] for k in order]


def rank(a: BitMatrix) -> int:
    """Row rank over GF(2)."""
    return len(_echelonize(a.row_bits)[0])


def kernel_basis(a: BitMatrix) -> list[BitVec]:
    """Basis of the right kernel {x : A x = 0}, ascending as binary integers."""
    rows, pivots = _echelonize(a.row_bits)
    pivot_set = set(pivots)
    basis = []
    for j in range(a.cols):
        if j in pivot_set:
            continue
        bits = 1 << j
        for r, p in zip(rows, pivots):
            if (r >> j) & 1:
                bits |= 1 << p
        basis.append(bits)
    return [BitVec(a.cols, b) for b in sorted(basis)]


def row_space(a: BitMatrix, limit: int = 30) -> list[tuple[BitVec, BitVec]]:
    """All elements of the row space, each paired with its coefficient vector.

    Coefficients are taken over the lexicographically first maximal
    independent subset of the rows; the result is ordered by ascending
    coefficient bitmask and always starts with the zero vector.
    """
    if a.rows > limit:
        raise GF2Error(f"row count {a.rows} exceeds enumeration guard {limit}")
    basis: list[int] = []
    seen_rows: list[int] = []
    seen_pivots: list[int] = []
    for v in a.row_bits:
        w = v
        for r, p in zip(seen_rows, seen_pivots):
            if (w >> p) & 1:
                w ^= r
        if w:
            seen_rows.append(w)
            seen_pivots.append((w & -w).bit_length() - 1)
            basis.append(v)
    r = len(basis)
    out = []
    for mask in range(1 << r):
        bits = 0
        m = mask
        k = 0
        while m:
            if m & 1:
                bits ^= basis[k]
            m >>= 1
            k += 1
        out.append((BitVec(a.cols, bits), BitVec(r, mask)))
    return out


def invert(a: BitMatrix) -> BitMatrix:
    """Inverse of a square matrix; raises GF2Error if singular."""
    if a.rows != a.cols:
        raise GF2Error(f"matrix {a.rows}x{a.cols} is not square")
    n = a.rows
    work = list(a.row_bits)
    inv = [1 << i for i in range(n)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if (work[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            raise GF2Error("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        for r in range(n):
            if r != col and (work[r] >> col) & 1:
                work[r] ^= work[col]
                inv[r] ^= inv[col]
    return BitMatrix(n, n, tuple(inv))


def find_basis_change(vectors: Sequence[BitVec], n: int) -> BitMatrix:
    """Invertible G with G @ vectors[i] = e_{i+1} for n independent vectors."""
    if len(vectors) != n:
        raise GF2Error(f"expected {n} vectors, got {len(vectors)}")
    for v in vectors:
        if v.length != n:
            raise GF2Error(f"vector length {v.length} != {n}")
    m = BitMatrix.from_columns(list(vectors))
    if rank(m) != n:
        raise GF2Error("vectors are linearly dependent")
    return invert(m)


def enumerate_gl(n: int) -> Iterator[BitMatrix]:
    """All invertible n x n matrices, by recursive extension of independent rows.

    Count grows like 2^(n^2); intended for brute-force cross-checks at n <= 4.
    """
    full = 1 << n

    def extend(rows: tuple[int, ...], span: frozenset[int]) -> Iterator[BitMatrix]:
        if len(rows) == n:
            yield BitMatrix(n, n, rows)
            return
        for v in range(1, full):
            if v in span:
                continue
            new_span = frozenset(s ^ v for s in span) | span
            yield from extend(rows + (v,), new_span)

    yield from extend((), frozenset([0]))
