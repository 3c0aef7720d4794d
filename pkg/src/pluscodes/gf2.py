"""Bit-packed GF(2) vectors and matrices.

Rows are stored as Python ints.  Bit position 1 is the leftmost printed
character, which is the most significant bit of the int, so a row printed
as ``"1011"`` is ``int("1011", 2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

MAX_BITS = 128


class GF2Error(ValueError):
    """Raised for malformed GF(2) data or violated preconditions."""


def popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class BitWord:
    length: int
    value: int = 0

    def __post_init__(self):
        if not 1 <= self.length <= MAX_BITS:
            raise GF2Error(f"word length {self.length} outside 1..{MAX_BITS}")
        if self.value < 0 or self.value >> self.length:
            raise GF2Error(f"value does not fit in {self.length} bits")

    @classmethod
    def from_str(cls, s: str) -> BitWord:
        s = s.strip()
        if not s or set(s) - {"0", "1"}:
            raise GF2Error(f"not a binary string: {s!r}")
        return cls(len(s), int(s, 2))

    @property
    def weight(self) -> int:
        return popcount(self.value)

    def bit(self, position: int) -> int:
        """Bit at 1-based ``position`` counted from the left."""
        if not 1 <= position <= self.length:
            raise IndexError(position)
        return (self.value >> (self.length - position)) & 1

    def __xor__(self, other: BitWord) -> BitWord:
        _check_len(self, other)
        return BitWord(self.length, self.value ^ other.value)

    def __and__(self, other: BitWord) -> BitWord:
        _check_len(self, other)
        return BitWord(self.length, self.value & other.value)

    def __or__(self, other: BitWord) -> BitWord:
        _check_len(self, other)
        return BitWord(self.length, self.value | other.value)

    def __str__(self) -> str:
        return format(self.value, f"0{self.length}b")


def _check_len(a: BitWord, b: BitWord) -> None:
    if a.length != b.length:
        raise GF2Error(f"length mismatch: {a.length} != {b.length}")


def dot(a: BitWord, b: BitWord) -> int:
    """Parity of the overlap of two words."""
    _check_len(a, b)
    return popcount(a.value & b.value) & 1


@dataclass(frozen=True)
class BinMatrix:
    """Binary matrix with rows packed into ints (leftmost column = MSB)."""

    n_cols: int
    rows: tuple[int, ...] = ()

    def __post_init__(self):
        if not 0 <= self.n_cols <= MAX_BITS:
            raise GF2Error(f"column count {self.n_cols} outside 0..{MAX_BITS}")
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        for r in self.rows:
            if r < 0 or r >> self.n_cols:
                raise GF2Error("row does not fit in n_cols bits")

    @classmethod
    def from_strings(cls, lines: Iterable[str], n_cols: int | None = None) -> BinMatrix:
        lines = [ln.strip() for ln in lines if ln.strip()]
        if not lines:
            if n_cols is None:
                raise GF2Error("empty matrix needs an explicit column count")
            return cls(n_cols)
        widths = {len(ln) for ln in lines}
        if len(widths) != 1:
            raise GF2Error(f"ragged matrix rows: widths {sorted(widths)}")
        width = widths.pop()
        if n_cols is not None and n_cols != width:
            raise GF2Error(f"expected {n_cols} columns, got {width}")
        return cls(width, tuple(BitWord.from_str(ln).value for ln in lines))

    @classmethod
    def from_words(cls, words: Sequence[BitWord], n_cols: int | None = None) -> BinMatrix:
        if not words:
            return cls(n_cols or 0)
        width = words[0].length
        for w in words:
            if w.length != width:
                raise GF2Error("rows of unequal length")
        return cls(width, tuple(w.value for w in words))

    @classmethod
    def from_array(cls, a) -> BinMatrix:
        a = np.asarray(a, dtype=np.uint8) & 1
        if a.ndim != 2:
            raise GF2Error("expected a 2-d array")
        rows = tuple(int("".join(map(str, r)), 2) if len(r) else 0 for r in a)
        return cls(a.shape[1], rows)

    @classmethod
    def identity(cls, n: int) -> BinMatrix:
        return cls(n, tuple(1 << (n - 1 - i) for i in range(n)))

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> BinMatrix:
        return cls(n_cols, (0,) * n_rows)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    def row(self, i: int) -> BitWord:
        return BitWord(self.n_cols, self.rows[i])

    def words(self) -> list[BitWord]:
        return [BitWord(self.n_cols, r) for r in self.rows]

    def to_array(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in range(self.n_cols):
                out[i, j] = (r >> (self.n_cols - 1 - j)) & 1
        return out

    def column(self, j: int) -> int:
        """Column ``j`` (0-based from the left) packed with row 0 as MSB."""
        shift = self.n_cols - 1 - j
        v = 0
        for r in self.rows:
            v = (v << 1) | ((r >> shift) & 1)
        return v

    def transpose(self) -> BinMatrix:
        return BinMatrix(self.n_rows, tuple(self.column(j) for j in range(self.n_cols)))

    def delete_column(self, j: int) -> BinMatrix:
        return BinMatrix(self.n_cols - 1, tuple(_drop_bit(r, self.n_cols - 1 - j) for r in self.rows))

    def permute_columns(self, perm: Sequence[int]) -> BinMatrix:
        """New matrix whose column ``i`` is old column ``perm[i]``."""
        return BinMatrix(self.n_cols, tuple(permute_bits(r, perm, self.n_cols) for r in self.rows))

    def to_text(self) -> str:
        return "\n".join(format(r, f"0{self.n_cols}b") for r in self.rows)

    def __str__(self) -> str:
        return self.to_text()

    def __len__(self) -> int:
        return self.n_rows


def _drop_bit(r: int, shift: int) -> int:
    high = r >> (shift + 1)
    low = r & ((1 << shift) - 1)
    return (high << shift) | low


def permute_bits(r: int, perm: Sequence[int], n: int) -> int:
    out = 0
    for src in perm:
        out = (out << 1) | ((r >> (n - 1 - src)) & 1)
    return out


def stack(*mats: BinMatrix) -> BinMatrix:
    widths = {m.n_cols for m in mats}
    if len(widths) != 1:
        raise GF2Error(f"cannot stack matrices of widths {sorted(widths)}")
    rows: tuple[int, ...] = ()
    for m in mats:
        rows += m.rows
    return BinMatrix(widths.pop(), rows)


def matmul_t(a: BinMatrix, b: BinMatrix) -> BinMatrix:
    """``a @ b.T`` over GF(2); result has a.n_rows rows and b.n_rows columns."""
    if a.n_cols != b.n_cols:
        raise GF2Error("column counts differ")
    m = b.n_rows
    rows = []
    for ra in a.rows:
        v = 0
        for rb in b.rows:
            v = (v << 1) | (popcount(ra & rb) & 1)
        rows.append(v)
    return BinMatrix(m, tuple(rows))


def rref(m: BinMatrix) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; pivots taken at the leftmost free column.

    Returns the nonzero reduced rows and their pivot columns (0-based from
    the left), both ordered by pivot column.
    """
    n = m.n_cols
    rows = [r for r in m.rows if r]
    pivots: list[int] = []
    out: list[int] = []
    for col in range(n):
        bit = 1 << (n - 1 - col)
        idx = next((i for i, r in enumerate(rows) if r & bit), None)
        if idx is None:
            continue
        p = rows.pop(idx)
        rows = [r ^ p if r & bit else r for r in rows]
        out = [r ^ p if r & bit else r for r in out]
        out.append(p)
        pivots.append(col)
        rows = [r for r in rows if r]
        if not rows:
            break
    return out, pivots


def rank(m: BinMatrix) -> int:
    # Plain elimination keyed on each row's top bit; no reduced form needed.
    basis: dict[int, int] = {}
    for r in m.rows:
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = r
                break
            r ^= basis[top]
    return len(basis)


def reduce_vector(v: int, rows: Sequence[int], pivots: Sequence[int], n: int) -> int:
    """Reduce ``v`` against rref rows, clearing every pivot bit."""
    for r, p in zip(rows, pivots):
        if v >> (n - 1 - p) & 1:
            v ^= r
    return v


def combination(m: BinMatrix, v: int) -> int | None:
    """Row selector x (bit i picks row i) with XOR of the picked rows equal to v, or None."""
    basis: dict[int, tuple[int, int]] = {}
    for i, r in enumerate(m.rows):
        sel = 1 << i
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = (r, sel)
                break
            br, bs = basis[top]
            r ^= br
            sel ^= bs
    x = 0
    while v:
        top = v.bit_length() - 1
        if top not in basis:
            return None
        br, bs = basis[top]
        v ^= br
        x ^= bs
    return x


def in_rowspan(v: int, m: BinMatrix) -> bool:
    rows, piv = rref(m)
    return reduce_vector(v, rows, piv, m.n_cols) == 0


def rowspan_equal(a: BinMatrix, b: BinMatrix) -> bool:
    if a.n_cols != b.n_cols:
        return False
    ra, pa = rref(a)
    rb, pb = rref(b)
    return pa == pb and ra == rb


def null_space(m: BinMatrix) -> BinMatrix:
    """Full-rank basis of {v : m v^T = 0}, one row per free column."""
    n = m.n_cols
    if n < 1:
        raise GF2Error("null space of a matrix with no columns")
    rows, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = 1 << (n - 1 - f)
        for r, p in zip(rows, pivots):
            if r >> (n - 1 - f) & 1:
                v |= 1 << (n - 1 - p)
        basis.append(v)
    return BinMatrix(n, tuple(basis))


def standard_form(h: BinMatrix) -> tuple[BinMatrix, list[int]]:
    """Generator matching the check matrix ``h`` via (A | I) <-> (I | A^T).

    Columns are scanned right to left for pivots, so a matrix already in
    (A | I) form keeps the identity permutation.  The returned permutation
    ``perm`` satisfies: column ``i`` of the permuted matrices is original
    column ``perm[i]``; in permuted coordinates ``h`` reads (A | I_{n-k})
    and the generator reads (I_k | A^T).  The generator itself is returned
    in the original coordinates, so ``g @ h.T == 0`` always holds.
    """
    n = h.n_cols
    r = h.n_rows
    if rank(h) != r:
        raise GF2Error("check matrix is not full rank; remove redundant rows first")
    rows = list(h.rows)
    pivot_of_row: list[int | None] = [None] * r
    used = [False] * r
    for col in range(n - 1, -1, -1):
        bit = 1 << (n - 1 - col)
        idx = next((i for i in range(r) if not used[i] and rows[i] & bit), None)
        if idx is None:
            continue
        used[idx] = True
        pivot_of_row[idx] = col
        for i in range(r):
            if i != idx and rows[i] & bit:
                rows[i] ^= rows[idx]
        if all(used):
            break
    # order reduced rows by pivot column so they form I in the trailing block
    order = sorted(range(r), key=lambda i: pivot_of_row[i])
    pivot_cols = [pivot_of_row[i] for i in order]
    pset = set(pivot_cols)
    info_cols = [c for c in range(n) if c not in pset]
    perm = info_cols + pivot_cols
    # generator row for info column c: 1 at c, and A^T entries at the pivot columns
    g_rows = []
    for c in info_cols:
        v = 1 << (n - 1 - c)
        for i, pc in zip(order, pivot_cols):
            if rows[i] >> (n - 1 - c) & 1:
                v |= 1 << (n - 1 - pc)
        g_rows.append(v)
    return BinMatrix(n, tuple(g_rows)), perm


def delete_row_and_pivot(m: BinMatrix, row_index: int) -> BinMatrix:
    """Remove a row together with a column only that row touches.

    The column is the leftmost 1 of the chosen row; the row is first added
    to every other row with a 1 there.  On a generator matrix this shortens
    the code ([n,k,d] -> [n-1,k-1,>=d]); on a check matrix it punctures it
    ([n,k,d] -> [n-1,k,>=d-1]).
    """
    if not 0 <= row_index < m.n_rows:
        raise IndexError(f"row index {row_index} out of range for {m.n_rows} rows")
    if rank(m) != m.n_rows:
        raise GF2Error("matrix must be full rank")
    n = m.n_cols
    target = m.rows[row_index]
    col = n - target.bit_length()
    bit = 1 << (n - 1 - col)
    rows = [r ^ target if r & bit else r for i, r in enumerate(m.rows) if i != row_index]
    return BinMatrix(n, tuple(rows)).delete_column(col)


def parse_matrix_block(lines: Iterable[str], n_cols: int | None = None) -> BinMatrix:
    """Parse the text format: one '0'/'1' row per line, blank line ends the block."""
    block = []
    for ln in lines:
        ln = ln.strip()
        if not ln:
            break
        block.append(ln)
    return BinMatrix.from_strings(block, n_cols)


def format_matrix_block(m: BinMatrix) -> str:
    return m.to_text() + "\n"
