"""Classical binary linear codes: constructions, distances, duality."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import _kernels
from .gf2 import BinMatrix, GF2Error, null_space, popcount, rank

MAX_EXHAUSTIVE_K = 24


class DimensionTooLarge(ValueError):
    """Exhaustive distance sweep refused: too many codewords."""


@dataclass(eq=False)
class LinearCode:
    n: int
    k: int
    generator: BinMatrix
    check: BinMatrix
    name: str = ""
    _mindist: int | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.generator.n_cols != self.n or self.check.n_cols != self.n:
            raise GF2Error("matrix widths disagree with n")
        if rank(self.generator) != self.k or self.generator.n_rows != self.k:
            raise GF2Error("generator must have k independent rows")
        if rank(self.check) != self.n - self.k or self.check.n_rows != self.n - self.k:
            raise GF2Error("check matrix must have n-k independent rows")
        for g in self.generator.rows:
            for h in self.check.rows:
                if popcount(g & h) & 1:
                    raise GF2Error("generator and check matrix are not orthogonal")

    @classmethod
    def from_generator(cls, g: BinMatrix, name: str = "") -> LinearCode:
        g = _basis(g)
        return cls(g.n_cols, g.n_rows, g, null_space(g), name)

    @classmethod
    def from_check(cls, h: BinMatrix, name: str = "") -> LinearCode:
        h = _basis(h)
        g = null_space(h)
        return cls(h.n_cols, g.n_rows, g, h, name)

    def dual(self) -> LinearCode:
        return LinearCode(self.n, self.n - self.k, self.check, self.generator, f"{self.name}-dual" if self.name else "")

    def contains(self, v: int) -> bool:
        return all(popcount(v & h) % 2 == 0 for h in self.check.rows)

    def same_codewords(self, other: LinearCode) -> bool:
        if self.n != other.n or self.k != other.k:
            return False
        return all(other.contains(g) for g in self.generator.rows)

    def __repr__(self) -> str:
        d = "" if self._mindist is None else f",{self._mindist}"
        label = f" {self.name}" if self.name else ""
        return f"<LinearCode{label} [{self.n},{self.k}{d}]>"


def _basis(m: BinMatrix) -> BinMatrix:
    """Drop redundant rows, keeping the original rows that are independent."""
    if rank(m) == m.n_rows:
        return m
    kept: list[int] = []
    for r in m.rows:
        if rank(BinMatrix(m.n_cols, tuple(kept + [r]))) > len(kept):
            kept.append(r)
    return BinMatrix(m.n_cols, tuple(kept))


# --------------------------------------------------------------------------
# catalog constructions


def make_repetition(n: int) -> LinearCode:
    if n < 2:
        raise ValueError("repetition code needs n >= 2")
    return LinearCode.from_generator(BinMatrix(n, ((1 << n) - 1,)), f"repetition-{n}")


def make_even_weight(n: int) -> LinearCode:
    if n < 2:
        raise ValueError("even-weight code needs n >= 2")
    return LinearCode.from_check(BinMatrix(n, ((1 << n) - 1,)), f"even-weight-{n}")


def hamming_check(r: int) -> BinMatrix:
    """r x (2^r - 1) check matrix; column j (1-based) is j in binary, row i holding bit i-1."""
    if r < 2:
        raise ValueError("Hamming codes need r >= 2")
    n = (1 << r) - 1
    rows = []
    for i in range(r):
        v = 0
        for j in range(1, n + 1):
            v = (v << 1) | ((j >> i) & 1)
        rows.append(v)
    return BinMatrix(n, tuple(rows))


def make_hamming(r: int) -> LinearCode:
    return LinearCode.from_check(hamming_check(r), f"hamming-{(1 << r) - 1}")


def make_extended_hamming(r: int) -> LinearCode:
    """[2^r, 2^r-1-r, 4]: all-ones check row on top, parity column appended."""
    h = hamming_check(r)
    n = h.n_cols + 1
    rows = [(1 << n) - 1] + [row << 1 for row in h.rows]
    return LinearCode.from_check(BinMatrix(n, tuple(rows)), f"ext-hamming-{n}")


def make_reed_muller_1(m: int) -> LinearCode:
    if m < 1:
        raise ValueError("Reed-Muller order-1 code needs m >= 1")
    n = 1 << m
    rows = [(1 << n) - 1]
    for i in range(m):
        v = 0
        for x in range(n):
            v = (v << 1) | ((x >> (m - 1 - i)) & 1)
        rows.append(v)
    return LinearCode.from_generator(BinMatrix(n, tuple(rows)), f"rm1-{m}")


GOLAY_POLY = (0, 2, 4, 5, 6, 10, 11)


def make_golay() -> LinearCode:
    """[23,12,7] from g(x) = 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11."""
    g = sum(1 << e for e in GOLAY_POLY)
    rows = tuple(g << (11 - i) for i in range(12))
    return LinearCode.from_generator(BinMatrix(23, rows), "golay-23")


def power_table(poly_exponents: Sequence[int], r: int) -> list[int]:
    """Successive powers of alpha in GF(2^r), where alpha^r = sum alpha^e.

    Entries are r-bit ints with bit e the coefficient of alpha^e.  Stops
    when alpha^j returns to 1.
    """
    if r < 1:
        raise ValueError("r must be positive")
    reduction = 0
    for e in poly_exponents:
        if not 0 <= e < r:
            raise ValueError(f"exponent {e} out of range for degree {r}")
        reduction ^= 1 << e
    if not reduction & 1:
        raise ValueError("polynomial is divisible by x")
    table = [1]
    x = 1
    for _ in range((1 << r) - 1):
        x <<= 1
        if x >> r:
            x = (x ^ (1 << r)) ^ reduction
        if x == 1:
            break
        table.append(x)
    return table


def make_cyclic_check(poly_exponents: Sequence[int], r: int, n: int) -> BinMatrix:
    """r x n check matrix whose column j, counted from the right, is alpha^j.

    ``poly_exponents`` lists the right-hand side of alpha^r = ..., so
    x^4 = 1 + x is ``(0, 1)``.  Columns read top to bottom give the
    coefficients of alpha^(r-1) down to alpha^0.
    """
    table = power_table(poly_exponents, r)
    if len(table) != (1 << r) - 1:
        raise ValueError(f"polynomial is not primitive: alpha has period {len(table)}")
    if not r <= n <= (1 << r) - 1:
        raise ValueError(f"need {r} <= n <= {(1 << r) - 1}")
    rows = []
    for i in range(r - 1, -1, -1):
        v = 0
        for j in range(n - 1, -1, -1):
            v = (v << 1) | ((table[j] >> i) & 1)
        rows.append(v)
    return BinMatrix(n, tuple(rows))


def make_bch_check(poly_exponents: Sequence[int], r: int, t: int, n: int | None = None) -> BinMatrix:
    """Narrow-sense BCH check matrix from rows alpha^j, alpha^3j, ..., redundant rows removed."""
    table = power_table(poly_exponents, r)
    order = len(table)
    if order != (1 << r) - 1:
        raise ValueError("polynomial is not primitive")
    n = order if n is None else n
    rows = []
    for s in range(1, 2 * t, 2):
        for i in range(r - 1, -1, -1):
            v = 0
            for j in range(n - 1, -1, -1):
                v = (v << 1) | ((table[(s * j) % order] >> i) & 1)
            rows.append(v)
    return _basis(BinMatrix(n, tuple(rows)))


# --------------------------------------------------------------------------
# distances and duality


def span_min_weight(m: BinMatrix, floor: int = 1) -> int:
    """Minimum nonzero weight in the rowspan of ``m`` (rows must be independent)."""
    if m.n_rows > MAX_EXHAUSTIVE_K:
        raise DimensionTooLarge(
            f"span has dimension {m.n_rows} > {MAX_EXHAUSTIVE_K}; exhaustive sweep refused"
        )
    if m.n_rows == 0:
        raise ValueError("zero code has no nonzero codeword")
    rows = _kernels.pack(m.rows, m.n_cols)
    return _kernels.min_weight(rows, floor)


def min_distance(c: LinearCode) -> int:
    """Exact minimum distance by a Gray-ordered sweep over all 2^k codewords."""
    if c._mindist is None:
        if c.k > MAX_EXHAUSTIVE_K:
            raise DimensionTooLarge(
                f"k = {c.k} exceeds the exhaustive cap of {MAX_EXHAUSTIVE_K}; "
                "use a bounded search or the dual"
            )
        c._mindist = span_min_weight(c.generator)
    return c._mindist


def min_distance_bruteforce(c: LinearCode) -> int:
    """Reference sweep in plain Python; only for small k."""
    best = None
    rows = c.generator.rows
    for mask in range(1, 1 << c.k):
        v = 0
        for i, r in enumerate(rows):
            if mask >> i & 1:
                v ^= r
        w = popcount(v)
        best = w if best is None else min(best, w)
    if best is None:
        raise ValueError("zero code")
    return best


def is_weakly_self_dual(c: LinearCode) -> bool:
    """True iff every pair of check rows overlaps evenly, i.e. C-perp is inside C."""
    rows = c.check.rows
    return all(popcount(a & b) % 2 == 0 for i, a in enumerate(rows) for b in rows[i:])


def combine(base: LinearCode, ext: LinearCode, row_assignment: Sequence[int]) -> LinearCode:
    """Append ext.n columns to base's check matrix, writing ext's generator rows into them.

    Row ``i`` of ``ext.generator`` lands in check row ``row_assignment[i]``
    (0-based); other appended entries stay zero.
    """
    if len(row_assignment) != ext.k:
        raise ValueError(f"need {ext.k} row indices, got {len(row_assignment)}")
    if len(set(row_assignment)) != len(row_assignment):
        raise ValueError("row assignment must be injective")
    m = base.check.n_rows
    for i in row_assignment:
        if not 0 <= i < m:
            raise IndexError(f"check row {i} out of range")
    extra = [0] * m
    for g, i in zip(ext.generator.rows, row_assignment):
        extra[i] = g
    rows = tuple((h << ext.n) | e for h, e in zip(base.check.rows, extra))
    name = f"{base.name}+{ext.name}" if base.name and ext.name else ""
    return LinearCode.from_check(BinMatrix(base.n + ext.n, rows), name)


def identity_code(n: int) -> LinearCode:
    """The [n,n,1] code of all words (generator I_n)."""
    return LinearCode(n, n, BinMatrix.identity(n), BinMatrix(n), f"all-{n}")


# --------------------------------------------------------------------------
# best-known distance table


@dataclass(frozen=True)
class DistanceTable:
    entries: dict[tuple[int, int], tuple[int, int]]

    @classmethod
    def parse(cls, text: str) -> DistanceTable:
        entries = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 4:
                raise ValueError(f"line {lineno}: expected 'n k d_lower d_upper'")
            n, k, lo, hi = map(int, parts)
            if not 1 <= lo <= hi <= n:
                raise ValueError(f"line {lineno}: bounds {lo}..{hi} invalid for n={n}")
            entries[(n, k)] = (lo, hi)
        return cls(entries)

    @classmethod
    def load(cls, path: str | Path | None = None) -> DistanceTable:
        if path is None:
            text = resources.files("pluscodes.data").joinpath("distance_table.txt").read_text()
        else:
            text = Path(path).read_text()
        return cls.parse(text)

    @property
    def max_n(self) -> int:
        return max(n for n, _ in self.entries)

    def upper(self, n: int, k: int) -> int:
        try:
            return self.entries[(n, k)][1]
        except KeyError:
            raise KeyError(f"distance table has no entry for n={n}, k={k}") from None

    def lower(self, n: int, k: int) -> int:
        return self.entries[(n, k)][0]


def n_min_bound(d: int, d_perp: int, table: DistanceTable) -> int:
    """Smallest n at which some k allows both [n,k,d] and [n,n-k,d_perp].

    A necessary condition only: the bound says nothing about whether the
    two codes can be duals of each other.
    """
    if d < 2 or d_perp < 2:
        raise ValueError("distances must be at least 2")
    for n in range(d, table.max_n + 1):
        for k in range(1, n):
            if table.upper(n, k) >= d and table.upper(n, n - k) >= d_perp:
                return n
    raise LookupError(f"distance table (n <= {table.max_n}) exhausted before a bound for ({d},{d_perp})")
