"""Plus codes: quantum codes from a pair C2-perp <= C1 of classical codes.

A plus code is stored as (h1, D): ``h1`` is the check matrix of C1 (the
amplitude-error corrector) and the K rows of ``D`` are codewords of C1
whose cosets of C2-perp form the code vectors.  C2 is generated by
``h1`` stacked on ``D``; ``h2``, the phase-error corrector, is derived.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .codes import LinearCode, is_weakly_self_dual, min_distance, span_min_weight
from .gf2 import (
    BinMatrix,
    GF2Error,
    delete_row_and_pivot,
    null_space,
    popcount,
    rank,
    standard_form,
    stack,
)


class InvalidPlusCode(ValueError):
    pass


@dataclass(frozen=True)
class CodeParams:
    n: int
    K: int
    d1: int
    d2: int

    @property
    def t1(self) -> int:
        return (self.d1 - 1) // 2

    @property
    def t2(self) -> int:
        return (self.d2 - 1) // 2

    def label(self) -> str:
        if self.d1 == self.d2:
            return f"{{{self.n},{self.K},{self.d1}}}+"
        return f"{{{self.n},{self.K},{self.d1},{self.d2}}}+"

    def as_dict(self) -> dict:
        return {"n": self.n, "K": self.K, "d1": self.d1, "d2": self.d2, "t1": self.t1, "t2": self.t2}


@dataclass(frozen=True, eq=False)
class PlusCode:
    """C2-perp <= C1 with K displacement rows.

    Usually given as (h1, D) with D inside C2 = rowspan(h1 ; D), and
    C2-perp derived.  Codes printed in generator form (gcos ; D) may have
    no such D; they keep ``gcos_matrix`` explicitly and then
    C2 = null(gcos).
    """

    h1: BinMatrix
    d_matrix: BinMatrix
    name: str = ""
    gcos_matrix: BinMatrix | None = None

    def __post_init__(self):
        h1, d = self.h1, self.d_matrix
        if h1.n_cols != d.n_cols:
            raise InvalidPlusCode("h1 and D have different widths")
        if rank(h1) != h1.n_rows:
            raise InvalidPlusCode("h1 must be full rank")
        for i, row in enumerate(d.rows):
            for h in h1.rows:
                if popcount(row & h) & 1:
                    raise InvalidPlusCode(f"row {i} of D fails a check of h1")
        if self.gcos_matrix is None:
            if rank(stack(h1, d)) != h1.n_rows + d.n_rows:
                raise InvalidPlusCode("cosets are not distinct: D rows dependent modulo rowspan(h1)")
        else:
            g = self.gcos_matrix
            if g.n_cols != h1.n_cols or rank(g) != g.n_rows:
                raise InvalidPlusCode("gcos must be full rank with n columns")
            for row in g.rows:
                if any(popcount(row & h) & 1 for h in h1.rows):
                    raise InvalidPlusCode("gcos is not inside C1")
            if g.n_rows + d.n_rows != h1.n_cols - h1.n_rows:
                raise InvalidPlusCode("gcos and D do not span C1")
        h2 = self.h2
        if rank(stack(h2, d)) != h2.n_rows + d.n_rows:
            raise InvalidPlusCode("code vectors coincide: D rows dependent modulo rowspan(h2)")

    @property
    def n(self) -> int:
        return self.h1.n_cols

    @property
    def K(self) -> int:
        return self.d_matrix.n_rows

    @cached_property
    def h2(self) -> BinMatrix:
        """Phase-error corrector: generator of C2-perp, from (h1 ; D) via (A|I) <-> (I|A^T)."""
        if self.gcos_matrix is not None:
            return self.gcos_matrix
        return standard_form(stack(self.h1, self.d_matrix))[0]

    @property
    def gcos(self) -> BinMatrix:
        """Generator of the base coset C2-perp (same as ``h2``)."""
        return self.h2

    def c2_generator(self) -> BinMatrix:
        if self.gcos_matrix is not None:
            return null_space(self.gcos_matrix)
        return stack(self.h1, self.d_matrix)

    def c1(self) -> LinearCode:
        return LinearCode.from_check(self.h1)

    def c2(self) -> LinearCode:
        return LinearCode.from_generator(self.c2_generator())

    @classmethod
    def from_generator(cls, gcos: BinMatrix, d_matrix: BinMatrix, name: str = "") -> PlusCode:
        """Build from the generator form (gcos ; D): C1 = rowspan(gcos ; D), C2-perp = rowspan(gcos)."""
        if rank(stack(gcos, d_matrix)) != gcos.n_rows + d_matrix.n_rows:
            raise InvalidPlusCode("rows of gcos and D are linearly dependent")
        h1 = null_space(stack(gcos, d_matrix))
        return cls(h1, d_matrix, name, gcos)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<PlusCode{label} n={self.n} K={self.K}>"


def build_from_h1_d(h1: BinMatrix, d_matrix: BinMatrix, name: str = "") -> PlusCode:
    return PlusCode(h1, d_matrix, name)


def _greedy_displacements(generator: BinMatrix, base: BinMatrix, count: int) -> BinMatrix:
    """Take generator rows in order, keeping those independent modulo ``base``."""
    chosen: list[int] = []
    r = rank(base)
    for g in generator.rows:
        if len(chosen) == count:
            break
        if rank(BinMatrix(base.n_cols, base.rows + tuple(chosen) + (g,))) == r + len(chosen) + 1:
            chosen.append(g)
    if len(chosen) < count:
        raise InvalidPlusCode(f"only {len(chosen)} of {count} displacement rows found")
    return BinMatrix(base.n_cols, tuple(chosen))


def build_from_weakly_self_dual(c: LinearCode, name: str = "") -> PlusCode:
    """C-perp <= C = [n,k,d] gives an {n, 2k-n, d}+ code with h1 = check of C."""
    if not is_weakly_self_dual(c):
        raise InvalidPlusCode("code does not contain its dual")
    K = 2 * c.k - c.n
    d = _greedy_displacements(c.generator, c.check, K)
    return PlusCode(c.check, d, name or (f"{c.name}-plus" if c.name else ""))


def verify_plus(p: PlusCode) -> CodeParams:
    """Classical verification: d1 = d(C1) = d(null h1), d2 = d(C2) = d(rowspan(h1 ; D)).

    For generator-form codes C2 is null(gcos) instead.
    """
    n = p.n
    if p.h1.n_rows == n:
        raise InvalidPlusCode("C1 is the zero code")
    d1 = min_distance(p.c1())
    g2 = p.c2_generator()
    d2 = span_min_weight(g2) if g2.n_rows else n + 1
    return CodeParams(n, p.K, d1, d2)


def reduce_kk1(p: PlusCode, row_index: int = 0) -> PlusCode:
    """Delete one check row (with its pivot column): {n,K,d}+ -> {n-1,K+1,>=d-1}+.

    ``p.h1`` must describe a weakly self-dual C1; the result is rebuilt
    from the punctured code with fresh greedy displacements.
    """
    h1 = p.h1
    if h1.n_rows == 0:
        raise InvalidPlusCode("no check row to delete (k = n)")
    c = LinearCode.from_check(h1)
    if not is_weakly_self_dual(c):
        raise InvalidPlusCode("row deletion needs a weakly self-dual C1")
    try:
        h_new = delete_row_and_pivot(h1, row_index)
    except GF2Error as exc:
        raise InvalidPlusCode(str(exc)) from exc
    if h_new.n_rows == 0:
        reduced = LinearCode(h_new.n_cols, h_new.n_cols, BinMatrix.identity(h_new.n_cols), h_new)
    else:
        reduced = LinearCode.from_check(h_new)
    return build_from_weakly_self_dual(reduced)


def hamming_k_bound(n: int) -> int:
    """Largest K allowed for an {n,K,3}+ code: n - 2 ceil(log2(n+1))."""
    if n < 3:
        raise ValueError("n must be at least 3")
    return n - 2 * n.bit_length()
