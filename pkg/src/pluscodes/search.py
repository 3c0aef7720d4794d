"""Backtracking searches for sign allocations and displacement rows."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels
from .codes import LinearCode, span_min_weight
from .cssplus import InvalidPlusCode, PlusCode, verify_plus
from .gf2 import BinMatrix, null_space, popcount, rank, standard_form, stack
from .qstate import (
    CosetFrame,
    SignedCode,
    SignVector,
    _check_scale,
    error_set,
    verify_orthogonal,
)


def hadamard_candidates(w: int) -> list[SignVector]:
    """Rows of the order-w Sylvester-Hadamard matrix and their complements.

    Candidate ``2*a + c`` is the vector m -> <a,m> xor c, so the order is
    a ascending with the uncomplemented row first.
    """
    if w < 1 or w & (w - 1):
        raise ValueError(f"w = {w} is not a power of two")
    out = []
    ones = (1 << w) - 1
    for a in range(w):
        bits = sum(1 << m for m in range(w) if popcount(a & m) & 1)
        out.append(SignVector(w, bits))
        out.append(SignVector(w, bits ^ ones))
    return out


# --------------------------------------------------------------------------
# sign search


@dataclass
class SignSearchReport:
    result: SignedCode | None
    visited: int
    pruned: int
    space_size: int
    elapsed: float
    hits: list[SignedCode] = field(default_factory=list)
    complete: bool = True

    @property
    def examined(self) -> int:
        return self.visited + self.pruned

    def as_dict(self) -> dict:
        res = None
        if self.result is not None:
            w = self.result.w
            if self.result.sign_table:
                res = {"sign_table": [SignVector(w, s).to_hex() for s in self.result.sign_table]}
            else:
                res = {
                    "sign_gen": [SignVector(w, s).to_hex() for s in self.result.sign_gen],
                    "sign_offset": SignVector(w, self.result.sign_offset).to_hex(),
                }
        return {
            "found": self.result is not None,
            "result": res,
            "visited": self.visited,
            "pruned": self.pruned,
            "examined": self.examined,
            "space_size": self.space_size,
            "complete": self.complete,
            "hits": len(self.hits),
            "elapsed": round(self.elapsed, 3),
        }


class _Prober:
    """Packed errored states of code vector b under sign vector s, memoized."""

    def __init__(self, frame: CosetFrame):
        self.frame = frame
        self.memo: dict[tuple[int, int], np.ndarray] = {}

    def states(self, b: int, s: int) -> tuple[np.ndarray, np.ndarray]:
        key = (b, s)
        P = self.memo.get(key)
        if P is None:
            P = self.frame.sign_term(b, s) ^ self.frame.zterm[b]
            self.memo[key] = P
        return self.frame.keys[b], P


def search_signs(
    gcos: BinMatrix,
    d_matrix: BinMatrix,
    t: int | None = None,
    tx: int | None = None,
    tz: int | None = None,
    linear_only: bool = True,
    allow_offset: bool = True,
    exhaustive: bool = False,
    full_offsets: bool = False,
    limit: int | None = None,
    max_hits: int = 1,
) -> SignSearchReport:
    """Depth-first search for signs that make the skeleton pass the oracle.

    Candidates are the Hadamard rows and complements, or every w-bit
    vector when ``exhaustive``.  With ``linear_only`` the K generator rows
    are chosen (after the offset, which is the outermost loop); otherwise
    each of the 2^K code vectors gets its own candidate.  A branch is cut
    as soon as a newly signed code vector has an errored state that is
    not orthogonal to one already placed.  ``limit`` caps the number of
    complete candidates examined (visited plus pruned).

    Offsets come from the same candidate list unless ``full_offsets``,
    which tries all 2^w vectors.  A Hadamard-row offset only amounts to a
    Z operator applied to every code vector, so it cannot turn a failure
    into a pass; codes such as {5,1,3} need an offset outside that set.
    """
    start = time.perf_counter()
    probe_code = SignedCode(gcos, d_matrix)
    _check_scale(probe_code)
    K, w = probe_code.K, probe_code.w
    errors = error_set(probe_code.n, t, tx, tz)
    frame = CosetFrame(gcos, d_matrix, errors)
    prober = _Prober(frame)
    if exhaustive:
        if w > 16:
            raise ValueError("exhaustive candidate mode is limited to w <= 16")
        cands = list(range(1 << w))
    else:
        cands = [s.bits for s in hadamard_candidates(w)]
    nc = len(cands)
    if linear_only:
        if full_offsets and allow_offset:
            if w > 16:
                raise ValueError("full offset mode is limited to w <= 16")
            offsets = list(range(1 << w))
        else:
            offsets = cands if allow_offset else [0]
        levels = K
    else:
        offsets = [0]
        levels = 1 << K
    space = len(offsets) * nc**levels
    lanes = frame.lanes
    empty_keys = np.empty(0, dtype=np.int64)
    empty_P = np.empty((0, lanes), dtype=np.uint64)

    visited = 0
    pruned = 0
    hits: list[SignedCode] = []
    stopped = False

    def place(bs: Sequence[int], signs: Sequence[int], keys, P):
        """Add code vectors bs with the given signs; None on conflict."""
        for b, s in zip(bs, signs):
            kb, pb = prober.states(b, s)
            if _kernels.any_new_conflict(keys, P, kb, pb, w):
                return None
            keys = np.concatenate([keys, kb])
            P = np.concatenate([P, pb])
        return keys, P

    def budget_left() -> bool:
        return limit is None or visited + pruned < limit

    def leaf(sign_gen: list[int], offset: int) -> None:
        nonlocal visited, stopped
        visited += 1
        if linear_only:
            code = probe_code.with_signs(sign_gen, offset)
        else:
            code = SignedCode(gcos, d_matrix, sign_table=tuple(sign_gen))
        if verify_orthogonal(code, t, tx, tz).passed:
            hits.append(code)
            if len(hits) >= max_hits:
                stopped = True

    def dfs_linear(level: int, rows: list[int], offset: int, svecs: list[int], keys, P) -> None:
        nonlocal pruned, stopped
        if level == K:
            leaf(rows, offset)
            return
        for s in cands:
            if stopped or not budget_left():
                stopped = True
                return
            new_b = range(1 << level, 2 << level)
            new_s = [sv ^ s for sv in svecs]
            placed = place(new_b, new_s, keys, P)
            if placed is None:
                pruned += nc ** (K - level - 1)
                continue
            dfs_linear(level + 1, rows + [s], offset, svecs + new_s, *placed)

    def dfs_free(b: int, chosen: list[int], keys, P) -> None:
        nonlocal pruned, stopped
        if b == levels:
            leaf(chosen, 0)
            return
        for s in cands:
            if stopped or not budget_left():
                stopped = True
                return
            placed = place([b], [s], keys, P)
            if placed is None:
                pruned += nc ** (levels - b - 1)
                continue
            dfs_free(b + 1, chosen + [s], *placed)

    if linear_only:
        for off in offsets:
            if stopped or not budget_left():
                stopped = True
                break
            placed = place([0], [off], empty_keys, empty_P)
            if placed is None:
                pruned += nc**K
                continue
            dfs_linear(0, [], off, [off], *placed)
    else:
        dfs_free(0, [], empty_keys, empty_P)

    complete = visited + pruned == space or (bool(hits) and len(hits) >= max_hits)
    return SignSearchReport(
        hits[0] if hits else None,
        visited,
        pruned,
        space,
        time.perf_counter() - start,
        hits,
        complete,
    )


# --------------------------------------------------------------------------
# displacement search


@dataclass
class DisplacementReport:
    result: PlusCode | None
    examined: int
    elapsed: float
    rows_used: list[int] = field(default_factory=list)

    def as_dict(self) -> dict:
        out = {"found": self.result is not None, "examined": self.examined, "elapsed": round(self.elapsed, 3)}
        if self.result is not None:
            p = verify_plus(self.result)
            out["rows_used"] = [i + 1 for i in self.rows_used]
            out["d_matrix"] = self.result.d_matrix.to_text().splitlines()
            out["params"] = p.as_dict()
        return out


def _check_columns(m: BinMatrix) -> tuple[bool, bool]:
    """(no zero column, all columns distinct) for a check matrix."""
    cols = [m.column(j) for j in range(m.n_cols)]
    return 0 not in cols, len(set(cols)) == len(cols)


def _span_at_least(h1: BinMatrix, rows: Sequence[int], target: int) -> bool:
    """True when rowspan(h1 ; rows) has no nonzero word lighter than ``target``.

    Weights 1 and 2 show up as zero or repeated columns of the dual
    generator, so targets up to 3 need no sweep.
    """
    g = BinMatrix(h1.n_cols, h1.rows + tuple(rows))
    if target <= 1:
        return True
    if target <= 3:
        nonzero, distinct = _check_columns(null_space(g))
        return nonzero and (target == 2 or distinct)
    return span_min_weight(g, floor=target - 1) >= target


def search_displacements(c1_check: BinMatrix, K: int, target_d2: int) -> DisplacementReport:
    """Choose K rows of the standard-form generator of C1 as displacements.

    Rows are tried in order with backtracking.  Adding a row to D can only
    enlarge C2 and so never raises d2, which lets a partial choice that
    already falls below ``target_d2`` be abandoned.
    """
    start = time.perf_counter()
    c1 = LinearCode.from_check(c1_check)
    h1 = c1.check
    if K < 0:
        raise ValueError("K must be nonnegative")
    if K > 2 * c1.k - c1.n:
        raise ValueError(f"K = {K} exceeds 2k - n = {2 * c1.k - c1.n}")
    if K == 0:
        return DisplacementReport(PlusCode(h1, BinMatrix(c1.n)), 1, time.perf_counter() - start)
    g1 = standard_form(h1)[0].rows
    base_rank = h1.n_rows
    examined = 0

    def rec(first: int, chosen: list[int]) -> list[int] | None:
        nonlocal examined
        if len(chosen) == K:
            # D must also stay independent modulo C2-perp or code vectors merge
            try:
                PlusCode(h1, BinMatrix(c1.n, tuple(g1[i] for i in chosen)))
            except InvalidPlusCode:
                return None
            return chosen
        for i in range(first, len(g1) - (K - len(chosen) - 1)):
            rows = [g1[j] for j in chosen] + [g1[i]]
            examined += 1
            if rank(BinMatrix(c1.n, h1.rows + tuple(rows))) != base_rank + len(rows):
                continue
            if not _span_at_least(h1, rows, target_d2):
                continue
            hit = rec(i + 1, chosen + [i])
            if hit is not None:
                return hit
        return None

    hit = rec(0, [])
    elapsed = time.perf_counter() - start
    if hit is None:
        return DisplacementReport(None, examined, elapsed)
    d = BinMatrix(c1.n, tuple(g1[i] for i in hit))
    return DisplacementReport(PlusCode(h1, d), examined, elapsed, hit)
