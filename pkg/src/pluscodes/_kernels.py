"""Hot loops: codeword weight sweeps and orthogonality conflict counting.

Each kernel has a numba implementation and a pure-numpy one.  The numba
path is used when numba imports and ``PLUSCODES_BACKEND`` is not set to
``numpy``.  Words are packed into rows of uint64 lanes, lane 0 holding the
least significant 64 bits.
"""

from __future__ import annotations

import os
import warnings

import numpy as np

try:
    import numba
    from numba import njit, prange

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

BACKEND = os.environ.get("PLUSCODES_BACKEND", "numba" if HAVE_NUMBA else "numpy").lower()
if BACKEND not in ("numba", "numpy"):
    raise ImportError(f"PLUSCODES_BACKEND must be 'numba' or 'numpy', not {BACKEND!r}")
if BACKEND == "numba" and not HAVE_NUMBA:  # pragma: no cover
    BACKEND = "numpy"

# numba falls back to another threading layer when the system TBB is too old
warnings.filterwarnings("ignore", message="The TBB threading layer requires")

if HAVE_NUMBA and os.environ.get("PLUSCODES_WORKERS"):
    numba.set_num_threads(int(os.environ["PLUSCODES_WORKERS"]))

_M64 = (1 << 64) - 1


def pack(values, n_bits: int) -> np.ndarray:
    """Pack Python ints into an (len, lanes) uint64 array."""
    lanes = max(1, (n_bits + 63) // 64)
    out = np.zeros((len(values), lanes), dtype=np.uint64)
    for i, v in enumerate(values):
        for j in range(lanes):
            out[i, j] = (int(v) >> (64 * j)) & _M64
    return out


def unpack(row: np.ndarray) -> int:
    return sum(int(x) << (64 * j) for j, x in enumerate(row))


# --------------------------------------------------------------------------
# minimum nonzero weight of a linear span


def _min_weight_numpy(rows: np.ndarray, floor: int) -> int:
    k, lanes = rows.shape
    if k == 0:
        return -1
    low = min(k, 16)
    table = np.zeros((1 << low, lanes), dtype=np.uint64)
    for i in range(low):
        table[1 << i : 2 << i] = table[: 1 << i] ^ rows[i]
    base_w = np.bitwise_count(table).sum(axis=1, dtype=np.int64)
    best = int(base_w[1:].min()) if len(base_w) > 1 else 1 << 30
    if best <= floor:
        return best
    high = k - low
    offset = np.zeros(lanes, dtype=np.uint64)
    for g in range(1, 1 << high):
        # Gray step: flip the row indexed by the lowest set bit of g
        bit = (g & -g).bit_length() - 1
        offset ^= rows[low + bit]
        w = np.bitwise_count(table ^ offset).sum(axis=1, dtype=np.int64).min()
        if w < best:
            best = int(w)
            if best <= floor:
                break
    return best


if HAVE_NUMBA:

    @njit(cache=True, inline="always")
    def _popcount64(x):
        x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
        x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
        x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
        return int((x * np.uint64(0x0101010101010101)) >> np.uint64(56))

    @njit(cache=True)
    def _sweep_chunk(rows, low, prefix, floor):
        lanes = rows.shape[1]
        cur = prefix.copy()
        best = 1 << 30
        w = 0
        for j in range(lanes):
            w += _popcount64(cur[j])
        if w > 0:
            best = w
        if best <= floor:
            return best
        for g in range(1, 1 << low):
            t = g
            bit = 0
            while (t & 1) == 0:
                t >>= 1
                bit += 1
            w = 0
            for j in range(lanes):
                cur[j] ^= rows[bit, j]
                w += _popcount64(cur[j])
            if 0 < w < best:
                best = w
                if best <= floor:
                    break
        return best

    @njit(cache=True, parallel=True)
    def _min_weight_numba_impl(rows, floor):
        k, lanes = rows.shape
        low = k if k < 16 else 16
        high = k - low
        n_chunks = 1 << high
        results = np.empty(n_chunks, dtype=np.int64)
        for c in prange(n_chunks):
            prefix = np.zeros(lanes, dtype=np.uint64)
            for i in range(high):
                if (c >> i) & 1:
                    for j in range(lanes):
                        prefix[j] ^= rows[low + i, j]
            results[c] = _sweep_chunk(rows, low, prefix, floor)
        return results.min()

    def _min_weight_numba(rows: np.ndarray, floor: int) -> int:
        if rows.shape[0] == 0:
            return -1
        return int(_min_weight_numba_impl(np.ascontiguousarray(rows), floor))


def min_weight(rows: np.ndarray, floor: int = 1) -> int:
    """Smallest nonzero weight in the span of packed ``rows``.

    The rows must be linearly independent.  Stops early once a weight
    ``<= floor`` is seen.  Returns -1 for an empty row set.
    """
    if BACKEND == "numba":
        return _min_weight_numba(rows, floor)
    return _min_weight_numpy(rows, floor)


# --------------------------------------------------------------------------
# orthogonality conflicts between signed states sharing a support
#
# A state is (key, P): ``key`` names the coset it is supported on and P
# holds one sign bit per word of that coset in canonical order.  Two states
# overlap only when their keys match, and then their inner product is
# w - 2 * popcount(P ^ P'), zero iff popcount(P ^ P') == w / 2.


def _conflicts_numpy(keys: np.ndarray, P: np.ndarray, w: int, limit: int):
    order = np.argsort(keys, kind="stable")
    ks = keys[order]
    count = 0
    first: list[tuple[int, int]] = []
    starts = np.flatnonzero(np.r_[True, ks[1:] != ks[:-1]])
    ends = np.r_[starts[1:], len(ks)]
    for s, e in zip(starts, ends):
        if e - s < 2:
            continue
        idx = order[s:e]
        g = P[idx]
        pc = np.bitwise_count(g[:, None, :] ^ g[None, :, :]).sum(axis=2)
        bad = np.triu(2 * pc != w, k=1)
        c = int(bad.sum())
        if c:
            count += c
            if len(first) < limit:
                ii, jj = np.nonzero(bad)
                for a, b in zip(ii, jj):
                    if len(first) >= limit:
                        break
                    x, y = sorted((int(idx[a]), int(idx[b])))
                    first.append((x, y))
    first.sort()
    return count, first[:limit]


if HAVE_NUMBA:

    @njit(cache=True)
    def _conflicts_numba_impl(keys, P, w, limit):
        order = np.argsort(keys, kind="mergesort")
        n = len(keys)
        lanes = P.shape[1]
        count = 0
        first = np.full((limit, 2), -1, dtype=np.int64)
        nfirst = 0
        s = 0
        while s < n:
            e = s + 1
            while e < n and keys[order[e]] == keys[order[s]]:
                e += 1
            for a in range(s, e):
                ia = order[a]
                for b in range(a + 1, e):
                    ib = order[b]
                    pc = 0
                    for j in range(lanes):
                        pc += _popcount64(P[ia, j] ^ P[ib, j])
                    if 2 * pc != w:
                        count += 1
                        if nfirst < limit:
                            first[nfirst, 0] = min(ia, ib)
                            first[nfirst, 1] = max(ia, ib)
                            nfirst += 1
            s = e
        return count, first[:nfirst]

    def _conflicts_numba(keys, P, w, limit):
        if len(keys) == 0:
            return 0, []
        count, first = _conflicts_numba_impl(
            np.ascontiguousarray(keys, dtype=np.int64), np.ascontiguousarray(P), w, max(limit, 1)
        )
        pairs = sorted((int(a), int(b)) for a, b in first)
        return int(count), pairs[:limit]


def count_conflicts(keys: np.ndarray, P: np.ndarray, w: int, limit: int = 10):
    """Count unordered pairs of states with a nonzero inner product.

    Returns ``(count, first)`` where ``first`` lists up to ``limit`` index
    pairs.  Which pairs are listed is backend-dependent when the count
    exceeds ``limit``.
    """
    if BACKEND == "numba":
        return _conflicts_numba(keys, P, w, limit)
    return _conflicts_numpy(keys, P, w, limit)


def _new_conflict_numpy(old_keys, old_P, new_keys, new_P, w) -> bool:
    if len(new_keys) == 0:
        return False
    if len(old_keys):
        same = new_keys[:, None] == old_keys[None, :]
        if same.any():
            pc = np.bitwise_count(new_P[:, None, :] ^ old_P[None, :, :]).sum(axis=2)
            if np.any(same & (2 * pc != w)):
                return True
    same = np.triu(new_keys[:, None] == new_keys[None, :], k=1)
    if same.any():
        pc = np.bitwise_count(new_P[:, None, :] ^ new_P[None, :, :]).sum(axis=2)
        if np.any(same & (2 * pc != w)):
            return True
    return False


if HAVE_NUMBA:

    @njit(cache=True)
    def _new_conflict_numba(old_keys, old_P, new_keys, new_P, w):
        lanes = new_P.shape[1]
        for a in range(len(new_keys)):
            ka = new_keys[a]
            for b in range(a + 1, len(new_keys)):
                if new_keys[b] == ka:
                    pc = 0
                    for j in range(lanes):
                        pc += _popcount64(new_P[a, j] ^ new_P[b, j])
                    if 2 * pc != w:
                        return True
            for b in range(len(old_keys)):
                if old_keys[b] == ka:
                    pc = 0
                    for j in range(lanes):
                        pc += _popcount64(new_P[a, j] ^ old_P[b, j])
                    if 2 * pc != w:
                        return True
        return False


def any_new_conflict(old_keys, old_P, new_keys, new_P, w: int) -> bool:
    """True if a new state clashes with an old state or another new one."""
    if BACKEND == "numba":
        return bool(_new_conflict_numba(old_keys, old_P, new_keys, new_P, w))
    return _new_conflict_numpy(old_keys, old_P, new_keys, new_P, w)
