"""Independent reference routines for the tests.

Everything here works on dense numpy 0/1 arrays or plain enumeration and
shares no code with the package, so agreement is evidence rather than
tautology.  Sizes are kept small on purpose.
"""

from __future__ import annotations

import itertools
from math import comb

import numpy as np


def to_dense(m) -> np.ndarray:
    """BinMatrix -> (rows, n) uint8 array, column 0 = leftmost character."""
    return np.array([[int(ch) for ch in line] for line in m.to_text().split()], dtype=np.uint8).reshape(
        m.n_rows, m.n_cols
    )


def dense_rank(a: np.ndarray) -> int:
    a = a.copy() % 2
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i, c]), None)
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
        if r == rows:
            break
    return r


def span_words(a: np.ndarray) -> set[tuple[int, ...]]:
    """Every codeword of the row span, by brute force over coefficient vectors."""
    k, n = a.shape
    out = set()
    for coeffs in itertools.product((0, 1), repeat=k):
        v = np.zeros(n, dtype=np.uint8)
        for c, row in zip(coeffs, a):
            if c:
                v ^= row
        out.add(tuple(int(x) for x in v))
    return out


def kernel_words(h: np.ndarray) -> set[tuple[int, ...]]:
    """Every word x with h x^T = 0, by brute force over all 2^n words."""
    n = h.shape[1]
    out = set()
    for x in itertools.product((0, 1), repeat=n):
        if not (h @ np.array(x, dtype=np.int64) % 2).any():
            out.add(x)
    return out


def brute_min_distance(words: set[tuple[int, ...]]) -> int:
    return min(sum(w) for w in words if any(w))


def qhamming(n: int, K: int, t: int) -> tuple[int, int]:
    return (1 << K) * sum(3**j * comb(n, j) for j in range(t + 1)), 1 << n


# --------------------------------------------------------------------------
# dense state-vector oracle


def dense_code_vectors(gcos: np.ndarray, d: np.ndarray, signs: list[int]) -> np.ndarray:
    """(2^K, 2^n) integer matrix of code vectors.

    Word m of vector b is the XOR of D rows picked by b's bits and gcos rows
    picked by m's bits (bit i <-> row i); its amplitude is -1 when bit m of
    signs[b] is set.  Basis index = the word read as a binary number with
    the leftmost character most significant.
    """
    r, n = gcos.shape
    K = d.shape[0]
    out = np.zeros((1 << K, 1 << n), dtype=np.int64)
    weights = 1 << np.arange(n - 1, -1, -1)
    for b in range(1 << K):
        base = np.zeros(n, dtype=np.uint8)
        for i in range(K):
            if b >> i & 1:
                base ^= d[i]
        for m in range(1 << r):
            word = base.copy()
            for i in range(r):
                if m >> i & 1:
                    word ^= gcos[i]
            idx = int(word.astype(np.int64) @ weights)
            if out[b, idx] != 0:
                raise ValueError("repeated word inside a code vector")
            out[b, idx] = -1 if signs[b] >> m & 1 else 1
    return out


def dense_pauli(vec: np.ndarray, n: int, x_mask: int, z_mask: int) -> np.ndarray:
    """Apply X^x Z^z (Z first, phase of Y dropped) to a dense vector."""
    idx = np.arange(1 << n)
    parity = np.array([bin(i & z_mask).count("1") & 1 for i in idx])
    phased = vec * (1 - 2 * parity)
    out = np.zeros_like(vec)
    out[idx ^ x_mask] = phased
    return out


def dense_errors(n: int, t: int) -> list[tuple[int, int]]:
    """All (x_mask, z_mask) of Pauli weight <= t (X, Z, Y on each chosen qubit)."""
    out = [(0, 0)]
    for w in range(1, t + 1):
        for qubits in itertools.combinations(range(n), w):
            for kinds in itertools.product("XZY", repeat=w):
                x = z = 0
                for q, k in zip(qubits, kinds):
                    bit = 1 << (n - 1 - q)
                    if k in "XY":
                        x |= bit
                    if k in "ZY":
                        z |= bit
                out.append((x, z))
    return out


def dense_orthogonal(gcos: np.ndarray, d: np.ndarray, signs: list[int], t: int) -> tuple[bool, int]:
    """(pass, number of non-orthogonal pairs) by dense Gram matrix."""
    n = gcos.shape[1]
    vecs = dense_code_vectors(gcos, d, signs)
    states = [dense_pauli(v, n, x, z) for v in vecs for x, z in dense_errors(n, t)]
    s = np.array(states)
    gram = s @ s.T
    off = np.count_nonzero(np.triu(gram, k=1))
    return off == 0, int(off)
