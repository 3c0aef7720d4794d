"""Exact code-vector states, Pauli errors and the orthogonality oracle.

Amplitudes are unnormalized integers (+1/-1 on code vectors), so every
orthogonality test is an exact zero test.  Y errors are applied as X.Z
with the global phase dropped, which cannot change whether an inner
product vanishes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Mapping, Sequence

import numpy as np

from . import _kernels
from .gf2 import BinMatrix, BitWord, popcount, rank, reduce_vector, rref, stack

MAX_ORACLE_N = 16
MAX_ORACLE_K = 8


class InvalidSignedCode(ValueError):
    pass


class OracleScaleError(ValueError):
    pass


# --------------------------------------------------------------------------
# sign vectors


@dataclass(frozen=True)
class SignVector:
    """w sign bits; bit m (LSB = word 0) set means amplitude -1 on word m."""

    w: int
    bits: int = 0

    def __post_init__(self):
        if self.w < 1 or self.w & (self.w - 1):
            raise ValueError(f"sign vector length {self.w} is not a power of two")
        if self.bits < 0 or self.bits >> self.w:
            raise ValueError("sign bits exceed the vector length")

    @classmethod
    def from_hex(cls, text: str, w: int) -> SignVector:
        return cls(w, int(text, 16))

    @classmethod
    def from_binary(cls, text: str) -> SignVector:
        """Printed form: rightmost character is word 0."""
        return cls(len(text), int(text, 2))

    def sign(self, m: int) -> int:
        return -1 if (self.bits >> m) & 1 else 1

    def to_hex(self) -> str:
        return format(self.bits, f"0{max(1, self.w // 4)}X")

    def to_binary(self) -> str:
        return format(self.bits, f"0{self.w}b")

    def __xor__(self, other: SignVector) -> SignVector:
        if self.w != other.w:
            raise ValueError("sign vector lengths differ")
        return SignVector(self.w, self.bits ^ other.bits)


# --------------------------------------------------------------------------
# states and errors


@dataclass(frozen=True)
class PauliOp:
    n: int
    x_mask: int = 0
    z_mask: int = 0

    @classmethod
    def from_label(cls, label: str) -> PauliOp:
        """'IXZY...' with the first character acting on qubit 1 (leftmost bit)."""
        n = len(label)
        x = z = 0
        for ch in label.upper():
            if ch not in "IXYZ":
                raise ValueError(f"bad Pauli letter {ch!r}")
            x = (x << 1) | (ch in "XY")
            z = (z << 1) | (ch in "ZY")
        return cls(n, x, z)

    @property
    def weight(self) -> int:
        return popcount(self.x_mask | self.z_mask)

    @property
    def x_weight(self) -> int:
        return popcount(self.x_mask)

    @property
    def z_weight(self) -> int:
        return popcount(self.z_mask)

    def label(self) -> str:
        out = []
        for i in range(self.n - 1, -1, -1):
            x, z = (self.x_mask >> i) & 1, (self.z_mask >> i) & 1
            out.append("IXZY"[x | (z << 1)])
        return "".join(out)

    def short_label(self) -> str:
        """Sparse form such as 'X1 Z4' (qubits counted from 1 at the left)."""
        parts = [f"{ch}{i + 1}" for i, ch in enumerate(self.label()) if ch != "I"]
        return " ".join(parts) or "I"


@dataclass(frozen=True)
class QuantumState:
    n: int
    amps: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "amps", {w: a for w, a in self.amps.items() if a})

    def __len__(self) -> int:
        return len(self.amps)

    def terms(self) -> list[tuple[BitWord, int]]:
        return [(BitWord(self.n, w), a) for w, a in self.amps.items()]


def apply_pauli(e: PauliOp, s: QuantumState) -> QuantumState:
    if e.n != s.n:
        raise ValueError("Pauli and state act on different qubit counts")
    out = {}
    for u, a in s.amps.items():
        sign = -1 if popcount(u & e.z_mask) & 1 else 1
        out[u ^ e.x_mask] = a * sign
    return QuantumState(s.n, out)


def inner(a: QuantumState, b: QuantumState) -> int:
    if a.n != b.n:
        raise ValueError("states act on different qubit counts")
    small, big = (a.amps, b.amps) if len(a.amps) <= len(b.amps) else (b.amps, a.amps)
    return sum(amp * big[w] for w, amp in small.items() if w in big)


# --------------------------------------------------------------------------
# signed codes


@dataclass(frozen=True, eq=False)
class SignedCode:
    """Code vectors |v_b> = sum_m (-1)^{s_b[m]} |D_b + gcos_m>.

    ``sign_gen`` holds K generator rows of the linear sign code (each a
    w-bit int, bit m = word m); ``sign_offset`` is XORed onto every sign
    vector.  A plus code has all-zero signs.  A non-linear allocation can
    instead be given as ``sign_table``, one sign vector per code vector,
    which then overrides the generator rows.
    """

    gcos: BinMatrix
    d_matrix: BinMatrix
    sign_gen: tuple[int, ...] = ()
    sign_offset: int = 0
    name: str = ""
    sign_table: tuple[int, ...] = ()

    def __post_init__(self):
        if self.gcos.n_cols != self.d_matrix.n_cols:
            raise InvalidSignedCode("gcos and D have different widths")
        both = stack(self.gcos, self.d_matrix)
        if rank(both) != both.n_rows:
            raise InvalidSignedCode("rows of gcos and D are linearly dependent")
        gen = tuple(int(s) for s in self.sign_gen) or (0,) * self.K
        object.__setattr__(self, "sign_gen", gen)
        if len(gen) != self.K:
            raise InvalidSignedCode(f"need {self.K} sign generator rows, got {len(gen)}")
        table = tuple(int(s) for s in self.sign_table)
        object.__setattr__(self, "sign_table", table)
        if table and len(table) != 1 << self.K:
            raise InvalidSignedCode(f"sign table needs {1 << self.K} entries, got {len(table)}")
        for s in gen + (self.sign_offset,) + table:
            if s < 0 or s >> self.w:
                raise InvalidSignedCode(f"sign vector wider than w = {self.w}")

    @property
    def n(self) -> int:
        return self.gcos.n_cols

    @property
    def K(self) -> int:
        return self.d_matrix.n_rows

    @property
    def r(self) -> int:
        return self.gcos.n_rows

    @property
    def w(self) -> int:
        return 1 << self.r

    @classmethod
    def from_hex(
        cls, gcos: BinMatrix, d_matrix: BinMatrix, signs: Sequence[str], offset: str = "0", name: str = ""
    ) -> SignedCode:
        return cls(gcos, d_matrix, tuple(int(s, 16) for s in signs), int(offset, 16), name)

    @classmethod
    def from_plus(cls, p, name: str = "") -> SignedCode:
        return cls(p.h2, p.d_matrix, name=name or p.name)

    def with_signs(self, sign_gen: Sequence[int], sign_offset: int = 0) -> SignedCode:
        return SignedCode(self.gcos, self.d_matrix, tuple(sign_gen), sign_offset, self.name)

    def is_plus(self) -> bool:
        return self.sign_offset == 0 and not any(self.sign_gen) and not any(self.sign_table)

    def is_linear(self) -> bool:
        return not self.sign_table

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<SignedCode{label} n={self.n} K={self.K} w={self.w}>"


def _xor_select(rows: Sequence[int], mask: int) -> int:
    v = 0
    i = 0
    while mask:
        if mask & 1:
            v ^= rows[i]
        mask >>= 1
        i += 1
    return v


def word_at(c: SignedCode, b: int, m: int) -> BitWord:
    if not 0 <= b < 1 << c.K:
        raise IndexError(f"code vector index {b} out of range")
    if not 0 <= m < c.w:
        raise IndexError(f"word index {m} out of range")
    return BitWord(c.n, _xor_select(c.d_matrix.rows, b) ^ _xor_select(c.gcos.rows, m))


def sign_vector(c: SignedCode, b: int) -> SignVector:
    if not 0 <= b < 1 << c.K:
        raise IndexError(f"code vector index {b} out of range")
    if c.sign_table:
        return SignVector(c.w, c.sign_table[b])
    return SignVector(c.w, _xor_select(c.sign_gen, b) ^ c.sign_offset)


def expand_code_vector(c: SignedCode, b: int) -> QuantumState:
    s = sign_vector(c, b)
    amps: dict[int, int] = {}
    for m in range(c.w):
        u = word_at(c, b, m).value
        if u in amps:
            raise InvalidSignedCode(f"word {u:0{c.n}b} appears twice in code vector {b}")
        amps[u] = s.sign(m)
    return QuantumState(c.n, amps)


def format_listing(c: SignedCode) -> str:
    """All code vectors in the printed listing format, four terms per line."""
    lines = []
    for b in range(1 << c.K):
        label = format(b, f"0{c.K}b") if c.K else ""
        lines.append(f"|v{label}> =")
        s = sign_vector(c, b)
        terms = [f"{'-' if s.sign(m) < 0 else '+'}|{word_at(c, b, m)}>" for m in range(c.w)]
        for i in range(0, len(terms), 4):
            lines.append("  " + " ".join(terms[i : i + 4]))
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# error sets


def error_set(n: int, t: int | None = None, tx: int | None = None, tz: int | None = None) -> list[PauliOp]:
    """Pauli errors within a budget, identity first.

    Joint budget ``t``: every operator of weight <= t.  Split budget
    (``tx``, ``tz``): X part of weight <= tx and Z part of weight <= tz,
    chosen independently.
    """
    if t is not None:
        if tx is not None or tz is not None:
            raise ValueError("give either t or (tx, tz), not both")
        if t < 0:
            raise ValueError("t must be nonnegative")
        ops = []
        for wt in range(0, t + 1):
            for qubits in itertools.combinations(range(n), wt):
                for kinds in itertools.product((1, 2, 3), repeat=wt):
                    x = z = 0
                    for q, kd in zip(qubits, kinds):
                        bit = 1 << (n - 1 - q)
                        if kd & 1:
                            x |= bit
                        if kd & 2:
                            z |= bit
                    ops.append(PauliOp(n, x, z))
        return ops
    if tx is None or tz is None:
        raise ValueError("give either t or both tx and tz")
    if tx < 0 or tz < 0:
        raise ValueError("budgets must be nonnegative")
    xs = list(_masks_upto(n, tx))
    zs = list(_masks_upto(n, tz))
    return [PauliOp(n, x, z) for x in xs for z in zs]


def _masks_upto(n: int, t: int) -> Iterator[int]:
    for wt in range(0, t + 1):
        for qubits in itertools.combinations(range(n), wt):
            yield sum(1 << (n - 1 - q) for q in qubits)


# --------------------------------------------------------------------------
# fast oracle: states as (coset key, packed sign bits)


def _pack_bits(bits: np.ndarray) -> np.ndarray:
    """Pack a (..., w) bool array into (..., lanes) uint64, bit j = word j."""
    w = bits.shape[-1]
    lanes = max(1, (w + 63) // 64)
    pad = lanes * 64 - w
    if pad:
        bits = np.concatenate([bits, np.zeros(bits.shape[:-1] + (pad,), dtype=bool)], axis=-1)
    packed = np.packbits(bits, axis=-1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").reshape(bits.shape[:-1] + (lanes,))


class CosetFrame:
    """Shared geometry of all errored code vectors of a (gcos, D) skeleton.

    Every state e.v_b lives on the coset gcos-span + D_b + x_e.  Writing
    that coset as rep + span and indexing its words by their gcos
    coordinates j, the state's sign at j is
    ``s_b[j ^ delta] ^ parity((D_b ^ l_{j^delta}) & z_e)``, where
    ``delta`` is the coordinate of D_b + x_e + rep.  Keys, deltas and the
    Z-parity terms depend only on the skeleton and the error set.
    """

    def __init__(self, gcos: BinMatrix, d_matrix: BinMatrix, errors: Sequence[PauliOp]):
        n = gcos.n_cols
        self.n = n
        self.K = d_matrix.n_rows
        self.r = gcos.n_rows
        self.w = 1 << self.r
        self.errors = list(errors)
        span = np.zeros(self.w, dtype=np.int64)
        for i, g in enumerate(gcos.rows):
            span[1 << i : 2 << i] = span[: 1 << i] ^ g
        self.span = span
        coord_of = {int(v): m for m, v in enumerate(span)}
        red_rows, pivots = rref(gcos)
        nb = 1 << self.K
        E = len(self.errors)
        d_words = [_xor_select(d_matrix.rows, b) for b in range(nb)]
        self.d_words = d_words
        keys = np.empty((nb, E), dtype=np.int64)
        delta = np.empty((nb, E), dtype=np.int64)
        cache: dict[int, tuple[int, int]] = {}
        for b in range(nb):
            for k, e in enumerate(self.errors):
                v = d_words[b] ^ e.x_mask
                hit = cache.get(v)
                if hit is None:
                    rep = reduce_vector(v, red_rows, pivots, n)
                    hit = (rep, coord_of[v ^ rep])
                    cache[v] = hit
                keys[b, k], delta[b, k] = hit
        self.keys = keys
        self.delta = delta
        j = np.arange(self.w, dtype=np.int64)
        self.gather = j[None, None, :] ^ delta[:, :, None]  # (nb, E, w): word index m for canonical j
        zs = np.array([e.z_mask for e in self.errors], dtype=np.int64)
        dz = np.array([[popcount(d & int(z)) & 1 for z in zs] for d in d_words], dtype=bool)
        lz = (np.bitwise_count(span[None, :] & zs[:, None]) & 1).astype(bool)  # (E, w)
        zbits = dz[:, :, None] ^ np.take_along_axis(
            np.broadcast_to(lz[None], (nb, E, self.w)), self.gather, axis=2
        )
        self.zterm = _pack_bits(zbits)  # (nb, E, lanes)
        self.lanes = self.zterm.shape[-1]

    def sign_term(self, b: int, s_bits: int) -> np.ndarray:
        """Packed s_b[j ^ delta] for every error, shape (E, lanes)."""
        sb = ((s_bits >> np.arange(self.w, dtype=object)) & 1).astype(bool)
        return _pack_bits(sb[self.gather[b]])

    def states(self, sign_vectors: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
        nb = 1 << self.K
        P = np.empty_like(self.zterm)
        for b in range(nb):
            P[b] = self.sign_term(b, sign_vectors[b]) ^ self.zterm[b]
        return self.keys.reshape(-1), P.reshape(-1, self.lanes)


@dataclass
class OracleReport:
    passed: bool
    conflict_count: int
    n_states: int
    n_errors: int
    first_conflicts: list[dict]
    method: str

    def as_dict(self) -> dict:
        return {
            "pass": self.passed,
            "conflict_count": self.conflict_count,
            "n_states": self.n_states,
            "n_errors": self.n_errors,
            "first_conflicts": self.first_conflicts,
            "method": self.method,
        }


def _check_scale(c: SignedCode) -> None:
    if c.n > MAX_ORACLE_N or c.K > MAX_ORACLE_K:
        raise OracleScaleError(
            f"oracle limited to n <= {MAX_ORACLE_N}, K <= {MAX_ORACLE_K}; got n={c.n}, K={c.K}"
        )


def verify_orthogonal(
    c: SignedCode,
    t: int | None = None,
    tx: int | None = None,
    tz: int | None = None,
    method: str = "fast",
    limit: int = 10,
) -> OracleReport:
    """Check that every distinct (code vector, error) pair gives orthogonal states."""
    _check_scale(c)
    errors = error_set(c.n, t, tx, tz)
    E = len(errors)
    if method == "naive":
        return _verify_naive(c, errors, limit)
    if method != "fast":
        raise ValueError(f"unknown oracle method {method!r}")
    frame = CosetFrame(c.gcos, c.d_matrix, errors)
    signs = [sign_vector(c, b).bits for b in range(1 << c.K)]
    keys, P = frame.states(signs)
    count, first = _kernels.count_conflicts(keys, P, c.w, limit)
    described = []
    for i, j in first:
        bi, ei = divmod(i, E)
        bj, ej = divmod(j, E)
        ip = c.w - 2 * int(np.bitwise_count(P[i] ^ P[j]).sum())
        described.append(
            {"a": [bi, errors[ei].short_label()], "b": [bj, errors[ej].short_label()], "inner": ip}
        )
    return OracleReport(count == 0, count, len(keys), E, described, "fast")


def _verify_naive(c: SignedCode, errors: list[PauliOp], limit: int) -> OracleReport:
    states = []
    labels = []
    for b in range(1 << c.K):
        v = expand_code_vector(c, b)
        for e in errors:
            states.append(apply_pauli(e, v))
            labels.append((b, e.short_label()))
    count = 0
    first = []
    for i in range(len(states)):
        for j in range(i + 1, len(states)):
            ip = inner(states[i], states[j])
            if ip:
                count += 1
                if len(first) < limit:
                    first.append({"a": list(labels[i]), "b": list(labels[j]), "inner": ip})
    return OracleReport(count == 0, count, len(states), len(errors), first, "naive")


# --------------------------------------------------------------------------
# counting bounds


@dataclass(frozen=True)
class HammingBoundReport:
    lhs: int
    rhs: int

    @property
    def satisfied(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def perfect(self) -> bool:
        return self.lhs == self.rhs

    def as_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "satisfied": self.satisfied, "perfect": self.perfect}


def quantum_hamming_bound(n: int, K: int, t: int) -> HammingBoundReport:
    """2^K * sum_{i<=t} 3^i C(n,i) against 2^n."""
    lhs = (1 << K) * sum(3**i * comb(n, i) for i in range(t + 1))
    return HammingBoundReport(lhs, 1 << n)


def min_n_for(K: int, t: int) -> int:
    """Smallest n >= 1 allowed by the quantum Hamming bound."""
    if K < 0 or t < 0:
        raise ValueError("K and t must be nonnegative")
    n = 1
    while not quantum_hamming_bound(n, K, t).satisfied:
        n += 1
    return n
