import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pluscodes.gf2 import BinMatrix
from pluscodes.qstate import (
    InvalidSignedCode,
    OracleScaleError,
    PauliOp,
    QuantumState,
    SignedCode,
    SignVector,
    apply_pauli,
    error_set,
    expand_code_vector,
    format_listing,
    inner,
    min_n_for,
    quantum_hamming_bound,
    sign_vector,
    verify_orthogonal,
    word_at,
)
from pluscodes.registry import golden_listing

from oracles import dense_code_vectors, dense_errors, dense_orthogonal, dense_pauli, qhamming, to_dense


def dense_check(c: SignedCode, t: int) -> tuple[bool, int]:
    signs = [sign_vector(c, b).bits for b in range(1 << c.K)]
    return dense_orthogonal(to_dense(c.gcos), to_dense(c.d_matrix), signs, t)


@pytest.fixture(scope="module")
def steane(registry):
    return registry["steane-8-3-3"].signed()


# -- sign vectors and words ----------------------------------------------------


def test_sign_vector_conventions():
    s = SignVector.from_hex("3333", 16)
    assert s.to_binary() == "0011001100110011"
    assert [s.sign(m) for m in range(4)] == [-1, -1, 1, 1]
    assert SignVector.from_binary("00010100").bits == 0x14
    assert (s ^ SignVector.from_hex("0F0F", 16)).to_hex() == "3C3C"
    with pytest.raises(ValueError):
        SignVector(12, 0)
    with pytest.raises(ValueError):
        SignVector(4, 16)


def test_word_at_examples(steane):
    assert str(word_at(steane, 0, 0)) == "00000000"
    assert str(word_at(steane, 1, 1)) == "10010101"
    assert str(word_at(steane, 4, 0)) == "10001000"
    with pytest.raises(IndexError):
        word_at(steane, 8, 0)


def test_sign_vector_examples(steane):
    assert sign_vector(steane, 1).to_hex() == "3333"
    assert sign_vector(steane, 3).to_hex() == "3C3C"
    assert sign_vector(steane, 0).bits == 0


def test_expand_examples(steane, registry):
    v0 = expand_code_vector(steane, 0)
    assert len(v0) == 16 and set(v0.amps.values()) == {1}
    v7 = expand_code_vector(steane, 7)
    signs = "".join("+" if v7.amps[word_at(steane, 7, m).value] > 0 else "-" for m in range(16))
    assert signs == "+-+--+-+" * 2
    five = registry["laflamme-5-1-3"].signed()
    assert sign_vector(five, 0).to_binary() == "00010100"
    assert sign_vector(five, 1).to_binary() == "01110010"
    v = expand_code_vector(five, 0)
    minus = [m for m in range(8) if v.amps[word_at(five, 0, m).value] < 0]
    assert minus == [2, 4]


def test_listing_matches_golden(steane):
    assert format_listing(steane) == golden_listing("steane-8-3-3")


def test_plus_listing_is_all_plus(registry):
    text = format_listing(registry["plus-7-1-3"].signed())
    assert "-|" not in text and text.count("+|") == 16


def test_dense_vectors_agree_with_expansion(steane):
    dense = dense_code_vectors(to_dense(steane.gcos), to_dense(steane.d_matrix), [sign_vector(steane, b).bits for b in range(8)])
    for b in range(8):
        v = expand_code_vector(steane, b)
        for u, a in v.amps.items():
            assert dense[b, u] == a
        assert np.count_nonzero(dense[b]) == 16


def test_signed_code_validation(steane):
    with pytest.raises(InvalidSignedCode):
        SignedCode(steane.gcos, BinMatrix(8, (steane.gcos.rows[0],)))
    with pytest.raises(InvalidSignedCode):
        SignedCode(steane.gcos, steane.d_matrix, (1, 2))
    with pytest.raises(InvalidSignedCode):
        SignedCode(steane.gcos, steane.d_matrix, (1 << 16, 0, 0))
    with pytest.raises(InvalidSignedCode):
        SignedCode(steane.gcos, steane.d_matrix, sign_table=(0, 1))
    assert steane.is_linear() and not steane.is_plus()


# -- Pauli algebra ----------------------------------------------------------


def test_pauli_examples(steane):
    s = QuantumState(3, {0b100: 1})
    z1 = PauliOp.from_label("ZII")
    assert apply_pauli(z1, s).amps == {0b100: -1}
    assert apply_pauli(PauliOp(3), s) == s
    v0 = expand_code_vector(steane, 0)
    assert apply_pauli(PauliOp(8, 0xFF, 0), v0) == v0
    e = PauliOp.from_label("XIZY")
    assert (e.weight, e.x_weight, e.z_weight) == (3, 2, 2)
    assert e.label() == "XIZY" and e.short_label() == "X1 Z3 Y4"


@st.composite
def states(draw, n=5):
    words = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=8, unique=True))
    amps = draw(st.lists(st.sampled_from([-2, -1, 1, 2]), min_size=len(words), max_size=len(words)))
    return QuantumState(n, dict(zip(words, amps)))


paulis = st.builds(PauliOp, st.just(5), st.integers(0, 31), st.integers(0, 31))


@given(states(), paulis)
def test_pauli_is_an_involution_up_to_sign(s, e):
    twice = apply_pauli(e, apply_pauli(e, s))
    if e.x_mask & e.z_mask:
        # the dropped phase of Y can leave an overall sign
        assert twice == s or twice.amps == {w: -a for w, a in s.amps.items()}
    else:
        assert twice == s


@given(states(), states(), paulis)
def test_inner_product_is_error_invariant(a, b, e):
    assert inner(a, b) == inner(b, a)
    assert inner(apply_pauli(e, a), apply_pauli(e, b)) == inner(a, b)


@given(states(), paulis)
def test_apply_pauli_matches_dense(s, e):
    vec = np.zeros(32, dtype=np.int64)
    for u, a in s.amps.items():
        vec[u] = a
    out = apply_pauli(e, s)
    ref = dense_pauli(vec, 5, e.x_mask, e.z_mask)
    assert {u: int(ref[u]) for u in np.nonzero(ref)[0]} == out.amps


# -- error sets -------------------------------------------------------------


@pytest.mark.parametrize("n, t, count", [(8, 1, 25), (5, 1, 16), (14, 1, 43), (8, 2, 277)])
def test_joint_error_counts(n, t, count):
    errs = error_set(n, t=t)
    assert len(errs) == count
    assert errs[0] == PauliOp(n)
    assert {(e.x_mask, e.z_mask) for e in errs} == set(dense_errors(n, t))


def test_pair_error_counts():
    errs = error_set(10, tx=1, tz=1)
    assert len(errs) == 11 * 11
    assert all(e.x_weight <= 1 and e.z_weight <= 1 for e in errs)
    with pytest.raises(ValueError):
        error_set(5, t=1, tx=1, tz=1)
    with pytest.raises(ValueError):
        error_set(5, tx=1)


# -- the oracle ---------------------------------------------------------------


@pytest.mark.parametrize("name", ["laflamme-5-1-3", "steane-8-3-3", "signed-10-4-3"])
def test_oracle_matches_dense_gram(registry, backend, name):
    c = registry[name].signed()
    rep = verify_orthogonal(c, t=1)
    ok, count = dense_check(c, 1)
    assert rep.passed is ok is True
    assert rep.conflict_count == count == 0


def test_eleven_five_three_matches_dense(registry, backend):
    c = registry["signed-11-5-3"].signed()
    rep = verify_orthogonal(c, t=1)
    assert rep.passed
    assert dense_check(c, 1) == (True, 0)


def test_steane_t2_fails_with_the_dense_count(steane, backend):
    rep = verify_orthogonal(steane, t=2)
    ok, count = dense_check(steane, 2)
    assert not rep.passed and not ok
    assert rep.conflict_count == count


def test_sign_flip_fails_with_the_dense_count(steane, backend):
    mutant = steane.with_signs([steane.sign_gen[0] ^ 1] + list(steane.sign_gen[1:]))
    rep = verify_orthogonal(mutant, t=1)
    ok, count = dense_check(mutant, 1)
    assert not rep.passed and not ok
    assert rep.conflict_count == count > 0
    assert rep.first_conflicts and rep.first_conflicts[0]["inner"] != 0


@pytest.mark.parametrize("name", ["laflamme-5-1-3", "steane-8-3-3"])
def test_fast_and_naive_routes_agree(registry, backend, name):
    c = registry[name].signed()
    for t in (1, 2):
        fast = verify_orthogonal(c, t=t)
        naive = verify_orthogonal(c, t=t, method="naive")
        assert (fast.passed, fast.conflict_count, fast.n_states) == (naive.passed, naive.conflict_count, naive.n_states)


@st.composite
def small_signed(draw):
    """Random signed skeletons on 5..7 qubits with random linear signs."""
    n = draw(st.integers(5, 7))
    r = draw(st.integers(1, 3))
    K = draw(st.integers(0, 2))
    rows = draw(st.lists(st.integers(1, (1 << n) - 1), min_size=r + K, max_size=r + K))
    try:
        c = SignedCode(BinMatrix(n, tuple(rows[:r])), BinMatrix(n, tuple(rows[r:])))
    except InvalidSignedCode:
        return None
    w = c.w
    gen = draw(st.lists(st.integers(0, (1 << w) - 1), min_size=K, max_size=K))
    off = draw(st.integers(0, (1 << w) - 1))
    return c.with_signs(gen, off)


@given(small_signed(), st.integers(0, 1))
def test_oracle_matches_dense_on_random_skeletons(c, t):
    if c is None:
        return
    rep = verify_orthogonal(c, t=t)
    ok, count = dense_check(c, t)
    assert rep.passed == ok
    assert rep.conflict_count == count


def test_oracle_scale_cap(registry):
    with pytest.raises(OracleScaleError):
        verify_orthogonal(registry["plus-17-7-3"].signed(), t=1)


def test_perfect_code_fills_the_space(registry):
    c = registry["laflamme-5-1-3"].signed()
    assert verify_orthogonal(c, t=1).passed
    vecs = dense_code_vectors(to_dense(c.gcos), to_dense(c.d_matrix), [sign_vector(c, b).bits for b in range(2)])
    states = np.array([dense_pauli(v, 5, x, z) for v in vecs for x, z in dense_errors(5, 1)])
    assert states.shape == (32, 32)
    gram = states @ states.T
    assert np.array_equal(gram, 8 * np.eye(32, dtype=np.int64))


def test_plus_codes_pass_their_classical_budget(registry):
    from pluscodes.cssplus import verify_plus

    raised_fails = 0
    for e in registry.of_kind("plus"):
        if e.n > 14:
            continue
        p = e.build()
        params = verify_plus(p)
        c = e.signed()
        assert verify_orthogonal(c, tx=params.t1, tz=params.t2).passed, e.name
        if not verify_orthogonal(c, tx=params.t1 + 1, tz=params.t2).passed:
            raised_fails += 1
    assert raised_fails > 0


# -- counting bound ---------------------------------------------------------


@pytest.mark.parametrize("n, K, t, lhs, rhs, perfect", [(5, 1, 1, 32, 32, True), (8, 3, 1, 200, 256, False), (7, 2, 1, 88, 128, False)])
def test_hamming_bound(n, K, t, lhs, rhs, perfect):
    rep = quantum_hamming_bound(n, K, t)
    assert (rep.lhs, rep.rhs) == (lhs, rhs) == qhamming(n, K, t)
    assert rep.perfect is perfect and rep.satisfied


def test_min_n_for():
    assert [min_n_for(K, 1) for K in range(1, 6)] == [5, 7, 8, 9, 10]
    assert min_n_for(1, 2) == 10
    assert min_n_for(0, 1) == 4
    for K in range(0, 6):
        for t in (1, 2):
            n = min_n_for(K, t)
            lhs, rhs = qhamming(n, K, t)
            assert lhs <= rhs
            lhs, rhs = qhamming(n - 1, K, t)
            assert lhs > rhs
