import itertools
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from dupcode.errors import DecodeFail, PreconditionError
from dupcode.protect import (
    FULL,
    TENENGOLTS,
    IndelHashParams,
    SubstHashParams,
    eta_decode,
    eta_deserialize,
    eta_hash,
    eta_serialize,
    is_prime,
    next_prime,
    rep_decode,
    rep_decode_bruteforce,
    rep_encode,
    zeta_decode,
    zeta_deserialize,
    zeta_hash,
    zeta_serialize,
    zeta_to_json,
)


def test_primes():
    assert [v for v in range(30) if is_prime(v)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert next_prime(24) == 29 and next_prime(29) == 29


def test_ell_selection():
    p = SubstHashParams(1, 4, 8)
    assert p.ell == 11  # smallest prime above both 8 and 2(Q-1)
    assert SubstHashParams(2, 256, 64).ell == 1021
    # strictly above N even when N is itself prime
    assert SubstHashParams(1, 2, 7).ell == 11
    for t, Q, N in itertools.product((1, 2, 3), (2, 4, 64), (5, 8, 64)):
        ell = SubstHashParams(t, Q, N).ell
        assert is_prime(ell) and ell > N and ell >= 2 * t * (Q - 1) + 1


def test_zeta_shape_and_zero():
    p = SubstHashParams(2, 4, 10)
    assert zeta_hash([0] * 10, p) == (0, 0, 0, 0)
    assert len(zeta_hash([3] * 10, p)) == 4
    with pytest.raises(PreconditionError):
        zeta_hash([4] + [0] * 9, p)
    with pytest.raises(PreconditionError):
        zeta_hash([0] * 9, p)


def test_zeta_distinct_digests_within_distance_2t():
    p = SubstHashParams(1, 4, 8)
    rnd = random.Random(0)
    for _ in range(3000):
        a = [rnd.randrange(4) for _ in range(8)]
        b = list(a)
        for i in rnd.sample(range(8), rnd.randint(1, 2)):
            b[i] = (b[i] + rnd.randrange(1, 4)) % 4
        assert zeta_hash(a, p) != zeta_hash(b, p)


def test_zeta_kernel_has_no_sparse_vectors():
    p = SubstHashParams(1, 4, 8)
    for w in (1, 2):
        for supp in itertools.combinations(range(1, 9), w):
            for vals in itertools.product([v for v in range(-3, 4) if v], repeat=w):
                s = [sum(v * i**j for i, v in zip(supp, vals)) % p.ell for j in (1, 2)]
                assert any(s)


def test_zeta_decode_zero_errors_and_all_singles_sample():
    p = SubstHashParams(1, 4, 8)
    rnd = random.Random(1)
    for _ in range(500):
        msg = [rnd.randrange(4) for _ in range(8)]
        d = zeta_hash(msg, p)
        assert zeta_decode(msg, d, p) == msg
        for i in range(8):
            for a in range(4):
                c = list(msg)
                c[i] = a
                assert zeta_decode(c, d, p) == msg


def test_zeta_random_t2_large():
    p = SubstHashParams(2, 256, 64)
    rnd = random.Random(5)
    for _ in range(1000):
        msg = [rnd.randrange(256) for _ in range(64)]
        d = zeta_hash(msg, p)
        c = list(msg)
        for i in rnd.sample(range(64), rnd.randint(0, 2)):
            c[i] = rnd.randrange(256)
        assert zeta_decode(c, d, p) == msg


@settings(max_examples=200)
@given(st.integers(1, 3), st.data())
def test_zeta_decodes_up_to_t(t, data):
    N, Q = 12, 16
    p = SubstHashParams(t, Q, N)
    msg = data.draw(st.lists(st.integers(0, Q - 1), min_size=N, max_size=N))
    pos = data.draw(st.lists(st.integers(0, N - 1), max_size=t, unique=True))
    c = list(msg)
    for i in pos:
        c[i] = data.draw(st.integers(0, Q - 1))
    assert zeta_decode(c, zeta_hash(msg, p), p) == msg


def test_zeta_out_of_alphabet_entries_are_treated_as_substitutions():
    p = SubstHashParams(1, 4, 8)
    msg = [1, 2, 3, 0, 1, 2, 3, 0]
    c = list(msg)
    c[3] = 9
    assert zeta_decode(c, zeta_hash(msg, p), p) == msg


def test_zeta_decode_failure_is_loud():
    p = SubstHashParams(1, 4, 8)
    msg = [0] * 8
    c = [1, 1, 1, 0, 0, 0, 0, 0]
    with pytest.raises(DecodeFail):
        zeta_decode(c, zeta_hash(msg, p), p)
    with pytest.raises(DecodeFail):
        zeta_decode(msg, (11, 0), p)


def test_zeta_serialisation():
    p = SubstHashParams(2, 64, 8)
    d = zeta_hash([5, 60, 0, 1, 2, 3, 63, 9], p)
    s = zeta_serialize(d, p, 4)
    assert len(s) == p.symbols(4) and all(0 <= a < 4 for a in s)
    assert zeta_deserialize(s, p, 4) == d
    obj = json.loads(zeta_to_json(d, p))
    assert obj["kind"] == "zeta" and obj["residues"] == list(d) and obj["params"]["ell"] == p.ell


def test_tenengolts_exhaustive_small():
    for N in range(1, 7):
        p = IndelHashParams(1, 4, N)
        for msg in itertools.product(range(4), repeat=N):
            d = eta_hash(msg, p)
            assert eta_decode(msg, d, p) == msg
            for j in range(N + 1):
                for a in range(4):
                    assert eta_decode(msg[:j] + (a,) + msg[j:], d, p) == msg
            for j in range(N):
                assert eta_decode(msg[:j] + msg[j + 1:], d, p) == msg


def test_eta_full_mode_and_serialisation():
    p = IndelHashParams(3, 4, 5, FULL)
    msg = (0, 1, 2, 3, 0)
    assert eta_hash(msg, p) == msg
    assert eta_decode((3, 3, 3), msg, p) == msg
    q = IndelHashParams(1, 4, 9, TENENGOLTS)
    d = eta_hash((1, 2, 3, 0, 1, 2, 3, 0, 1), q)
    s = eta_serialize(d, q)
    assert len(s) == q.symbols() == q.a_width + 1
    assert eta_deserialize(s, q) == d
    with pytest.raises(PreconditionError):
        IndelHashParams(2, 4, 5, TENENGOLTS)


def test_eta_mismatch_is_loud():
    p = IndelHashParams(1, 4, 4)
    with pytest.raises(DecodeFail):
        eta_decode((0, 0, 0, 1), eta_hash((0, 0, 0, 0), p), p)
    with pytest.raises(DecodeFail):
        eta_decode((0, 0), eta_hash((0, 0, 0, 0), p), p)


def test_repetition_examples():
    assert rep_encode((0, 1), 1) == (0, 0, 1, 1)
    assert rep_decode((0, 0, 3, 1, 1), 1, 2) == (0, 1)
    with pytest.raises(DecodeFail):
        rep_decode((0, 0, 1), 1, 2)
    with pytest.raises(DecodeFail):
        rep_decode((0, 1, 2, 3), 1, 2)


def _insertions(w, t, Q):
    level = {w}
    out = {w}
    for _ in range(t):
        level = {y[:j] + (a,) + y[j:] for y in level for j in range(len(y) + 1) for a in range(Q)}
        out |= level
    return out


@pytest.mark.parametrize("t", [1, 2])
def test_repetition_exhaustive_uniqueness(t):
    for length in range(1, 4 if t == 1 else 3):
        for msg in itertools.product(range(4), repeat=length):
            for y in _insertions(rep_encode(msg, t), t, 4):
                assert rep_decode_bruteforce(y, t, length) == {msg}
                assert rep_decode(y, t, length) == msg


def test_repetition_decoder_agrees_with_bruteforce_on_junk():
    rnd = random.Random(4)
    for _ in range(2000):
        t = rnd.randint(1, 2)
        length = rnd.randint(1, 3)
        extra = rnd.randint(0, t)
        y = tuple(rnd.randrange(3) for _ in range(length * (t + 1) + extra))
        cands = rep_decode_bruteforce(y, t, length)
        assert len(cands) <= 1
        if cands:
            assert rep_decode(y, t, length) == next(iter(cands))
        else:
            with pytest.raises(DecodeFail):
                rep_decode(y, t, length)
