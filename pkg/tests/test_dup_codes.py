import itertools
import json
import math
import random

import pytest

from dupcode.alphabet import ComplementMap
from dupcode.dup_channel import DuplicationEvent, apply, replay, sample
from dupcode.dup_codes import (
    PAPER,
    REPETITION,
    CodeLayout,
    c_decode,
    c_encode,
    container_from_json,
    container_to_json,
    redundancy_order,
    run_vector,
    split_windows,
    window_diagnostics,
)
from dupcode.errors import DecodeFail, PreconditionError, TooManyErrors
from dupcode.rll_codec import rll_encode
from dupcode.run_algebra import FULL, VT1, associated_vector

P4 = ComplementMap.paired(4)


def rand_msg(rnd, layout):
    return tuple(rnd.randrange(layout.q) for _ in range(layout.message_length))


def test_layout_geometry():
    L = CodeLayout(4, 8, 1)
    seg = L.segments()
    assert seg == {"payload": (1, 8), "guards": (9, 9), "zeta": (10, 17), "repetition": (18, 23)}
    assert L.length == 23 and L.redundancy == 16
    bounds = sorted(seg.values())
    assert bounds[0][0] == 1 and bounds[-1][1] == L.length
    assert all(a[1] + 1 == b[0] for a, b in zip(bounds, bounds[1:]))
    assert CodeLayout.from_dict(L.to_dict()) == L


def test_layout_validation():
    with pytest.raises(PreconditionError):
        CodeLayout(2, 8, 1)
    with pytest.raises(PreconditionError):
        CodeLayout(4, 8, 0)
    with pytest.raises(PreconditionError):
        CodeLayout(4, 8, 2, 2, PAPER, VT1)
    with pytest.raises(PreconditionError):
        CodeLayout(4, 8, 1, 1, PAPER, FULL)
    assert CodeLayout(4, 8, 2, 2).run_mode == FULL
    assert CodeLayout(4, 8, 1, 2).run_mode == VT1


def test_guards_are_complemented_last_symbol():
    L = CodeLayout(4, 32, 2, 1, REPETITION)
    rnd = random.Random(0)
    for _ in range(200):
        x = rand_msg(rnd, L)
        cw = c_encode(x, L)
        xp = rll_encode(x, L.rll)
        assert cw[:32] == xp
        assert cw[32:34] == (xp[-1] ^ 1,) * 2


def test_construction1_vector_is_padded_associated_vector():
    L = CodeLayout(4, 32, 1)
    rnd = random.Random(1)
    for _ in range(100):
        xp = rll_encode(rand_msg(rnd, L), L.rll)
        assert run_vector(xp, L, P4) == associated_vector(xp, 32, P4)


def test_zero_error_roundtrip_all_messages_n8():
    for cons in (1, 2):
        L = CodeLayout(4, 8, 1, cons)
        for x in itertools.product(range(4), repeat=7):
            assert c_decode(c_encode(x, L), L) == x


def test_full_per_run_hash_matches_construction1():
    rnd = random.Random(2)
    for t in (1, 2):
        a, b = CodeLayout(4, 32, t, 1), CodeLayout(4, 32, t, 2, PAPER, FULL)
        for _ in range(100):
            x = rand_msg(rnd, a)
            assert c_encode(x, a) == c_encode(x, b)
            assert c_decode(c_encode(x, b), b) == c_decode(c_encode(x, a), a) == x


@pytest.mark.parametrize("cons", [1, 2])
def test_single_duplication_sampled_exhaustive_positions(cons):
    L = CodeLayout(4, 8, 1, cons)
    for idx, x in enumerate(itertools.product(range(4), repeat=7)):
        if idx % 97:
            continue
        cw = c_encode(x, L)
        for i in range(1, len(cw) + 1):
            y = apply(cw, DuplicationEvent(i, 1), P4)
            assert c_decode(y, L) == x
            assert all(window_diagnostics(x, y, L).values())


@pytest.mark.parametrize("q,n,t,cons,prot", [
    (4, 32, 1, 1, PAPER), (4, 64, 1, 1, PAPER), (4, 32, 2, 1, REPETITION), (4, 64, 2, 1, REPETITION),
    (4, 32, 1, 2, PAPER), (4, 64, 2, 2, PAPER), (6, 40, 1, 1, PAPER), (8, 30, 3, 1, REPETITION),
])
def test_random_duplications(q, n, t, cons, prot):
    L = CodeLayout(q, n, t, cons, prot)
    c = ComplementMap.paired(q)
    rnd = random.Random(q * n * t * cons)
    for trial in range(200):
        x = tuple(rnd.randrange(q) for _ in range(L.message_length))
        cw = c_encode(x, L)
        d = t if trial % 2 else rnd.randint(0, t)
        y, tr = sample(cw, 1, d, trial, c)
        assert replay(cw, tr, c) == y
        assert c_decode(y, L) == x
        assert all(window_diagnostics(x, y, L).values())


def test_duplications_concentrated_in_each_segment():
    # all t events inside one segment, for each segment
    L = CodeLayout(4, 32, 2, 1, REPETITION)
    rnd = random.Random(7)
    for _ in range(100):
        x = rand_msg(rnd, L)
        cw = c_encode(x, L)
        for lo, hi in L.segments().values():
            y = cw
            for j in range(L.t):
                y = apply(y, DuplicationEvent(rnd.randint(lo, hi + j), 1), P4)
            assert c_decode(y, L) == x


def test_guard_boundary_duplications():
    L = CodeLayout(4, 16, 1)
    rnd = random.Random(8)
    for _ in range(300):
        x = rand_msg(rnd, L)
        cw = c_encode(x, L)
        for i in (15, 16, 17, 18):
            y = apply(cw, DuplicationEvent(i, 1), P4)
            w1, w2, w3 = split_windows(y, L)
            assert len(w1) == 17 and len(w2) == L.n1 + 1 and len(w3) == L.n2 + 1
            assert c_decode(y, L) == x


def test_too_many_and_too_few():
    L = CodeLayout(4, 8, 1)
    cw = c_encode((0,) * 7, L)
    y = apply(apply(cw, DuplicationEvent(2, 1), P4), DuplicationEvent(5, 1), P4)
    with pytest.raises(TooManyErrors):
        c_decode(y, L)
    with pytest.raises(DecodeFail):
        c_decode(cw[:-1], L)


def test_container_roundtrip():
    L = CodeLayout(4, 16, 1, 2)
    cw = c_encode((1, 2, 3) * 5, L)
    text = container_to_json(cw, L)
    obj = json.loads(text)
    assert set(obj) == {"mode", "layout", "word"}
    w, L2 = container_from_json(text)
    assert L2 == L and w == cw and c_decode(w, L2) == (1, 2, 3) * 5


def test_redundancy_order_t1():
    excess = []
    for e in range(3, 13):
        L = CodeLayout(4, 2**e, 1)
        rep = redundancy_order(L)
        assert rep["redundancy"] == 1 + L.t + L.n1 + L.n2
        assert rep["leading_term"] == pytest.approx(2 * math.log(2**e, 4))
        excess.append(rep["excess"])
    # redundancy - 2 log_q n stays bounded (within the O(log log n) allowance)
    assert max(excess) - min(excess) <= 2
    assert max(excess) <= 13
