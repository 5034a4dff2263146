import itertools

import pytest
from hypothesis import given, strategies as st

from dupcode.alphabet import (
    ComplementMap,
    ceil_log,
    check_word,
    complement,
    format_word,
    parse_word,
    rep,
    rep_inv,
    reverse,
    reverse_complement,
)
from dupcode.errors import AlphabetError

P4 = ComplementMap.paired(4)


def W(s, q=4):
    return parse_word(s, q)


def test_complement_paired_example():
    assert complement(P4, W("0")) == W("1")
    assert complement(P4, W("2")) == W("3")


def test_complement_involution_exhaustive_q8():
    c = ComplementMap.paired(8)
    for w in itertools.product(range(8), repeat=5):
        assert complement(c, complement(c, w)) == w


def test_identity_complement():
    c = ComplementMap.identity(4)
    assert complement(c, W("0123")) == W("0123")


def test_reverse_complement_examples():
    assert reverse_complement(ComplementMap.paired(2), W("1000", 2)) == W("1110", 2)
    assert reverse_complement(P4, ()) == ()
    assert reverse_complement(P4, W("2322")) == W("3323")


def test_reverse_complement_orders_agree_exhaustive():
    # independent composition: reverse first vs complement first, table lookups by hand
    for w in itertools.product(range(4), repeat=4):
        a = tuple(s ^ 1 for s in reversed(w))
        b = tuple(reversed([s ^ 1 for s in w]))
        assert reverse_complement(P4, w) == a == b


@given(st.lists(st.integers(0, 5), max_size=12), st.sampled_from(["paired", "identity"]))
def test_rc_is_involution(w, mode):
    c = ComplementMap.paired(6) if mode == "paired" else ComplementMap.identity(6)
    assert reverse_complement(c, reverse_complement(c, w)) == tuple(w)
    assert complement(c, reverse(w)) == reverse(complement(c, w))


def test_paired_is_fixed_point_free():
    for q in (2, 4, 6, 8):
        c = ComplementMap.paired(q)
        assert c.fixed_point_free
        for a in range(q):
            assert {a, c.bar(a)} == {2 * (a // 2), 2 * (a // 2) + 1}


def test_custom_map_validation():
    assert ComplementMap.custom([3, 2, 1, 0]).bar(0) == 3
    with pytest.raises(AlphabetError):
        ComplementMap.custom([1, 2, 0])
    with pytest.raises(AlphabetError):
        ComplementMap.custom([0, 0, 1])
    with pytest.raises(AlphabetError):
        ComplementMap.paired(3)


def test_rep_examples():
    assert format_word(rep(3, 4, 3), 4) == "003"
    assert format_word(rep(63, 4, 4), 4) == "0333"
    for a in range(4**4):
        assert rep_inv(rep(a, 4, 4), 4) == a
    with pytest.raises(ValueError):
        rep(64, 4, 3)
    with pytest.raises(ValueError):
        rep(-1, 4, 3)


def test_ceil_log_exact():
    assert ceil_log(4, 20) == 3
    assert ceil_log(4, 16) == 2
    assert ceil_log(2, 8) == 3
    assert ceil_log(2, 9) == 4
    assert ceil_log(2, 1) == 0
    for q in (2, 3, 4, 10):
        for n in range(1, 300):
            k = ceil_log(q, n)
            assert q**k >= n and (k == 0 or q ** (k - 1) < n)


def test_word_text_form():
    assert parse_word("01123221001", 4) == (0, 1, 1, 2, 3, 2, 2, 1, 0, 0, 1)
    assert parse_word("10,0,11", 12) == (10, 0, 11)
    assert format_word((10, 0, 11), 12) == "10,0,11"
    assert format_word((), 4) == ""
    with pytest.raises(AlphabetError):
        parse_word("0124", 4)
    with pytest.raises(AlphabetError):
        check_word((0, 5), 4)
