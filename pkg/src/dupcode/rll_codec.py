"""m-RLL encoder/decoder with one redundant symbol (q >= 4 even, paired map).

Every run longer than m is shortened by m symbols in place; the removed window
(its first symbol plus the m removed symbols) is appended as an m2-digit
indicator field, followed by an m1-digit position field and an even marker.
An odd final symbol means no removal happened.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .alphabet import ComplementMap, Word, ceil_log, check_word, rep, rep_inv
from .errors import BudgetExceeded, CorruptField, PreconditionError
from .run_algebra import max_run_length, phi, phi_inv

DEFAULT_BUDGET = 1 << 22


def h1(a: int, q: int) -> int:
    """Odd symbol outside ``{a, bar(a)}``."""
    if q < 4 or q % 2:
        raise PreconditionError("h1 needs even q >= 4")
    return (2 * (a // 2) + 3) % q


def h2(a: int, q: int) -> int:
    """Even symbol outside ``{a, bar(a)}``."""
    if q < 4 or q % 2:
        raise PreconditionError("h2 needs even q >= 4")
    return (2 * (a // 2) + 2) % q


def indicator_width(q: int, m1: int) -> int:
    """Smallest m2 with q^m2 >= 2^(m1+m2+1), i.e. (q/2)^m2 >= 2^(m1+1)."""
    m2 = 0
    while (q // 2) ** m2 < 2 ** (m1 + 1):
        m2 += 1
    return m2


@dataclass(frozen=True)
class RllParams:
    q: int
    n: int

    def __post_init__(self):
        if self.q < 4 or self.q % 2:
            raise PreconditionError("RLL coding needs even q >= 4")
        if self.n < 2:
            raise PreconditionError("codeword length must be at least 2")

    @property
    def m1(self) -> int:
        return ceil_log(self.q, self.n)

    @property
    def m2(self) -> int:
        return indicator_width(self.q, self.m1)

    @property
    def m(self) -> int:
        return self.m1 + self.m2 + 1

    @property
    def cmap(self) -> ComplementMap:
        return ComplementMap.paired(self.q)


def is_rll(w: Sequence[int], m: int, cmap: ComplementMap) -> bool:
    return max_run_length(w, cmap) <= m


def rll_encode(x: Sequence[int], p: RllParams) -> Word:
    q, n, m, m1, m2 = p.q, p.n, p.m, p.m1, p.m2
    x = check_word(x, q)
    if len(x) != n - 1:
        raise PreconditionError(f"message must have length {n - 1}")
    cmap = p.cmap
    y = list(x) + [h1(x[-1], q) if x else 1]
    i, i_end = 1, n - 1 - m
    offset = 1 << m
    while i <= i_end:
        a = y[i - 1]
        cls = (a, a ^ 1)
        j = i + 1
        while j <= n and y[j - 1] in cls:
            j += 1
        while j >= i + m + 1:
            field_val = phi(y[i - 1: i + m], cmap) - offset
            y = y[:i] + y[i + m:] + list(rep(field_val, q, m2)) + list(rep(i, q, m1))
            y.append(h2(y[-1], q))
            j -= m
            i_end -= m
        i = j
    return tuple(y)


def rll_decode(y: Sequence[int], p: RllParams) -> Word:
    q, n, m, m1, m2 = p.q, p.n, p.m, p.m1, p.m2
    y = check_word(y, q)
    if len(y) != n:
        raise PreconditionError(f"codeword must have length {n}")
    cmap = p.cmap
    offset = 1 << m
    for _ in range(n // m + 1):
        if y[-1] % 2:
            return y[:-1]
        i = rep_inv(y[n - m1 - 1: n - 1], q)
        a = rep_inv(y[n - m1 - m2 - 1: n - m1 - 1], q)
        if a >= offset:
            raise CorruptField(f"indicator field {a} exceeds 2^{m}")
        if i < 1 or i > n - m:
            raise CorruptField(f"position field {i} out of range")
        y = y[: i - 1] + phi_inv(a + offset, y[i - 1], cmap) + y[i: n - m]
    raise CorruptField("too many unwinding steps")


def count_rll(n: int, m: int, q: int, budget: int = DEFAULT_BUDGET) -> int:
    """Exact number of m-RLL words of length n by exhaustive scan."""
    if q**n > budget:
        raise BudgetExceeded(f"q^n = {q ** n} exceeds budget {budget}")
    cmap = ComplementMap.paired(q)
    return sum(1 for w in itertools.product(range(q), repeat=n) if is_rll(w, m, cmap))


def count_rll_dp(n: int, m: int, q: int) -> int:
    """Same count by a transfer recursion over the length of the last run."""
    if n == 0:
        return 1
    # ending[l] = words whose last run has length l
    ending = [0] * (m + 1)
    if m >= 1:
        ending[1] = q
    for _ in range(n - 1):
        total = sum(ending)
        nxt = [0] * (m + 1)
        if m >= 1:
            nxt[1] = total * (q - 2)
        for length in range(1, m):
            nxt[length + 1] = ending[length] * 2
        ending = nxt
    return sum(ending)


def rll_lower_bound(n: int, q: int) -> int:
    return q**n - 2 * q ** (n - 1)
