"""Alphabet arithmetic: complement involutions, reversal and base-q fields.

Words are plain tuples of ints. The alphabet size travels with the
:class:`ComplementMap` (or with the parameters of whatever code is in use),
so a word never carries its own ``q``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import AlphabetError

Word = tuple[int, ...]

PAIRED = "paired"
IDENTITY = "identity"
CUSTOM = "custom"


def check_word(w: Sequence[int], q: int) -> Word:
    """Return ``w`` as a tuple, raising :class:`AlphabetError` on a bad symbol."""
    w = tuple(w)
    for a in w:
        if not isinstance(a, int) or a < 0 or a >= q:
            raise AlphabetError(f"symbol {a!r} outside [0, {q - 1}]")
    return w


@dataclass(frozen=True)
class ComplementMap:
    """An involution on ``[0, q-1]``.

    ``paired`` maps 2i <-> 2i+1 (requires even q and has no fixed points),
    ``identity`` models palindromic duplications, and ``custom`` accepts any
    involution table.
    """

    q: int
    table: tuple[int, ...]
    mode: str = CUSTOM

    def __post_init__(self):
        if self.q < 2:
            raise AlphabetError("alphabet size must be at least 2")
        table = tuple(self.table)
        object.__setattr__(self, "table", table)
        if len(table) != self.q or sorted(table) != list(range(self.q)):
            raise AlphabetError("complement table must be a permutation of [0, q-1]")
        if any(table[table[a]] != a for a in range(self.q)):
            raise AlphabetError("complement table is not an involution")
        if self.mode == PAIRED:
            if self.q % 2:
                raise AlphabetError("paired complement needs an even alphabet")
            if any(table[a] != a ^ 1 for a in range(self.q)):
                raise AlphabetError("paired table must swap 2i and 2i+1")
        elif self.mode == IDENTITY:
            if any(table[a] != a for a in range(self.q)):
                raise AlphabetError("identity table must fix every symbol")
        elif self.mode != CUSTOM:
            raise AlphabetError(f"unknown complement mode {self.mode!r}")

    @classmethod
    def paired(cls, q: int) -> "ComplementMap":
        if q % 2:
            raise AlphabetError("paired complement needs an even alphabet")
        return cls(q, tuple(a ^ 1 for a in range(q)), PAIRED)

    @classmethod
    def identity(cls, q: int) -> "ComplementMap":
        return cls(q, tuple(range(q)), IDENTITY)

    @classmethod
    def custom(cls, table: Sequence[int]) -> "ComplementMap":
        return cls(len(table), tuple(table), CUSTOM)

    @classmethod
    def for_mode(cls, mode: str, q: int) -> "ComplementMap":
        """``rc`` gives the paired map, ``pal`` the identity."""
        if mode == "rc":
            return cls.paired(q)
        if mode == "pal":
            return cls.identity(q)
        raise AlphabetError(f"unknown duplication mode {mode!r}")

    @property
    def fixed_point_free(self) -> bool:
        return all(self.table[a] != a for a in range(self.q))

    def bar(self, a: int) -> int:
        return self.table[a]

    def complement(self, w: Sequence[int]) -> Word:
        t = self.table
        return tuple(t[a] for a in w)

    def reverse_complement(self, w: Sequence[int]) -> Word:
        t = self.table
        return tuple(t[a] for a in reversed(w))


def complement(cmap: ComplementMap, w: Sequence[int]) -> Word:
    return cmap.complement(check_word(w, cmap.q))


def reverse(w: Sequence[int]) -> Word:
    return tuple(reversed(w))


def reverse_complement(cmap: ComplementMap, w: Sequence[int]) -> Word:
    return cmap.reverse_complement(check_word(w, cmap.q))


def ceil_log(q: int, n: int) -> int:
    """Smallest e >= 0 with q**e >= n (exact integer ceil(log_q n))."""
    if n < 1:
        raise ValueError("ceil_log needs n >= 1")
    e, p = 0, 1
    while p < n:
        p *= q
        e += 1
    return e


def rep(a: int, q: int, m: int) -> Word:
    """Fixed-width big-endian base-``q`` digits of ``a``."""
    if a < 0 or a >= q**m:
        raise ValueError(f"{a} does not fit in {m} base-{q} digits")
    out = [0] * m
    for pos in range(m - 1, -1, -1):
        a, out[pos] = divmod(a, q)
    return tuple(out)


def rep_inv(w: Iterable[int], q: int) -> int:
    a = 0
    for d in w:
        if d < 0 or d >= q:
            raise AlphabetError(f"digit {d} outside base {q}")
        a = a * q + d
    return a


def parse_word(text: str, q: int) -> Word:
    """Parse the shared text form: digits for q <= 10, comma list otherwise."""
    text = text.strip()
    if not text:
        return ()
    if q <= 10 and "," not in text:
        if not text.isdigit():
            raise AlphabetError(f"not a digit string: {text!r}")
        symbols = [int(c) for c in text]
    else:
        try:
            symbols = [int(part) for part in text.split(",")]
        except ValueError as exc:
            raise AlphabetError(f"bad word {text!r}") from exc
    return check_word(symbols, q)


def format_word(w: Sequence[int], q: int) -> str:
    if q <= 10:
        return "".join(str(a) for a in w)
    return ",".join(str(a) for a in w)
