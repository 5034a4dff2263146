"""One-redundant-symbol encoder into m-RCD roots by sequence replacement.

While the current word has a violating window, the window's second half is
deleted (it is the reverse complement of the first half, so nothing is lost),
the window index is appended in ceil(log_q n) digits, and a ``0`` marker is
appended. The initial word is the message followed by ``1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .alphabet import ComplementMap, Word, ceil_log, check_word, rep, rep_inv
from .errors import CorruptIndex, DecodeFail, IllegalInput, PreconditionError
from .rcd_root import first_violation


@dataclass(frozen=True)
class RootCodec:
    q: int
    n: int
    cmap: ComplementMap = field(default=None)  # type: ignore[assignment]
    window: Optional[int] = None  # overrides m; the index field must still fit

    def __post_init__(self):
        if self.window is not None:
            if self.window < 2:
                raise PreconditionError("m must be at least 2")
            if self.q ** (self.window - 1) <= self.n - 2 * self.window + 1:
                raise PreconditionError(f"m={self.window} leaves no room for the window index")
        if self.n < 2:
            raise PreconditionError("codeword length must be at least 2")
        if self.cmap is None:
            object.__setattr__(self, "cmap", ComplementMap.paired(self.q))
        if self.cmap.q != self.q:
            raise PreconditionError("complement map alphabet differs from q")

    @property
    def m(self) -> int:
        if self.window is not None:
            return self.window
        return max(ceil_log(self.q, self.n) + 1, 2)

    @property
    def index_width(self) -> int:
        return self.m - 1

    @property
    def max_iterations(self) -> int:
        return self.q * self.n

    def xi(self, x: Sequence[int]) -> Word:
        """Drop the second half of the first violating window, append its index."""
        x = tuple(x)
        m = self.m
        i = first_violation(x, m, self.cmap)
        if i is None:
            raise IllegalInput("xi is undefined on roots")
        return x[: i + m - 1] + x[i + 2 * m - 1:] + rep(i, self.q, m - 1)

    def xi_inv(self, y: Sequence[int]) -> Word:
        y = tuple(y)
        n, m = self.n, self.m
        if len(y) != n - 1:
            raise CorruptIndex(f"expected length {n - 1}, got {len(y)}")
        i = rep_inv(y[n - m:], self.q)
        if i < 1 or i > n - 2 * m + 1:
            raise CorruptIndex(f"window index {i} out of range")
        return y[: i + m - 1] + self.cmap.reverse_complement(y[i - 1: i + m - 1]) + y[i + m - 1: n - m]

    def encode(self, x: Sequence[int]) -> Word:
        x = check_word(x, self.q)
        if len(x) != self.n - 1:
            raise PreconditionError(f"message must have length {self.n - 1}")
        m, cmap = self.m, self.cmap
        y = x + (1,)
        for _ in range(self.max_iterations):
            if first_violation(y, m, cmap) is None:
                return y
            y = self.xi(y) + (0,)
        raise DecodeFail(f"encoder exceeded {self.max_iterations} replacement passes")

    def decode(self, y: Sequence[int]) -> Word:
        y = check_word(y, self.q)
        if len(y) != self.n:
            raise PreconditionError(f"codeword must have length {self.n}")
        for _ in range(self.max_iterations):
            if y[-1] != 0:
                break
            y = self.xi_inv(y[:-1])
        else:
            raise CorruptIndex("decoder did not reach the initial marker")
        if y[-1] != 1:
            raise CorruptIndex(f"final marker is {y[-1]}, expected 1")
        return y[:-1]
