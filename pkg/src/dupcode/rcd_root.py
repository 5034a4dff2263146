"""m-RCD roots: words with no length-m window followed by its reverse complement.

Roots correct arbitrarily many disjoint duplications of length k >= 3m-3;
:func:`decode_single` and :func:`decode_disjoint` locate each inserted copy by
scanning windows of length 3m-3 only, so decoding costs O(m n) comparisons.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .alphabet import ComplementMap, Word
from .errors import BudgetExceeded, NoMatch, PreconditionError

DEFAULT_BUDGET = 1 << 24


@dataclass(frozen=True)
class RootParams:
    q: int
    n: int
    m: int
    cmap: ComplementMap = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.m < 2:
            raise PreconditionError("m must be at least 2")
        if self.cmap is None:
            object.__setattr__(self, "cmap", ComplementMap.paired(self.q))
        if self.cmap.q != self.q:
            raise PreconditionError("complement map alphabet differs from q")

    @property
    def vacuous(self) -> bool:
        return self.n - 2 * self.m + 1 < 1


def _rc_window_match(y: Sequence[int], p: int, L: int, table: Sequence[int], stats: Optional[dict]) -> bool:
    """Compare ``y[p+L .. p+2L-1]`` with the reverse complement of ``y[p .. p+L-1]`` (1-based)."""
    base = p - 1
    for s in range(L):
        if stats is not None:
            stats["comparisons"] = stats.get("comparisons", 0) + 1
        if y[base + L + s] != table[y[base + L - 1 - s]]:
            return False
    return True


def first_violation(w: Sequence[int], m: int, cmap: ComplementMap) -> Optional[int]:
    """Smallest 1-based window index i violating the root property, or None."""
    table = cmap.table
    for i in range(1, len(w) - 2 * m + 2):
        if _rc_window_match(w, i, m, table, None):
            return i
    return None


def is_root(w: Sequence[int], m: int, cmap: ComplementMap, n: Optional[int] = None) -> bool:
    if m < 2:
        raise PreconditionError("m must be at least 2")
    if n is not None and len(w) != n:
        raise PreconditionError(f"expected length {n}, got {len(w)}")
    return first_violation(w, m, cmap) is None


def _scan_length(m: int, k: int) -> int:
    L = 3 * m - 3
    if k >= L:
        return L
    if m == 2 and k == 2:
        # for 2-roots a window of length k = 2 still pins the copy
        return 2
    raise PreconditionError(f"k={k} below the decodable threshold 3m-3={L}")


def decode_single(
    y: Sequence[int], m: int, k: int, cmap: ComplementMap, stats: Optional[dict] = None
) -> tuple[Word, int]:
    """Undo one k-duplication of an m-RCD root.

    Returns the root and the 1-based duplication position. Raises
    :class:`PreconditionError` when ``k < 3m-3`` (except ``m = k = 2``) and
    :class:`NoMatch` if no window matches.
    """
    L = _scan_length(m, k)
    y = tuple(y)
    table = cmap.table
    for p in range(1, len(y) - 2 * L + 2):
        if _rc_window_match(y, p, L, table, stats):
            x = y[: p + L - 1] + y[p + L - 1 + k:]
            return x, p + L - k
    raise NoMatch("no reverse-complement window found")


def decode_disjoint(
    y: Sequence[int], m: int, k: int, t: int, cmap: ComplementMap, stats: Optional[dict] = None
) -> Word:
    """Remove ``t`` disjoint k-duplications left to right (skipping k after each)."""
    if t < 0:
        raise PreconditionError("t must be >= 0")
    L = 3 * m - 3
    if k < L:
        raise PreconditionError(f"k={k} below the decodable threshold 3m-3={L}")
    y = tuple(y)
    table = cmap.table
    p = 1
    while t > 0:
        if p + 2 * L - 1 > len(y):
            raise NoMatch(f"{t} duplication(s) left unmatched")
        if _rc_window_match(y, p, L, table, stats):
            y = y[: p + L - 1] + y[p + L - 1 + k:]
            t -= 1
            p += k
        else:
            p += 1
    return y


def iter_roots(p: RootParams) -> Iterator[Word]:
    """Lexicographic iterator over all m-RCD roots of length n.

    Depth-first extension checks only the single window completed by the new
    symbol, so each word costs O(m) on top of the shared prefix work.
    """
    q, n, m, table = p.q, p.n, p.m, p.cmap.table
    word = [0] * n

    def rec(j: int):
        if j == n:
            yield tuple(word)
            return
        for a in range(q):
            word[j] = a
            end = j + 1
            if end >= 2 * m:
                start = end - 2 * m
                ok = False
                for s in range(m):
                    if word[start + m + s] != table[word[start + m - 1 - s]]:
                        ok = True
                        break
                if not ok:
                    continue
            yield from rec(j + 1)

    yield from rec(0)


def count_roots(p: RootParams, budget: int = DEFAULT_BUDGET) -> int:
    if p.q**p.n > budget:
        raise BudgetExceeded(f"q^n = {p.q ** p.n} exceeds budget {budget}")
    return sum(1 for _ in iter_roots(p))


def enumerate_roots(p: RootParams, budget: int = DEFAULT_BUDGET) -> tuple[int, Iterator[Word]]:
    """Exact root count A(n, m) together with a fresh lexicographic iterator."""
    return count_roots(p, budget), iter_roots(p)


def root_lower_bound(q: int, n: int) -> int:
    """(q-1) q^(n-1), valid whenever m >= ceil(log_q n) + 1."""
    return (q - 1) * q ** (n - 1)
