"""Hash components used by the length-one duplication codes.

* ``zeta``: power-sum syndromes ``s_j = sum_i c_i * i^j mod l`` (j = 1..2t)
  over a prime l > max(N, 2t(Q-1)). Any 2t columns of the matrix ``[i^j]`` are
  independent mod l, so up to t substitutions are recovered; decoding runs
  Peterson-Gorenstein-Zierler over GF(l).
* ``eta``: the Tenengolts single-indel checksum (t = 1) or the message itself
  (``full``).
* repetition: every symbol repeated t+1 times; tolerates t insertions.
"""
from __future__ import annotations

import functools
import itertools
import json
from dataclasses import dataclass
from typing import Optional, Sequence

from .alphabet import Word, ceil_log, rep, rep_inv
from .errors import AmbiguousDecode, DecodeFail, PreconditionError

TENENGOLTS = "tenengolts"
FULL = "full"


def is_prime(v: int) -> bool:
    if v < 2:
        return False
    if v % 2 == 0:
        return v == 2
    d = 3
    while d * d <= v:
        if v % d == 0:
            return False
        d += 2
    return True


def next_prime(v: int) -> int:
    while not is_prime(v):
        v += 1
    return v


# ---------------------------------------------------------------- zeta


@dataclass(frozen=True)
class SubstHashParams:
    t: int
    Q: int
    N: int

    def __post_init__(self):
        if self.t < 1 or self.Q < 2 or self.N < 1:
            raise PreconditionError("need t >= 1, Q >= 2, N >= 1")

    @functools.cached_property
    def ell(self) -> int:
        # strictly above N so that every evaluation node 1..N is a unit
        return next_prime(max(self.N + 1, 2 * self.t * (self.Q - 1) + 1))

    @property
    def residues(self) -> int:
        return 2 * self.t

    def symbols(self, q: int) -> int:
        """Digest size in base-q symbols when each residue takes ceil(log_q l) digits."""
        return self.residues * ceil_log(q, self.ell)


@functools.lru_cache(maxsize=64)
def _power_table(N: int, width: int, ell: int) -> tuple[tuple[int, ...], ...]:
    """``table[i-1][j-1] = i^j mod ell`` for i in 1..N, j in 1..width."""
    return tuple(tuple(pow(i, j, ell) for j in range(1, width + 1)) for i in range(1, N + 1))


def zeta_hash(msg: Sequence[int], p: SubstHashParams) -> tuple[int, ...]:
    if len(msg) != p.N:
        raise PreconditionError(f"message length {len(msg)} != {p.N}")
    ell, Q = p.ell, p.Q
    width = 2 * p.t
    table = _power_table(p.N, width, ell)
    sums = [0] * width
    for c, row in zip(msg, table):
        if c:
            if c < 0 or c >= Q:
                raise PreconditionError(f"symbol {c} outside [0, {Q - 1}]")
            for j in range(width):
                sums[j] += c * row[j]
    return tuple(v % ell for v in sums)


def _solve_mod(a: list[list[int]], b: list[int], ell: int) -> Optional[list[int]]:
    """Gaussian elimination mod a prime; None if singular."""
    size = len(a)
    rows = [row[:] + [rhs] for row, rhs in zip(a, b)]
    for col in range(size):
        piv = next((r for r in range(col, size) if rows[r][col] % ell), None)
        if piv is None:
            return None
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = pow(rows[col][col], ell - 2, ell)
        rows[col] = [v * inv % ell for v in rows[col]]
        for r in range(size):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(v - f * w) % ell for v, w in zip(rows[r], rows[col])]
    return [rows[r][size] for r in range(size)]


def _error_pattern(synd: Sequence[int], N: int, t: int, ell: int) -> Optional[dict[int, int]]:
    """Locate and evaluate up to t errors from S_j = sum_p e_p p^j, j = 1..2t."""
    if not any(synd):
        return {}
    S = (None,) + tuple(synd)  # 1-based
    table = _power_table(N, 2 * t, ell)
    if S[1]:
        # single error: S_2 / S_1 is the location (a weight-1 fit is unique at any t)
        X = S[2] * pow(S[1], ell - 2, ell) % ell
        if 1 <= X <= N:
            v = S[1] * pow(X, ell - 2, ell) % ell
            row = table[X - 1]
            if all(v * row[j] % ell == S[j + 1] for j in range(2 * t)):
                return {X: v}
    for nu in range(t, 1, -1):
        mat = [[S[j + c] for c in range(nu)] for j in range(1, nu + 1)]
        rhs = [(-S[j + nu]) % ell for j in range(1, nu + 1)]
        lam = _solve_mod(mat, rhs, ell)  # lam[c] multiplies S_{j+c}: coefficient Lambda_{nu-c}
        if lam is None:
            continue
        coeffs = [1] + [lam[nu - d] for d in range(1, nu + 1)]  # Lambda_0..Lambda_nu
        locs = []
        for pos in range(1, N + 1):
            # Lambda(1/pos) = 0  <=>  sum_d Lambda_d pos^(nu-d) = 0
            acc = 0
            for c in coeffs:
                acc = (acc * pos + c) % ell
            if acc == 0:
                locs.append(pos)
        if len(locs) != nu:
            return None
        vmat = [[table[pos - 1][j] for pos in locs] for j in range(nu)]
        vals = _solve_mod(vmat, list(S[1: nu + 1]), ell)
        if vals is None:
            return None
        pattern = dict(zip(locs, vals))
        for j in range(2 * t):
            if sum(v * table[pos - 1][j] for pos, v in pattern.items()) % ell != S[j + 1]:
                return None
        return pattern
    return None


def zeta_decode(corrupted: Sequence[int], digest: Sequence[int], p: SubstHashParams) -> list[int]:
    """Recover the message from a copy with at most t substituted symbols."""
    if len(corrupted) != p.N:
        raise DecodeFail(f"length {len(corrupted)} != {p.N}")
    ell = p.ell
    digest = tuple(digest)
    if len(digest) != 2 * p.t or any(d < 0 or d >= ell for d in digest):
        raise DecodeFail("malformed digest")
    clipped = [c if 0 <= c < p.Q else 0 for c in corrupted]
    here = zeta_hash(clipped, p)
    synd = [(h - d) % ell for h, d in zip(here, digest)]
    pattern = _error_pattern(synd, p.N, p.t, ell)
    if pattern is None:
        raise DecodeFail("syndrome is not explained by <= t substitutions")
    out = list(clipped)
    for pos, v in pattern.items():
        e = v if v <= p.Q - 1 else v - ell
        c = out[pos - 1] - e
        if c < 0 or c >= p.Q:
            raise DecodeFail("corrected symbol leaves the alphabet")
        out[pos - 1] = c
    return out


def zeta_serialize(digest: Sequence[int], p: SubstHashParams, q: int) -> Word:
    width = ceil_log(q, p.ell)
    out: list[int] = []
    for d in digest:
        out.extend(rep(d, q, width))
    return tuple(out)


def zeta_deserialize(symbols: Sequence[int], p: SubstHashParams, q: int) -> tuple[int, ...]:
    width = ceil_log(q, p.ell)
    if len(symbols) != width * p.residues:
        raise DecodeFail("digest block has the wrong length")
    return tuple(rep_inv(symbols[j * width:(j + 1) * width], q) for j in range(p.residues))


def zeta_to_json(digest: Sequence[int], p: SubstHashParams) -> str:
    return json.dumps({"kind": "zeta", "params": {"t": p.t, "Q": p.Q, "N": p.N, "ell": p.ell},
                       "residues": list(digest)})


# ---------------------------------------------------------------- eta


@dataclass(frozen=True)
class IndelHashParams:
    t: int
    Q: int
    N: int
    mode: str = TENENGOLTS

    def __post_init__(self):
        if self.mode == TENENGOLTS and self.t != 1:
            raise PreconditionError("the Tenengolts checksum corrects a single indel only")
        if self.mode not in (TENENGOLTS, FULL):
            raise PreconditionError(f"unknown eta mode {self.mode!r}")

    @property
    def a_width(self) -> int:
        return max(ceil_log(self.Q, self.N), 1)

    def symbols(self) -> int:
        """Digest length in base-Q symbols."""
        if self.mode == FULL:
            return self.N
        return self.a_width + 1


def _tenengolts(msg: Sequence[int], N: int, Q: int) -> tuple[int, int]:
    a = 0
    for i in range(1, len(msg)):
        if msg[i] >= msg[i - 1]:
            a += i
    return a % N, sum(msg) % Q


def eta_hash(msg: Sequence[int], p: IndelHashParams) -> tuple[int, ...]:
    msg = tuple(msg)
    if len(msg) != p.N:
        raise PreconditionError(f"message length {len(msg)} != {p.N}")
    if p.mode == FULL:
        return msg
    return _tenengolts(msg, p.N, p.Q)


def eta_serialize(digest: Sequence[int], p: IndelHashParams) -> Word:
    if p.mode == FULL:
        return tuple(digest)
    a, b = digest
    return rep(a, p.Q, p.a_width) + (b,)


def eta_deserialize(symbols: Sequence[int], p: IndelHashParams) -> tuple[int, ...]:
    symbols = tuple(symbols)
    if len(symbols) != p.symbols():
        raise DecodeFail("eta block has the wrong length")
    if p.mode == FULL:
        return symbols
    return rep_inv(symbols[:-1], p.Q), symbols[-1]


def _single_indel_neighbours(w: Word, N: int, Q: int, total: int) -> set[Word]:
    """Neighbours at one indel whose symbol sum matches ``total`` mod Q."""
    if len(w) == N + 1:
        drop = (sum(w) - total) % Q
        return {w[:j] + w[j + 1:] for j in range(len(w)) if w[j] == drop}
    if len(w) == N - 1:
        a = (total - sum(w)) % Q
        return {w[:j] + (a,) + w[j:] for j in range(len(w) + 1)}
    return set()


def eta_decode(corrupted: Sequence[int], digest: Sequence[int], p: IndelHashParams) -> Word:
    corrupted = tuple(corrupted)
    digest = tuple(digest)
    if p.mode == FULL:
        if len(digest) != p.N:
            raise DecodeFail("full digest has the wrong length")
        return digest
    if len(corrupted) == p.N:
        if _tenengolts(corrupted, p.N, p.Q) != digest:
            raise DecodeFail("checksum mismatch with no length change")
        return corrupted
    cands = {c for c in _single_indel_neighbours(corrupted, p.N, p.Q, digest[1])
             if _tenengolts(c, p.N, p.Q) == digest}
    if not cands:
        raise DecodeFail("no single indel explains the checksum")
    if len(cands) > 1:
        raise AmbiguousDecode(f"{len(cands)} candidates share the checksum")
    return cands.pop()


# ---------------------------------------------------------------- repetition


def rep_encode(msg: Sequence[int], t: int) -> Word:
    return tuple(s for s in msg for _ in range(t + 1))


def rep_decode(received: Sequence[int], t: int, expected_len: int) -> Word:
    """Decode a (t+1)-fold repetition word after at most t insertions.

    Depth-first search over message symbols; each block is matched greedily
    (leftmost occurrences), which is exact for subsequence containment.
    """
    received = tuple(received)
    r = t + 1
    extra = len(received) - expected_len * r
    if extra < 0 or extra > t:
        raise DecodeFail(f"received length {len(received)} incompatible with {expected_len} blocks")
    found: list[Word] = []
    msg: list[int] = []

    def rec(j: int):
        if len(found) > 1:
            return
        b = len(msg)
        if b == expected_len:
            found.append(tuple(msg))
            return
        skipped = j - b * r
        window = received[j: j + r + (extra - skipped)]
        for s in sorted(set(window)):
            pos, got = j, 0
            while got < r and pos < len(received) and pos - (b * r + got) <= extra:
                if received[pos] == s:
                    got += 1
                pos += 1
            if got == r and pos - (b + 1) * r <= extra:
                msg.append(s)
                rec(pos)
                msg.pop()

    rec(0)
    if not found:
        raise DecodeFail("no repetition codeword is a subsequence of the input")
    if len(found) > 1:
        raise AmbiguousDecode("two repetition codewords fit the input")
    return found[0]


def rep_decode_bruteforce(received: Sequence[int], t: int, expected_len: int) -> set[Word]:
    """All messages whose repetition word is reachable by deleting symbols (oracle)."""
    received = tuple(received)
    r = t + 1
    d = len(received) - expected_len * r
    out = set()
    if d < 0:
        return out
    for drop in itertools.combinations(range(len(received)), d):
        kept = [s for idx, s in enumerate(received) if idx not in drop]
        blocks = [kept[b * r:(b + 1) * r] for b in range(expected_len)]
        if all(len(set(bl)) == 1 for bl in blocks):
            out.add(tuple(bl[0] for bl in blocks))
    return out
