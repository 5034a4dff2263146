"""Runs under the {a, bar(a)} equivalence, their indicator integers and hashes.

A run is a maximal segment whose symbols all lie in ``{a, bar(a)}`` where
``a`` is its first symbol. A length-one duplication inside a run inserts one
bit into that run's indicator word and touches nothing else, which is what
turns duplications into substitutions on the per-run vectors below.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .alphabet import ComplementMap, Word
from .errors import DecodeFail, PreconditionError

VT1 = "vt1"
FULL = "full"


@dataclass(frozen=True)
class RunDecomposition:
    runs: tuple[Word, ...]
    signature: Word
    lengths: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.runs)


def run_bounds(w: Sequence[int], cmap: ComplementMap) -> list[tuple[int, int]]:
    """0-based half-open ``(start, end)`` of each run."""
    table = cmap.table
    out = []
    n = len(w)
    i = 0
    while i < n:
        a = w[i]
        b = table[a]
        j = i + 1
        while j < n and (w[j] == a or w[j] == b):
            j += 1
        out.append((i, j))
        i = j
    return out


def decompose(w: Sequence[int], cmap: ComplementMap) -> RunDecomposition:
    w = tuple(w)
    bounds = run_bounds(w, cmap)
    runs = tuple(w[s:e] for s, e in bounds)
    return RunDecomposition(runs, tuple(r[0] for r in runs), tuple(len(r) for r in runs))


def max_run_length(w: Sequence[int], cmap: ComplementMap) -> int:
    return max((e - s for s, e in run_bounds(w, cmap)), default=0)


def indicator(run: Sequence[int]) -> tuple[int, ...]:
    a = run[0]
    return tuple(1 if s == a else 0 for s in run)


def phi(run: Sequence[int], cmap: ComplementMap) -> int:
    """Indicator bits read big-endian; the first symbol is the top bit."""
    if not run:
        raise PreconditionError("phi of an empty word")
    a = run[0]
    b = cmap.table[a]
    v = 0
    for s in run:
        if s == a:
            v = 2 * v + 1
        elif s == b:
            v = 2 * v
        else:
            raise PreconditionError(f"{tuple(run)} is not a run")
    return v


def phi_inv(value: int, first: int, cmap: ComplementMap) -> Word:
    if value < 1:
        raise PreconditionError("phi_inv needs value >= 1")
    b = cmap.table[first]
    return tuple(first if c == "1" else b for c in bin(value)[2:])


def associated_vector(w: Sequence[int], pad_to: int, cmap: ComplementMap) -> list[int]:
    """Per-run phi values with ``pad_to - r(w)`` leading zeros."""
    values = [phi(w[s:e], cmap) for s, e in run_bounds(w, cmap)]
    if pad_to < len(values):
        raise PreconditionError(f"pad_to={pad_to} below run count {len(values)}")
    return [0] * (pad_to - len(values)) + values


def associated_vector_inv(vector: Sequence[int], signature: Sequence[int], cmap: ComplementMap) -> Word:
    """Rebuild the word from the last ``len(signature)`` phi values."""
    r = len(signature)
    values = list(vector)[len(vector) - r:] if r else []
    out: list[int] = []
    for v, a in zip(values, signature):
        out.extend(phi_inv(v, a, cmap))
    return tuple(out)


def _vt_syndrome(bits: Sequence[int], modulus: int) -> int:
    return sum(j * b for j, b in enumerate(bits, start=1)) % modulus


@dataclass(frozen=True)
class RunHash:
    """Side information recovering a run after at most ``t`` duplications.

    ``vt1`` stores (length, VT syndrome of the indicator mod length+t+1) and
    handles t = 1; ``full`` stores the indicator integer itself.
    """

    t: int
    mode: str
    length: int
    payload: int

    def to_json(self) -> str:
        return json.dumps({"mode": self.mode, "t": self.t, "length": self.length, "payload": self.payload})

    @classmethod
    def from_json(cls, text: str) -> "RunHash":
        d = json.loads(text)
        return cls(t=int(d["t"]), mode=d["mode"], length=int(d["length"]), payload=int(d["payload"]))


def run_hash(run: Sequence[int], t: int, cmap: ComplementMap, mode: str | None = None) -> RunHash:
    if mode is None:
        mode = VT1 if t == 1 else FULL
    if mode == VT1:
        if t != 1:
            raise PreconditionError("vt1 run hash corrects exactly one duplication")
        bits = indicator(run)
        phi(run, cmap)  # validates run-ness
        return RunHash(t, VT1, len(bits), _vt_syndrome(bits, len(bits) + t + 1))
    if mode == FULL:
        return RunHash(t, FULL, len(run), phi(run, cmap))
    raise PreconditionError(f"unknown run hash mode {mode!r}")


def _vt_insertion_candidates(bits: Sequence[int], syndrome: int, modulus: int) -> set[tuple[int, ...]]:
    out = set()
    for j in range(len(bits)):
        c = tuple(bits[:j]) + tuple(bits[j + 1:])
        if c and c[0] == 1 and _vt_syndrome(c, modulus) == syndrome:
            out.add(c)
    return out


def run_recover(corrupted: Sequence[int], h: RunHash, cmap: ComplementMap) -> Word:
    """Return the original run given a duplicated image and its hash."""
    corrupted = tuple(corrupted)
    if not corrupted:
        raise DecodeFail("empty run")
    first = corrupted[0]
    if h.mode == FULL:
        return phi_inv(h.payload, first, cmap)
    extra = len(corrupted) - h.length
    bits = indicator(corrupted)
    phi(corrupted, cmap)
    if extra == 0:
        if _vt_syndrome(bits, h.length + h.t + 1) != h.payload:
            raise DecodeFail("syndrome mismatch on an unchanged run")
        return corrupted
    if extra != 1:
        raise DecodeFail(f"run grew by {extra}, hash corrects {h.t}")
    cands = _vt_insertion_candidates(bits, h.payload, h.length + h.t + 1)
    if len(cands) != 1:
        raise DecodeFail(f"{len(cands)} candidate runs match the syndrome")
    return phi_inv(int("".join(map(str, cands.pop())), 2), first, cmap)
