"""Reverse-complement and palindromic duplication channel.

Positions are 1-based. A :class:`DuplicationEvent` inside a transcript refers
to the word as it exists when the event is applied; a disjoint pattern refers
to positions of the original word.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .alphabet import ComplementMap, Word, check_word
from .errors import InvalidEvent

RC = "rc"
PAL = "pal"


@dataclass(frozen=True)
class DuplicationEvent:
    position: int
    length: int = 1
    kind: str = RC

    def __post_init__(self):
        if self.kind not in (RC, PAL):
            raise InvalidEvent(f"unknown duplication kind {self.kind!r}")
        if self.length < 1:
            raise InvalidEvent("duplication length must be >= 1")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "position": self.position, "length": self.length}

    @classmethod
    def from_dict(cls, d: dict) -> "DuplicationEvent":
        return cls(position=int(d["position"]), length=int(d["length"]), kind=d["kind"])


Transcript = list[DuplicationEvent]


def _copy(block: Sequence[int], kind: str, cmap: ComplementMap) -> tuple:
    if kind == PAL:
        return tuple(reversed(block))
    return cmap.reverse_complement(block)


def apply(w: Sequence[int], e: DuplicationEvent, cmap: ComplementMap) -> Word:
    """Insert the (reverse-)complemented copy of ``w[i..i+k-1]`` right after it."""
    w = check_word(w, cmap.q)
    i, k = e.position, e.length
    if i < 1 or i > len(w) - k + 1:
        raise InvalidEvent(f"position {i} invalid for length-{k} duplication of a length-{len(w)} word")
    end = i + k - 1
    return w[:end] + _copy(w[i - 1:end], e.kind, cmap) + w[end:]


def apply_disjoint(
    w: Sequence[int],
    k: int,
    positions: Sequence[int],
    cmap: ComplementMap,
    kind: str = RC,
) -> Word:
    """Apply t disjoint k-duplications at original positions ``i_1 < ... < i_t``."""
    w = check_word(w, cmap.q)
    positions = list(positions)
    if k < 1:
        raise InvalidEvent("duplication length must be >= 1")
    for a, b in zip(positions, positions[1:]):
        if b - a < k:
            raise InvalidEvent(f"positions {a} and {b} overlap for k={k}")
    if positions and (positions[0] < 1 or positions[-1] > len(w) - k + 1):
        raise InvalidEvent("disjoint pattern out of range")
    out: list[int] = []
    cursor = 0
    for i in positions:
        end = i + k - 1
        out.extend(w[cursor:end])
        out.extend(_copy(w[i - 1:end], kind, cmap))
        cursor = end
    out.extend(w[cursor:])
    return tuple(out)


def replay(w: Sequence[int], transcript: Iterable[DuplicationEvent], cmap: ComplementMap) -> Word:
    y = check_word(w, cmap.q)
    for e in transcript:
        y = apply(y, e, cmap)
    return y


def _single_images(w: Word, k: int, kind: str, cmap: ComplementMap) -> set[Word]:
    out = set()
    for end in range(k, len(w) + 1):
        out.add(w[:end] + _copy(w[end - k:end], kind, cmap) + w[end:])
    return out


def ball(w: Sequence[int], k: int, t: int, cmap: ComplementMap, kind: str = RC) -> frozenset[Word]:
    """All words reachable from ``w`` by exactly ``t`` successive k-duplications."""
    if t < 0 or k < 1:
        raise InvalidEvent("ball needs t >= 0 and k >= 1")
    level = {check_word(w, cmap.q)}
    for _ in range(t):
        nxt: set[Word] = set()
        for y in level:
            nxt |= _single_images(y, k, kind, cmap)
        level = nxt
    return frozenset(level)


def sorted_ball(w, k, t, cmap, kind=RC) -> list[Word]:
    return sorted(ball(w, k, t, cmap, kind))


def rc1_ball_formula(w: Sequence[int], cmap: ComplementMap) -> set[Word]:
    """Closed form of the length-one ball: ``w[:i] + bar(w_i) + w[i:]``."""
    w = tuple(w)
    return {w[:i] + (cmap.bar(w[i - 1]),) + w[i:] for i in range(1, len(w) + 1)}


def insertion_ball(w: Sequence[int], q: int) -> set[Word]:
    """All words obtained from ``w`` by one insertion (brute force)."""
    w = tuple(w)
    return {w[:i] + (a,) + w[i:] for i in range(len(w) + 1) for a in range(q)}


def insertion_ball_formula(w: Sequence[int], q: int) -> set[Word]:
    """Prefix insertions plus insertions of a symbol differing from its left neighbour."""
    w = tuple(w)
    out = {(a,) + w for a in range(q)}
    for i in range(1, len(w) + 1):
        for a in range(q):
            if a != w[i - 1]:
                out.add(w[:i] + (a,) + w[i:])
    return out


def is_single_rc_dup(y: Sequence[int], w: Sequence[int], cmap: ComplementMap) -> bool:
    """Test whether ``y`` arises from ``w`` by one length-one duplication.

    Checked by scanning for an adjacent pair ``a, bar(a)`` whose removal of
    the second symbol gives back ``w``.
    """
    y, w = tuple(y), tuple(w)
    if len(y) != len(w) + 1:
        return False
    for j in range(len(y) - 1):
        if y[j + 1] == cmap.bar(y[j]) and y[: j + 1] + y[j + 2:] == w:
            return True
    return False


def rng_for(seed: int, trial: int = 0) -> np.random.Generator:
    """Counter-based generator keyed only by ``(seed, trial)``."""
    key = np.array([seed % 2**64, trial % 2**64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def sample(
    w: Sequence[int],
    k: int,
    t: int,
    seed: int,
    cmap: ComplementMap,
    kind: str = RC,
    trial: int = 0,
) -> tuple[Word, Transcript]:
    """Apply ``t`` k-duplications at uniformly random valid positions."""
    y = check_word(w, cmap.q)
    if t < 0:
        raise InvalidEvent("t must be >= 0")
    rng = rng_for(seed, trial)
    transcript: Transcript = []
    for _ in range(t):
        hi = len(y) - k + 1
        if hi < 1:
            raise InvalidEvent(f"word of length {len(y)} admits no length-{k} duplication")
        e = DuplicationEvent(int(rng.integers(1, hi + 1)), k, kind)
        y = apply(y, e, cmap)
        transcript.append(e)
    return y, transcript


def transcript_to_json(transcript: Iterable[DuplicationEvent]) -> str:
    return json.dumps([e.to_dict() for e in transcript])


def transcript_from_json(text: str) -> Transcript:
    return [DuplicationEvent.from_dict(d) for d in json.loads(text)]
