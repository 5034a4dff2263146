"""Codes correcting t length-one reverse-complement duplications (q >= 4 even).

Codeword layout::

    x' (n) | t guards = bar(x'_n) | zeta block (n1) | repetition block (n2)

``x'`` is the RLL image of the message. Construction 1 protects the padded
per-run indicator integers of ``x'``; construction 2 protects per-run hashes
and repairs each run locally. A duplication inside ``x'`` changes exactly one
per-run entry, so the zeta digest (substitution hash) recovers the vector.
The digest itself sits behind a (t+1)-fold repetition block, optionally with
a Tenengolts checksum in between (``paper`` protection, t = 1).
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

from .alphabet import ComplementMap, Word, check_word, format_word, parse_word
from .errors import DecodeFail, PreconditionError, TooManyErrors
from .protect import (
    FULL as ETA_FULL,
    TENENGOLTS,
    IndelHashParams,
    SubstHashParams,
    eta_decode,
    eta_deserialize,
    eta_hash,
    eta_serialize,
    rep_decode,
    rep_encode,
    zeta_decode,
    zeta_deserialize,
    zeta_hash,
    zeta_serialize,
)
from .rll_codec import RllParams, rll_decode, rll_encode
from .run_algebra import FULL, VT1, RunHash, decompose, phi, phi_inv, run_bounds, run_hash, run_recover

PAPER = "paper"
REPETITION = "repetition"


@dataclass(frozen=True)
class CodeLayout:
    q: int
    n: int
    t: int
    construction: int = 1
    protection: str = PAPER
    run_mode: Optional[str] = None

    def __post_init__(self):
        if self.q < 4 or self.q % 2:
            raise PreconditionError("length-one duplication codes need even q >= 4")
        if self.t < 1:
            raise PreconditionError("t must be >= 1")
        if self.construction not in (1, 2):
            raise PreconditionError("construction must be 1 or 2")
        if self.protection not in (PAPER, REPETITION):
            raise PreconditionError(f"unknown protection {self.protection!r}")
        if self.construction == 2:
            mode = self.run_mode or (VT1 if self.t == 1 else FULL)
            if mode == VT1 and self.t != 1:
                raise PreconditionError("compact per-run hashes need t = 1; use full mode")
            if mode not in (VT1, FULL):
                raise PreconditionError(f"unknown run hash mode {mode!r}")
            object.__setattr__(self, "run_mode", mode)
        elif self.run_mode is not None:
            raise PreconditionError("run_mode only applies to construction 2")

    @property
    def rll(self) -> RllParams:
        return RllParams(self.q, self.n)

    @property
    def m(self) -> int:
        return self.rll.m

    @property
    def vt_stride(self) -> int:
        return self.m + self.t + 1

    @property
    def Q(self) -> int:
        """Alphabet of the per-run vector fed to zeta."""
        if self.construction == 2 and self.run_mode == VT1:
            return self.m * self.vt_stride
        return 2**self.m

    @property
    def zeta(self) -> SubstHashParams:
        return SubstHashParams(self.t, self.Q, self.n)

    @property
    def n1(self) -> int:
        return self.zeta.symbols(self.q)

    @property
    def eta(self) -> IndelHashParams:
        if self.protection == PAPER and self.t == 1:
            return IndelHashParams(1, self.q, self.n1, TENENGOLTS)
        return IndelHashParams(self.t, self.q, self.n1, ETA_FULL)

    @property
    def inner_len(self) -> int:
        return self.eta.symbols()

    @property
    def n2(self) -> int:
        return (self.t + 1) * self.inner_len

    @property
    def length(self) -> int:
        return self.n + self.t + self.n1 + self.n2

    @property
    def message_length(self) -> int:
        return self.n - 1

    @property
    def redundancy(self) -> int:
        return self.length - self.message_length

    def segments(self) -> dict[str, tuple[int, int]]:
        """1-based inclusive segment bounds of an error-free codeword."""
        n, t, n1, n2 = self.n, self.t, self.n1, self.n2
        return {
            "payload": (1, n),
            "guards": (n + 1, n + t),
            "zeta": (n + t + 1, n + t + n1),
            "repetition": (n + t + n1 + 1, n + t + n1 + n2),
        }

    def to_dict(self) -> dict:
        d = asdict(self)
        d.update(m=self.m, Q=self.Q, ell=self.zeta.ell, n1=self.n1, n2=self.n2, length=self.length)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CodeLayout":
        return cls(q=d["q"], n=d["n"], t=d["t"], construction=d["construction"],
                   protection=d["protection"], run_mode=d.get("run_mode"))


def _pack_vt(h: RunHash, stride: int) -> int:
    return (h.length - 1) * stride + h.payload


def _unpack_vt(v: int, stride: int, t: int) -> RunHash:
    length, syn = divmod(v, stride)
    return RunHash(t, VT1, length + 1, syn)


def run_vector(w: Sequence[int], layout: CodeLayout, cmap: ComplementMap) -> list[int]:
    """phi' (construction 1) or F (construction 2) of ``w``, padded to length n.

    Runs longer than m cannot occur in a valid payload; they map to 0.
    """
    m, n = layout.m, layout.n
    vt = layout.construction == 2 and layout.run_mode == VT1
    values = []
    for s, e in run_bounds(w, cmap):
        run = w[s:e]
        if e - s > m:
            values.append(0)
        elif vt:
            values.append(_pack_vt(run_hash(run, layout.t, cmap, VT1), layout.vt_stride))
        else:
            values.append(phi(run, cmap))
    if len(values) > n:
        raise DecodeFail(f"{len(values)} runs exceed the payload length {n}")
    return [0] * (n - len(values)) + values


def c_encode(x: Sequence[int], layout: CodeLayout) -> Word:
    cmap = ComplementMap.paired(layout.q)
    x = check_word(x, layout.q)
    if len(x) != layout.message_length:
        raise PreconditionError(f"message must have length {layout.message_length}")
    xp = rll_encode(x, layout.rll)
    zblock = zeta_serialize(zeta_hash(run_vector(xp, layout, cmap), layout.zeta), layout.zeta, layout.q)
    inner = eta_serialize(eta_hash(zblock, layout.eta), layout.eta)
    guards = (cmap.bar(xp[-1]),) * layout.t
    return xp + guards + zblock + rep_encode(inner, layout.t)


def split_windows(y: Sequence[int], layout: CodeLayout) -> tuple[Word, Word, Word]:
    """Payload window [1, n+t], digest window of n1+d symbols, repetition window of n2+d."""
    y = tuple(y)
    d = len(y) - layout.length
    if d < 0:
        raise DecodeFail(f"received word shorter than the layout ({len(y)} < {layout.length})")
    if d > layout.t:
        raise TooManyErrors(f"{d} duplications exceed t={layout.t}")
    n, t, n1 = layout.n, layout.t, layout.n1
    return y[: n + t], y[n + t: n + t + n1 + d], y[n + t + n1:]


def c_decode(y: Sequence[int], layout: CodeLayout) -> Word:
    cmap = ComplementMap.paired(layout.q)
    y = check_word(y, layout.q)
    w1, w2, w3 = split_windows(y, layout)
    inner = rep_decode(w3, layout.t, layout.inner_len)
    eta = layout.eta
    if eta.mode == TENENGOLTS:
        zblock = eta_decode(w2, eta_deserialize(inner, eta), eta)
    else:
        zblock = inner
    zp = layout.zeta
    digest = zeta_deserialize(zblock, zp, layout.q)
    if any(v >= zp.ell for v in digest):
        raise DecodeFail("digest residue out of range")
    received = run_vector(w1, layout, cmap)
    vector = zeta_decode(received, digest, zp)
    bounds = run_bounds(w1, cmap)
    r = len(bounds)
    values = vector[layout.n - r:]
    if any(vector[: layout.n - r]):
        raise DecodeFail("padding entries are nonzero after correction")
    pieces: list[int] = []
    vt = layout.construction == 2 and layout.run_mode == VT1
    for (s, e), v in zip(bounds, values):
        if vt:
            pieces.extend(run_recover(w1[s:e], _unpack_vt(v, layout.vt_stride, layout.t), cmap))
        else:
            if v < 1:
                raise DecodeFail("zero run value after correction")
            pieces.extend(phi_inv(v, w1[s], cmap))
    xp = tuple(pieces)
    if len(xp) != layout.n:
        raise DecodeFail(f"reassembled payload has length {len(xp)} != {layout.n}")
    return rll_decode(xp, layout.rll)


def window_diagnostics(x: Sequence[int], y: Sequence[int], layout: CodeLayout) -> dict:
    """Per-trial checks of the window argument for a received word ``y``.

    Returns booleans for: payload-window signature/run count agree with x',
    run vectors differ in at most t entries, and the digest and repetition
    blocks are subsequences of their windows.
    """
    cmap = ComplementMap.paired(layout.q)
    xp = rll_encode(x, layout.rll)
    c = c_encode(x, layout)
    w1, w2, w3 = split_windows(y, layout)
    seg = layout.segments()
    zs, ze = seg["zeta"]
    rs, re_ = seg["repetition"]
    dx, dy = decompose(xp, cmap), decompose(w1, cmap)
    vx, vy = run_vector(xp, layout, cmap), run_vector(w1, layout, cmap)
    return {
        "signature": dx.signature == dy.signature,
        "run_count": dx.count == dy.count,
        "vector_distance": sum(a != b for a, b in zip(vx, vy)) <= layout.t,
        "zeta_subsequence": _is_subsequence(c[zs - 1: ze], w2),
        "repetition_subsequence": _is_subsequence(c[rs - 1: re_], w3),
    }


def _is_subsequence(small: Sequence[int], big: Sequence[int]) -> bool:
    it = iter(big)
    return all(any(b == s for b in it) for s in small)


def redundancy_order(layout: CodeLayout) -> dict:
    """Measured redundancy against the 2t log_q n leading term."""
    lead = 2 * layout.t * math.log(layout.n, layout.q)
    return {
        "redundancy": layout.redundancy,
        "leading_term": lead,
        "excess": layout.redundancy - lead,
        "loglog": math.log(max(math.log(layout.n, layout.q), 1.0 + 1e-12), layout.q),
        "n1": layout.n1,
        "n2": layout.n2,
    }


def container_to_json(word: Sequence[int], layout: CodeLayout) -> str:
    mode = {"construction": layout.construction, "protection": layout.protection,
            "run_mode": layout.run_mode}
    return json.dumps({"mode": mode, "layout": layout.to_dict(), "word": format_word(word, layout.q)})


def container_from_json(text: str) -> tuple[Word, CodeLayout]:
    d = json.loads(text)
    layout = CodeLayout.from_dict(d["layout"])
    return parse_word(d["word"], layout.q), layout
