"""Named verification suites shared by the CLI and the acceptance tests.

Every suite returns a report dict with at least ``suite``, ``parameters``,
``trials``, ``failures``, ``counts`` and ``seed``; ``failures == 0`` means the
suite passed. The first few failing cases are kept under ``examples``.
"""
from __future__ import annotations

import itertools
from typing import Callable, Optional

from .alphabet import ComplementMap, ceil_log, format_word, parse_word
from .confusion_graph import ALL, ROOTS, GraphSpec, balls_disjoint, gv_quotient, greedy_code, lemma6_bound, neighborhood
from .dup_channel import (
    RC,
    DuplicationEvent,
    apply,
    apply_disjoint,
    ball,
    insertion_ball,
    insertion_ball_formula,
    is_single_rc_dup,
    rc1_ball_formula,
    rng_for,
    sample,
)
from .dup_codes import PAPER, CodeLayout, c_decode, c_encode, redundancy_order, window_diagnostics
from .errors import DupCodeError, PreconditionError
from .protect import (
    IndelHashParams,
    SubstHashParams,
    eta_decode,
    eta_hash,
    rep_decode,
    rep_encode,
    zeta_decode,
    zeta_hash,
)
from .rcd_root import RootParams, count_roots, decode_disjoint, decode_single, is_root, iter_roots, root_lower_bound
from .rll_codec import RllParams, count_rll, is_rll, rll_decode, rll_encode, rll_lower_bound
from .root_codec import RootCodec
from .run_algebra import VT1, decompose, phi, phi_inv, run_hash, run_recover

MAX_EXAMPLES = 5
DEFAULT_SEED = 0


class Report:
    def __init__(self, suite: str, parameters: dict, seed: Optional[int] = None):
        self.data = {"suite": suite, "parameters": parameters, "trials": 0, "failures": 0,
                     "counts": {}, "seed": seed, "examples": []}

    def check(self, ok: bool, what=None):
        self.data["trials"] += 1
        if not ok:
            self.data["failures"] += 1
            if len(self.data["examples"]) < MAX_EXAMPLES:
                self.data["examples"].append(what if what is not None else "")
        return ok

    def count(self, key: str, value):
        self.data["counts"][key] = value

    def done(self) -> dict:
        return self.data


def _cmap(q: int, mode: str) -> ComplementMap:
    return ComplementMap.for_mode(mode, q)


def _kind(mode: str) -> str:
    return "pal" if mode == "pal" else RC


def _words(q: int, n: int):
    return itertools.product(range(q), repeat=n)


# ---------------------------------------------------------------- small examples


def suite_counterexample(q: int = 2, **_) -> dict:
    """Two 4-RCD roots share a length-four duplication descendant."""
    r = Report("counterexample", {"q": 2})
    c = ComplementMap.paired(2)
    target = "0001110001110"
    a = format_word(apply(parse_word("000111000", 2), DuplicationEvent(6, 4), c), 2)
    b = format_word(apply(parse_word("000111110", 2), DuplicationEvent(3, 4), c), 2)
    r.check(a == target, {"from": "000111000", "got": a})
    r.check(b == target, {"from": "000111110", "got": b})
    r.check(is_root(parse_word("000111000", 2), 4, c), "000111000 should be a 4-root")
    r.check(is_root(parse_word("000111110", 2), 4, c), "000111110 should be a 4-root")
    r.count("image", target)
    return r.done()


def suite_example1(q: int = 4, **_) -> dict:
    """Complement-preserving collisions for k = 2, t = 1 and k = 1, t = 2."""
    r = Report("example1", {"q": 4})
    c = ComplementMap.paired(4)
    u, v, y = parse_word("232301", 4), parse_word("230101", 4), parse_word("23230101", 4)
    for k, t in ((2, 1), (1, 2)):
        common = ball(u, k, t, c) & ball(v, k, t, c)
        r.check(y in common, {"k": k, "t": t})
        r.count(f"common_k{k}_t{t}", sorted(format_word(w, 4) for w in common))
    return r.done()


def suite_example2(**_) -> dict:
    """Run decomposition and indicator integers of 01123221001."""
    r = Report("example2", {"q": 4})
    c = ComplementMap.paired(4)
    w = parse_word("01123221001", 4)
    d = decompose(w, c)
    runs = [format_word(x, 4) for x in d.runs]
    values = [phi(x, c) for x in d.runs]
    r.check(runs == ["011", "2322", "1001"], {"runs": runs})
    r.check(d.signature == (0, 2, 1), {"signature": d.signature})
    r.check(values == [4, 11, 9], {"phi": values})
    r.check(phi_inv(11, 2, c) == parse_word("2322", 4), "phi_inv(11, 2)")
    r.count("runs", runs)
    r.count("phi", values)
    return r.done()


# ---------------------------------------------------------------- channel laws


def suite_lemma7(q: int = 4, n: int = 6, **_) -> dict:
    """Closed-form single-duplication and single-insertion balls against brute force."""
    r = Report("lemma7", {"q": q, "n": n})
    c = ComplementMap.paired(q)
    distinct_all = 0
    for length in range(1, n + 1):
        for w in _words(q, length):
            brute = {y for y in insertion_ball(w, q) if is_single_rc_dup(y, w, c)}
            formula = rc1_ball_formula(w, c)
            r.check(brute == formula == set(ball(w, 1, 1, c)), {"w": format_word(w, q), "kind": "rc"})
            r.check(insertion_ball(w, q) == insertion_ball_formula(w, q), {"w": format_word(w, q), "kind": "ins"})
            distinct_all += len(formula) == length
    r.count("words_with_n_distinct_images", distinct_all)
    return r.done()


def suite_lemma8(q: int = 4, n: int = 6, t: int = 2, trials: int = 10_000, random_n: int = 32,
                 seed: int = DEFAULT_SEED, **_) -> dict:
    """Signature and run-count invariance under length-one duplications."""
    r = Report("lemma8", {"q": q, "n": n, "t": t, "trials": trials, "random_n": random_n}, seed)
    c = ComplementMap.paired(q)

    def check(w, y):
        dw, dy = decompose(w, c), decompose(y, c)
        ok = dw.signature == dy.signature and dw.count == dy.count
        if ok:
            for rw, ry in zip(dw.runs, dy.runs):
                extra = len(ry) - len(rw)
                if extra < 0 or ry not in ball(rw, 1, extra, c):
                    ok = False
                    break
            ok = ok and sum(dy.lengths) - sum(dw.lengths) == len(y) - len(w)
        return ok

    for length in range(1, n + 1):
        for w in _words(q, length):
            for tt in range(1, t + 1):
                for y in ball(w, 1, tt, c):
                    r.check(check(w, y), {"w": format_word(w, q), "y": format_word(y, q)})
    for trial in range(trials):
        rng = rng_for(seed, trial)
        w = tuple(int(a) for a in rng.integers(0, q, size=random_n))
        tt = int(rng.integers(0, t + 1))
        y, _ = sample(w, 1, tt, seed, c, trial=trial + (1 << 32))
        r.check(check(w, y), {"trial": trial})
    return r.done()


# ---------------------------------------------------------------- roots


def suite_lemma5(q: int = 2, n: int = 8, m: Optional[int] = None, mode: str = "rc", **_) -> dict:
    m = m if m is not None else ceil_log(q, n) + 1
    r = Report("lemma5", {"q": q, "n": n, "m": m, "mode": mode})
    count = count_roots(RootParams(q, n, m, _cmap(q, mode)))
    bound = root_lower_bound(q, n)
    r.count("A", count)
    r.count("bound", bound)
    r.check(count >= bound, {"A": count, "bound": bound})
    return r.done()


def _disjoint_patterns(n: int, k: int, t: int):
    # positions i_1 < ... < i_t in [1, n-k+1] with gaps >= k
    def rec(start, left):
        if left == 0:
            yield ()
            return
        for i in range(start, n - k + 2):
            for rest in rec(i + k, left - 1):
                yield (i,) + rest
    yield from rec(1, t)


def suite_theorem1(q: int = 2, n: int = 8, m: int = 2, ks=(3, 4), t: int = 2, mode: str = "rc", **_) -> dict:
    """Algorithm 1 recovers every root from every disjoint duplication pattern."""
    ks = tuple(ks)
    r = Report("theorem1", {"q": q, "n": n, "m": m, "k": list(ks), "t": t, "mode": mode})
    c = _cmap(q, mode)
    kind = _kind(mode)
    roots = list(iter_roots(RootParams(q, n, m, c)))
    r.count("roots", len(roots))
    for x in roots:
        for k in ks:
            for tt in range(0, t + 1):
                for pos in _disjoint_patterns(n, k, tt):
                    y = apply_disjoint(x, k, pos, c, kind)
                    try:
                        ok = decode_disjoint(y, m, k, tt, c) == x
                        if tt == 1:
                            ok = ok and decode_single(y, m, k, c) == (x, pos[0])
                    except DupCodeError:
                        ok = False
                    r.check(ok, {"x": format_word(x, q), "k": k, "positions": list(pos)})
    return r.done()


def suite_theorem2(q: int = 2, n: int = 12, mode: str = "rc", exhaustive: bool = True, trials: int = 1000,
                   seed: int = DEFAULT_SEED, **_) -> dict:
    """One-symbol root codec: roundtrip, root property and length."""
    r = Report("theorem2", {"q": q, "n": n, "mode": mode, "exhaustive": exhaustive}, seed)
    codec = RootCodec(q, n, _cmap(q, mode))
    r.count("m", codec.m)

    def one(x):
        y = codec.encode(x)
        ok = len(y) == n and is_root(y, codec.m, codec.cmap) and codec.decode(y) == x
        r.check(ok, {"x": format_word(x, q)})

    if exhaustive:
        for x in _words(q, n - 1):
            one(x)
    else:
        for trial in range(trials):
            one(tuple(int(a) for a in rng_for(seed, trial).integers(0, q, size=n - 1)))
    r.count("redundancy", 1)
    return r.done()


# ---------------------------------------------------------------- confusion graph


def suite_lemma6(q: int = 2, n: int = 8, mode: str = "rc", aux_m: int = 2, **_) -> dict:
    """Per-k neighbourhood bound on all words, and empty root-mode levels."""
    r = Report("lemma6", {"q": q, "n": n, "mode": mode, "aux_m": aux_m})
    c = _cmap(q, mode)
    spec_all = GraphSpec(q, n, ALL, c)
    per_k = {k: 0 for k in range(1, n + 1)}
    for x in _words(q, n):
        for k in range(1, n + 1):
            size = len(neighborhood(x, k, spec_all))
            per_k[k] = max(per_k[k], size)
            r.check(size <= lemma6_bound(n, k), {"x": format_word(x, q), "k": k, "size": size})
    r.count("per_k_max_neighborhood", {str(k): v for k, v in per_k.items()})
    threshold = 3 * ceil_log(q, n)
    r.count("root_threshold", threshold)
    spec_roots = GraphSpec(q, n, ROOTS, c)
    roots = spec_roots.vertex_list()
    for x in roots:
        for k in range(threshold, n + 1):
            r.check(not neighborhood(x, k, spec_roots), {"x": format_word(x, q), "k": k, "m": spec_roots.m})
    r.count("root_levels_checked", max(0, n - threshold + 1))
    # non-vacuous companion: small-m roots have no neighbours once k >= 3m-3
    spec_aux = GraphSpec(q, n, ROOTS, c, m=aux_m)
    aux_threshold = max(3 * aux_m - 3, 2)
    for x in spec_aux.vertex_list():
        for k in range(aux_threshold, n + 1):
            r.check(not neighborhood(x, k, spec_aux), {"x": format_word(x, q), "k": k, "m": aux_m})
    r.count("aux_threshold", aux_threshold)
    return r.done()


def suite_gv(q: int = 2, n: int = 10, mode: str = "rc", vertices: str = ROOTS, **_) -> dict:
    """Greedy code in the confusion graph against the displayed quotient."""
    r = Report("gv", {"q": q, "n": n, "mode": mode, "vertices": vertices})
    c = _cmap(q, mode)
    code, rep = greedy_code(GraphSpec(q, n, vertices, c))
    d = rep.to_dict()
    for key, value in d.items():
        r.count(key, value)
    r.check(rep.code_size >= gv_quotient(q, n), {"size": rep.code_size, "quotient": gv_quotient(q, n)})
    r.check(rep.code_size >= rep.alon_bound - 1e-9, {"size": rep.code_size, "alon": rep.alon_bound})
    r.check(rep.code_size >= rep.vertex_count / (rep.max_degree + 1), "size below #V/(Delta+1)")
    for k in range(1, n + 1):
        r.check(balls_disjoint(code, k, c), {"k": k})
    return r.done()


# ---------------------------------------------------------------- RLL


def suite_lemma9(q: int = 4, n: int = 6, m: int = 4, **_) -> dict:
    r = Report("lemma9", {"q": q, "n": n, "m": m})
    count = count_rll(n, m, q)
    bound = rll_lower_bound(n, q)
    r.count("B", count)
    r.count("bound", bound)
    r.check(count >= bound, {"B": count, "bound": bound})
    return r.done()


EXAMPLE3_IN = "0122222222233333333"
EXAMPLE3_OUT = "01213333003000000030"


def suite_roundtrip_rll(q: int = 4, n: int = 10, exhaustive: bool = True, trials: int = 1000,
                        seed: int = DEFAULT_SEED, **_) -> dict:
    """RLL roundtrip at every length up to n (exhaustive) or random words at n."""
    r = Report("roundtrip-rll", {"q": q, "n": n, "exhaustive": exhaustive}, seed)

    def one(x, p):
        y = rll_encode(x, p)
        ok = len(y) == p.n and is_rll(y, p.m, p.cmap) and rll_decode(y, p) == x
        r.check(ok, {"x": format_word(x, q), "n": p.n})

    if exhaustive:
        for length in range(2, n + 1):
            p = RllParams(q, length)
            for x in _words(q, length - 1):
                one(x, p)
    else:
        p = RllParams(q, n)
        for trial in range(trials):
            one(tuple(int(a) for a in rng_for(seed, trial).integers(0, q, size=n - 1)), p)
    if q == 4:
        p = RllParams(4, 20)
        got = format_word(rll_encode(parse_word(EXAMPLE3_IN, 4), p), 4)
        r.check(got == EXAMPLE3_OUT, {"example3": got})
        r.count("example3", got)
    return r.done()


# ---------------------------------------------------------------- protect


def suite_protect(N: int = 8, Q: int = 4, t: int = 1, eta_max_n: int = 8, rep_max_len: int = 3,
                  rep_max_t: int = 2, **_) -> dict:
    r = Report("protect", {"N": N, "Q": Q, "t": t, "eta_max_n": eta_max_n,
                            "rep_max_len": rep_max_len, "rep_max_t": rep_max_t})
    zp = SubstHashParams(t, Q, N)
    r.count("ell", zp.ell)
    # every message x every single substitution
    zeta_cases = 0
    for msg in _words(Q, N):
        d = zeta_hash(msg, zp)
        ok = zeta_decode(msg, d, zp) == list(msg)
        for i in range(N):
            orig = msg[i]
            c = list(msg)
            for a in range(Q):
                if a != orig:
                    c[i] = a
                    zeta_cases += 1
                    if zeta_decode(c, d, zp) != list(msg):
                        ok = False
        r.check(ok, {"zeta": format_word(msg, Q)})
    r.count("zeta_substitution_cases", zeta_cases)
    # kernel: no nonzero difference vector of support <= 2t hashes to zero
    kernel_hits = 0
    for w in range(1, 2 * t + 1):
        for support in itertools.combinations(range(N), w):
            for vals in itertools.product(range(1, Q), repeat=w):
                for signs in itertools.product((1, -1), repeat=w):
                    # shift into the nonnegative range the hash accepts
                    diff = [0] * N
                    for s, v, g in zip(support, vals, signs):
                        diff[s] = g * v
                    synd = [sum(e * (i + 1) ** j for i, e in enumerate(diff)) % zp.ell for j in range(1, 2 * t + 1)]
                    kernel_hits += not any(synd)
    r.check(kernel_hits == 0, {"kernel_hits": kernel_hits})
    # Tenengolts: single insertions and deletions
    eta_cases = 0
    for length in range(1, eta_max_n + 1):
        ep = IndelHashParams(1, Q, length)
        for msg in _words(Q, length):
            d = eta_hash(msg, ep)
            ok = True
            corrupted = insertion_ball(msg, Q) | {msg[:j] + msg[j + 1:] for j in range(length)}
            for y in corrupted:
                eta_cases += 1
                ok &= eta_decode(y, d, ep) == msg
            ok &= eta_decode(msg, d, ep) == msg
            if not r.check(ok, {"eta": format_word(msg, Q)}):
                break
    r.count("eta_cases", eta_cases)
    # repetition: every insertion pattern up to t symbols decodes uniquely
    rep_cases = 0
    for tt in range(1, rep_max_t + 1):
        for length in range(1, rep_max_len + 1):
            for msg in _words(Q, length):
                cw = rep_encode(msg, tt)
                seen = {cw}
                for _ in range(tt):
                    seen |= {y[:j] + (a,) + y[j:] for y in seen for j in range(len(y) + 1) for a in range(Q)}
                ok = True
                for y in seen:
                    rep_cases += 1
                    try:
                        got = rep_decode(y, tt, length)
                    except DupCodeError:
                        got = None
                    if got != msg:
                        ok = False
                        break
                r.check(ok, {"rep": format_word(msg, Q), "t": tt})
    r.count("rep_cases", rep_cases)
    return r.done()


# ---------------------------------------------------------------- constructions


def _layout(q, n, t, construction, protection, run_mode=None) -> CodeLayout:
    return CodeLayout(q, n, t, construction, protection, run_mode)


def single_dup_exhaustive(layout: CodeLayout, r: Report, stride: int = 1):
    c = ComplementMap.paired(layout.q)
    q = layout.q
    for idx, x in enumerate(_words(q, layout.message_length)):
        if idx % stride:
            continue
        cw = c_encode(x, layout)
        ok = c_decode(cw, layout) == x
        bad_pos = None
        for i in range(1, len(cw) + 1):
            y = cw[:i] + (c.table[cw[i - 1]],) + cw[i:]
            try:
                if c_decode(y, layout) != x:
                    ok, bad_pos = False, i
            except DupCodeError:
                ok, bad_pos = False, i
            if not ok:
                break
        r.check(ok, {"x": format_word(x, q), "position": bad_pos})


def random_trials(layout: CodeLayout, r: Report, trials: int, seed: int, diagnostics: bool = True,
                   exact_t: bool = False):
    c = ComplementMap.paired(layout.q)
    q, t = layout.q, layout.t
    diag_fail = 0
    for trial in range(trials):
        rng = rng_for(seed, trial)
        x = tuple(int(a) for a in rng.integers(0, q, size=layout.message_length))
        d = t if exact_t else int(rng.integers(0, t + 1))
        cw = c_encode(x, layout)
        y, transcript = sample(cw, 1, d, seed, c, trial=trial + (1 << 32))
        try:
            ok = c_decode(y, layout) == x
        except DupCodeError:
            ok = False
        if diagnostics:
            diag = window_diagnostics(x, y, layout)
            if not all(diag.values()):
                diag_fail += 1
                ok = False
        r.check(ok, {"trial": trial, "transcript": [e.to_dict() for e in transcript]})
    r.count("window_violations", diag_fail)


def suite_construction(construction: int = 1, q: int = 4, n: int = 8, t: int = 1, protection: str = PAPER,
                       run_mode: Optional[str] = None, exhaustive: bool = False, trials: int = 1000,
                       seed: int = DEFAULT_SEED, stride: int = 1, exact_t: bool = False, **_) -> dict:
    layout = _layout(q, n, t, construction, protection, run_mode)
    name = f"construction{construction}"
    r = Report(name, {"q": q, "n": n, "t": t, "protection": protection, "run_mode": layout.run_mode,
                       "exhaustive": exhaustive, "trials": trials, "stride": stride, "exact_t": exact_t}, seed)
    r.count("layout", layout.to_dict())
    r.count("redundancy", redundancy_order(layout))
    if exhaustive:
        if t != 1:
            raise PreconditionError("exhaustive construction checks cover t = 1")
        single_dup_exhaustive(layout, r, stride)
    else:
        random_trials(layout, r, trials, seed, exact_t=exact_t)
    return r.done()


def suite_construction1(**kw) -> dict:
    return suite_construction(construction=1, **kw)


def suite_construction2(**kw) -> dict:
    return suite_construction(construction=2, **kw)


def suite_lemma14(max_len: int = 8, q: int = 4, **_) -> dict:
    """Per-run recovery from the compact hash after one in-run duplication."""
    r = Report("lemma14", {"q": q, "max_len": max_len, "t": 1})
    c = ComplementMap.paired(q)
    cases = 0
    for length in range(1, max_len + 1):
        for a in range(q):
            for tail in itertools.product((a, c.bar(a)), repeat=length - 1):
                run = (a,) + tail
                h = run_hash(run, 1, c, VT1)
                ok = run_recover(run, h, c) == run
                for y in ball(run, 1, 1, c):
                    cases += 1
                    try:
                        ok &= run_recover(y, h, c) == run
                    except DupCodeError:
                        ok = False
                r.check(ok, {"run": format_word(run, q)})
    r.count("cases", cases)
    return r.done()


SUITES: dict[str, Callable[..., dict]] = {
    "counterexample": suite_counterexample,
    "example1": suite_example1,
    "example2": suite_example2,
    "lemma5": suite_lemma5,
    "lemma6": suite_lemma6,
    "lemma7": suite_lemma7,
    "lemma8": suite_lemma8,
    "lemma9": suite_lemma9,
    "lemma14": suite_lemma14,
    "theorem1": suite_theorem1,
    "theorem2": suite_theorem2,
    "gv": suite_gv,
    "theorem8": suite_gv,
    "roundtrip-rll": suite_roundtrip_rll,
    "protect": suite_protect,
    "construction1": suite_construction1,
    "construction2": suite_construction2,
}


def run_suite(name: str, **params) -> dict:
    if name not in SUITES:
        raise PreconditionError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    report = SUITES[name](**{k: v for k, v in params.items() if v is not None})
    report["command"] = "verify"
    return report
