"""``dupcode`` command-line front end.

Words are read from positional arguments or, when none are given, one per
line from stdin. Exit status: 0 success, 1 verification/decoding failure,
2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional, Sequence

from . import __version__
from .alphabet import ComplementMap, ceil_log, format_word, parse_word
from .confusion_graph import ALL, ROOTS, GraphSpec, greedy_code
from .dup_channel import PAL, RC, DuplicationEvent, apply, apply_disjoint, sample, transcript_to_json
from .dup_codes import PAPER, REPETITION, CodeLayout, c_decode, c_encode, container_from_json, container_to_json
from .errors import DecodeFail, DupCodeError
from .rcd_root import RootParams, count_roots
from .rll_codec import RllParams, count_rll, rll_decode, rll_encode
from .root_codec import RootCodec
from .verify import SUITES, random_trials, Report, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SCHEMES = ("root", "rll", "c1", "c2")


class UsageError(Exception):
    pass


def resolve_seed(seed: Optional[int]) -> int:
    if seed is not None:
        return seed
    env = os.environ.get("DUPCODE_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"DUPCODE_SEED={env!r} is not an integer")


def _read_words(args, q: int) -> list:
    lines = args.words if args.words else [s for s in sys.stdin.read().split("\n") if s.strip()]
    return [parse_word(s.strip(), q) for s in lines]


def _emit(args, obj, text: str):
    if args.format == "json":
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text)


def _report_out(args, report: dict, started: float) -> int:
    report["seed"] = report.get("seed")
    if getattr(args, "timing", False):
        report["elapsed"] = round(time.perf_counter() - started, 3)
    if args.format == "json":
        print(json.dumps(report, sort_keys=True))
    else:
        status = "PASS" if report["failures"] == 0 else "FAIL"
        print(f"{status} {report['suite']} trials={report['trials']} failures={report['failures']}")
        for key, value in report["counts"].items():
            print(f"  {key}: {json.dumps(value, sort_keys=True)}")
        for ex in report["examples"]:
            print(f"  failure: {json.dumps(ex, sort_keys=True)}")
    return EXIT_OK if report["failures"] == 0 else EXIT_FAIL


# ---------------------------------------------------------------- commands


def cmd_channel(args) -> int:
    q = args.q
    cmap = ComplementMap.for_mode(args.mode, q)
    kind = args.kind or (PAL if args.mode == "pal" else RC)
    seed = resolve_seed(args.seed)
    k = args.k
    for trial, w in enumerate(_read_words(args, q)):
        if args.pos is not None:
            transcript = [DuplicationEvent(args.pos, k, kind)]
            y = apply(w, transcript[0], cmap)
        elif args.positions:
            pos = tuple(int(s) for s in args.positions.split(","))
            y = apply_disjoint(w, k, pos, cmap, kind)
            # restate as sequential events for replay
            transcript = [DuplicationEvent(p + j * k, k, kind) for j, p in enumerate(pos)]
        else:
            y, transcript = sample(w, k, args.t, seed, cmap, kind, trial=trial)
        tj = transcript_to_json(transcript)
        obj = {"input": format_word(w, q), "output": format_word(y, q), "seed": seed,
               "transcript": json.loads(tj)}
        _emit(args, obj, f"{format_word(y, q)}\n{tj}")
    return EXIT_OK


def _layout_from(args, construction: int) -> CodeLayout:
    return CodeLayout(args.q, args.n, args.t, construction, args.protection, args.run_mode)


def _codec(args):
    s = args.scheme
    if s == "root":
        codec = RootCodec(args.q, args.n, ComplementMap.for_mode(args.mode, args.q))
        return codec.encode, codec.decode, None
    if s == "rll":
        p = RllParams(args.q, args.n)
        return (lambda x: rll_encode(x, p)), (lambda y: rll_decode(y, p)), None
    layout = _layout_from(args, 1 if s == "c1" else 2)
    return (lambda x: c_encode(x, layout)), (lambda y: c_decode(y, layout)), layout


def cmd_encode(args) -> int:
    enc, _, layout = _codec(args)
    for x in _read_words(args, args.q):
        y = enc(x)
        if args.format == "json" and layout is not None:
            print(container_to_json(y, layout))
        else:
            _emit(args, {"scheme": args.scheme, "word": format_word(y, args.q)}, format_word(y, args.q))
    return EXIT_OK


def cmd_decode(args) -> int:
    status = EXIT_OK
    if args.format == "json" and args.scheme in ("c1", "c2"):
        lines = args.words if args.words else [s for s in sys.stdin.read().split("\n") if s.strip()]
        items = [container_from_json(s) for s in lines]
        jobs = [(w, (lambda y, L=L: c_decode(y, L)), L.q) for w, L in items]
    else:
        _, dec, _ = _codec(args)
        jobs = [(w, dec, args.q) for w in _read_words(args, args.q)]
    for w, dec, q in jobs:
        try:
            x = dec(w)
            _emit(args, {"ok": True, "word": format_word(x, q)}, format_word(x, q))
        except DecodeFail as e:
            status = EXIT_FAIL
            _emit(args, {"ok": False, "error": type(e).__name__, "detail": str(e)}, f"! {type(e).__name__}: {e}")
    return status


def cmd_verify(args) -> int:
    started = time.perf_counter()
    seed = resolve_seed(args.seed)
    params = {
        "q": args.q, "n": args.n, "m": args.m, "t": args.t, "seed": seed, "mode": args.mode,
        "trials": args.trials, "exhaustive": args.exhaustive or None, "protection": args.protection,
        "run_mode": args.run_mode,
    }
    if args.k is not None:
        params["ks"] = (args.k,)
    report = run_suite(args.suite, **params)
    if report.get("seed") is None:
        report["seed"] = seed
    return _report_out(args, report, started)


def cmd_gv(args) -> int:
    spec = GraphSpec(args.q, args.n, args.vertices, ComplementMap.for_mode(args.mode, args.q),
                     m=args.m, **_budget(args))
    code, report = greedy_code(spec)
    d = report.to_dict()
    if args.show_code:
        d["code"] = [format_word(w, args.q) for w in code]
    if args.format == "json":
        print(json.dumps(d, sort_keys=True))
    else:
        for key in ("n", "q", "mode", "vertex_count", "max_degree", "alon_bound", "code_size", "redundancy", "gv_quotient"):
            print(f"{key}: {d[key]}")
        print(f"per_k_max_neighborhood: {json.dumps(d['per_k_max_neighborhood'])}")
    return EXIT_OK


def cmd_count(args) -> int:
    if args.what == "roots":
        m = args.m if args.m is not None else max(2, ceil_log(args.q, args.n) + 1)
        p = RootParams(args.q, args.n, m, ComplementMap.for_mode(args.mode, args.q))
        value = count_roots(p, **_budget(args))
        obj = {"what": "roots", "q": args.q, "n": args.n, "m": p.m, "count": value}
    else:
        if args.m is None:
            raise UsageError("count rll needs --m")
        value = count_rll(args.n, args.m, args.q, **_budget(args))
        obj = {"what": "rll", "q": args.q, "n": args.n, "m": args.m, "count": value}
    _emit(args, obj, str(value))
    return EXIT_OK


def _budget(args) -> dict:
    return {"budget": args.budget} if args.budget else {}


def cmd_fuzz(args) -> int:
    started = time.perf_counter()
    seed = resolve_seed(args.seed)
    if args.scheme not in ("c1", "c2"):
        raise UsageError("fuzz supports the duplication codes c1 and c2")
    layout = _layout_from(args, 1 if args.scheme == "c1" else 2)
    r = Report("fuzz", {"scheme": args.scheme, "q": args.q, "n": args.n, "t": args.t,
                         "protection": layout.protection, "run_mode": layout.run_mode,
                         "trials": args.trials, "exact_t": args.exact_t}, seed)
    r.count("layout", layout.to_dict())
    random_trials(layout, r, args.trials, seed, exact_t=args.exact_t)
    report = r.done()
    report["command"] = "fuzz"
    return _report_out(args, report, started)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=None, help="alphabet size")
    common.add_argument("--n", type=int, default=None, help="codeword / word length")
    common.add_argument("--m", type=int, default=None, help="root or RLL parameter")
    common.add_argument("--k", type=int, default=None, help="duplication length")
    common.add_argument("--t", type=int, default=None, help="number of duplications")
    common.add_argument("--seed", type=int, default=None, help="seed (falls back to $DUPCODE_SEED, then 0)")
    common.add_argument("--mode", choices=("rc", "pal"), default="rc", help="complement map: paired or identity")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget", type=int, default=None, help="enumeration budget")

    parser = argparse.ArgumentParser(prog="dupcode", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("channel", parents=[common], help="apply duplications to words")
    p.add_argument("--kind", choices=(RC, PAL), default=None)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--pos", type=int, default=None, help="single event at this 1-based position")
    g.add_argument("--positions", default=None, help="disjoint pattern i1,i2,... on the original word")
    p.add_argument("words", nargs="*")
    p.set_defaults(func=cmd_channel, q=2, k=1, t=1)

    codec_opts = argparse.ArgumentParser(add_help=False)
    codec_opts.add_argument("--scheme", choices=SCHEMES, default="c1")
    codec_opts.add_argument("--protection", choices=(PAPER, REPETITION), default=PAPER)
    codec_opts.add_argument("--run-mode", dest="run_mode", choices=("vt1", "full"), default=None)
    for name, func, help_ in (("encode", cmd_encode, "encode messages"), ("decode", cmd_decode, "decode words")):
        p = sub.add_parser(name, parents=[common, codec_opts], help=help_)
        p.add_argument("words", nargs="*")
        p.set_defaults(func=func, q=4, t=1)

    p = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--protection", choices=(PAPER, REPETITION), default=None)
    p.add_argument("--run-mode", dest="run_mode", choices=("vt1", "full"), default=None)
    p.add_argument("--timing", action="store_true", help="add elapsed seconds (breaks byte stability)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gv", parents=[common], help="greedy code in the confusion graph")
    p.add_argument("--vertices", choices=(ALL, ROOTS), default=ROOTS)
    p.add_argument("--show-code", action="store_true")
    p.set_defaults(func=cmd_gv, q=2, n=8)

    p = sub.add_parser("count", parents=[common], help="exact root or RLL counts")
    p.add_argument("what", choices=("roots", "rll"))
    p.set_defaults(func=cmd_count, q=2, n=8)

    p = sub.add_parser("fuzz", parents=[common, codec_opts], help="seeded construction fuzzing")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--exact-t", dest="exact_t", action="store_true", help="always inject exactly t duplications")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_fuzz, q=4, n=32, t=1)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ValueError) as e:
        print(f"dupcode: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DecodeFail as e:
        print(f"dupcode: decode failed: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL
    except DupCodeError as e:
        print(f"dupcode: error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
