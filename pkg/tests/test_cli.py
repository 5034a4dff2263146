import json
import subprocess
import sys

import pytest

from dupcode.alphabet import ComplementMap, parse_word
from dupcode.cli import main
from dupcode.dup_channel import replay, transcript_from_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_channel_fixed_position(capsys):
    code, out, _ = run(capsys, "channel", "--q", "2", "--kind", "rc", "--k", "4", "--pos", "6", "000111000")
    assert code == 0
    assert out.splitlines()[0] == "0001110001110"


def test_channel_disjoint_positions(capsys):
    code, out, _ = run(capsys, "channel", "--q", "2", "--k", "4", "--positions", "3", "000111110")
    assert code == 0 and out.splitlines()[0] == "0001110001110"


def test_channel_zero_duplications_echo(capsys):
    code, out, _ = run(capsys, "channel", "--q", "4", "--t", "0", "0123", "3210")
    assert code == 0
    assert out.splitlines()[0] == "0123" and out.splitlines()[2] == "3210"


def test_channel_transcript_replay_100_seeds(capsys):
    c = ComplementMap.paired(4)
    w = "0123012301230123"
    for seed in range(100):
        code, out, _ = run(capsys, "channel", "--q", "4", "--k", "2", "--t", "3", "--seed", str(seed),
                           "--format", "json", w)
        assert code == 0
        obj = json.loads(out)
        tr = transcript_from_json(json.dumps(obj["transcript"]))
        assert replay(parse_word(w, 4), tr, c) == parse_word(obj["output"], 4)
        assert obj["seed"] == seed


def test_channel_reads_stdin(capsys, monkeypatch):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO("000111000\n"))
    code, out, _ = run(capsys, "channel", "--k", "4", "--pos", "6")
    assert code == 0 and out.splitlines()[0] == "0001110001110"


def test_channel_bad_word(capsys):
    code, _, err = run(capsys, "channel", "--q", "2", "0120")
    assert code == 2 and "error" in err


def test_verify_lemma5(capsys):
    code, out, _ = run(capsys, "verify", "lemma5", "--q", "2", "--n", "8", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["failures"] == 0
    assert rep["command"] == "verify"
    assert rep["counts"] == {"A": 240, "bound": 128}


def test_verify_example1(capsys):
    code, out, _ = run(capsys, "verify", "example1", "--q", "4")
    assert code == 0 and out.startswith("PASS example1")


def test_verify_roundtrip_rll(capsys):
    code, out, _ = run(capsys, "verify", "roundtrip-rll", "--q", "4", "--n", "8", "--exhaustive")
    assert code == 0 and "failures=0" in out


def test_verify_bad_suite_and_bad_args(capsys):
    assert run(capsys, "verify", "nosuch")[0] == 2
    assert run(capsys, "verify", "lemma5", "--q", "x")[0] == 2
    assert run(capsys, "verify", "theorem2", "--q", "1", "--n", "4")[0] == 2


def test_verify_report_byte_stable(capsys):
    argv = ("verify", "lemma8", "--q", "4", "--n", "5", "--seed", "3", "--format", "json")
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first
    assert "elapsed" not in json.loads(first)
    assert "elapsed" in json.loads(run(capsys, *argv, "--timing")[1])


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("DUPCODE_SEED", "41")
    code, out, _ = run(capsys, "channel", "--q", "4", "--format", "json", "0123")
    assert code == 0 and json.loads(out)["seed"] == 41
    monkeypatch.setenv("DUPCODE_SEED", "nope")
    assert run(capsys, "channel", "--q", "4", "0123")[0] == 2


@pytest.mark.parametrize("scheme,n", [("root", 8), ("rll", 12), ("c1", 16), ("c2", 16)])
def test_encode_decode_text(capsys, scheme, n):
    length = n - 1
    msg = ("0123" * 8)[:length]
    code, out, _ = run(capsys, "encode", "--scheme", scheme, "--q", "4", "--n", str(n), msg)
    assert code == 0
    cw = out.strip()
    code, out, _ = run(capsys, "decode", "--scheme", scheme, "--q", "4", "--n", str(n), cw)
    assert code == 0 and out.strip() == msg


def test_encode_decode_json_container_after_channel(capsys):
    msg = "012301230123012"
    code, out, _ = run(capsys, "encode", "--scheme", "c2", "--n", "16", "--format", "json", msg)
    container = json.loads(out)
    code, out, _ = run(capsys, "channel", "--q", "4", "--pos", "5", container["word"])
    container["word"] = out.splitlines()[0]
    code, out, _ = run(capsys, "decode", "--scheme", "c2", "--format", "json", json.dumps(container))
    assert code == 0 and json.loads(out) == {"ok": True, "word": msg}


def test_decode_failure_exit_code(capsys):
    code, out, _ = run(capsys, "decode", "--scheme", "c1", "--n", "8", "0000")
    assert code == 1 and out.startswith("! DecodeFail")


def test_gv_and_count(capsys):
    code, out, _ = run(capsys, "gv", "--q", "2", "--n", "6", "--format", "json", "--show-code")
    d = json.loads(out)
    assert code == 0 and d["code_size"] == len(d["code"]) >= 1
    code, out, _ = run(capsys, "count", "rll", "--q", "4", "--n", "6", "--m", "2")
    assert code == 0 and int(out) > 0
    assert run(capsys, "count", "rll", "--q", "4", "--n", "6")[0] == 2


def test_fuzz_command(capsys):
    code, out, _ = run(capsys, "fuzz", "--scheme", "c1", "--n", "32", "--t", "2", "--protection", "repetition",
                       "--trials", "50", "--format", "json", "--exact-t")
    rep = json.loads(out)
    assert code == 0 and rep["failures"] == 0 and rep["trials"] == 50


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "dupcode", "channel", "--q", "2", "--k", "4", "--pos", "6",
                        "000111000"], capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout.splitlines()[0] == "0001110001110"
