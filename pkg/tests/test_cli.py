import json
import os

import numpy as np
import pytest

from qcrypta import formats
from qcrypta.cli import main

SEED = "11" * 32


def run(*argv):
    return main([str(a) for a in argv])


@pytest.fixture
def toy_keys(tmp_path):
    pk, sk = tmp_path / "pk", tmp_path / "sk"
    assert run("keygen", "--params", "Toy", "--seed", SEED, "--pk", pk, "--sk", sk) == 0
    return pk, sk


def test_hqc_pipeline(tmp_path, toy_keys):
    pk, sk = toy_keys
    msg = tmp_path / "msg"
    msg.write_bytes(bytes([0xA5] * 7) + b"\x3c")  # 63 bits, top bit clear
    ct, out = tmp_path / "ct", tmp_path / "out"
    assert run("encrypt", "--pk", pk, "--in", msg, "--out", ct, "--seed", SEED) == 0
    assert run("decrypt", "--sk", sk, "--in", ct, "--out", out) == 0
    assert out.read_bytes() == msg.read_bytes()
    assert ct.read_bytes()[:8] == formats.HQC_MAGIC
    assert len(ct.read_bytes()) == formats.HEADER_BYTES + (2 * 6379 + 7) // 8


def test_rqc_pipeline(tmp_path):
    pk, sk, msg, ct, out = (tmp_path / x for x in ("pk", "sk", "msg", "ct", "out"))
    assert run("keygen", "--scheme", "rqc", "--params", "RQC-I", "--seed", SEED, "--pk", pk, "--sk", sk) == 0
    msg.write_bytes(os.urandom(86) + b"\x01")
    assert run("encrypt", "--scheme", "rqc", "--pk", pk, "--in", msg, "--out", ct, "--seed", SEED) == 0
    assert run("decrypt", "--scheme", "rqc", "--sk", sk, "--in", ct, "--out", out) == 0
    assert out.read_bytes() == msg.read_bytes()


def test_seed_determinism(tmp_path):
    outs = []
    for tag in "ab":
        pk, sk = tmp_path / f"pk{tag}", tmp_path / f"sk{tag}"
        run("keygen", "--params", "Low", "--seed", SEED, "--pk", pk, "--sk", sk)
        outs.append((pk.read_bytes(), sk.read_bytes()))
    assert outs[0] == outs[1]


def test_env_seed_fallback(tmp_path, monkeypatch):
    monkeypatch.setenv("QCRYPTA_SEED", SEED)
    run("keygen", "--params", "Toy", "--pk", tmp_path / "a", "--sk", tmp_path / "b")
    run("keygen", "--params", "Toy", "--seed", SEED, "--pk", tmp_path / "c", "--sk", tmp_path / "d")
    assert (tmp_path / "a").read_bytes() == (tmp_path / "c").read_bytes()


def test_params_mismatch_is_usage_error(tmp_path, toy_keys, capsys):
    pk, sk = toy_keys
    assert run("decrypt", "--params", "Low", "--sk", sk, "--in", pk, "--out", tmp_path / "x") == 1
    assert "header is for Toy" in capsys.readouterr().err


def test_usage_errors(tmp_path, toy_keys):
    pk, sk = toy_keys
    assert run("keygen", "--params", "Nope", "--pk", tmp_path / "a", "--sk", tmp_path / "b") == 1
    msg = tmp_path / "m"
    msg.write_bytes(b"\x00" * 9)
    assert run("encrypt", "--pk", pk, "--in", msg, "--out", tmp_path / "c", "--seed", SEED) == 1
    assert run("decrypt", "--sk", tmp_path / "missing", "--in", pk, "--out", tmp_path / "d") == 1
    with pytest.raises(SystemExit) as exc:
        run("frobnicate")
    assert exc.value.code == 1
    assert not (tmp_path / "c").exists()


def test_decrypt_failure_exit_code(tmp_path, toy_keys):
    pk, sk = toy_keys
    junk = tmp_path / "ct"
    # random rho decodes to garbage: majority output is far from every BCH codeword
    payload = bytearray(np.random.default_rng(0).bytes((2 * 6379 + 7) // 8))
    payload[-1] &= 0x3F
    junk.write_bytes(formats.pack(formats.HQC_MAGIC, 0, payload))
    assert run("decrypt", "--sk", sk, "--in", junk, "--out", tmp_path / "o") == 2


def test_kat_gen_verify_and_tamper(tmp_path):
    path = tmp_path / "kat.txt"
    assert run("kat", "gen", path, "--params", "Toy", "--seed", SEED, "--count", 3) == 0
    assert run("kat", "verify", path) == 0
    lines = path.read_text().splitlines()
    idx = [i for i, l in enumerate(lines) if l.startswith("ct = ")][1]
    val = lines[idx][5:]
    lines[idx] = "ct = " + ("1" if val[0] == "0" else "0") + val[1:]
    path.write_text("\n".join(lines))
    assert run("kat", "verify", path) == 2


def test_params_list(capsys):
    assert run("params", "list", "--format", "json") == 0
    rows = json.loads(capsys.readouterr().out)
    assert {r["name"] for r in rows} >= {"Toy", "Strong-Q", "RQC-III"}


def test_analyze_workfactor_and_json(capsys):
    assert run("analyze", "--workfactor", "n=106", "k=53", "m=53", "q=2", "r=4", "--format", "json") == 0
    rep = json.loads(capsys.readouterr().out)
    assert abs(rep["workfactor"]["log2_cost"] - 115.3675) < 1e-3
    assert run("analyze", "--workfactor", "n=106", "k=53") == 1


def test_analyze_instance_with_simulation(capsys):
    assert run("analyze", "--instance", "Toy", "--simulate", 16, "--seed", SEED, "--format", "json") == 0
    row = json.loads(capsys.readouterr().out)["rows"][0]
    assert row["name"] == "Toy" and row["primitive_prime"]
    assert set(row["simulation"]) >= {"model_mean", "empirical_mean", "delta", "three_sigma"}


def test_analyze_rejects_rqc():
    assert run("analyze", "--scheme", "rqc", "--all-classical") == 1
