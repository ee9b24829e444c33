"""Known-answer test files.

Layout: ``#``-prefixed header lines (scheme, params, master seed), then one
blank-line separated block per vector with ``key = hex`` lines.  Each
vector is a pure function of its ``seed`` line, so verification rebuilds
every field from that seed and compares bytes.
"""

from dataclasses import dataclass

import numpy as np

from . import hqc, rqc
from .errors import FormatError
from .rank_field import field
from .xof import SeedExpander, derive_seed

DEFAULT_COUNT = 100


def _hqc_vector(params, vseed):
    pk, sk = hqc.keygen(params, derive_seed(vseed, "keygen"))
    rng = SeedExpander(vseed, "kat/msg")
    msg = np.unpackbits(np.frombuffer(rng.read((params.k + 7) // 8), np.uint8), bitorder="little")[: params.k]
    ct = hqc.encrypt(pk, params, msg, derive_seed(vseed, "encrypt"))
    return {
        "seed": vseed,
        "pk": pk.to_bytes(),
        "pk_full": pk.to_bytes_full(),
        "sk": sk.to_bytes(),
        "msg": np.packbits(msg, bitorder="little").tobytes(),
        "ct": ct.to_bytes(),
    }


def _rqc_vector(params, vseed):
    pk, sk = rqc.rqc_keygen(params, derive_seed(vseed, "keygen"))
    F = field(params.m)
    rng = SeedExpander(vseed, "kat/msg")
    msg = [F.random(rng) for _ in range(params.k)]
    ct = rqc.rqc_encrypt(pk, msg, derive_seed(vseed, "encrypt"))
    return {
        "seed": vseed,
        "pk": pk.to_bytes(),
        "sk": sk.to_bytes(),
        "msg": rqc.message_to_bytes(params, msg),
        "ct": ct.to_bytes(),
    }


def _setup(scheme, name):
    if scheme == "hqc":
        return hqc.setup(name)
    if scheme == "rqc":
        return rqc.setup(name)
    raise ValueError(f"unknown scheme {scheme!r}")


def make_vector(scheme, params, vseed):
    return (_hqc_vector if scheme == "hqc" else _rqc_vector)(params, vseed)


def generate(scheme, name, master, count=DEFAULT_COUNT):
    """KAT file contents as a string."""
    params = _setup(scheme, name)
    lines = [f"# scheme = {scheme}", f"# params = {params.label}", f"# master = {bytes(master).hex()}", ""]
    for i in range(count):
        vec = make_vector(scheme, params, derive_seed(master, "kat", i))
        lines += [f"{key} = {val.hex()}" for key, val in vec.items()]
        lines.append("")
    return "\n".join(lines)


def parse(text):
    """(header dict, list of vector dicts with bytes values)."""
    header, vectors, cur = {}, [], {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            key, _, val = line[1:].partition("=")
            header[key.strip()] = val.strip()
            continue
        if not line:
            if cur:
                vectors.append(cur)
                cur = {}
            continue
        key, sep, val = line.partition("=")
        if not sep:
            raise FormatError(f"line {lineno}: expected 'key = hex'")
        try:
            cur[key.strip()] = bytes.fromhex(val.strip())
        except ValueError as exc:
            raise FormatError(f"line {lineno}: bad hex") from exc
    if cur:
        vectors.append(cur)
    return header, vectors


@dataclass(frozen=True)
class KatVerdict:
    ok: bool
    count: int
    index: int = -1
    field: str = ""
    detail: str = ""

    def __str__(self):
        if self.ok:
            return f"PASS: {self.count} vectors match"
        return f"FAIL: vector {self.index}, field '{self.field}': {self.detail}"


def verify(text, scheme=None, name=None):
    header, vectors = parse(text)
    scheme = scheme or header.get("scheme")
    name = name or header.get("params")
    if scheme is None or name is None:
        raise FormatError("scheme and params must be given in the header or by the caller")
    params = _setup(scheme, name)
    if header.get("params") not in (None, params.label):
        raise FormatError(f"file is for {header['params']}, not {params.label}")
    master = bytes.fromhex(header["master"]) if "master" in header else None
    for i, vec in enumerate(vectors):
        if "seed" not in vec:
            return KatVerdict(False, len(vectors), i, "seed", "missing")
        if master is not None and vec["seed"] != derive_seed(master, "kat", i):
            return KatVerdict(False, len(vectors), i, "seed", "does not derive from the master seed")
        want = make_vector(scheme, params, vec["seed"])
        for key, val in want.items():
            if vec.get(key) != val:
                return KatVerdict(False, len(vectors), i, key, "differs from the recomputed value")
        extra = set(vec) - set(want)
        if extra:
            return KatVerdict(False, len(vectors), i, sorted(extra)[0], "unexpected field")
        # decrypt from the stored bytes as well, not only the recomputation
        bad = _decrypt_check(scheme, params, vec)
        if bad:
            return KatVerdict(False, len(vectors), i, "msg", bad)
    return KatVerdict(True, len(vectors))


def _decrypt_check(scheme, params, vec):
    try:
        if scheme == "hqc":
            sk = hqc.HqcSecretKey.from_bytes(params, vec["sk"])
            ct = hqc.HqcCiphertext.from_bytes(params, vec["ct"])
            got = np.packbits(hqc.decrypt(sk, params, ct), bitorder="little").tobytes()
        else:
            sk = rqc.RqcSecretKey.from_bytes(params, vec["sk"])
            ct = rqc.RqcCiphertext.from_bytes(params, vec["ct"])
            got = rqc.message_to_bytes(params, rqc.rqc_decrypt(sk, ct))
    except Exception as exc:  # any failure is a verification failure
        return f"decryption failed: {exc}"
    return "" if got == vec["msg"] else "decryption does not return the stored message"
