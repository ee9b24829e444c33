"""``qcrypta`` command line.

Exit codes: 0 success, 1 usage or input error, 2 decryption or KAT
verification failure.
"""

import argparse
import json
import os
import sys
import warnings

import numpy as np

from . import analysis, formats, hqc, kat, rqc
from .errors import DecodingError, FormatError, IntegrityError, ParameterError
from .params import HQC_ALL, HQC_CLASSICAL, HQC_QUANTUM, RQC_ALL, ParameterWarning
from .xof import SEED_BYTES, derive_seed

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _seed(args):
    text = args.seed or os.environ.get("QCRYPTA_SEED")
    if text is None:
        return os.urandom(SEED_BYTES)
    try:
        raw = bytes.fromhex(text.strip())
    except ValueError as exc:
        raise UsageError(f"seed is not hex: {text!r}") from exc
    return raw if len(raw) == SEED_BYTES else derive_seed(raw, "cli-seed")


def _scheme_mod(scheme):
    return hqc if scheme == "hqc" else rqc


def _magic(scheme):
    return formats.HQC_MAGIC if scheme == "hqc" else formats.RQC_MAGIC


def _params(scheme, name):
    try:
        return _scheme_mod(scheme).setup(name)
    except ParameterError as exc:
        raise UsageError(str(exc)) from exc


def _read(path):
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _write(path, data):
    with open(path, "wb") as fh:
        fh.write(data)


def _load(path, scheme, expected=None):
    """(params, payload) from a key or ciphertext file."""
    _, pid, payload = formats.unpack(_read(path), _magic(scheme))
    try:
        params = _scheme_mod(scheme).params_from_id(pid)
    except ParameterError as exc:
        raise UsageError(f"{path}: {exc}") from exc
    if expected is not None and params != expected:
        raise UsageError(f"{path}: header is for {params.label}, not {expected.label}")
    return params, payload


def _header(scheme, params, payload):
    return formats.pack(_magic(scheme), _scheme_mod(scheme).params_id(params), payload)


def _msg_from_file(scheme, params, data):
    if scheme == "hqc":
        nbytes = (params.k + 7) // 8
        if len(data) != nbytes:
            raise UsageError(f"plaintext must be {params.k} bits ({nbytes} bytes), got {len(data)} bytes")
        bits = np.unpackbits(np.frombuffer(data, np.uint8), bitorder="little")
        if bits[params.k:].any():
            raise UsageError("plaintext has nonzero padding bits")
        return bits[: params.k]
    try:
        return rqc.message_from_bytes(params, data)
    except FormatError as exc:
        raise UsageError(f"plaintext must be {params.k * params.m} bits: {exc}") from exc


def _msg_to_bytes(scheme, params, msg):
    if scheme == "hqc":
        return np.packbits(np.asarray(msg, np.uint8), bitorder="little").tobytes()
    return rqc.message_to_bytes(params, msg)


def cmd_keygen(args):
    params = _params(args.scheme, args.params)
    seed = _seed(args)
    if args.scheme == "hqc":
        pk, sk = hqc.keygen(params, seed)
    else:
        pk, sk = rqc.rqc_keygen(params, seed)
    _write(args.pk, _header(args.scheme, params, pk.to_bytes()))
    _write(args.sk, _header(args.scheme, params, sk.to_bytes()))
    return EXIT_OK


def cmd_encrypt(args):
    expected = _params(args.scheme, args.params) if args.params else None
    params, payload = _load(args.pk, args.scheme, expected)
    msg = _msg_from_file(args.scheme, params, _read(args.input))
    seed = _seed(args)
    if args.scheme == "hqc":
        pk = hqc.HqcPublicKey.from_bytes(params, payload)
        ct = hqc.encrypt(pk, params, msg, seed)
    else:
        pk = rqc.RqcPublicKey.from_bytes(params, payload)
        ct = rqc.rqc_encrypt(pk, msg, seed)
    _write(args.out, _header(args.scheme, params, ct.to_bytes()))
    return EXIT_OK


def cmd_decrypt(args):
    expected = _params(args.scheme, args.params) if args.params else None
    params, sk_payload = _load(args.sk, args.scheme, expected)
    ct_params, ct_payload = _load(args.input, args.scheme, params)
    try:
        if args.scheme == "hqc":
            sk = hqc.HqcSecretKey.from_bytes(params, sk_payload)
            msg = hqc.decrypt(sk, params, hqc.HqcCiphertext.from_bytes(ct_params, ct_payload))
        else:
            sk = rqc.RqcSecretKey.from_bytes(params, sk_payload)
            msg = rqc.rqc_decrypt(sk, rqc.RqcCiphertext.from_bytes(ct_params, ct_payload))
    except (DecodingError, IntegrityError) as exc:
        print(f"decryption failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _write(args.out, _msg_to_bytes(args.scheme, params, msg))
    return EXIT_OK


def cmd_kat(args):
    if args.action == "gen":
        if not args.params:
            raise UsageError("kat gen needs --params")
        _params(args.scheme, args.params)
        text = kat.generate(args.scheme, args.params, _seed(args), args.count)
        with open(args.file, "w") as fh:
            fh.write(text)
        return EXIT_OK
    with open(args.file) as fh:
        text = fh.read()
    if args.params:
        _params(args.scheme, args.params)
    verdict = kat.verify(text, args.scheme if args.params else None, args.params)
    print(verdict)
    return EXIT_OK if verdict.ok else EXIT_FAIL


def cmd_params(args):
    rows = []
    if args.scheme in ("hqc", "all"):
        for p in HQC_ALL:
            rows.append({
                "scheme": "hqc", "name": p.label, "n1": p.n1, "n2": p.n2, "n": p.n, "k": p.k,
                "delta": p.delta, "w": p.w, "eps_w": p.eps_w, "security_bits": p.security_bits,
                "pk_bits": p.public_key_bits, "sk_bits": p.secret_key_bits, "ct_bits": p.ciphertext_bits,
                "issues": p.problems(),
            })
    if args.scheme in ("rqc", "all"):
        for p in RQC_ALL:
            rows.append({
                "scheme": "rqc", "name": p.label, "n": p.n, "k": p.k, "m": p.m, "q": p.q, "w": p.w,
                "eps_w": p.eps_w, "security_bits": p.security_bits,
                "plaintext_bits": p.plaintext_bits, "key_bits": p.key_size_bits, "issues": p.problems(),
            })
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    else:
        for r in rows:
            issues = r.pop("issues")
            fields = " ".join(f"{k}={v}" for k, v in r.items() if k not in ("scheme", "name"))
            note = f"  [{'; '.join(issues)}]" if issues else ""
            print(f"{r['scheme']:4} {r['name']:10} {fields}{note}")
    return EXIT_OK


def _parse_workfactor(items):
    vals = {}
    for item in items:
        key, sep, val = item.partition("=")
        if not sep or key not in ("n", "k", "m", "q", "r"):
            raise UsageError(f"bad workfactor argument {item!r}; use n=.. k=.. m=.. q=.. r=..")
        try:
            vals[key] = int(val)
        except ValueError as exc:
            raise UsageError(f"{key} must be an integer") from exc
    missing = {"n", "k", "m", "q", "r"} - set(vals)
    if missing:
        raise UsageError("workfactor needs " + ", ".join(sorted(missing)))
    return vals


def cmd_analyze(args):
    if args.scheme != "hqc":
        raise UsageError("analyze supports only --scheme hqc")
    report = {"rows": []}
    if args.workfactor:
        wf = _parse_workfactor(args.workfactor)
        try:
            report["workfactor"] = dict(wf, log2_cost=analysis.rank_attack_workfactor(**wf))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    rows = []
    if args.all_classical:
        rows += HQC_CLASSICAL
    if args.all_quantum:
        rows += HQC_QUANTUM
    if args.instance:
        rows.append(_params("hqc", args.instance))
    if not rows and not args.workfactor:
        raise UsageError("nothing to analyze; give --all-classical, --all-quantum, --instance or --workfactor")
    seed = _seed(args) if args.simulate else None
    for p in rows:
        report["rows"].append(analysis.row_report(p, args.simulate, seed))
    if args.format == "json":
        print(json.dumps(report, indent=2))
        return EXIT_OK
    for r in report["rows"]:
        verdict = "pass" if r["pass"] else "FAIL"
        prim = "yes" if r["primitive_prime"] else "NO"
        print(f"{r['name']:10} log2_pfail={r['log2_pfail']:9.2f}  bound={r['claimed_bound']:5d}  "
              f"{verdict}  primitive_prime={prim}")
        sim = r.get("simulation")
        if sim:
            ok = "within" if sim["within_3sigma"] else "OUTSIDE"
            print(f"{'':10} simulation: trials={sim['trials']} model_mean={sim['model_mean']:.2f} "
                  f"empirical_mean={sim['empirical_mean']:.2f} delta={sim['delta']:+.2f} "
                  f"3sigma={sim['three_sigma']:.2f} ({ok})")
    if "workfactor" in report:
        wf = report["workfactor"]
        print("workfactor n={n} k={k} m={m} q={q} r={r}: log2 cost = {log2_cost:.4f}".format(**wf))
    return EXIT_OK


def build_parser():
    p = _Parser(prog="qcrypta", description="Hamming and rank metric code-based encryption.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, params_required=False):
        sp.add_argument("--scheme", choices=("hqc", "rqc"), default="hqc")
        sp.add_argument("--params", required=params_required, help="instance name, e.g. Toy or RQC-I")
        sp.add_argument("--seed", help="hex seed (falls back to $QCRYPTA_SEED)")

    sp = sub.add_parser("keygen", help="generate a key pair")
    common(sp, True)
    sp.add_argument("--pk", required=True)
    sp.add_argument("--sk", required=True)
    sp.set_defaults(func=cmd_keygen)

    sp = sub.add_parser("encrypt", help="encrypt a k-bit plaintext file")
    common(sp)
    sp.add_argument("--pk", required=True)
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_encrypt)

    sp = sub.add_parser("decrypt", help="decrypt a ciphertext file")
    common(sp)
    sp.add_argument("--sk", required=True)
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_decrypt)

    sp = sub.add_parser("kat", help="generate or verify known-answer tests")
    sp.add_argument("action", choices=("gen", "verify"))
    sp.add_argument("file")
    common(sp)
    sp.add_argument("--count", type=int, default=kat.DEFAULT_COUNT)
    sp.set_defaults(func=cmd_kat)

    sp = sub.add_parser("params", help="list parameter sets")
    sp.add_argument("action", choices=("list",))
    sp.add_argument("--scheme", choices=("hqc", "rqc", "all"), default="all")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_params)

    sp = sub.add_parser("analyze", help="decryption failure analysis")
    sp.add_argument("--scheme", choices=("hqc", "rqc"), default="hqc")
    sp.add_argument("--all-classical", action="store_true")
    sp.add_argument("--all-quantum", action="store_true")
    sp.add_argument("--instance")
    sp.add_argument("--simulate", type=int, default=0, metavar="N")
    sp.add_argument("--seed")
    sp.add_argument("--workfactor", nargs="+", metavar="KEY=VAL")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_analyze)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ParameterWarning)
            return args.func(args)
    except (UsageError, FormatError, ParameterError) as exc:
        print(f"qcrypta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
