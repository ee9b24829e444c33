"""Hamming-metric public-key encryption over F_2[X]/(X^n - 1).

KeyGen:  q_r uniform, x and y of weight w, s = x + q_r y
Encrypt: r1, r2 of weight w, eps of weight eps_w,
         v = r1 + q_r r2,  rho = encode(msg) + s r2 + eps
Decrypt: decode(rho + v y)

Every random choice is expanded from an explicit 32-byte seed.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import formats
from .bch import BchCode
from .cyclic_ring import (
    FixedWeightSpec,
    RingElement,
    pack_bits,
    ring_mul,
    sample_fixed_weight,
    sample_uniform,
    unpack_bits,
)
from .errors import DimensionError, FormatError, ParameterError
from .params import HQC_IDS, ParameterSet, hqc_by_id, hqc_setup, index_bits
from .tensor_code import TensorCode, tensor_decode, tensor_encode
from .xof import SEED_BYTES, SeedExpander, derive_seed

setup = hqc_setup


@lru_cache(maxsize=None)
def tensor_code(params):
    bch = BchCode.build(params.n1, params.delta, params.k)
    return TensorCode(bch, params.n2, params.n)


def expand_qr(params, qr_seed):
    return sample_uniform(params.n, SeedExpander(qr_seed, "hqc/qr"))


@dataclass(frozen=True)
class HqcPublicKey:
    params: ParameterSet
    qr_seed: bytes
    s: RingElement

    @property
    def qr(self):
        return expand_qr(self.params, self.qr_seed)

    def to_bytes(self):
        """Compact form: seed of q_r followed by s (32 + ceil(n/8) bytes)."""
        return self.qr_seed + self.s.to_bytes()

    def to_bytes_full(self):
        """(q_r, s) bit-packed back to back: exactly 2n payload bits."""
        return pack_bits([self.qr, self.s])

    @classmethod
    def from_bytes(cls, params, data):
        data = bytes(data)
        want = SEED_BYTES + (params.n + 7) // 8
        if len(data) != want:
            raise FormatError(f"public key must be {want} bytes, got {len(data)}")
        return cls(params, data[:SEED_BYTES], RingElement.from_bytes(params.n, data[SEED_BYTES:]))


@dataclass(frozen=True)
class HqcSecretKey:
    params: ParameterSet
    x: RingElement
    y: RingElement
    seed: bytes = b""

    def to_bytes(self):
        """Support indices of x then y, each ceil(log2 n) bits."""
        idx = list(self.x.support()) + list(self.y.support())
        return formats.pack_indices(idx, index_bits(self.params.n))

    @classmethod
    def from_bytes(cls, params, data):
        w, n = params.w, params.n
        idx = formats.unpack_indices(bytes(data), 2 * w, index_bits(n))
        if any(i >= n for i in idx):
            raise FormatError("support index out of range")
        x = RingElement.from_positions(n, idx[:w])
        y = RingElement.from_positions(n, idx[w:])
        if x.weight != w or y.weight != w:
            raise FormatError("repeated support index")
        return cls(params, x, y)


@dataclass(frozen=True)
class HqcCiphertext:
    params: ParameterSet
    v: RingElement
    rho: RingElement

    def to_bytes(self):
        return pack_bits([self.v, self.rho])

    @classmethod
    def from_bytes(cls, params, data):
        v, rho = unpack_bits(data, [params.n, params.n])
        return cls(params, v, rho)


def keypair_from(params, x, y, qr_seed):
    """Test hook: build the key pair for given secrets."""
    if x.n != params.n or y.n != params.n:
        raise DimensionError("secret length does not match n")
    s = x + ring_mul(expand_qr(params, qr_seed), y)
    return HqcPublicKey(params, bytes(qr_seed), s), HqcSecretKey(params, x, y)


def keygen(params, seed):
    seed = bytes(seed)
    qr_seed = derive_seed(seed, "hqc/qr-seed")
    rng = SeedExpander(seed, "hqc/keygen")
    spec = FixedWeightSpec(params.n, params.w)
    x = sample_fixed_weight(spec, rng)
    y = sample_fixed_weight(spec, rng)
    pk, sk = keypair_from(params, x, y, qr_seed)
    return pk, HqcSecretKey(params, x, y, seed)


def expand_randomness(params, seed):
    """(r1, r2, eps) drawn by :func:`encrypt` from ``seed``."""
    rng = SeedExpander(bytes(seed), "hqc/encrypt")
    spec = FixedWeightSpec(params.n, params.w)
    r1 = sample_fixed_weight(spec, rng)
    r2 = sample_fixed_weight(spec, rng)
    eps = sample_fixed_weight(FixedWeightSpec(params.n, params.eps_w), rng)
    return r1, r2, eps


def pad_message(params, msg):
    msg = np.asarray(msg, dtype=np.uint8).reshape(-1)
    if msg.shape[0] > params.k:
        raise DimensionError(f"message has {msg.shape[0]} bits, at most {params.k} allowed")
    if ((msg != 0) & (msg != 1)).any():
        raise ValueError("message bits must be 0 or 1")
    out = np.zeros(params.k, dtype=np.uint8)
    out[: msg.shape[0]] = msg
    return out


def _check_params(params, key):
    if key.params != params:
        raise ParameterError(f"key belongs to {key.params.label}, not {params.label}")


def encrypt_from_randomness(pk, params, msg, r1, r2, eps):
    """Test hook: Encrypt with explicit randomness."""
    _check_params(params, pk)
    mu = tensor_encode(tensor_code(params), pad_message(params, msg))
    v = r1 + ring_mul(pk.qr, r2)
    rho = mu + ring_mul(pk.s, r2) + eps
    return HqcCiphertext(params, v, rho)


def encrypt(pk, params, msg, seed):
    r1, r2, eps = expand_randomness(params, seed)
    return encrypt_from_randomness(pk, params, msg, r1, r2, eps)


def noisy_codeword(sk, params, ct):
    """rho + v y: the encoded message plus the decryption error."""
    _check_params(params, sk)
    if ct.v.n != params.n or ct.rho.n != params.n:
        raise DimensionError("ciphertext length does not match n")
    return ct.rho + ring_mul(ct.v, sk.y)


def decrypt(sk, params, ct):
    """Recovered k message bits; DecodingError when the error is too heavy."""
    return tensor_decode(tensor_code(params), noisy_codeword(sk, params, ct))


def decryption_error(sk, r1, r2, eps):
    """x r2 + r1 y + eps: what decryption has to remove."""
    return ring_mul(sk.x, r2) + ring_mul(r1, sk.y) + eps


def params_id(params):
    return HQC_IDS[params.label]


def params_from_id(pid):
    return hqc_by_id(pid)
