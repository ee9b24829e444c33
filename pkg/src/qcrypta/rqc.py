"""Rank-metric public-key encryption over GF(2^m)[X]/(X^n - 1) with a
Gabidulin public code.

x and y share one support of dimension w, r1 and r2 share another, eps has
its own support of dimension eps_w.  Decryption removes an error of rank at
most w^2 + eps_w, which the parameter sets keep within the decoding radius,
so a decoding failure here means a bug and raises IntegrityError.
"""

from dataclasses import dataclass
from functools import lru_cache

from . import formats
from .errors import DecodingError, DimensionError, FormatError, IntegrityError, ParameterError
from .gabidulin import GabidulinCode, gab_decode, gab_encode
from .params import RQC_IDS, RqcParameterSet, rqc_by_id, rqc_setup
from .rank_field import RankVector, field, sample_rank_weight
from .xof import SEED_BYTES, SeedExpander, derive_seed

setup = rqc_setup


@lru_cache(maxsize=None)
def public_code(params):
    return GabidulinCode.build(field(params.m), params.n, params.k)


def expand_h(params, h_seed):
    F = field(params.m)
    rng = SeedExpander(h_seed, "rqc/h")
    return RankVector.from_ints(F, [F.random(rng) for _ in range(params.n)])


def _vec_bytes(params):
    return params.n * field(params.m).nbytes


@dataclass(frozen=True)
class RqcPublicKey:
    params: RqcParameterSet
    h_seed: bytes
    s: RankVector

    @property
    def h(self):
        return expand_h(self.params, self.h_seed)

    def to_bytes(self):
        return self.h_seed + self.s.to_bytes()

    @classmethod
    def from_bytes(cls, params, data):
        data = bytes(data)
        want = SEED_BYTES + _vec_bytes(params)
        if len(data) != want:
            raise FormatError(f"public key must be {want} bytes, got {len(data)}")
        s = RankVector.from_bytes(field(params.m), params.n, data[SEED_BYTES:])
        return cls(params, data[:SEED_BYTES], s)


@dataclass(frozen=True)
class RqcSecretKey:
    params: RqcParameterSet
    x: RankVector
    y: RankVector

    def to_bytes(self):
        return self.x.to_bytes() + self.y.to_bytes()

    @classmethod
    def from_bytes(cls, params, data):
        data = bytes(data)
        size = _vec_bytes(params)
        if len(data) != 2 * size:
            raise FormatError(f"secret key must be {2 * size} bytes, got {len(data)}")
        F = field(params.m)
        return cls(
            params,
            RankVector.from_bytes(F, params.n, data[:size]),
            RankVector.from_bytes(F, params.n, data[size:]),
        )


@dataclass(frozen=True)
class RqcCiphertext:
    params: RqcParameterSet
    v: RankVector
    rho: RankVector

    def to_bytes(self):
        return self.v.to_bytes() + self.rho.to_bytes()

    @classmethod
    def from_bytes(cls, params, data):
        data = bytes(data)
        size = _vec_bytes(params)
        if len(data) != 2 * size:
            raise FormatError(f"ciphertext must be {2 * size} bytes, got {len(data)}")
        F = field(params.m)
        return cls(
            params,
            RankVector.from_bytes(F, params.n, data[:size]),
            RankVector.from_bytes(F, params.n, data[size:]),
        )


def keypair_from(params, x, y, h_seed):
    """Test hook: build the key pair for given secrets."""
    s = x + expand_h(params, h_seed).ring_mul(y)
    return RqcPublicKey(params, bytes(h_seed), s), RqcSecretKey(params, x, y)


def rqc_keygen(params, seed):
    seed = bytes(seed)
    rng = SeedExpander(seed, "rqc/keygen")
    x, supp = sample_rank_weight(params.n, params.m, params.w, rng=rng)
    y, _ = sample_rank_weight(params.n, params.m, params.w, shared=supp, rng=rng)
    return keypair_from(params, x, y, derive_seed(seed, "rqc/h-seed"))


def expand_randomness(params, seed):
    """(r1, r2, eps) drawn by :func:`rqc_encrypt` from ``seed``."""
    rng = SeedExpander(bytes(seed), "rqc/encrypt")
    r1, supp = sample_rank_weight(params.n, params.m, params.w, rng=rng)
    r2, _ = sample_rank_weight(params.n, params.m, params.w, shared=supp, rng=rng)
    eps, _ = sample_rank_weight(params.n, params.m, params.eps_w, rng=rng)
    return r1, r2, eps


def rqc_encrypt_from_randomness(pk, msg, r1, r2, eps):
    params = pk.params
    msg = list(msg)
    if len(msg) != params.k:
        raise DimensionError(f"message must have {params.k} field elements, got {len(msg)}")
    mu = gab_encode(public_code(params), msg)
    v = r1 + pk.h.ring_mul(r2)
    rho = mu + pk.s.ring_mul(r2) + eps
    return RqcCiphertext(params, v, rho)


def rqc_encrypt(pk, msg, seed):
    r1, r2, eps = expand_randomness(pk.params, seed)
    return rqc_encrypt_from_randomness(pk, msg, r1, r2, eps)


def noisy_codeword(sk, ct):
    if ct.params != sk.params:
        raise ParameterError("ciphertext and key use different parameters")
    return ct.rho + ct.v.ring_mul(sk.y)


def rqc_decrypt(sk, ct):
    try:
        return gab_decode(public_code(sk.params), noisy_codeword(sk, ct))
    except DecodingError as exc:
        raise IntegrityError(f"rank decoding failed under zero-failure parameters: {exc}") from exc


def decryption_error(sk, r1, r2, eps):
    return sk.x.ring_mul(r2) + r1.ring_mul(sk.y) + eps


def message_to_bytes(params, msg):
    """k field elements, m bits each, packed little-endian."""
    return formats.pack_indices(list(msg), params.m)


def message_from_bytes(params, data):
    return formats.unpack_indices(bytes(data), params.k, params.m)


def params_id(params):
    return RQC_IDS[params.label]


def params_from_id(pid):
    return rqc_by_id(pid)
