import numpy as np
import pytest

from qcrypta import hqc
from qcrypta.cyclic_ring import RingElement, ring_mul
from qcrypta.errors import DecodingError, DimensionError, ParameterError
from qcrypta.params import ParameterSet
from qcrypta.tensor_code import tensor_encode
from qcrypta.xof import derive_seed

TINY = ParameterSet("tiny", 15, 3, 53, 7, 2, 1, 3, 8)
ZERO_W = ParameterSet("zero", 15, 3, 53, 7, 2, 0, 0, 8)


@pytest.fixture(scope="module")
def toy():
    p = hqc.setup("Toy")
    return (p,) + hqc.keygen(p, derive_seed(b"hqc-test", "toy"))


def _msg(p, i):
    return np.random.default_rng(i).integers(0, 2, p.k).astype(np.uint8)


def test_keygen_deterministic_and_consistent(toy):
    p, pk, sk = toy
    pk2, sk2 = hqc.keygen(p, derive_seed(b"hqc-test", "toy"))
    assert pk.to_bytes() == pk2.to_bytes() and sk.to_bytes() == sk2.to_bytes()
    assert sk.x.weight == sk.y.weight == p.w
    assert pk.s == sk.x + ring_mul(pk.qr, sk.y)


def test_zero_secret_hook():
    pk, sk = hqc.keypair_from(ZERO_W, RingElement.zero(53), RingElement.zero(53), bytes(32))
    assert pk.s == RingElement.zero(53)


def test_zero_randomness_encrypt(toy):
    p, pk, sk = toy
    msg = _msg(p, 1)
    z = RingElement.zero(p.n)
    ct = hqc.encrypt_from_randomness(pk, p, msg, z, z, z)
    assert ct.v == z
    assert ct.rho == tensor_encode(hqc.tensor_code(p), msg)
    assert np.array_equal(hqc.decrypt(sk, p, ct), msg)


def test_encrypt_deterministic_and_v_recomputed(toy):
    p, pk, sk = toy
    msg, seed = _msg(p, 2), derive_seed(b"hqc-test", "enc")
    ct = hqc.encrypt(pk, p, msg, seed)
    assert ct.to_bytes() == hqc.encrypt(pk, p, msg, seed).to_bytes()
    r1, r2, eps = hqc.expand_randomness(p, seed)
    assert (r1.weight, r2.weight, eps.weight) == (p.w, p.w, p.eps_w)
    assert ct.v == r1 + ring_mul(pk.qr, r2)


def test_correctness_chain(toy):
    p, pk, sk = toy
    for i in range(20):
        msg, seed = _msg(p, i), derive_seed(b"hqc-test", "chain", i)
        ct = hqc.encrypt(pk, p, msg, seed)
        r1, r2, eps = hqc.expand_randomness(p, seed)
        expected = tensor_encode(hqc.tensor_code(p), msg) + hqc.decryption_error(sk, r1, r2, eps)
        assert hqc.noisy_codeword(sk, p, ct) == expected
        assert np.array_equal(hqc.decrypt(sk, p, ct), msg)


def test_beyond_capability_injection(toy):
    p, pk, sk = toy
    tc = hqc.tensor_code(p)
    msg = _msg(p, 3)
    z = RingElement.zero(p.n)
    ct = hqc.encrypt_from_randomness(pk, p, msg, z, z, z)
    flips = [b * p.n2 + j for b in range(tc.delta1 + 1) for j in range(tc.delta2 + 1)]
    bad = hqc.HqcCiphertext(p, ct.v, ct.rho + RingElement.from_positions(p.n, flips))
    try:
        out = hqc.decrypt(sk, p, bad)
    except DecodingError:
        return
    assert not np.array_equal(out, msg)


def test_short_message_padded_long_rejected(toy):
    p, pk, sk = toy
    ct = hqc.encrypt(pk, p, [1, 0, 1], derive_seed(b"hqc-test", "pad"))
    out = hqc.decrypt(sk, p, ct)
    assert out[:3].tolist() == [1, 0, 1] and not out[3:].any()
    with pytest.raises(DimensionError):
        hqc.encrypt(pk, p, np.zeros(p.k + 1, np.uint8), bytes(32))


def test_params_mismatch(toy):
    p, pk, sk = toy
    with pytest.raises(ParameterError):
        hqc.encrypt(pk, hqc.setup("Low"), [1], bytes(32))


def test_serialization_sizes_and_roundtrip(toy):
    p, pk, sk = toy
    ct = hqc.encrypt(pk, p, _msg(p, 4), bytes(32))
    assert len(pk.to_bytes()) == 32 + (p.n + 7) // 8
    assert len(pk.to_bytes_full()) * 8 - 2 * p.n < 8
    assert len(ct.to_bytes()) == (2 * p.n + 7) // 8
    assert len(sk.to_bytes()) == (2 * p.w * 13 + 7) // 8
    assert hqc.HqcPublicKey.from_bytes(p, pk.to_bytes()) == pk
    sk2 = hqc.HqcSecretKey.from_bytes(p, sk.to_bytes())
    assert (sk2.x, sk2.y) == (sk.x, sk.y)
    assert hqc.HqcCiphertext.from_bytes(p, ct.to_bytes()) == ct


def test_tiny_parameters_roundtrip():
    pk, sk = hqc.keygen(TINY, bytes(32))
    for i in range(30):
        msg = _msg(TINY, i)
        ct = hqc.encrypt(pk, TINY, msg, derive_seed(b"tiny", i))
        assert np.array_equal(hqc.decrypt(sk, TINY, ct), msg)


def test_toy_quantum_row_cannot_build_code():
    with pytest.raises(ParameterError):
        hqc.tensor_code(hqc.setup("Toy-Q"))
