import itertools

import numpy as np
import pytest

from qcrypta.bch import BchCode, bch_decode, bch_encode, berlekamp_massey, log_tables, syndromes
from qcrypta.errors import DecodingError, DimensionError, ParameterError


def min_distance(code):
    best = code.n1
    for bits in itertools.product((0, 1), repeat=code.k):
        if any(bits):
            best = min(best, int(bch_encode(code, np.array(bits, np.uint8)).sum()))
    return best


def test_bch_15_5_brute_force_distance():
    code = BchCode.build(15, 3)
    assert code.k == 5
    assert min_distance(code) == 7


@pytest.mark.parametrize("n1,delta,k", [(15, 1, 11), (15, 2, 7), (31, 3, 16), (255, 30, 63), (255, 27, 79), (511, 58, 121)])
def test_known_dimensions(n1, delta, k):
    code = BchCode.build(n1, delta, k)
    assert code.divides_xn_minus_1()


def test_dimension_mismatch_rejected():
    with pytest.raises(ParameterError):
        BchCode.build(255, 87, 63)


def test_gf_tables():
    gf = log_tables(3)
    # alpha^3 = alpha + 1 under X^3 + X + 1
    assert gf.power(3) == 0b011
    for a in range(1, 8):
        assert gf.mul(a, gf.div(1, a)) == 1


def test_systematic_and_zero_syndrome():
    code = BchCode.build(31, 3)
    gen = np.random.default_rng(0)
    msg = gen.integers(0, 2, code.k).astype(np.uint8)
    c = bch_encode(code, msg)
    assert np.array_equal(c[code.n1 - code.k:], msg)
    assert not syndromes(code, c).any()


def test_berlekamp_massey_single_error():
    code = BchCode.build(15, 2)
    w = np.zeros(15, np.uint8)
    w[4] = 1
    lam, length = berlekamp_massey(syndromes(code, w), code.tables)
    assert length == 1
    # Lambda(X) = 1 + alpha^4 X
    assert lam == [1, code.tables.power(4)]


@pytest.mark.parametrize("n1,delta", [(15, 2), (63, 5), (255, 30)])
def test_corrects_up_to_radius(n1, delta):
    code = BchCode.build(n1, delta)
    gen = np.random.default_rng(n1)
    for _ in range(50):
        msg = gen.integers(0, 2, code.k).astype(np.uint8)
        c = bch_encode(code, msg)
        t = int(gen.integers(0, delta + 1))
        c[gen.choice(n1, t, replace=False)] ^= 1
        assert np.array_equal(bch_decode(code, c), msg)


def test_beyond_radius_never_silently_returns_original():
    code = BchCode.build(255, 30)
    gen = np.random.default_rng(1)
    for _ in range(100):
        msg = gen.integers(0, 2, code.k).astype(np.uint8)
        c = bch_encode(code, msg)
        c[gen.choice(255, 31, replace=False)] ^= 1
        try:
            out = bch_decode(code, c)
        except DecodingError:
            continue
        # a different codeword within radius 30 is the only legal outcome
        assert not np.array_equal(out, msg)
        assert int((bch_encode(code, out) ^ c).sum()) <= 30


def test_shape_checks():
    code = BchCode.build(15, 2)
    with pytest.raises(DimensionError):
        bch_encode(code, np.zeros(6, np.uint8))
    with pytest.raises(DimensionError):
        bch_decode(code, np.zeros(14, np.uint8))
