import pytest

from qcrypta.errors import ParameterError
from qcrypta.hqc import setup
from qcrypta.numtheory import is_primitive_prime, next_primitive_prime
from qcrypta.params import HQC_ALL, HQC_IDS, ParameterSet, ParameterWarning, rqc_setup


def test_table_rows():
    p = setup("Toy")
    assert (p.n1, p.n2, p.n, p.k, p.delta, p.w, p.eps_w, p.security_bits) == (255, 25, 6379, 63, 30, 36, 108, 64)
    p = setup("Strong")
    assert (p.n1, p.n2, p.n, p.k, p.delta, p.w, p.eps_w) == (511, 41, 20959, 121, 58, 72, 216)
    p = setup("Low", quantum=True)
    assert (p.n1, p.n2, p.n, p.k, p.delta, p.w, p.eps_w) == (511, 47, 24019, 76, 85, 89, 267)
    assert setup("low-q") is p


def test_rows_violating_primitivity_warn():
    with pytest.warns(ParameterWarning):
        setup("Strong")


def test_unknown_and_custom():
    with pytest.raises(ParameterError):
        setup("Huge")
    ok = ParameterSet("tiny", 15, 3, 53, 5, 3, 2, 6, 8)
    assert setup(ok) is ok
    with pytest.raises(ParameterError):
        setup(ParameterSet("bad", 15, 3, 54, 5, 3, 2, 6, 8))
    with pytest.raises(ParameterError):
        setup(ParameterSet("short", 15, 3, 43, 5, 3, 2, 6, 8))


def test_eps_is_three_w_and_n_exceeds_tensor_length():
    for p in HQC_ALL:
        assert p.eps_w == 3 * p.w
        assert p.n > p.n1 * p.n2
    assert len(set(HQC_IDS.values())) == len(HQC_ALL)


def test_primitive_prime_helpers():
    assert not is_primitive_prime(4)
    assert is_primitive_prime(3)
    assert not is_primitive_prime(7)  # 2 has order 3 mod 7
    assert next_primitive_prime(255 * 25) == 6379


@pytest.mark.parametrize("name,row", [
    ("RQC-I", (53, 13, 53, 2, 4, 4)),
    ("RQC-II", (61, 3, 61, 2, 5, 4)),
    ("RQC-III", (83, 3, 83, 2, 6, 4)),
])
def test_rqc_rows(name, row):
    p = rqc_setup(name)
    assert (p.n, p.k, p.m, p.q, p.w, p.eps_w) == row
    assert p.w**2 + p.eps_w == (p.n - p.k) // 2


def test_rqc_unknown():
    with pytest.raises(ParameterError):
        rqc_setup("RQC-IV")
