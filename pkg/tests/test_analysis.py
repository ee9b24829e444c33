import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcrypta import analysis as an
from qcrypta.params import HQC_ALL, ParameterSet


def closed_form_p_tilde(n, w):
    # parity of Bin(n, p^2): (1 - (1 - 2 p^2)^n) / 2
    p = w / n
    return (1 - (1 - 2 * p * p) ** n) / 2


def test_p_tilde_edge_cases():
    assert an.p_tilde(1, 1) == 1
    assert an.p_tilde(50, 0) == 0


@given(st.integers(1, 3000), st.data())
def test_p_tilde_against_closed_form(n, data):
    w = data.draw(st.integers(0, n))
    assert math.isclose(an.p_tilde(n, w), closed_form_p_tilde(n, w), rel_tol=1e-9, abs_tol=1e-15)


def test_poisson_limit():
    assert abs(an.p_tilde(10**4, 100) - math.exp(-1) * math.sinh(1)) <= 1e-3


def test_p_tilde_exhaustive_bernoulli_enumeration():
    n, w = 8, 2
    p = w / n
    vecs = np.array(list(itertools.product((0, 1), repeat=n)))
    prob = p ** vecs.sum(1) * (1 - p) ** (n - vecs.sum(1))
    # coordinate 0 of x * r: sum_i x_i r_{-i}
    rev = vecs[:, (-np.arange(n)) % n]
    z0 = (vecs @ rev.T) & 1
    total = float((prob[:, None] * prob[None, :] * z0).sum())
    assert math.isclose(total, an.p_tilde(n, w), rel_tol=1e-12)


def test_p_star_reductions():
    pt = an.p_tilde(500, 10)
    assert math.isclose(an.p_star(500, 10, 0), 2 * pt * (1 - pt), rel_tol=1e-14)
    assert math.isclose(an.p_star(500, 0, 15), 15 / 500, rel_tol=1e-14)
    m = an.error_model(6379, 36, 108)
    r = m.eps_w / m.n
    assert math.isclose(m.p_star, 2 * m.p_tilde * (1 - m.p_tilde) * (1 - r) + ((1 - m.p_tilde) ** 2 + m.p_tilde**2) * r)
    assert 0 <= m.p_tilde <= 1 and 0 <= m.p_star <= 1


def test_weight_pmf():
    assert an.weight_pmf(10, 0.0, 0) == 1
    assert an.weight_pmf(10, 0.0, 3) == 0
    n, ps = 6379, an.p_star(6379, 36, 108)
    total = math.fsum(an.weight_pmf(n, ps, d) for d in range(n + 1))
    assert abs(total - 1) <= 1e-12


def test_block_probabilities():
    assert an.p_bar_gamma(255, 25, 0) == 0
    assert math.isclose(an.p_bar_gamma(20, 1, 7), 7 / 20)
    assert an.p_bar_gamma(15, 5, 75) == 1
    vals = [an.p_bar_gamma(31, 7, g) for g in range(0, 218)]
    assert all(0 <= v <= 1 for v in vals)
    assert all(a <= b for a, b in zip(vals, vals[1:]))
    assert an.p_block_tail(15, 15, 3, 20) == 0
    assert an.p_block_tail(2, 15, 3, 0) == 0
    assert math.isclose(an.p_block_tail(0, 1, 5, 2), an.p_bar_gamma(1, 5, 2))


@pytest.mark.parametrize("args", [(15, 3, 2, 3, 9), (31, 5, 3, 2, 6), (63, 5, 4, 3, 9), (15, 7, 1, 4, 12)])
def test_p_fail_against_naive_sum(args):
    fast = an.p_fail_terms(*args)[0]
    slow = an.p_fail_naive(*args)
    assert abs(fast - slow) <= 2.0**-40 * slow


def test_p_fail_report_fields():
    rep = an.p_fail(HQC_ALL[0])
    assert rep.gamma_max == min(2 * 36**2 + 108, 255 * 25)
    assert rep.terms and all(0 < g <= rep.gamma_max for g in rep.terms)
    assert math.isclose(rep.log2_pfail, float(an._ctx.log(an._ctx.fsum(rep.terms.values()), 2)))


def _pf(n1, n2, d, w, e):
    return an.p_fail_terms(n1, n2, d, w, e)[0]


def test_p_fail_monotone():
    base = (255, 25, 30, 36, 108)
    p0 = _pf(*base)
    assert _pf(255, 25, 30, 37, 108) >= p0
    assert _pf(255, 25, 30, 36, 120) >= p0
    assert _pf(255, 25, 31, 36, 108) <= p0
    assert _pf(255, 25, 29, 36, 108) >= p0


def test_simulation_trivial_cases():
    assert an.simulate_error_weights(31, 0, 0, 5, bytes(32))[0] == 5
    hist = an.simulate_error_weights(31, 0, 7, 5, bytes(32))
    assert hist[7] == 5
    a = an.simulate_error_weights(63, 4, 12, 20, b"\x01" * 32)
    b = an.simulate_error_weights(63, 4, 12, 20, b"\x01" * 32)
    assert np.array_equal(a, b)


def test_coordinate_sampler_matches_exact_weight_law():
    # the sampler is checked against the hypergeometric probability of the
    # exact-weight model, which is not what p_star assumes
    n, w, e = 31, 3, 9
    ones, total = an.simulate_coordinate_frequency(n, w, e, 200_000, bytes(32), "exact")
    pe = an.p_star_exact_weight(n, w, e)
    assert abs(ones / total - pe) <= 4 * math.sqrt(pe * (1 - pe) / total)
    ones, total = an.simulate_coordinate_frequency(n, w, e, 200_000, bytes(32), "bernoulli")
    pb = an.p_star(n, w, e)
    assert abs(ones / total - pb) <= 4 * math.sqrt(pb * (1 - pb) / total)


def test_toy_weight_mean_within_per_sample_bound():
    n, w, e = 6379, 36, 108
    ps = an.p_star(n, w, e)
    hist = an.simulate_error_weights(n, w, e, 1000, b"\x02" * 32)
    mean = float(np.dot(np.arange(n + 1), hist)) / 1000
    assert abs(mean - n * ps) <= 3 * math.sqrt(n * ps * (1 - ps))


def test_primitive_prime():
    assert not an.is_primitive_prime(4)
    assert an.is_primitive_prime(3)
    assert an.is_primitive_prime(6379)


def test_workfactor():
    assert math.isclose(an.rank_attack_workfactor(106, 53, 53, 2, 1), 6 * math.log2(53))
    assert math.isclose(an.rank_attack_workfactor(106, 53, 53, 2, 4), 6 * math.log2(53) + 81)
    diff = an.rank_attack_workfactor(106, 53, 53, 4, 4) - an.rank_attack_workfactor(106, 53, 53, 2, 4)
    assert math.isclose(diff, 3 * (54 * 53 // 106))


def test_custom_row_report():
    p = ParameterSet("tiny", 15, 3, 53, 7, 2, 1, 3, 8)
    rep = an.row_report(p, simulate=10, seed=bytes(32))
    assert rep["primitive_prime"] and "simulation" in rep
