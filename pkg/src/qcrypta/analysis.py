"""Decryption-failure analysis for the Hamming scheme.

Model: each coordinate of e = x r2 + r1 y + eps is an independent
Bernoulli(p_star) bit, so omega(e) is binomial; the tensor decoder fails
once more than delta1 of the n1 repetition blocks are decoded wrongly.

Public functions return floats.  ``p_fail`` screens every gamma in float64
log space, then re-evaluates the terms that matter with mpmath so the final
sum carries about 40 significant digits.
"""

import math
from dataclasses import dataclass, field

import mpmath
import numpy as np
from scipy.special import gammaln, logsumexp

from .cyclic_ring import FixedWeightSpec, RingElement, ring_mul, sample_fixed_weight
from .numtheory import is_primitive_prime  # noqa: F401  (public re-export)
from .xof import SeedExpander, derive_seed

DPS = 40
WINDOW_NATS = 200.0  # terms further below the largest are dropped

_ctx = mpmath.mp.clone()
_ctx.dps = DPS


def _mpf(x):
    return _ctx.mpf(x)


# per-coordinate probabilities


def _p_tilde_mp(n, w):
    """Sum over odd i of C(n,i) p^(2i) (1-p^2)^(n-i), p = w/n."""
    if not 0 <= w <= n:
        raise ValueError("need 0 <= w <= n")
    if w == 0:
        return _mpf(0)
    p2 = (_mpf(w) / n) ** 2
    if p2 == 1:
        return _mpf(n % 2)
    ratio = p2 / (1 - p2)
    term = n * p2 * (1 - p2) ** (n - 1)  # i = 1
    terms = []
    i = 1
    cutoff = _ctx.mpf(2) ** -(_ctx.prec + 20)
    while i <= n and term != 0:
        terms.append(term)
        # two steps of the binomial ratio reach the next odd index
        for j in (i, i + 1):
            term = term * (n - j) / (j + 1) * ratio if j < n else _mpf(0)
        i += 2
        if i > n * p2 + 1 and term < cutoff * terms[0] and term < cutoff * max(terms):
            break
    return _ctx.fsum(terms)


def _p_star_mp(n, w, eps_w):
    if not 0 <= eps_w <= n:
        raise ValueError("need 0 <= eps_w <= n")
    pt = _p_tilde_mp(n, w)
    r = _mpf(eps_w) / n
    return 2 * pt * (1 - pt) * (1 - r) + ((1 - pt) ** 2 + pt**2) * r


def p_tilde(n, w):
    return float(_p_tilde_mp(n, w))


def p_star(n, w, eps_w):
    return float(_p_star_mp(n, w, eps_w))


def p_tilde_exact_weight(n, w):
    """Companion of :func:`p_tilde` for x, r2 of weight exactly w: one
    coordinate of x r2 is the parity of a hypergeometric count."""
    if not 0 <= w <= n:
        raise ValueError("need 0 <= w <= n")
    odd = sum(math.comb(w, i) * math.comb(n - w, w - i) for i in range(1, w + 1, 2))
    return float(_mpf(odd) / math.comb(n, w))


def p_star_exact_weight(n, w, eps_w):
    pt = p_tilde_exact_weight(n, w)
    r = eps_w / n
    return 2 * pt * (1 - pt) * (1 - r) + ((1 - pt) ** 2 + pt**2) * r


@dataclass(frozen=True)
class ErrorModel:
    n: int
    w: int
    eps_w: int
    p: float
    p_tilde: float
    p_star: float


def error_model(n, w, eps_w):
    return ErrorModel(n, w, eps_w, w / n, p_tilde(n, w), p_star(n, w, eps_w))


# binomial pieces


def _binom_tail_mp(n, p, t):
    """P[Bin(n, p) >= t] with terms summed until negligible."""
    if t <= 0:
        return _mpf(1)
    if t > n or p == 0:
        return _mpf(0)
    if p == 1:
        return _mpf(1)
    q = 1 - p
    ratio = p / q
    term = _ctx.binomial(n, t) * p**t * q ** (n - t)
    terms = [term]
    mode = (n + 1) * p
    cutoff = _ctx.mpf(2) ** -(_ctx.prec + 20)
    for i in range(t, n):
        term = term * (n - i) / (i + 1) * ratio
        terms.append(term)
        if i + 1 > mode and term < cutoff * max(terms[0], terms[-2]):
            break
    return _ctx.fsum(terms)


def weight_pmf(n, p_star, d):
    """P[omega(e) = d] = C(n,d) p^d (1-p)^(n-d)."""
    if not 0 <= d <= n:
        raise ValueError("need 0 <= d <= n")
    if p_star == 0:
        return 1.0 if d == 0 else 0.0
    if p_star == 1:
        return 1.0 if d == n else 0.0
    return math.exp(
        gammaln(n + 1) - gammaln(d + 1) - gammaln(n - d + 1)
        + d * math.log(p_star) + (n - d) * math.log1p(-p_star)
    )


def _block_threshold(n2):
    return (n2 - 1) // 2 + 1


def _p_bar_mp(n1, n2, gamma):
    N = n1 * n2
    if not 0 <= gamma <= N:
        raise ValueError("need 0 <= gamma <= n1*n2")
    return _binom_tail_mp(n2, _mpf(gamma) / N, _block_threshold(n2))


def p_bar_gamma(n1, n2, gamma):
    """Probability that majority decoding of one repetition block fails when
    gamma errors are spread uniformly over n1*n2 positions."""
    return float(_p_bar_mp(n1, n2, gamma))


def _p_block_tail_mp(delta1, n1, n2, gamma):
    return _binom_tail_mp(n1, _p_bar_mp(n1, n2, gamma), delta1 + 1)


def p_block_tail(delta1, n1, n2, gamma):
    """Probability that more than delta1 of the n1 blocks are wrong."""
    return float(_p_block_tail_mp(delta1, n1, n2, gamma))


# float64 screen


def _log_binom(n, k):
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)


def _log_tail_f64(n, logp, t):
    """log P[Bin(n, exp(logp)) >= t], vectorised over ``logp``."""
    logp = np.atleast_1d(np.asarray(logp, dtype=float))
    i = np.arange(t, n + 1, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        log1mp = np.log1p(-np.exp(logp))
        terms = _log_binom(n, i)[None, :] + i[None, :] * logp[:, None] + (n - i)[None, :] * log1mp[:, None]
    terms = np.where(np.isnan(terms), -np.inf, terms)
    return logsumexp(terms, axis=1)


def _screen(n1, n2, delta1, pstar, gmax):
    N = n1 * n2
    g = np.arange(1, gmax + 1, dtype=float)
    lw = _log_binom(N, g) + g * math.log(pstar) + (N - g) * math.log1p(-pstar)
    out = np.empty_like(g)
    for lo in range(0, g.size, 4096):
        sl = slice(lo, lo + 4096)
        with np.errstate(divide="ignore"):
            lpb = _log_tail_f64(n2, np.log(g[sl] / N), _block_threshold(n2))
        out[sl] = lw[sl] + _log_tail_f64(n1, lpb, delta1 + 1)
    return out


@dataclass
class FailureReport:
    params: object
    p_fail: mpmath.mpf
    log2_pfail: float
    gamma_max: int
    p_star: float
    terms: dict = field(repr=False, default_factory=dict)  # gamma -> mpf term

    @property
    def claimed_bound(self):
        return -self.params.security_bits

    @property
    def meets_claim(self):
        return self.log2_pfail <= self.claimed_bound


def p_fail_terms(n1, n2, delta1, w, eps_w, window=WINDOW_NATS):
    """(p_fail, gamma_max, p_star, {gamma: term}) for raw parameters.

    The weight model is evaluated at the tensor-code length n1*n2, the only
    coordinates the decoder reads.
    """
    N = n1 * n2
    pstar = _p_star_mp(N, w, eps_w)
    gmax = min(2 * w * w + eps_w, N)
    if gmax == 0 or pstar == 0:
        return _mpf(0), gmax, float(pstar), {}
    screen = _screen(n1, n2, delta1, float(pstar), gmax)
    top = screen.max()
    if not np.isfinite(top):
        return _mpf(0), gmax, float(pstar), {}
    keep = np.flatnonzero(screen >= top - window) + 1
    terms = {}
    for gamma in keep.tolist():
        pmf = _ctx.binomial(N, gamma) * pstar**gamma * (1 - pstar) ** (N - gamma)
        terms[gamma] = pmf * _p_block_tail_mp(delta1, n1, n2, gamma)
    total = _ctx.fsum(sorted(terms.values()))
    return total, gmax, float(pstar), terms


def p_fail(params, window=WINDOW_NATS):
    total, gmax, pstar, terms = p_fail_terms(
        params.n1, params.n2, params.delta, params.w, params.eps_w, window
    )
    log2 = float(_ctx.log(total, 2)) if total > 0 else -math.inf
    return FailureReport(params, total, log2, gmax, pstar, terms)


def p_fail_naive(n1, n2, delta1, w, eps_w, dps=60):
    """Unwindowed reference sum over every gamma at higher precision; only
    practical for small codes."""
    ctx = mpmath.mp.clone()
    ctx.dps = dps
    N = n1 * n2
    p = ctx.mpf(w) / N
    pt = ctx.fsum(
        ctx.binomial(N, i) * p ** (2 * i) * (1 - p * p) ** (N - i) for i in range(1, N + 1, 2)
    )
    r = ctx.mpf(eps_w) / N
    ps = 2 * pt * (1 - pt) * (1 - r) + ((1 - pt) ** 2 + pt**2) * r

    def tail(n, q, t):
        return ctx.fsum(ctx.binomial(n, i) * q**i * (1 - q) ** (n - i) for i in range(t, n + 1))

    total = []
    for g in range(min(2 * w * w + eps_w, N) + 1):
        pb = tail(n2, ctx.mpf(g) / N, _block_threshold(n2))
        total.append(ctx.binomial(N, g) * ps**g * (1 - ps) ** (N - g) * tail(n1, pb, delta1 + 1))
    return ctx.fsum(total)


# Monte-Carlo


def _trial_rng(seed, label, idx):
    return np.random.Generator(np.random.PCG64(int.from_bytes(derive_seed(seed, label, idx), "little")))


def _bernoulli(n, p, gen):
    return RingElement.from_bits((gen.random(n) < p).astype(np.uint8))


def _error_exact(n, w, eps_w, rng):
    spec = FixedWeightSpec(n, w)
    x, y, r1, r2 = (sample_fixed_weight(spec, rng) for _ in range(4))
    eps = sample_fixed_weight(FixedWeightSpec(n, eps_w), rng)
    return ring_mul(x, r2) + ring_mul(r1, y) + eps


def _error_bernoulli(n, w, eps_w, gen):
    x, y, r1, r2 = (_bernoulli(n, w / n, gen) for _ in range(4))
    return ring_mul(x, r2) + ring_mul(r1, y) + _bernoulli(n, eps_w / n, gen)


def simulate_error_weights(n, w, eps_w, trials, seed, model="exact"):
    """Histogram (length n+1) of omega(x r2 + r1 y + eps) over ``trials``.

    ``model="exact"`` draws x, y, r1, r2 of weight exactly w and eps of
    weight exactly eps_w, as the scheme does; ``model="bernoulli"`` draws
    every coordinate independently with rate w/n (eps_w/n for eps).  Trial i
    depends only on (seed, i).
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    seed = bytes(seed)
    hist = np.zeros(n + 1, dtype=np.int64)
    for i in range(trials):
        if model == "exact":
            e = _error_exact(n, w, eps_w, SeedExpander(derive_seed(seed, "sim", i), "sim"))
        elif model == "bernoulli":
            e = _error_bernoulli(n, w, eps_w, _trial_rng(seed, "sim-bern", i))
        else:
            raise ValueError(f"unknown model {model!r}")
        hist[e.weight] += 1
    return hist


def _random_sets(gen, n, sizes):
    """Rows of distinct indices in [0, n), row i holding sizes[i] entries,
    padded with -1."""
    sizes = np.asarray(sizes, dtype=np.int64)
    width = max(int(sizes.max(initial=0)), 1)
    valid = np.arange(width)[None, :] < sizes[:, None]
    out = np.where(valid, gen.integers(0, n, size=(sizes.size, width)), -1)
    while True:
        srt = np.sort(out, axis=1)
        dup = ((srt[:, 1:] == srt[:, :-1]) & (srt[:, 1:] >= 0)).any(axis=1)
        if not dup.any():
            return out
        rows = np.flatnonzero(dup)
        out[rows] = np.where(valid[rows], gen.integers(0, n, size=(rows.size, width)), -1)


def _product_bit0(gen, n, sa, sb):
    # coordinate 0 of a*b is the parity of #{i in supp a : -i mod n in supp b}
    a = _random_sets(gen, n, sa)
    b = _random_sets(gen, n, sb)
    neg = np.where(a >= 0, (-a) % n, -2)
    hits = (neg[:, :, None] == b[:, None, :]).sum(axis=(1, 2))
    return hits & 1


def simulate_coordinate_frequency(n, w, eps_w, samples, seed, model="exact", batch=10_000):
    """(ones, samples): independent draws of coordinate 0 of
    e = x r2 + r1 y + eps, one fresh (x, y, r1, r2, eps) per draw.

    By cyclic symmetry every coordinate has the same law, and reading one
    coordinate per draw keeps the samples independent.  ``model`` is
    ``"exact"`` (weights exactly w and eps_w) or ``"bernoulli"`` (supports
    of binomial size, i.e. independent coordinates).
    """
    seed = bytes(seed)
    ones = 0
    for b, lo in enumerate(range(0, samples, batch)):
        size = min(batch, samples - lo)
        gen = _trial_rng(seed, f"coord-{model}", b)
        if model == "exact":
            sw = np.full((4, size), w)
            e0 = gen.random(size) < eps_w / n  # 0 in supp(eps) for a uniform weight-eps_w set
        elif model == "bernoulli":
            sw = gen.binomial(n, w / n, size=(4, size))
            e0 = gen.random(size) < eps_w / n
        else:
            raise ValueError(f"unknown model {model!r}")
        bit = _product_bit0(gen, n, sw[0], sw[1]) ^ _product_bit0(gen, n, sw[2], sw[3]) ^ e0
        ones += int(bit.sum())
    return ones, samples


@dataclass(frozen=True)
class SimulationCheck:
    n: int
    trials: int
    model: str
    predicted_mean: float
    empirical_mean: float
    sigma_mean: float

    @property
    def delta(self):
        return self.empirical_mean - self.predicted_mean

    @property
    def z(self):
        return self.delta / self.sigma_mean if self.sigma_mean else math.inf

    @property
    def within_3sigma(self):
        return abs(self.delta) <= 3 * self.sigma_mean


def compare_weight_mean(n, w, eps_w, trials, seed, model="exact"):
    """Empirical mean of omega(e) against n p_star, with the binomial-model
    standard error sqrt(n p (1-p) / trials)."""
    ps = p_star(n, w, eps_w)
    hist = simulate_error_weights(n, w, eps_w, trials, seed, model)
    mean = float(np.dot(np.arange(n + 1), hist)) / trials
    sigma = math.sqrt(n * ps * (1 - ps) / trials)
    return SimulationCheck(n, trials, model, n * ps, mean, sigma)


# rank attack


def rank_attack_workfactor(n, k, m, q, r):
    """log2 of (n-k)^3 m^3 q^((r-1) floor((k+1) m / n))."""
    if min(n, k, m, q, r) < 1 or n <= k:
        raise ValueError("need positive integers with n > k")
    return 3 * math.log2(n - k) + 3 * math.log2(m) + (r - 1) * ((k + 1) * m // n) * math.log2(q)


def row_report(params, simulate=0, seed=None):
    """Dictionary used by the command line ``analyze`` report."""
    rep = p_fail(params)
    out = {
        "name": params.label,
        "n": params.n,
        "log2_pfail": rep.log2_pfail,
        "claimed_bound": rep.claimed_bound,
        "pass": rep.meets_claim,
        "primitive_prime": is_primitive_prime(params.n),
        "p_star": rep.p_star,
    }
    if simulate:
        sim = compare_weight_mean(params.n, params.w, params.eps_w, simulate, seed or bytes(32))
        out["simulation"] = {
            "trials": sim.trials,
            "model_mean": sim.predicted_mean,
            "empirical_mean": sim.empirical_mean,
            "delta": sim.delta,
            "three_sigma": 3 * sim.sigma_mean,
            "within_3sigma": sim.within_3sigma,
        }
    return out
