"""Gabidulin codes over GF(2^m) with Welch-Berlekamp style decoding.

A message (f_0, ..., f_{k-1}) is the linearized polynomial
f(X) = sum f_j X^(2^j); its codeword is (f(g_0), ..., f(g_{n-1})).
"""

from dataclasses import dataclass, field as dfield

import numpy as np

from . import kernels
from .errors import DecodingError, DimensionError, ParameterError
from .rank_field import GF2m, RankVector, rank_of_ints, rank_weight


@dataclass(frozen=True)
class QPolynomial:
    """sum_i coeffs[i] * X^(2^i) over ``F``."""

    F: GF2m
    coeffs: tuple

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @property
    def q_degree(self):
        # -1 for the zero polynomial
        return len(self.coeffs) - 1

    def __call__(self, x):
        F = self.F
        out = 0
        for c in self.coeffs:
            if c:
                out ^= F.mul(c, x)
            x = F.mul(x, x)
        return out

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        size = max(len(a), len(b))
        a = a + (0,) * (size - len(a))
        b = b + (0,) * (size - len(b))
        return QPolynomial(self.F, tuple(x ^ y for x, y in zip(a, b)))

    def compose(self, other):
        """self o other, from (c X^[i]) o (d X^[j]) = c d^(2^i) X^[i+j]."""
        F = self.F
        out = [0] * (len(self.coeffs) + len(other.coeffs))
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            for j, d in enumerate(other.coeffs):
                if d:
                    out[i + j] ^= F.mul(c, F.frobenius(d, i))
        return QPolynomial(F, tuple(out))


def divide_left(num, den):
    """Return (quot, rem) with num = den o quot + rem and q_degree(rem) <
    q_degree(den)."""
    F = num.F
    dv = den.q_degree
    if dv < 0:
        raise ZeroDivisionError("division by the zero q-polynomial")
    lead_inv = F.inv(den.coeffs[-1])
    rem = num
    quot = [0] * max(num.q_degree - dv + 1, 0)
    while rem.q_degree >= dv:
        shift = rem.q_degree - dv
        # den_top * f^(2^dv) = rem_top, so f = (rem_top / den_top)^(2^-dv)
        f = F.frobenius(F.mul(rem.coeffs[-1], lead_inv), -dv)
        quot[shift] = f
        term = [0] * (shift + 1)
        term[shift] = f
        rem = rem + den.compose(QPolynomial(F, tuple(term)))
    return QPolynomial(F, tuple(quot)), rem


@dataclass(frozen=True)
class GabidulinCode:
    F: GF2m
    n: int
    k: int
    evaluation_points: tuple
    _powers: np.ndarray = dfield(repr=False, compare=False)

    @classmethod
    def build(cls, F, n, k, points=None):
        if not 0 < k <= n <= F.m:
            raise ParameterError(f"need 0 < k <= n <= m, got k={k}, n={n}, m={F.m}")
        pts = tuple(1 << i for i in range(n)) if points is None else tuple(int(p) for p in points)
        if len(pts) != n or rank_of_ints(pts) != n:
            raise ParameterError("evaluation points must be n F_2-independent elements")
        # powers[j, i] = g_i^(2^j) for j < n
        powers = np.empty((n, n, 2), dtype=np.uint64)
        powers[0] = F.to_limbs(pts)
        for j in range(1, n):
            powers[j] = F.vmul(powers[j - 1], powers[j - 1])
        powers.flags.writeable = False
        return cls(F, n, k, pts, powers)

    @property
    def decode_radius(self):
        return (self.n - self.k) // 2

    @property
    def min_distance(self):
        return self.n - self.k + 1


def _frob_table(F, vals, count):
    out = np.empty((count, vals.shape[0], 2), dtype=np.uint64)
    if count:
        out[0] = vals
    for j in range(1, count):
        out[j] = F.vmul(out[j - 1], out[j - 1])
    return out


def gab_encode(code, msg):
    msg = [int(x) for x in msg]
    if len(msg) != code.k:
        raise DimensionError(f"message must have {code.k} symbols, got {len(msg)}")
    F = code.F
    for x in msg:
        F.check(x)
    coeffs = F.to_limbs(msg)
    acc = F.vmul(code._powers[: code.k], coeffs[:, None, :])
    return RankVector(F, np.bitwise_xor.reduce(acc, axis=0))


def gab_decode(code, word):
    """Message of the unique codeword within rank distance decode_radius of
    ``word``; raises DecodingError otherwise."""
    if not isinstance(word, RankVector) or word.n != code.n:
        raise DimensionError(f"word must be a RankVector of length {code.n}")
    if word.field != code.F:
        raise ParameterError("word lives over a different field")
    F, k, t = code.F, code.k, code.decode_radius

    # Unknowns: V_0..V_t then N_0..N_{k+t-1}; rows: V(y_i) + N(g_i) = 0.
    ys = _frob_table(F, word.limbs, t + 1)
    cols = np.concatenate([ys, code._powers[: k + t]], axis=0)
    mat = np.ascontiguousarray(cols.transpose(1, 0, 2))
    red, pivots = kernels.gf_rref(mat, F.m, F.limb_poly)
    ncols = mat.shape[1]
    pivot_cols = [int(c) for c in pivots if c >= 0]
    free = sorted(set(range(ncols)) - set(pivot_cols))
    if not free:
        raise DecodingError("interpolation system has only the trivial solution")
    # first free unknown set to 1, the rest to 0
    fc = free[0]
    sol = [0] * ncols
    sol[fc] = 1
    for r, c in enumerate(pivots):
        if c >= 0:
            e = red[r, fc]
            sol[c] = int(e[0]) | (int(e[1]) << 64)
    V = QPolynomial(F, tuple(sol[: t + 1]))
    N = QPolynomial(F, tuple(sol[t + 1:]))
    if V.q_degree < 0:
        raise DecodingError("degenerate interpolation solution")
    f, rem = divide_left(N, V)
    if rem.q_degree >= 0 or f.q_degree >= k:
        raise DecodingError("too many rank errors")
    msg = list(f.coeffs) + [0] * (k - len(f.coeffs))
    if rank_weight(word - gab_encode(code, msg)) > t:
        raise DecodingError("re-encoded word is outside the decoding radius")
    return msg
