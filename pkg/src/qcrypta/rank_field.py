"""GF(2^m) arithmetic and rank-metric vectors.

Field elements are Python ints holding the polynomial-basis coordinates
(bit i = coefficient of alpha^i).  Vectors store their entries as an
``(n, 2)`` uint64 limb array so the ring product can run in the kernels.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import DimensionError, FormatError, ParameterError
from .numtheory import prime_factors

_LO = (1 << 64) - 1


def _clmul(a, b):
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _pmod(a, f):
    df = f.bit_length() - 1
    while a.bit_length() - 1 >= df:
        a ^= f << (a.bit_length() - 1 - df)
    return a


def _pgcd(a, b):
    while b:
        a, b = b, _pmod(a, b)
    return a


def is_irreducible(f):
    """Rabin's test for a binary polynomial given as an int."""
    m = f.bit_length() - 1
    if m < 1:
        return False
    if m == 1:
        return True

    def frob(k):
        # X^(2^k) mod f
        x = 0b10
        for _ in range(k):
            x = _pmod(_clmul(x, x), f)
        return x

    if frob(m) != 0b10:
        return False
    return all(_pgcd(f, frob(m // p) ^ 0b10) == 1 for p in prime_factors(m))


@lru_cache(maxsize=None)
def default_modulus(m):
    """Smallest irreducible trinomial X^m + X^a + 1, else the smallest
    pentanomial X^m + X^a + X^b + X^c + 1 ordered by (a, b, c)."""
    base = (1 << m) | 1
    for a in range(1, m):
        if is_irreducible(base | (1 << a)):
            return base | (1 << a)
    for a in range(3, m):
        for b in range(2, a):
            for c in range(1, b):
                f = base | (1 << a) | (1 << b) | (1 << c)
                if is_irreducible(f):
                    return f
    raise ParameterError(f"no sparse irreducible polynomial of degree {m}")


def _fmt_poly(f):
    terms = []
    for i in range(f.bit_length() - 1, -1, -1):
        if f >> i & 1:
            terms.append("1" if i == 0 else "X" if i == 1 else f"X^{i}")
    return " + ".join(terms)


class GF2m:
    """GF(2^m) = F_2[X]/(f) for an irreducible f of degree m (m <= 127)."""

    zero = 0
    one = 1

    def __init__(self, m, modulus=None):
        if not 1 <= m <= 127:
            raise ParameterError("extension degree must be in [1, 127]")
        f = default_modulus(m) if modulus is None else int(modulus)
        if f.bit_length() - 1 != m or not is_irreducible(f):
            raise ParameterError(f"{_fmt_poly(f)} is not irreducible of degree {m}")
        self.m = m
        self.modulus = f
        self.mask = (1 << m) - 1
        self.limb_poly = np.array([f & self.mask & _LO, (f & self.mask) >> 64], dtype=np.uint64)
        self.nbytes = (m + 7) // 8

    def __repr__(self):
        return f"GF2m({self.m}, {_fmt_poly(self.modulus)})"

    def __eq__(self, other):
        return isinstance(other, GF2m) and (self.m, self.modulus) == (other.m, other.modulus)

    def __hash__(self):
        return hash((self.m, self.modulus))

    def check(self, a):
        if not 0 <= a <= self.mask:
            raise ParameterError(f"{a:#x} is not an element of GF(2^{self.m})")
        return a

    def add(self, a, b):
        return a ^ b

    def mul(self, a, b):
        return _pmod(_clmul(a, b), self.modulus)

    def square(self, a):
        return self.mul(a, a)

    def frobenius(self, a, k):
        """a^(2^k); k may be negative (inverse automorphism)."""
        for _ in range(k % self.m):
            a = self.mul(a, a)
        return a

    def pow(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^m)")
        return self.pow(a, (1 << self.m) - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def random(self, rng):
        return rng.bits(self.m)

    # limb helpers for vectorised kernels

    def to_limbs(self, values):
        vals = [int(v) for v in values]
        out = np.empty((len(vals), 2), dtype=np.uint64)
        out[:, 0] = [v & _LO for v in vals]
        out[:, 1] = [v >> 64 for v in vals]
        return out

    @staticmethod
    def from_limbs(arr):
        arr = np.asarray(arr, dtype=np.uint64).reshape(-1, 2)
        return [int(lo) | (int(hi) << 64) for lo, hi in arr]

    def vmul(self, a, b):
        return kernels.gf_mul(a, b, self.m, self.limb_poly)


@lru_cache(maxsize=None)
def field(m):
    return GF2m(m)


def field_add(F, a, b):
    return F.add(a, b)


def field_mul(F, a, b):
    return F.mul(a, b)


def field_inv(F, a):
    return F.inv(a)


class RankVector:
    """Immutable vector of length n over GF(2^m), also read as an element of
    GF(2^m)[X]/(X^n - 1)."""

    __slots__ = ("field", "limbs")

    def __init__(self, F, limbs):
        limbs = np.array(limbs, dtype=np.uint64, copy=True).reshape(-1, 2)
        hi_mask = F.mask >> 64
        lo_mask = F.mask & _LO
        if (limbs[:, 0] & ~np.uint64(lo_mask)).any() or (limbs[:, 1] & ~np.uint64(hi_mask)).any():
            raise ParameterError(f"entry outside GF(2^{F.m})")
        limbs.flags.writeable = False
        object.__setattr__(self, "field", F)
        object.__setattr__(self, "limbs", limbs)

    def __setattr__(self, name, value):
        raise AttributeError("RankVector is immutable")

    @classmethod
    def from_ints(cls, F, values):
        return cls(F, F.to_limbs(values))

    @classmethod
    def zero(cls, F, n):
        return cls(F, np.zeros((n, 2), dtype=np.uint64))

    @property
    def n(self):
        return self.limbs.shape[0]

    def to_ints(self):
        return GF2m.from_limbs(self.limbs)

    def __len__(self):
        return self.n

    def __getitem__(self, i):
        return int(self.limbs[i, 0]) | (int(self.limbs[i, 1]) << 64)

    def _check(self, other):
        if not isinstance(other, RankVector):
            raise TypeError(f"expected RankVector, got {type(other).__name__}")
        if other.field != self.field:
            raise ParameterError("vectors live over different fields")
        if other.n != self.n:
            raise DimensionError(f"length mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        self._check(other)
        return RankVector(self.field, self.limbs ^ other.limbs)

    __sub__ = __add__

    def scale(self, c):
        F = self.field
        return RankVector(F, F.vmul(self.limbs, F.to_limbs([c])[0]))

    def ring_mul(self, other):
        self._check(other)
        F = self.field
        return RankVector(F, kernels.gf_ring_mul(self.limbs, other.limbs, F.m, F.limb_poly))

    __mul__ = ring_mul

    def __eq__(self, other):
        if not isinstance(other, RankVector):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.limbs, other.limbs)

    def __hash__(self):
        return hash((self.field, self.limbs.tobytes()))

    def __repr__(self):
        return f"RankVector(n={self.n}, m={self.field.m}, rank={rank_weight(self)})"

    def to_bytes(self):
        nb = self.field.nbytes
        return b"".join(v.to_bytes(nb, "little") for v in self.to_ints())

    @classmethod
    def from_bytes(cls, F, n, data):
        data = bytes(data)
        nb = F.nbytes
        if len(data) != n * nb:
            raise FormatError(f"expected {n * nb} bytes, got {len(data)}")
        vals = [int.from_bytes(data[i * nb:(i + 1) * nb], "little") for i in range(n)]
        if any(v > F.mask for v in vals):
            raise FormatError("entry has bits beyond the field degree")
        return cls.from_ints(F, vals)


def ring_mul_modulo(a, b, modulus):
    """Product of ``a`` and ``b`` modulo an arbitrary monic binary polynomial
    of degree n (int, bit i = coefficient of X^i).  Schoolbook; small n only."""
    a._check(b)
    F, n = a.field, a.n
    if modulus.bit_length() - 1 != n:
        raise ParameterError(f"modulus must have degree {n}")
    x, y = a.to_ints(), b.to_ints()
    prod = [0] * (2 * n - 1)
    for i, u in enumerate(x):
        if u:
            for j, v in enumerate(y):
                prod[i + j] ^= F.mul(u, v)
    low = [i for i in range(n) if modulus >> i & 1]
    for d in range(2 * n - 2, n - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for i in low:
                prod[d - n + i] ^= c
    return RankVector.from_ints(F, prod[:n])


def expand(v):
    """m x n binary matrix; column i holds the coordinates of entry i in the
    polynomial basis (1, alpha, ..., alpha^(m-1))."""
    m = v.field.m
    out = np.zeros((m, v.n), dtype=np.uint8)
    for i, x in enumerate(v.to_ints()):
        for r in range(m):
            out[r, i] = x >> r & 1
    return out


def _reduce(basis, x):
    # basis: dict leading-bit -> vector, each leading bit unique
    while x:
        top = x.bit_length() - 1
        b = basis.get(top)
        if b is None:
            return x
        x ^= b
    return 0


def _xor_basis(values):
    basis = {}
    for x in values:
        x = _reduce(basis, int(x))
        if x:
            basis[x.bit_length() - 1] = x
    return basis


def rank_of_ints(values):
    """F_2-dimension of the span of a collection of ints."""
    return len(_xor_basis(values))


def rank_weight(v):
    return rank_of_ints(v.to_ints())


@dataclass(frozen=True)
class SupportSpace:
    """F_2-subspace of GF(2^m) kept as a fully reduced basis (distinct leading
    bits, each leading bit absent from every other vector), sorted
    descending, so equal spaces compare equal."""

    m: int
    basis: tuple

    @property
    def dim(self):
        return len(self.basis)

    @classmethod
    def span(cls, m, values):
        basis = _xor_basis(values)
        tops = sorted(basis, reverse=True)
        for t in tops:
            for s in tops:
                if s != t and basis[s] >> t & 1:
                    basis[s] ^= basis[t]
        return cls(m, tuple(basis[t] for t in tops))

    def contains(self, x):
        basis = {b.bit_length() - 1: b for b in self.basis}
        return _reduce(basis, int(x)) == 0

    def combine(self, coeff_bits):
        """Element sum_j bit_j(coeff) * basis[j]."""
        out = 0
        for j, b in enumerate(self.basis):
            if coeff_bits >> j & 1:
                out ^= b
        return out

    def issubspace(self, other):
        return all(other.contains(b) for b in self.basis)


def support(v):
    return SupportSpace.span(v.field.m, v.to_ints())


def product_space(e, f):
    """F_2-span of all products a*b, a in e, b in f."""
    if e.m != f.m:
        raise ParameterError("supports live in different fields")
    F = field(e.m)
    return SupportSpace.span(e.m, [F.mul(a, b) for a in e.basis for b in f.basis])


def random_support(F, w, rng):
    """Uniformly random w-dimensional F_2-subspace of GF(2^m)."""
    vals = []
    basis = {}
    while len(vals) < w:
        x = F.random(rng)
        r = _reduce(basis, x)
        if r:
            basis[r.bit_length() - 1] = r
            vals.append(x)
    return SupportSpace.span(F.m, vals)


def sample_rank_weight(n, m, w, shared=None, rng=None, F=None):
    """Vector of rank weight exactly ``w`` whose support is ``shared`` (or a
    fresh random support).  Returns ``(vector, support)``."""
    F = field(m) if F is None else F
    if F.m != m:
        raise ParameterError("field degree mismatch")
    if not 0 <= w <= min(m, n):
        raise ParameterError(f"rank weight {w} outside [0, min(m, n) = {min(m, n)}]")
    if rng is None:
        raise ValueError("an explicit rng (SeedExpander) is required")
    if shared is None:
        space = random_support(F, w, rng)
    else:
        if shared.m != m or shared.dim != w:
            raise ParameterError(f"shared support has dim {shared.dim}, expected {w}")
        space = shared
    if w == 0:
        return RankVector.zero(F, n), space
    while True:
        coeffs = [rng.bits(w) for _ in range(n)]
        if rank_of_ints(coeffs) == w:
            break
    vec = RankVector.from_ints(F, [space.combine(c) for c in coeffs])
    return vec, space
