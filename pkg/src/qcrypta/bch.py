"""Binary narrow-sense BCH codes: systematic encoding, Berlekamp-Massey
decoding with Chien search.

Codewords are ``uint8`` 0/1 arrays of length ``n1``.  The polynomial
c(X) = sum c_i X^i has its message bits in the top ``k`` positions.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import DecodingError, DimensionError, ParameterError

# primitive polynomials for GF(2^m), bit i = coefficient of X^i
PRIMITIVE_POLYS = {
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10001001,
    8: 0b100011101,  # X^8 + X^4 + X^3 + X^2 + 1
    9: 0b1000010001,  # X^9 + X^4 + 1
    10: 0b10000001001,
}

LOG_ZERO = -1


class LogTables:
    """exp/log tables for GF(2^m) generated by the class of X."""

    def __init__(self, m, poly=None):
        poly = PRIMITIVE_POLYS[m] if poly is None else poly
        if poly >> m != 1:
            raise ParameterError(f"modulus must have degree {m}")
        order = (1 << m) - 1
        exp = np.zeros(2 * order, dtype=np.int64)
        log = np.full(order + 1, LOG_ZERO, dtype=np.int64)
        x = 1
        for i in range(order):
            if log[x] != LOG_ZERO:
                raise ParameterError(f"modulus {poly:#x} is not primitive")
            exp[i] = x
            log[x] = i
            x <<= 1
            if x >> m:
                x ^= poly
        if x != 1:
            raise ParameterError(f"modulus {poly:#x} is not primitive")
        exp[order:] = exp[:order]
        self.m = m
        self.poly = poly
        self.order = order
        self.exp = exp
        self.log = log
        self._exp = exp.tolist()
        self._log = log.tolist()

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in GF(2^m)")
        if a == 0:
            return 0
        return self._exp[self._log[a] - self._log[b] + self.order]

    def power(self, e):
        return self._exp[e % self.order]


@lru_cache(maxsize=None)
def log_tables(m):
    return LogTables(m)


def cyclotomic_cosets(n):
    """2-cyclotomic cosets modulo n, each as a sorted tuple."""
    seen = set()
    cosets = []
    for s in range(n):
        if s in seen:
            continue
        coset = []
        x = s
        while x not in coset:
            coset.append(x)
            x = (2 * x) % n
        seen.update(coset)
        cosets.append(tuple(sorted(coset)))
    return cosets


def _minimal_poly(coset, gf):
    # prod over c in coset of (X + alpha^c); coefficients land in GF(2)
    poly = [1]
    for c in coset:
        root = gf.power(c)
        nxt = [0] * (len(poly) + 1)
        for i, coef in enumerate(poly):
            nxt[i + 1] ^= coef
            nxt[i] ^= gf.mul(coef, root)
        poly = nxt
    if any(c > 1 for c in poly):
        raise AssertionError("minimal polynomial not binary")
    return sum(c << i for i, c in enumerate(poly))


def _clmul(a, b):
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _polymod(a, g):
    dg = g.bit_length() - 1
    while a and a.bit_length() - 1 >= dg:
        a ^= g << (a.bit_length() - 1 - dg)
    return a


def bch_generator(n1, delta):
    """Generator polynomial (as int) of the narrow-sense binary BCH code of
    length n1 = 2^m - 1 with designed distance 2*delta + 1."""
    m = (n1 + 1).bit_length() - 1
    if n1 != (1 << m) - 1 or m not in PRIMITIVE_POLYS:
        raise ParameterError(f"unsupported BCH length {n1}")
    if not 1 <= delta <= (n1 - 1) // 2:
        raise ParameterError(f"correction radius {delta} out of range for n1={n1}")
    gf = log_tables(m)
    wanted = set(range(1, 2 * delta + 1))
    g = 1
    for coset in cyclotomic_cosets(n1):
        if wanted.intersection(coset):
            g = _clmul(g, _minimal_poly(coset, gf))
    return g


@dataclass(frozen=True)
class BchCode:
    n1: int
    k: int
    delta: int
    generator_poly: int
    field_order: int
    _parity_rows: tuple = field(repr=False, compare=False)

    @classmethod
    def build(cls, n1, delta, k=None):
        """Construct the code; if ``k`` is given it must match the dimension
        the generator polynomial actually yields."""
        g = bch_generator(n1, delta)
        dim = n1 - (g.bit_length() - 1)
        if k is not None and k != dim:
            raise ParameterError(
                f"BCH(n1={n1}, delta={delta}) has dimension {dim}, parameter set says {k}"
            )
        r = n1 - dim
        rows = tuple(_polymod(1 << (r + i), g) for i in range(dim))
        return cls(n1, dim, delta, g, (n1 + 1).bit_length() - 1, rows)

    @property
    def tables(self):
        return log_tables(self.field_order)

    def divides_xn_minus_1(self):
        return _polymod((1 << self.n1) | 1, self.generator_poly) == 0


def _bits_to_int(bits):
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def _int_to_bits(x, n):
    raw = x.to_bytes((n + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:n].copy()


def bch_encode(code, msg):
    msg = np.asarray(msg, dtype=np.uint8)
    if msg.shape != (code.k,):
        raise DimensionError(f"message must have {code.k} bits, got {msg.shape}")
    parity = 0
    for i in np.flatnonzero(msg):
        parity ^= code._parity_rows[i]
    r = code.n1 - code.k
    out = np.zeros(code.n1, dtype=np.uint8)
    out[:r] = _int_to_bits(parity, r)
    out[r:] = msg
    return out


def syndromes(code, word):
    """S_1 .. S_{2 delta} of ``word`` as field integers."""
    word = np.asarray(word, dtype=np.uint8)
    gf = code.tables
    return kernels.bch_syndromes(np.flatnonzero(word), gf.exp, gf.order, 2 * code.delta)


def berlekamp_massey(synd, gf):
    """Shortest LFSR (error locator Lambda, lowest degree first) for ``synd``."""
    c = [1]
    b_poly = [1]
    length = 0
    shift = 1
    b = 1
    for idx, s in enumerate(synd):
        d = int(s)
        for i in range(1, length + 1):
            if i < len(c):
                d ^= gf.mul(c[i], int(synd[idx - i]))
        if d == 0:
            shift += 1
            continue
        coef = gf.div(d, b)
        adj = [0] * shift + [gf.mul(coef, x) for x in b_poly]
        new_c = c + [0] * max(0, len(adj) - len(c))
        for i, x in enumerate(adj):
            new_c[i] ^= x
        if 2 * length <= idx:
            b_poly, b = c, d
            length = idx + 1 - length
            shift = 1
        else:
            shift += 1
        c = new_c
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c, length


def bch_decode(code, word):
    """Bounded-distance decode; raises DecodingError past the radius when the
    locator does not split properly.  Returns the k message bits."""
    word = np.asarray(word, dtype=np.uint8)
    if word.shape != (code.n1,):
        raise DimensionError(f"word must have {code.n1} bits, got {word.shape}")
    synd = syndromes(code, word)
    r = code.n1 - code.k
    if not synd.any():
        return word[r:].copy()
    gf = code.tables
    lam, length = berlekamp_massey(synd, gf)
    if length > code.delta or len(lam) - 1 != length:
        raise DecodingError("error locator degree exceeds correction radius")
    lam_log = [gf._log[c] for c in lam]
    roots = kernels.chien_search(lam_log, LOG_ZERO, gf.exp, gf.order, code.n1)
    if roots.shape[0] != length:
        raise DecodingError("error locator does not split over the field")
    fixed = word.copy()
    fixed[roots] ^= 1
    if syndromes(code, fixed).any():
        raise DecodingError("corrected word is not a codeword")
    return fixed[r:].copy()
