"""Arithmetic in F[X]/(X^n - 1).

Binary elements (:class:`RingElement`) are bit-packed into little-endian
``uint64`` words: coefficient ``i`` is bit ``i % 64`` of word ``i // 64`` and
the unused high bits of the last word are always zero.  Vectors over
GF(2^m) live in :mod:`qcrypta.rank_field` and share :func:`ring_mul`.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DimensionError, FormatError, ParameterError


def _nwords(n):
    return (n + 63) // 64


def _tail_mask(n):
    tail = n - 64 * (_nwords(n) - 1)
    return np.uint64((1 << tail) - 1) if tail < 64 else np.uint64(0xFFFFFFFFFFFFFFFF)


class RingElement:
    """Immutable element of F_2[X]/(X^n - 1)."""

    __slots__ = ("n", "words")

    def __init__(self, n, words):
        n = int(n)
        if n <= 0:
            raise ParameterError("ring length must be positive")
        words = np.array(words, dtype="<u8", copy=True).reshape(-1)
        if words.shape[0] != _nwords(n):
            raise DimensionError(f"expected {_nwords(n)} words for n={n}, got {words.shape[0]}")
        if words[-1] & ~_tail_mask(n):
            raise ValueError("padding bits beyond n must be zero")
        words.flags.writeable = False
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "words", words)

    def __setattr__(self, name, value):
        raise AttributeError("RingElement is immutable")

    # constructors

    @classmethod
    def zero(cls, n):
        return cls(n, np.zeros(_nwords(n), dtype=np.uint64))

    @classmethod
    def one(cls, n):
        return cls.from_positions(n, [0])

    @classmethod
    def from_positions(cls, n, positions):
        bits = np.zeros(n, dtype=np.uint8)
        pos = np.asarray(positions, dtype=np.int64)
        if pos.size and (pos.min() < 0 or pos.max() >= n):
            raise ParameterError("position out of range")
        bits[pos] ^= 1
        return cls.from_bits(bits)

    @classmethod
    def from_bits(cls, bits):
        bits = np.asarray(bits, dtype=np.uint8) & 1
        n = bits.shape[0]
        padded = np.zeros(_nwords(n) * 64, dtype=np.uint8)
        padded[:n] = bits
        packed = np.packbits(padded, bitorder="little")
        return cls(n, packed.view("<u8"))

    @classmethod
    def from_bytes(cls, n, data):
        """Inverse of :meth:`to_bytes`; rejects nonzero padding bits."""
        data = bytes(data)
        nbytes = (n + 7) // 8
        if len(data) != nbytes:
            raise FormatError(f"expected {nbytes} bytes for n={n}, got {len(data)}")
        buf = np.zeros(_nwords(n) * 8, dtype=np.uint8)
        buf[:nbytes] = np.frombuffer(data, dtype=np.uint8)
        words = buf.view("<u8")
        if words[-1] & ~_tail_mask(n):
            raise FormatError("nonzero padding bits")
        return cls(n, words)

    # views

    def to_bits(self):
        return np.unpackbits(self.words.view(np.uint8), bitorder="little")[: self.n]

    def to_bytes(self):
        return self.words.view(np.uint8)[: (self.n + 7) // 8].tobytes()

    def support(self):
        return np.flatnonzero(self.to_bits())

    @property
    def weight(self):
        return hamming_weight(self)

    # algebra

    def _check(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        if other.n != self.n:
            raise DimensionError(f"length mismatch: {self.n} vs {other.n}")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return RingElement(self.n, self.words ^ other.words)

    __sub__ = __add__
    __xor__ = __add__

    def __mul__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return ring_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.words, other.words))

    def __hash__(self):
        return hash((self.n, self.words.tobytes()))

    def __repr__(self):
        return f"RingElement(n={self.n}, weight={self.weight})"


def hamming_weight(x):
    return int(np.bitwise_count(x.words).sum()) if hasattr(np, "bitwise_count") else int(x.to_bits().sum())


def ring_mul(a, b):
    """Product in the cyclic ring; works for binary and GF(2^m) vectors."""
    if not isinstance(a, RingElement):
        return a.ring_mul(b)
    if not isinstance(b, RingElement):
        raise TypeError("cannot multiply a binary ring element by " + type(b).__name__)
    if a.n != b.n:
        raise DimensionError(f"length mismatch: {a.n} vs {b.n}")
    # iterate over the sparser operand
    wa, wb = hamming_weight(a), hamming_weight(b)
    sparse, dense = (a, b) if wa <= wb else (b, a)
    out = kernels.ring_mul_positions(dense.words, sparse.support(), a.n)
    return RingElement(a.n, out)


class BinaryField:
    """F_2 with the interface expected by :func:`naive_ring_mul`."""

    zero = 0
    one = 1

    @staticmethod
    def add(a, b):
        return a ^ b

    @staticmethod
    def mul(a, b):
        return a & b


F2 = BinaryField()


def naive_ring_mul(a, b, field=F2):
    """Schoolbook O(n^2) cyclic convolution over any field object.

    ``a`` and ``b`` are coefficient sequences; returns a list.
    """
    n = len(a)
    if len(b) != n:
        raise DimensionError(f"length mismatch: {n} vs {len(b)}")
    c = [field.zero] * n
    for i in range(n):
        if a[i] == field.zero:
            continue
        for j in range(n):
            k = (i + j) % n
            c[k] = field.add(c[k], field.mul(a[i], b[j]))
    return c


@dataclass(frozen=True)
class CirculantMatrix:
    """The n x n matrix whose column-defining vector is ``generator``.

    Entry (i, j) is ``x[(i - j) mod n]``, so row 0 reads (x_0, x_{n-1}, ..., x_1).
    """

    generator: RingElement

    @property
    def n(self):
        return self.generator.n

    def to_array(self):
        x = self.generator.to_bits()
        n = self.n
        idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
        return x[idx]


def rot(x):
    return CirculantMatrix(x)


def vec_mat_t(x, mat):
    """Row vector times the transpose of a circulant matrix, over F_2."""
    a = mat.to_array() if isinstance(mat, CirculantMatrix) else np.asarray(mat)
    prod = (a.astype(np.int64) @ x.to_bits().astype(np.int64)) & 1
    return RingElement.from_bits(prod)


@dataclass(frozen=True)
class FixedWeightSpec:
    n: int
    w: int

    def __post_init__(self):
        if self.n <= 0:
            raise ParameterError("n must be positive")
        if not 0 <= self.w <= self.n:
            raise ParameterError(f"weight {self.w} outside [0, {self.n}]")


def sample_fixed_weight_positions(spec, rng):
    """Exactly ``spec.w`` distinct indices, drawn uniformly mod n with
    duplicates rejected; returned in draw order."""
    seen = set()
    out = []
    while len(out) < spec.w:
        i = rng.below(spec.n)
        if i not in seen:
            seen.add(i)
            out.append(i)
    return out


def sample_fixed_weight(spec, rng):
    if not isinstance(spec, FixedWeightSpec):
        spec = FixedWeightSpec(*spec)
    return RingElement.from_positions(spec.n, sample_fixed_weight_positions(spec, rng))


def sample_uniform(n, rng):
    return RingElement.from_bytes(n, _masked_bytes(rng.read((n + 7) // 8), n))


def _masked_bytes(data, n):
    data = bytearray(data)
    extra = 8 * len(data) - n
    if extra:
        data[-1] &= (1 << (8 - extra)) - 1
    return bytes(data)


@dataclass(frozen=True)
class QcsdInstance:
    """Systematic quasi-cyclic syndrome-decoding instance.

    ``a[i]`` generates the circulant block A_{i+1} of the last block column,
    ``x`` holds the s secret blocks (each of weight w) and ``syndrome[i]``
    equals ``x[i] + a[i] * x[s-1]``.
    """

    a: tuple
    x: tuple
    syndrome: tuple

    @property
    def order(self):
        return len(self.x)

    def parity_check_matrix(self):
        """Dense H = [I 0 .. A_1; 0 I .. A_2; ...] over F_2."""
        n = self.x[0].n
        s = self.order
        h = np.zeros(((s - 1) * n, s * n), dtype=np.uint8)
        for i, blk in enumerate(self.a):
            h[i * n:(i + 1) * n, i * n:(i + 1) * n] = np.eye(n, dtype=np.uint8)
            h[i * n:(i + 1) * n, (s - 1) * n:] = rot(blk).to_array()
        return h


def sample_qcsd_instance(n, w, s, rng):
    if s not in (2, 3):
        raise ParameterError("order s must be 2 or 3")
    spec = FixedWeightSpec(n, w)
    a = tuple(sample_uniform(n, rng) for _ in range(s - 1))
    x = tuple(sample_fixed_weight(spec, rng) for _ in range(s))
    syndrome = tuple(x[i] + ring_mul(a[i], x[s - 1]) for i in range(s - 1))
    return QcsdInstance(a, x, syndrome)


def pack_bits(elements):
    """Concatenate binary ring elements bit-wise, LSB-first, padded to bytes."""
    bits = np.concatenate([e.to_bits() for e in elements])
    return np.packbits(bits, bitorder="little").tobytes()


def unpack_bits(data, lengths):
    total = sum(lengths)
    data = bytes(data)
    if len(data) != (total + 7) // 8:
        raise FormatError(f"expected {(total + 7) // 8} bytes, got {len(data)}")
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")
    if bits[total:].any():
        raise FormatError("nonzero padding bits")
    out, off = [], 0
    for n in lengths:
        out.append(RingElement.from_bits(bits[off:off + n]))
        off += n
    return out
