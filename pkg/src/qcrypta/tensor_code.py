"""BCH(n1, k, delta) tensored with the length-n2 repetition code.

Codeword bit i of the BCH word occupies ring coordinates
``i*n2 .. (i+1)*n2 - 1``; coordinates from ``n1*n2`` up to the ring length
are zero on encode and ignored on decode.
"""

from dataclasses import dataclass

import numpy as np

from .bch import BchCode, bch_decode, bch_encode
from .cyclic_ring import RingElement
from .errors import DimensionError, ParameterError


@dataclass(frozen=True)
class TensorCode:
    bch: BchCode
    n2: int
    n_ring: int

    def __post_init__(self):
        if self.n2 < 1:
            raise ParameterError("repetition length must be positive")
        if self.n_ring < self.bch.n1 * self.n2:
            raise ParameterError("ring length shorter than the tensor code")

    @property
    def k(self):
        return self.bch.k

    @property
    def length(self):
        return self.bch.n1 * self.n2

    @property
    def delta1(self):
        return self.bch.delta

    @property
    def delta2(self):
        return (self.n2 - 1) // 2

    @property
    def threshold(self):
        # smallest number of ones decoded as 1; ceil((n2 + 1) / 2)
        return (self.n2 + 2) // 2


def tensor_encode(tc, msg):
    mu1 = bch_encode(tc.bch, msg)
    bits = np.zeros(tc.n_ring, dtype=np.uint8)
    bits[: tc.length] = np.repeat(mu1, tc.n2)
    return RingElement.from_bits(bits)


def repetition_decode(block):
    block = np.asarray(block, dtype=np.int64)
    n2 = block.shape[0]
    return int(block.sum() >= (n2 + 2) // 2)


def majority_decode(tc, word):
    """Majority-decode each of the n1 repetition blocks."""
    if word.n != tc.n_ring:
        raise DimensionError(f"word length {word.n} != ring length {tc.n_ring}")
    blocks = word.to_bits()[: tc.length].reshape(tc.bch.n1, tc.n2)
    return (blocks.sum(axis=1, dtype=np.int64) >= tc.threshold).astype(np.uint8)


def tensor_decode(tc, word):
    """Returns the k message bits; DecodingError propagates from BCH."""
    return bch_decode(tc.bch, majority_decode(tc, word))
