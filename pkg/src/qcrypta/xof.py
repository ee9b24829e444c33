"""Deterministic byte streams expanded from 32-byte seeds.

All randomness in the package flows through :class:`SeedExpander`; nothing
reads ambient entropy.  Callers wanting fresh keys pass ``os.urandom(32)``.
"""

import hashlib

SEED_BYTES = 32
_BLOCK = 136  # SHAKE-256 rate


def derive_seed(master, *labels):
    """Domain-separated 32-byte child seed of ``master``."""
    h = hashlib.sha3_256()
    h.update(bytes(master))
    for label in labels:
        if isinstance(label, int):
            label = label.to_bytes(8, "little")
        elif isinstance(label, str):
            label = label.encode()
        h.update(len(label).to_bytes(2, "little"))
        h.update(label)
    return h.digest()


class SeedExpander:
    """SHAKE-256 in counter mode over ``seed || domain``.

    The stream is consumed strictly in order, so two expanders built from
    the same seed and domain yield identical bytes.
    """

    def __init__(self, seed, domain=b""):
        seed = bytes(seed)
        if len(seed) != SEED_BYTES:
            raise ValueError(f"seed must be {SEED_BYTES} bytes, got {len(seed)}")
        if isinstance(domain, str):
            domain = domain.encode()
        self._prefix = seed + len(domain).to_bytes(2, "little") + domain
        self._counter = 0
        self._buf = b""

    def read(self, n):
        while len(self._buf) < n:
            block = hashlib.shake_256(
                self._prefix + self._counter.to_bytes(8, "little")
            ).digest(_BLOCK)
            self._counter += 1
            self._buf += block
        out, self._buf = self._buf[:n], self._buf[n:]
        return out

    def u32(self):
        return int.from_bytes(self.read(4), "little")

    def below(self, bound):
        """Uniform integer in [0, bound) by rejection on 32-bit words."""
        if not 0 < bound <= 1 << 32:
            raise ValueError("bound out of range")
        limit = (1 << 32) - ((1 << 32) % bound)
        while True:
            x = self.u32()
            if x < limit:
                return x % bound

    def bits(self, nbits):
        """``nbits`` uniform bits as a Python int."""
        nbytes = (nbits + 7) // 8
        return int.from_bytes(self.read(nbytes), "little") & ((1 << nbits) - 1)
