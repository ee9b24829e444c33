"""Named parameter sets for both schemes.

Rows are kept exactly as defined, including two whose ring length is not a
primitive prime; :func:`hqc_setup` warns about those instead of silently
"fixing" them.
"""

import warnings
from dataclasses import dataclass

from .errors import ParameterError
from .numtheory import is_primitive_prime, next_primitive_prime


class ParameterWarning(UserWarning):
    pass


@dataclass(frozen=True)
class ParameterSet:
    name: str
    n1: int
    n2: int
    n: int
    k: int
    delta: int
    w: int
    eps_w: int
    security_bits: int
    quantum: bool = False
    metric: str = "hamming"

    @property
    def label(self):
        return f"{self.name}-Q" if self.quantum else self.name

    @property
    def n1n2(self):
        return self.n1 * self.n2

    def problems(self):
        """Human-readable list of violated invariants (empty when valid)."""
        out = []
        if not is_primitive_prime(self.n):
            out.append(f"n={self.n} is not a primitive prime")
        if self.n <= self.n1n2:
            out.append(f"n={self.n} is not larger than n1*n2={self.n1n2}")
        if self.eps_w != 3 * self.w:
            out.append(f"eps weight {self.eps_w} != 3w = {3 * self.w}")
        if not 0 <= self.w <= self.n or not 0 <= self.eps_w <= self.n:
            out.append("weights out of range")
        return out

    @property
    def smallest_admissible_n(self):
        return next_primitive_prime(self.n1n2)

    @property
    def public_key_bits(self):
        return 2 * self.n

    @property
    def ciphertext_bits(self):
        return 2 * self.n

    @property
    def secret_key_bits(self):
        return 2 * self.w * index_bits(self.n)


def index_bits(n):
    """ceil(log2(n)) for n >= 2."""
    return (n - 1).bit_length()


HQC_CLASSICAL = (
    ParameterSet("Toy", 255, 25, 6379, 63, 30, 36, 108, 64),
    ParameterSet("Low", 255, 37, 9437, 79, 27, 45, 135, 80),
    ParameterSet("Medium", 255, 53, 13523, 99, 23, 56, 168, 100),
    ParameterSet("Strong", 511, 41, 20959, 121, 58, 72, 216, 128),
)

HQC_QUANTUM = (
    ParameterSet("Toy", 255, 65, 16603, 63, 87, 72, 216, 64, True),
    ParameterSet("Low", 511, 47, 24019, 76, 85, 89, 267, 80, True),
    ParameterSet("Medium", 255, 141, 35963, 99, 23, 112, 336, 100, True),
    ParameterSet("Strong", 511, 109, 55711, 121, 58, 143, 429, 128, True),
)

HQC_ALL = HQC_CLASSICAL + HQC_QUANTUM
# one-byte identifiers used in key and ciphertext file headers
HQC_IDS = {p.label: i for i, p in enumerate(HQC_ALL)}


def hqc_setup(name, quantum=None):
    """Look up a table row by name ("Toy", "low", "Strong-Q", ...) or validate
    a custom :class:`ParameterSet`."""
    if isinstance(name, ParameterSet):
        bad = name.problems()
        if bad:
            raise ParameterError("invalid parameter set: " + "; ".join(bad))
        return name
    key = str(name).strip()
    q = bool(quantum)
    if key.lower().endswith("-q"):
        key, q = key[:-2], True
    for p in HQC_ALL:
        if p.name.lower() == key.lower() and p.quantum == q:
            bad = p.problems()
            if bad:
                warnings.warn(f"{p.label}: " + "; ".join(bad), ParameterWarning, stacklevel=2)
            return p
    raise ParameterError(f"unknown HQC instance {name!r}")


def hqc_by_id(pid):
    if not 0 <= pid < len(HQC_ALL):
        raise ParameterError(f"unknown HQC parameter id {pid}")
    return HQC_ALL[pid]


@dataclass(frozen=True)
class RqcParameterSet:
    name: str
    n: int
    k: int
    m: int
    q: int
    w: int
    eps_w: int
    security_bits: int
    quantum: bool = False
    metric: str = "rank"

    @property
    def label(self):
        return f"{self.name}-Q" if self.quantum else self.name

    @property
    def decode_radius(self):
        return (self.n - self.k) // 2

    @property
    def plaintext_bits(self):
        return self.k * self.m

    @property
    def key_size_bits(self):
        return self.n * self.m

    def problems(self):
        out = []
        if self.q != 2:
            out.append("only q = 2 is supported")
        if self.n != self.m:
            out.append("n must equal m")
        if not is_primitive_prime(self.n):
            out.append(f"n={self.n} is not a primitive prime")
        if self.w * self.w + self.eps_w > self.decode_radius:
            out.append(
                f"w^2 + eps = {self.w * self.w + self.eps_w} exceeds decode radius {self.decode_radius}"
            )
        if not 0 < self.k <= self.n:
            out.append("dimension out of range")
        return out


RQC_CLASSICAL = (
    RqcParameterSet("RQC-I", 53, 13, 53, 2, 4, 4, 95),
    RqcParameterSet("RQC-II", 61, 3, 61, 2, 5, 4, 140),
    RqcParameterSet("RQC-III", 83, 3, 83, 2, 6, 4, 230),
)

# quantum-security rows; only q = 2 is supported
RQC_QUANTUM = (
    RqcParameterSet("RQC-I", 61, 3, 61, 2, 5, 4, 70, True),
    RqcParameterSet("RQC-II", 83, 3, 83, 2, 6, 4, 115, True),
)

RQC_ALL = RQC_CLASSICAL + RQC_QUANTUM
RQC_IDS = {p.label: i for i, p in enumerate(RQC_ALL)}


def rqc_setup(name, quantum=None):
    if isinstance(name, RqcParameterSet):
        p = name
    else:
        key = str(name).strip()
        q = bool(quantum)
        if key.lower().endswith("-q"):
            key, q = key[:-2], True
        for p in RQC_ALL:
            if p.name.lower() == key.lower() and p.quantum == q:
                break
        else:
            raise ParameterError(f"unknown RQC instance {name!r}")
    bad = p.problems()
    if bad:
        raise ParameterError(f"{p.label}: " + "; ".join(bad))
    return p


def rqc_by_id(pid):
    if not 0 <= pid < len(RQC_ALL):
        raise ParameterError(f"unknown RQC parameter id {pid}")
    return RQC_ALL[pid]
