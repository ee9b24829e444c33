"""Code-based public-key encryption in the Hamming metric (binary cyclic
ring, BCH x repetition decoding) and the rank metric (GF(2^m) cyclic ring,
Gabidulin decoding), plus an exact decryption-failure analyzer."""

from .errors import DecodingError, DimensionError, FormatError, IntegrityError, ParameterError
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DecodingError",
    "DimensionError",
    "FormatError",
    "IntegrityError",
    "ParameterError",
]
