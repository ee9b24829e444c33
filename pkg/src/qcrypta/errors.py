"""Exception types raised across the package."""


class ParameterError(ValueError):
    """Invalid or unknown parameter set, or out-of-range size argument."""


class DimensionError(ValueError):
    """Operand lengths do not match."""


class DecodingError(Exception):
    """A bounded-distance decoder could not produce a codeword."""


class IntegrityError(RuntimeError):
    """A decryption that must always succeed did not; indicates a bug."""


class FormatError(ValueError):
    """Malformed key, ciphertext, plaintext or KAT file."""
