"""Key and ciphertext files: 8-byte magic, 1-byte parameter id, payload."""

from .errors import FormatError

HQC_MAGIC = b"HQCv1\0\0\0"
RQC_MAGIC = b"RQCv1\0\0\0"
HEADER_BYTES = 9


def pack(magic, pid, payload):
    if not 0 <= pid < 256:
        raise FormatError("parameter id must fit in one byte")
    return magic + bytes([pid]) + bytes(payload)


def unpack(data, magic=None):
    """Return (magic, pid, payload); checks the magic if one is given."""
    data = bytes(data)
    if len(data) < HEADER_BYTES:
        raise FormatError("file too short for header")
    head = data[:8]
    if head not in (HQC_MAGIC, RQC_MAGIC):
        raise FormatError("unknown magic")
    if magic is not None and head != magic:
        raise FormatError(f"expected magic {magic!r}, found {head!r}")
    return head, data[8], data[HEADER_BYTES:]


def pack_indices(indices, width):
    """Fixed-width little-endian bit packing of nonnegative ints."""
    acc = 0
    for i, v in enumerate(indices):
        if not 0 <= v < 1 << width:
            raise FormatError(f"index {v} does not fit in {width} bits")
        acc |= int(v) << (i * width)
    return acc.to_bytes((len(indices) * width + 7) // 8, "little")


def unpack_indices(data, count, width):
    nbytes = (count * width + 7) // 8
    if len(data) != nbytes:
        raise FormatError(f"expected {nbytes} bytes, got {len(data)}")
    acc = int.from_bytes(data, "little")
    if acc >> (count * width):
        raise FormatError("nonzero padding bits")
    mask = (1 << width) - 1
    return [(acc >> (i * width)) & mask for i in range(count)]
